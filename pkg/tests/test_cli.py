import json
import subprocess
import sys
from pathlib import Path

import pytest

from hochprod import io as hio
from hochprod.catalog import dual_numbers
from hochprod.cli import emit, main, run
from hochprod.coflag import CoflagDatum
from hochprod.exact_linear import Field
from hochprod.poisson_ext import example_datum

F5 = Field.prime(5)
DATA = Path(__file__).resolve().parent.parent / "data"


def test_gh2_of_matrix_file():
    report, code = run(["gh2", "--input", str(DATA / "m2_f5.json")])
    assert code == 0
    assert report["results"]["first_kind_blocks"] == []
    assert report["results"]["total_classes"] == 4


def test_catalog_input_with_parameters():
    report, code = run(["characters", "--input", "catalog:upper-triangular?n=3", "--field", "Fp:7"])
    assert code == 0 and report["results"]["count"] == 3
    assert report["field"] == {"kind": "Fp", "p": 7}


def test_hoc_dual_numbers():
    report, code = run(["hoc", "--input", "catalog:dual-numbers"])
    assert code == 0
    assert report["results"]["class_count"] == 3
    sizes = sorted(c.get("orbit_size", 0) for c in report["results"]["classes"])
    assert sizes == [0, 1, 4]


def test_invalid_algebra_exit_1():
    report, code = run(["validate", "--input", "catalog:t2-table?index=3"])
    assert code == 1 and report["status"] == "invalid"
    assert report["results"]["violations"]


def test_budget_exit_2():
    report, code = run(["aut", "--input", "catalog:matrix?n=2", "--budget", "1000"])
    assert code == 2 and report["status"] == "budget-exhausted"


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    ["gh2"],
    ["gh2", "--input", "does-not-exist.json"],
    ["gh2", "--input", "catalog:ground", "--field", "R"],
    ["classify"],
    ["catalog", "no-such-entry"],
    ["hoc", "--input", "catalog:dual-numbers", "--field", "Q"],
])
def test_usage_errors_exit_3(argv):
    report, code = run(argv)
    assert code == 3 and report["status"] == "usage-error"


def test_non_prime_field_file(tmp_path):
    obj = hio.algebra_to_json(dual_numbers(F5))
    obj["field"]["p"] = 4
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    report, code = run(["validate", "--input", str(path)])
    assert code == 3 and "modulus not prime" in report["error"]


def test_gh2_needs_input_error_message():
    report, _ = run(["gh2"])
    assert "--input" in report["error"]


def test_product_from_datum(tmp_path):
    d = CoflagDatum.first(F5, (1, 0), (1, 0), ((0, 0), (0, 1)))
    path = tmp_path / "d.json"
    path.write_text(hio.dumps(hio.datum_to_json(d, F5)))
    report, code = run(["product", "--input", "catalog:dual-numbers", "--datum", str(path)])
    assert code == 0 and report["results"]["valid"]
    assert report["results"]["algebra"]["dim"] == 3


def test_poisson_extend_and_aut(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(hio.dumps(hio.datum_to_json(example_datum("P1", F5), F5)))
    report, code = run(["poisson-extend", "--input", "catalog:heisenberg-poisson", "--datum", str(path)])
    assert code == 0 and report["results"]["poisson"]["dim"] == 4
    report, code = run(["poisson-aut", "--input", "catalog:heisenberg-poisson", "--datum", str(path)])
    assert code == 0 and report["results"]["order"] == 80


def test_invalid_poisson_datum_exit_1(tmp_path):
    path = tmp_path / "p3.json"
    path.write_text(hio.dumps(hio.datum_to_json(example_datum("P3", F5), F5)))
    _, code = run(["poisson-extend", "--input", "catalog:heisenberg-poisson", "--datum", str(path)])
    assert code == 1


def test_extract_and_split_check(tmp_path):
    E = tmp_path / "e.json"
    report, _ = run(["catalog", "upper-triangular"])
    E.write_text(hio.dumps(report["results"]["entity"]))
    base = tmp_path / "kk.json"
    report, _ = run(["catalog", "product?of=ground*ground"])
    base.write_text(hio.dumps(report["results"]["entity"]))
    maps = tmp_path / "maps.json"
    # T_2 -> k x k by the diagonal; section along the diagonal idempotents
    maps.write_text(json.dumps({"projection": [[1, 0, 0], [0, 0, 1]],
                                "section": [[1, 0], [0, 0], [0, 1]]}))
    args = ["--input", str(E), "--base", str(base), "--map", str(maps)]
    report, code = run(["extract"] + args)
    assert code == 0 and report["results"]["system"]["vdim"] == 1
    report, code = run(["split-check"] + args)
    assert code == 0 and report["results"]["split"] is True


def test_coalgebra_commands(tmp_path):
    report, code = run(["supersolvable", "--input", "catalog:coalgebra-s3"])
    assert code == 0 and report["results"]["supersolvable"]
    assert report["results"]["chain"][0] == [[1, 4, 0]]
    path = tmp_path / "c.json"
    report, _ = run(["dualize", "--input", "catalog:dual-numbers"])
    path.write_text(hio.dumps(report["results"]["coalgebra"]))
    report, code = run(["convolve", "--input", str(path)])
    assert code == 0
    assert hio.parse_entity(report["results"]["algebra"]).same_table(dual_numbers(F5))


def test_gh2_brute_and_classify():
    report, code = run(["gh2-brute", "--input", "catalog:ground", "--field", "F3"])
    assert code == 0 and report["results"]["classes"] == 3
    report, code = run(["classify", "--dim", "2", "--field", "Fp:5"])
    assert code == 0 and report["results"]["class_count"] == 2


def test_seed_is_recorded():
    report, _ = run(["catalog", "--seed", "17"])
    assert report["seed"] == 17


def test_aut_mode_file(tmp_path):
    path = tmp_path / "autos.json"
    path.write_text(json.dumps([[[1, 0], [0, 2]]]))
    report, code = run(["aut", "--input", "catalog:dual-numbers", "--aut-mode", f"file:{path}"])
    assert code == 0 and report["results"]["order"] == 4
    path.write_text(json.dumps([[[1, 0], [1, 0]]]))
    _, code = run(["aut", "--input", "catalog:dual-numbers", "--aut-mode", f"file:{path}"])
    assert code == 1


def test_json_output_sorted_and_stable():
    report, _ = run(["characters", "--input", "catalog:upper-triangular"])
    text = emit(report, "json")
    assert text == emit(json.loads(text), "json")
    assert list(json.loads(text)) == sorted(json.loads(text))


def test_text_output_deterministic():
    report, _ = run(["gh2", "--input", "catalog:dual-numbers"])
    assert emit(report, "text") == emit(report, "text")
    assert "total_classes" in emit(report, "text")


def test_main_exit_code(capsys):
    assert main(["catalog"]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "ok"
    assert main(["validate", "--input", "catalog:t2-table?index=5", "--out", "text"]) == 1
    assert "invalid" in capsys.readouterr().out


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "hochprod.cli", "gh2", "--input", "catalog:ground"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["results"]["total_classes"] == 5
