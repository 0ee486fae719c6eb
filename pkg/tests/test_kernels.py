import os
import subprocess
import sys

import pytest

from hochprod import _kernels_py, kernels
from hochprod.algebra_core import _search_order
from hochprod.catalog import coflag3, cyclic_group_algebra, matrix_algebra, upper_triangular
from hochprod.exact_linear import Field

needs_cython = pytest.mark.skipif("cython" not in kernels.available_backends(),
                                  reason="compiled kernels not built")


@pytest.fixture
def restore_backend():
    prev = kernels.backend_name()
    yield
    kernels.use_backend(prev)


def _cases():
    F3, F5, F7 = Field.prime(3), Field.prime(5), Field.prime(7)
    return [matrix_algebra(2, F3), upper_triangular(2, F5), coflag3(5, F5),
            cyclic_group_algebra(3, F7), upper_triangular(3, F3)]


@needs_cython
@pytest.mark.parametrize("A", _cases(), ids=lambda A: f"{A.name}/F{A.field.p}")
def test_backends_agree(A, restore_backend):
    flat, unit = A.flat(), [int(u) for u in A.unit]
    out = {}
    for b in ("python", "cython"):
        kernels.use_backend(b)
        autos = kernels.morphism_search(flat, unit, flat, unit, A.dim, A.field.p, _search_order(A))
        chars = kernels.multiplicative_vectors(flat, unit, A.dim, A.field.p)
        out[b] = (sorted(map(tuple, autos)), sorted(map(tuple, chars)))
    assert out["python"] == out["cython"]


def test_limit_stops_early(restore_backend):
    A = matrix_algebra(2, Field.prime(3))
    flat, unit = A.flat(), [int(u) for u in A.unit]
    for b in kernels.available_backends():
        kernels.use_backend(b)
        assert len(kernels.morphism_search(flat, unit, flat, unit, 4, 3, None, 1)) == 1


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_fallback_reports_its_name():
    assert _kernels_py.BACKEND == "python"


def test_environment_forces_fallback():
    env = dict(os.environ, HOCHPROD_KERNELS="python")
    out = subprocess.run([sys.executable, "-c", "from hochprod import kernels; print(kernels.backend_name())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
