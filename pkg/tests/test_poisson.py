import pytest

from hochprod import exact_linear as el
from hochprod.algebra_core import identity_morphism
from hochprod.catalog import matrix_algebra, upper_triangular
from hochprod.exact_linear import Field
from hochprod.poisson_ext import (DIRECT_PRODUCT, InvalidPoissonDatum, PoissonAlgebra,
                                  PoissonCoflagDatum, build_poisson_extension, classify_poisson_ext,
                                  commutator_poissonize, example_datum, example_table,
                                  extract_poisson_datum, find_poisson_iso, heisenberg_poisson,
                                  poisson_aut_group, poisson_autos_brute,
                                  poisson_trivializer_second_kind, validate_poisson,
                                  validate_poisson_coflag)

F5, F7 = Field.prime(5), Field.prime(7)
QQ = Field.rationals()
Z3 = [[0] * 3 for _ in range(3)]


@pytest.fixture(scope="module")
def h5():
    return heisenberg_poisson(F5)


@pytest.fixture(scope="module")
def h5_autos(h5):
    return poisson_autos_brute(h5)


@pytest.mark.parametrize("F", [QQ, F5], ids=str)
def test_heisenberg_validates(F):
    P = heisenberg_poisson(F)
    assert validate_poisson(P) == []
    assert not P.is_perfect()


def test_heisenberg_poisson_autos(h5_autos):
    # algebra automorphisms of T_2 are inner, and all preserve the commutator
    assert len(h5_autos) == 20


def test_commutator_bracket_of_matrices():
    P = commutator_poissonize(matrix_algebra(2, F5))
    assert validate_poisson(P) == []
    # sl_2 is the derived algebra, one dimension short of M_2
    assert len(P.bracket_span()) == 3


def test_broken_leibniz_detected():
    A = upper_triangular(2, F5)
    P = PoissonAlgebra.from_brackets(A, {("e11", "e12"): {"e11": 1}})
    assert {v.axiom for v in validate_poisson(P)} & {"leibniz", "jacobi"}


@pytest.mark.parametrize("which,param", [("P1", 0), ("P2", 0), ("P4", 0), ("P4", 1),
                                         ("P5", 0), ("P5", 1), ("HxK", 0)])
def test_tables_validate_over_q(which, param):
    assert validate_poisson(example_table(which, QQ, param)) == []


def test_third_table_is_not_associative_as_printed():
    axioms = {v.axiom for v in validate_poisson(example_table("P3", QQ))}
    assert "associativity" in axioms


@pytest.mark.parametrize("which,param", [("P1", 0), ("P2", 0), ("P4", 0), ("P4", 1),
                                         ("P5", 0), ("P5", 1)])
def test_data_reproduce_tables(which, param):
    P = heisenberg_poisson(QQ)
    Q = build_poisson_extension(P, example_datum(which, QQ, param)).total
    T = example_table(which, QQ, param)
    assert Q.algebra.same_table(T.algebra)
    assert Q.bracket == T.bracket


def test_third_datum_breaks_cocycle():
    P = heisenberg_poisson(QQ)
    bad = validate_poisson_coflag(P, example_datum("P3", QQ))
    assert bad and all(v.axiom.startswith("CF1") for v in bad)
    with pytest.raises(InvalidPoissonDatum):
        build_poisson_extension(P, example_datum("P3", QQ))


def test_cf2_violation_for_gamma_not_killing_bracket():
    P = heisenberg_poisson(F5)
    d = PoissonCoflagDatum.make(F5, (1, 0, 0), (1, 0, 0), Z3, (0, 1, 0), Z3)
    assert "CF2" in {v.axiom for v in validate_poisson_coflag(P, d)}


def test_extract_datum_round_trip():
    P = heisenberg_poisson(F5)
    d = example_datum("P4", F5, 1)
    Q = build_poisson_extension(P, d).total
    pi = [[1 if j == i else 0 for j in range(4)] for i in range(3)]
    s = el.columns_to_matrix([list(P.algebra.e(i)) + [0] for i in range(3)])
    assert extract_poisson_datum(Q, P, pi, s, (0, 0, 0, 1)) == d


def test_second_kind_trivializer(h5):
    for u in (1, 3):
        t = poisson_trivializer_second_kind(h5, (0, 0, 1), u)
        assert t.target.dim == 4


def test_distinct_parameters_not_isomorphic(h5, h5_autos):
    d1, d2 = example_datum("P4", F5, 1), example_datum("P4", F5, 2)
    assert find_poisson_iso(h5, d1, d2, h5_autos) is None
    assert find_poisson_iso(h5, d1, d1, h5_autos) is not None


def test_direct_product_marker(h5, h5_autos):
    d = example_datum("P1", F5)
    assert find_poisson_iso(h5, d, DIRECT_PRODUCT, h5_autos) is None
    assert find_poisson_iso(h5, DIRECT_PRODUCT, DIRECT_PRODUCT, h5_autos) is not None


def test_iso_needs_autos(h5):
    with pytest.raises(ValueError):
        find_poisson_iso(h5, DIRECT_PRODUCT, DIRECT_PRODUCT, [])


def test_classification_of_heisenberg_f5(h5, h5_autos):
    res = classify_poisson_ext(h5, h5_autos)
    assert res.class_count == 14
    assert res.classes[-1] == DIRECT_PRODUCT
    assert sum(res.orbit_sizes[:-1]) == res.data_count == 32


def test_no_character_shortcut():
    P = commutator_poissonize(matrix_algebra(2, F5))
    res = classify_poisson_ext(P)
    assert res.class_count == 1 and res.shortcut


def test_poisson_aut_group(h5, h5_autos):
    G = poisson_aut_group(h5, example_datum("P1", F5), h5_autos)
    assert G.bracket_preserved
    assert all(G.group.checks.values())
    # every psi fixes the diagonal character, s0 is free, and r must vanish:
    # r(e11) = 0 from e11 e11 = e11, r(e12) = 0 from [e11, e12] = e12
    assert G.order == 20 * 4


def test_identity_is_poisson_auto(h5, h5_autos):
    assert identity_morphism(h5.algebra) in h5_autos


def _poisson_isomorphic(Q1, Q2):
    """Brute route: every algebra isomorphism, filtered by the bracket."""
    from hochprod import kernels
    from hochprod.algebra_core import _search_order, fingerprint
    from hochprod.poisson_ext import is_poisson_morphism
    A, B = Q1.algebra, Q2.algebra
    if fingerprint(A) != fingerprint(B):
        return False
    maps = kernels.morphism_search(A.flat(), [int(u) for u in A.unit], B.flat(),
                                   [int(u) for u in B.unit], A.dim, A.field.p, _search_order(A))
    return any(is_poisson_morphism(tuple(map(tuple, m)), Q1, Q2) for m in maps)


def test_classification_heads_pairwise_distinct_by_brute_search(h5, h5_autos):
    from hochprod.poisson_ext import poisson_direct_product
    res = classify_poisson_ext(h5, h5_autos)
    algs = [build_poisson_extension(h5, d).total for d in res.classes[:-1]]
    algs.append(poisson_direct_product(h5))
    for i in range(len(algs)):
        for j in range(i + 1, len(algs)):
            assert not _poisson_isomorphic(algs[i], algs[j]), (i, j)
