import pytest

from hochprod.algebra_core import CharacterSearchUndecidable, find_isomorphism
from hochprod.catalog import catalog_algebras, coflag3, matrix_algebra, upper_triangular
from hochprod.coalgebra_dual import (Coalgebra, convolution_algebra, dualize_algebra,
                                     example_coalgebra, grouplikes, is_subcoalgebra,
                                     supersolvable_chain, validate_coalgebra)
from hochprod.exact_linear import Field

F5 = Field.prime(5)
QQ = Field.rationals()


def test_example_validates_over_q_and_f5():
    assert validate_coalgebra(example_coalgebra(QQ)) == []
    assert validate_coalgebra(example_coalgebra(F5)) == []


def test_example_grouplikes():
    assert sorted(grouplikes(example_coalgebra(F5))) == [(1, 1, 0), (1, 4, 0)]


def test_grouplikes_need_finite_field():
    with pytest.raises(CharacterSearchUndecidable):
        grouplikes(example_coalgebra(QQ))


def test_example_chain_starts_with_difference():
    res = supersolvable_chain(example_coalgebra(F5))
    assert res.supersolvable and res.convolution_is_coflag
    assert res.chain[0] == [[1, 4, 0]]
    assert [len(c) for c in res.chain] == [1, 2, 3]
    for sub in res.chain:
        assert is_subcoalgebra(example_coalgebra(F5), sub)


def test_example_dual_is_noncommutative_three_dim():
    assert find_isomorphism(convolution_algebra(example_coalgebra(F5)), coflag3(3, F5)) is not None


def test_dual_of_matrix_algebra_not_supersolvable():
    res = supersolvable_chain(dualize_algebra(matrix_algebra(2, F5)))
    assert not res.supersolvable and not res.convolution_is_coflag


def test_double_dual_is_identity_on_tables():
    for A in catalog_algebras(F5, max_dim=4):
        assert convolution_algebra(dualize_algebra(A)).same_table(A)


def test_bad_counit_detected():
    C = example_coalgebra(F5)
    bad = Coalgebra(F5, C.comult, (1, 1, 0))
    assert {v.axiom for v in validate_coalgebra(bad)} >= {"counit-left"}


def test_span_of_nongrouplike_is_not_subcoalgebra():
    assert not is_subcoalgebra(example_coalgebra(F5), [[0, 0, 1]])


def test_triangular_dual_chain():
    res = supersolvable_chain(dualize_algebra(upper_triangular(2, F5)))
    assert res.supersolvable
