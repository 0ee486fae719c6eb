import itertools
import random

import pytest

from hochprod import exact_linear as el
from hochprod.algebra_core import (AlgebraMorphism, automorphisms_brute, direct_product,
                                   find_isomorphism, is_algebra_morphism, validate_algebra)
from hochprod.catalog import (coflag3, cyclic_group_algebra, dual_numbers, ground,
                              matrix_algebra, upper_triangular)
from hochprod.coflag import (CoflagDatum, InvalidDatum, IsoWitness, aut_group, build_coflag_algebra,
                             cf_from_hs, classify_coflag, coboundary, coflag_chain, coflag_tower,
                             datum_from_algebra_section, find_iso_first_kind, gh2_coflag, h2_pair,
                             hoc, hs_from_cf, is_coflag, trivializer_second_kind, validate_coflag,
                             verify_witness)
from hochprod.exact_linear import Field, FiniteFieldRequired

from conftest import canonical_maps

F3, F5, F7 = Field.prime(3), Field.prime(5), Field.prime(7)
QQ = Field.rationals()


def dual_datum(F, a):
    return CoflagDatum.first(F, (1, 0), (1, 0), ((0, 0), (0, a)))


def a21_datum(F):
    return CoflagDatum.first(F, (1, 1), (1, -1), ((0, 0), (0, 0)))


def test_dual_numbers_datum_validates():
    assert validate_coflag(dual_numbers(F5), dual_datum(F5, 1)) == []


def test_unnormalized_theta_rejected():
    d = CoflagDatum.first(F5, (1, 0), (1, 0), ((1, 0), (0, 0)))
    assert "normalized" in {v.axiom for v in validate_coflag(dual_numbers(F5), d)}
    with pytest.raises(InvalidDatum):
        build_coflag_algebra(dual_numbers(F5), d)


def test_non_character_rejected():
    d = CoflagDatum.first(F5, (1, 1), (1, 0), ((0, 0), (0, 0)))
    assert "character" in {v.axiom for v in validate_coflag(dual_numbers(F5), d)}


def test_second_kind_needs_unit_and_nonzero_u():
    A = dual_numbers(F5)
    assert {v.axiom for v in validate_coflag(A, CoflagDatum.second(F5, (0, 1), 0))} == {"unital", "u-nonzero"}


def test_a21_datum_gives_the_noncommutative_algebra():
    A = cyclic_group_algebra(2, F5)
    E = build_coflag_algebra(A, a21_datum(F5)).total
    assert not E.is_commutative()
    assert find_isomorphism(E, coflag3(3, F5)) is not None


def test_a21_over_q():
    A = cyclic_group_algebra(2, QQ)
    E = build_coflag_algebra(A, a21_datum(QQ)).total
    assert validate_algebra(E) == []


def test_hochschild_round_trip():
    A = upper_triangular(2, F5)
    rep = gh2_coflag(A)
    for b in rep.blocks:
        for vec in b.z_basis:
            d = CoflagDatum.first(F5, b.lam, b.Lam, [vec[i * 3:(i + 1) * 3] for i in range(3)])
            assert cf_from_hs(hs_from_cf(A, d)) == d


def test_datum_from_section_recovers_datum():
    A = dual_numbers(F7)
    d = dual_datum(F7, 3)
    E = build_coflag_algebra(A, d).total
    pi, s = canonical_maps(A, 1)
    assert datum_from_algebra_section(E, A, pi, s) == d


@pytest.mark.parametrize("A", [ground(F5), dual_numbers(F5), upper_triangular(2, F5), matrix_algebra(2, F3)],
                         ids=lambda A: A.name)
def test_second_kind_trivializer(A):
    lam = [0] * A.dim
    j = max(i for i, u in enumerate(A.unit) if u)
    lam[j] = A.field.inv(A.unit[j])
    for u in (1, 2):
        t = trivializer_second_kind(A, CoflagDatum.second(A.field, lam, u))
        assert t.stabilizes_kernel == (u == 1)


def test_coboundaries_are_cocycles():
    A = upper_triangular(2, F5)
    rep = gh2_coflag(A)
    for b in rep.blocks:
        R, piv = el.row_space(F5, b.z_basis, 9) if b.z_basis else ([], [])
        for t in itertools.product(range(5), repeat=3):
            if el.dot(F5, t, A.unit) != 0:
                continue
            img = coboundary(A, b.lam, b.Lam, t)
            assert el.is_zero(el.reduce_mod(F5, img, R, piv))


def test_t2_blocks_all_vanish():
    # T_2 is hereditary: every (lam, Lam) block has Z = B
    rep = gh2_coflag(upper_triangular(2, F5))
    assert sorted((b.dim_z, b.dim_b) for b in rep.blocks) == [(0, 0), (1, 1), (2, 2), (2, 2)]
    assert all(b.dim_h == 0 for b in rep.blocks)
    assert rep.first_kind_classes == 4 and rep.total_classes == 8


def test_dual_numbers_block():
    b = h2_pair(dual_numbers(F5), (1, 0), (1, 0))
    assert (b.dim_z, b.dim_b, b.dim_h) == (1, 0, 1)
    assert b.class_count(5) == 5


def test_gh2_over_q_uses_registered_characters():
    rep = gh2_coflag(dual_numbers(QQ))
    assert [b.dim_h for b in rep.blocks] == [1]
    assert rep.total_classes is None


def test_hoc_of_ground_and_matrices():
    assert hoc(ground(F5)).class_count == 2
    assert hoc(matrix_algebra(2, F5)).class_count == 1


def test_hoc_needs_finite_field():
    with pytest.raises(FiniteFieldRequired):
        hoc(dual_numbers(QQ))


def test_hoc_witnesses_verify():
    A = dual_numbers(F5)
    rep = hoc(A)
    assert sorted(o.size for o in rep.orbits) == [1, 4]
    for o in rep.orbits:
        for d, w in zip(o.members, o.witnesses):
            assert verify_witness(A, d, o.head, w)
            E1 = build_coflag_algebra(A, d).total
            E2 = build_coflag_algebra(A, o.head).total
            assert is_algebra_morphism(w.phi_columns(A), E1, E2)


def test_distinct_orbits_have_no_witness():
    A = dual_numbers(F5)
    autos = automorphisms_brute(A)
    assert find_iso_first_kind(A, dual_datum(F5, 0), dual_datum(F5, 1), autos) is None
    w = find_iso_first_kind(A, dual_datum(F5, 1), dual_datum(F5, 4), autos)
    assert w is not None and verify_witness(A, dual_datum(F5, 1), dual_datum(F5, 4), w)


def test_witness_inverse():
    A = dual_numbers(F5)
    autos = automorphisms_brute(A)
    d1, d2 = dual_datum(F5, 2), dual_datum(F5, 3)
    w = find_iso_first_kind(A, d1, d2, autos)
    assert verify_witness(A, d2, d1, w.inverse(A))


def test_aut_group_dual_numbers():
    # psi: x -> c x forces s0 = c^2, r(x) free: 4 * 5 elements
    G = aut_group(dual_numbers(F5), dual_datum(F5, 1))
    assert G.order == 20
    assert all(G.checks.values())


def test_aut_group_a21():
    # the swap d -> -d exchanges the characters, so only psi = id survives
    G = aut_group(cyclic_group_algebra(2, F5), a21_datum(F5))
    assert G.order == 20
    assert all(G.checks.values())


def test_aut_group_rejects_second_kind():
    with pytest.raises(ValueError):
        aut_group(ground(F5), CoflagDatum.second(F5, (1,), 1))


def test_tower_and_chain():
    k = ground(F5)
    data = [CoflagDatum.first(F5, (1,), (1,), ((0,),)),
            CoflagDatum.first(F5, (1, 0), (1, 0), ((0, 0), (0, 1)))]
    T = coflag_tower(k, data)
    assert T.top.dim == 3
    # k[X]/(X^3)
    assert is_coflag(T.top)
    assert len(coflag_chain(T.top)) == 2


def test_matrix_algebra_is_not_coflag():
    assert not is_coflag(matrix_algebra(2, F3))
    assert is_coflag(upper_triangular(2, F5))


def test_classify_dimension_two():
    found = classify_coflag(2, F5)
    assert len(found) == 2
    names = {find_isomorphism(c.algebra, dual_numbers(F5)) is not None for c in found}
    assert names == {True, False}


def test_classify_rejects_characteristic_two():
    with pytest.raises(ValueError):
        classify_coflag(3, Field.prime(2))
