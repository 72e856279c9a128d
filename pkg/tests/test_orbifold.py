from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rwsdual.algebra import BiLaurent
from rwsdual.duality import family_instances, necessary_conditions
from rwsdual.orbifold import (
    chi_from_exponents,
    chi_orbifold,
    chi_principal,
    chi_sector,
    dual_frame,
    l1_vanishing_check,
    make_group,
    principal_group,
    sector_decomposition,
    sector_reconstruction,
    SeriesTruncationError,
    sector_sets,
    trivial_group,
)
from rwsdual.weights import WeightSystem

from suite import regular_suite

W111 = WeightSystem((1, 1, 1), 3)


def bl(terms, h=3):
    return BiLaurent(terms, 2 * h)


def test_principal_group_examples():
    g = principal_group(W111)
    assert g.elements == ((0, 0, 0), (1, 1, 1), (2, 2, 2))
    g = principal_group(WeightSystem((10, 6, 15), 30))
    assert len(g) == 30 and g.orders == (3, 5, 2)
    assert trivial_group(W111).elements == ((0, 0, 0),)


def test_group_closure():
    w = WeightSystem((8, 12, 3), 24)
    g = make_group(w, [(1, 0, 2), (0, 1, 3)])
    elems = set(g.elements)
    assert (0, 0, 0) in elems
    for a in elems:
        assert g.reduce([-x for x in a]) in elems
        for b in elems:
            assert g.reduce([x + y for x, y in zip(a, b)]) in elems
    prod = 1
    for d in g.orders:
        prod *= d
    assert prod % len(g) == 0


@pytest.mark.parametrize("method", ["character", "cyclotomic"])
def test_sector_examples(method):
    g = principal_group(W111)
    assert chi_sector(W111, g, (1, 1, 1), method) == bl({(1, 0): 3})
    assert chi_sector(W111, g, (0, 0, 0), method) == bl({(0, 0): -3, (1, 1): -3})


@pytest.mark.parametrize("method", ["character", "cyclotomic"])
def test_orbifold_examples(method):
    assert chi_orbifold(W111, principal_group(W111), method) == bl({(0, 0): 1, (0, 1): -1, (1, 0): -1, (1, 1): 1})
    third = Fraction(1, 3)
    expected = bl({(0, 0): 1, (third, third): 3, (2 * third, 2 * third): 3, (1, 1): 1})
    assert chi_orbifold(W111, trivial_group(W111), method) == expected


def test_untwisted_type_I_example():
    w = WeightSystem((10, 6, 15), 30)
    chi = chi_orbifold(w, trivial_group(w))
    assert len(chi) == 8
    assert sorted(p for p, _, _ in chi.terms()) == [Fraction(m - 1, 30) for m in (1, 7, 11, 13, 17, 19, 23, 29)]


def test_trivial_group_sector_is_signed_product():
    w = WeightSystem((3, 4, 5), 13)
    sector = chi_sector(w, trivial_group(w), (0, 0, 0))
    assert sector == -chi_from_exponents(w)


def test_backends_agree_small_h():
    for w in regular_suite(10):
        for g in (principal_group(w), trivial_group(w)):
            assert chi_orbifold(w, g, "character") == chi_orbifold(w, g, "cyclotomic"), w


def test_backends_agree_on_golden_systems_and_other_groups():
    for w in (WeightSystem((8, 12, 3), 24), WeightSystem((8, 6, 9), 24), WeightSystem((4, 5, 7), 19)):
        g = principal_group(w)
        assert chi_orbifold(w, g, "character") == chi_orbifold(w, g, "cyclotomic")
    # symmetry groups of x^3 + y^2 + yz^4 and x^3 + y^5 + z^2
    w = WeightSystem((8, 12, 3), 24)
    g = make_group(w, [(1, 0, 0)])
    assert chi_orbifold(w, g, "character") == chi_orbifold(w, g, "cyclotomic")
    w = WeightSystem((10, 6, 15), 30)
    for gens in ([(1, 0, 0)], [(1, 0, 0), (0, 1, 0)], [(0, 0, 1)]):
        g = make_group(w, gens)
        assert chi_orbifold(w, g, "character") == chi_orbifold(w, g, "cyclotomic")


def test_group_without_invariant_polynomial_is_rejected():
    w = WeightSystem((3, 4, 5), 13)
    g = make_group(w, [(1, 2, 0)])
    for method in ("character", "cyclotomic"):
        with pytest.raises(SeriesTruncationError):
            chi_orbifold(w, g, method)


def test_principal_coefficients_are_integers():
    for w in regular_suite(30):
        assert all(c.denominator == 1 for _, _, c in chi_principal(w).terms() if isinstance(c, Fraction)), w


def test_unknown_method():
    with pytest.raises(ValueError):
        chi_sector(W111, principal_group(W111), (0, 0, 0), "numeric")


def test_sector_sets_examples():
    L0, L1, L2 = sector_sets(W111)
    assert L2 == () and 1 in L0
    for w in regular_suite(30):
        assert 1 in sector_sets(w)[0]


def test_l1_vanishing_examples():
    assert l1_vanishing_check(WeightSystem((10, 6, 15), 30))
    assert l1_vanishing_check(WeightSystem((8, 12, 3), 24))
    assert sector_sets(WeightSystem((11, 9, 4), 31))[1] == ()
    assert l1_vanishing_check(WeightSystem((11, 9, 4), 31))


def _dual_candidates(h_max):
    return [w for w in regular_suite(h_max) if necessary_conditions(w).passed]


def test_f_exponent_duality_and_extremes():
    for w in _dual_candidates(40):
        sd = sector_decomposition(w)
        top = 1 - Fraction(2 * w.epsilon, w.h)
        for l, f in sd.f.items():
            assert f + sd.f[w.h - l] == top
        assert sd.f[1] == top == max(sd.f.values())
        assert sd.f[w.h - 1] == 0 == min(sd.f.values())
        assert all(v >= 0 for v in sd.nu.values())


def test_type_specific_nu():
    for m in family_instances(40):
        sd = sector_decomposition(m.weights)
        if m.family == "III":
            assert set(sd.nu.values()) == {2}
        if m.family == "II":
            p1, p2, p3 = m.param("p1"), m.param("p2"), m.param("p3")
            for l, v in sd.nu.items():
                if l % (p1 * p2) == 0:
                    assert v == 0
                if l % p3 == 0:
                    assert v == 1


def test_sector_reconstruction_for_family_instances():
    for m in family_instances(40):
        w = m.weights
        assert sector_reconstruction(w) == dual_frame(w, chi_principal(w)), w


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(regular_suite(24)))
def test_untwisted_matches_exponents(w):
    assert chi_orbifold(w, trivial_group(w)) == chi_from_exponents(w)


def test_type_IV_nu_is_one_on_both_backends():
    w = WeightSystem((4, 2, 3), 8)
    g = principal_group(w)
    sd = sector_decomposition(w)
    assert sd.L2 and set(sd.nu.values()) == {1}
    for l in sd.L2:
        raw = chi_sector(w, g, (l, l, l), "cyclotomic") * Fraction(-1, len(g))
        assert dual_frame(w, raw) == BiLaurent({(sd.f[l], sd.f[l]): 1}, 16)
