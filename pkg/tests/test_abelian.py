"""abelian-core: exact set/subgroup arithmetic against enumeration oracles."""

import math
import random

import pytest

from amenact.abelian import (
    DirectSum,
    FiniteProduct,
    FiniteSubset,
    FreeZ,
    Subgroup,
    ell,
    iterated_sum,
    minkowski_sum,
    quotient_group,
    rel_ell,
    subgroup_as_group,
    subgroup_join,
    subgroup_order,
)
from amenact.errors import GroupMismatchError, UnsupportedQuotientError
from amenact.monoid import FreeAbelian, FreeCommutative

Z = FreeZ(1)


def subset(group, items):
    return FiniteSubset.of(group, items)


def closure(group, gens):
    """Brute-force subgroup closure (oracle)."""
    seen = {group.zero}
    frontier = [group.zero]
    gens = [group.element(g) for g in gens]
    gens += [group.neg(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# --- minkowski_sum ----------------------------------------------------------


def test_minkowski_sum_in_Z():
    out = minkowski_sum(subset(Z, [(0,), (1,)]), subset(Z, [(0,), (4,)]))
    assert out.elements == {(0,), (1,), (4,), (5,)}


def test_minkowski_identity_element():
    x = subset(Z, [(3,), (7,)])
    assert minkowski_sum(x, subset(Z, [(0,)])).elements == x.elements


def test_iterated_sum_matches_triple_enumeration():
    w = subset(Z, [(0,), (1,)])
    # oracle: enumerate all 2^3 sums directly
    expected = {(a + b + c,) for a in (0, 1) for b in (0, 1) for c in (0, 1)}
    got = iterated_sum(w, 3)
    assert got.elements == expected
    assert len(got) == 4


def test_minkowski_group_mismatch():
    with pytest.raises(GroupMismatchError):
        minkowski_sum(subset(Z, [(0,)]), subset(FreeZ(2), [(0, 0)]))


def test_directsum_arithmetic():
    a = DirectSum(FiniteProduct((2,)), FreeCommutative(1))
    e0 = a.basis_vector((0,))
    e1 = a.basis_vector((1,))
    assert a.add(e0, e0) == a.zero
    assert a.add(e0, e1) == a.element({(0,): (1,), (1,): (1,)})
    x = subset(a, [a.zero, e0])
    out = minkowski_sum(x, subset(a, [a.zero, e1]))
    assert len(out) == 4


# --- ell --------------------------------------------------------------------


def test_ell_values():
    assert ell(subset(Z, [(0,)])) == 0.0
    z8 = FiniteProduct((8,))
    assert ell(FiniteSubset.of(z8, z8.elements())) == pytest.approx(math.log(8))
    assert ell(subset(Z, [(0,), (1,), (4,), (5,)])) == pytest.approx(math.log(4))


# --- subgroup join / order --------------------------------------------------


def test_subgroup_join_full_in_Z2_squared():
    g = FiniteProduct((2, 2))
    b = Subgroup.generated(g, [(1, 0)])
    c = Subgroup.generated(g, [(0, 1)])
    j = subgroup_join(b, c)
    assert subgroup_order(j) == len(closure(g, [(1, 0), (0, 1)])) == 4


def test_join_with_trivial_is_identity():
    g = FiniteProduct((12,))
    b = Subgroup.generated(g, [(4,)])
    assert subgroup_join(b, Subgroup.trivial(g)) == b


def test_join_2_and_3_in_Z12():
    g = FiniteProduct((12,))
    j = subgroup_join(Subgroup.generated(g, [(2,)]), Subgroup.generated(g, [(3,)]))
    assert subgroup_order(j) == len(closure(g, [(2,), (3,)])) == 12


def test_subgroup_order_examples():
    z8 = FiniteProduct((8,))
    assert subgroup_order(Subgroup.generated(z8, [(2,)])) == len(closure(z8, [(2,)])) == 4
    assert subgroup_order(Subgroup.trivial(z8)) == 1
    z2 = FreeZ(2)
    assert subgroup_order(Subgroup.generated(z2, [(2, 0), (0, 2)])) == math.inf


@pytest.mark.parametrize("factors", [(8,), (2, 4), (12,), (2, 2, 2), (6, 4)])
@pytest.mark.parametrize("seed", range(4))
def test_subgroup_order_matches_enumeration(factors, seed):
    rng = random.Random((factors, seed).__repr__())
    g = FiniteProduct(factors)
    gens = [g.sample(rng, 0) for _ in range(rng.randint(1, 3))]
    b = Subgroup.generated(g, gens)
    assert subgroup_order(b) == len(closure(g, gens))
    for x in closure(g, gens):
        assert b.contains(x)


def test_subgroup_elements_and_membership():
    g = FiniteProduct((4, 4))
    b = Subgroup.generated(g, [(2, 0), (0, 2)])
    els = b.elements()
    assert els == closure(g, [(2, 0), (0, 2)])
    assert not b.contains((1, 0))


# --- rel_ell ----------------------------------------------------------------


def test_rel_ell_even_cosets_in_Z():
    y = subset(Z, [(0,), (1,), (2,), (3,)])
    b = Subgroup.generated(Z, [(2,)])
    assert rel_ell(y, b) == pytest.approx(math.log(2))


def test_rel_ell_inside_subgroup_is_zero():
    b = Subgroup.generated(Z, [(2,)])
    assert rel_ell(subset(Z, [(0,), (4,), (-6,)]), b) == 0.0


def test_rel_ell_coset_enumeration_oracle():
    z8 = FiniteProduct((8,))
    y = subset(z8, [(0,), (1,), (4,), (5,)])
    b = Subgroup.generated(z8, [(4,)])
    bset = closure(z8, [(4,)])
    cosets = {frozenset(z8.add(v, x) for x in bset) for v in y.elements}
    assert rel_ell(y, b) == pytest.approx(math.log(len(cosets))) == pytest.approx(math.log(2))


# --- quotients --------------------------------------------------------------


def test_quotient_z4_by_two():
    g = FiniteProduct((4,))
    q, proj = quotient_group(g, Subgroup.generated(g, [(2,)]))
    assert q == FiniteProduct((2,))
    assert proj((1,)) != q.zero and proj((2,)) == q.zero


def test_quotient_directsum_coordinatewise():
    base = FiniteProduct((4,))
    a = DirectSum(base, FreeAbelian(1))
    two_a = Subgroup.percoord(a, Subgroup.generated(base, [(2,)]))
    q, proj = quotient_group(a, two_a)
    assert isinstance(q, DirectSum) and q.base == FiniteProduct((2,))
    # coordinatewise check on a sample of elements
    rng = random.Random(7)
    for _ in range(50):
        x = a.sample(rng, 3)
        y = a.sample(rng, 3)
        assert proj(a.add(x, y)) == q.add(proj(x), proj(y))
        assert (proj(x) == q.zero) == two_a.contains(x)


def test_quotient_z_by_5z():
    q, proj = quotient_group(Z, Subgroup.generated(Z, [(5,)]))
    assert q == FiniteProduct((5,))
    assert proj((7,)) == (2 % 5,)
    assert proj((-1,)) == (4,)


def test_quotient_unit_coordinate_sublattice():
    z2 = FreeZ(2)
    q, proj = quotient_group(z2, Subgroup.generated(z2, [(1, 0)]))
    assert q == FreeZ(1)
    assert proj((5, 3)) == (3,)


def test_quotient_rejects_odd_lattices():
    z2 = FreeZ(2)
    with pytest.raises(UnsupportedQuotientError):
        quotient_group(z2, Subgroup.generated(z2, [(2, 0)]))


def test_quotient_rejects_fg_subgroups_of_direct_sums():
    a = DirectSum(FiniteProduct((2,)), FreeAbelian(1))
    b = Subgroup.generated(a, [a.basis_vector((0,))])
    with pytest.raises(UnsupportedQuotientError):
        quotient_group(a, b)


def test_mixed_subgroup_join_contains_or_raises():
    a = DirectSum(FiniteProduct((4,)), FreeAbelian(1))
    per = Subgroup.percoord(a, Subgroup.generated(a.base, [(2,)]))
    inside = Subgroup.generated(a, [a.basis_vector((0,), (2,))])
    assert subgroup_join(per, inside) == per
    outside = Subgroup.generated(a, [a.basis_vector((0,), (1,))])
    with pytest.raises(UnsupportedQuotientError):
        subgroup_join(per, outside)


def test_quotient_projection_is_hom_with_right_kernel():
    g = FiniteProduct((4, 6))
    b = Subgroup.generated(g, [(2, 3)])
    q, proj = quotient_group(g, b)
    assert q.order * b.order() == g.order
    for x in g.elements():
        for y in [(1, 1), (3, 2), (0, 5)]:
            assert proj(g.add(x, y)) == q.add(proj(x), proj(y))
        assert (proj(x) == q.zero) == b.contains(x)


# --- subgroup_as_group ------------------------------------------------------


@pytest.mark.parametrize("factors,gens", [
    ((8,), [(2,)]),
    ((4, 4), [(2, 0), (0, 2)]),
    ((4, 6), [(2, 3)]),
    ((2, 4, 3), [(1, 2, 0), (0, 0, 1)]),
])
def test_subgroup_as_group_is_an_isomorphism(factors, gens):
    g = FiniteProduct(factors)
    b = Subgroup.generated(g, gens)
    h, embed, express = subgroup_as_group(b)
    assert h.order == b.order()
    seen = set()
    for t in h.elements():
        x = embed(t)
        assert b.contains(x)
        assert express(x) == t
        seen.add(x)
    assert seen == b.elements()
    for t in h.elements():
        for s in h.elements():
            assert embed(h.add(t, s)) == g.add(embed(t), embed(s))


def test_subgroup_as_group_percoord():
    base = FiniteProduct((4,))
    a = DirectSum(base, FreeAbelian(1))
    b = Subgroup.percoord(a, Subgroup.generated(base, [(2,)]))
    h, embed, express = subgroup_as_group(b)
    assert isinstance(h, DirectSum) and h.base == FiniteProduct((2,))
    x = h.element({(3,): (1,)})
    y = embed(x)
    assert b.contains(y)
    assert express(y) == x


# --- invariants (module-level property checks) ------------------------------


def random_subset(rng, group, max_size=5, bound=6):
    n = rng.randint(1, max_size)
    return FiniteSubset(group, frozenset(group.sample(rng, bound) for _ in range(n)))


def test_ell_subadditive_under_minkowski():
    rng = random.Random(11)
    for group in [Z, FreeZ(2), FiniteProduct((8, 3))]:
        for _ in range(60):
            x, y = random_subset(rng, group), random_subset(rng, group)
            assert ell(minkowski_sum(x, y)) <= ell(x) + ell(y) + 1e-12


def test_ell_splits_over_finite_subgroup():
    # l(X + C) = l(X, C) + l(C) for a finite subgroup C and 0 in X
    rng = random.Random(12)
    g = FiniteProduct((8, 6))
    for _ in range(40):
        c = Subgroup.generated(g, [g.sample(rng, 0) for _ in range(rng.randint(1, 2))])
        cset = FiniteSubset(g, frozenset(c.elements()))
        x = random_subset(rng, g).with_zero()
        left = ell(minkowski_sum(x, cset))
        assert left == pytest.approx(rel_ell(x, c) + math.log(c.order()))


def test_rel_ell_monotone_in_both_arguments():
    rng = random.Random(13)
    g = FiniteProduct((12, 4))
    for _ in range(40):
        x = random_subset(rng, g)
        y = x.union(random_subset(rng, g))
        b = Subgroup.generated(g, [g.sample(rng, 0)])
        bigger = subgroup_join(b, Subgroup.generated(g, [g.sample(rng, 0)]))
        assert rel_ell(x, b) <= rel_ell(y, b) + 1e-12
        assert rel_ell(x, bigger) <= rel_ell(x, b) + 1e-12


def test_rel_ell_subadditive_in_pairs():
    # l(X + X', B + B') <= l(X, B) + l(X', B')
    rng = random.Random(14)
    g = FiniteProduct((6, 8))
    for _ in range(40):
        x, xp = random_subset(rng, g).with_zero(), random_subset(rng, g).with_zero()
        b = Subgroup.generated(g, [g.sample(rng, 0)])
        bp = Subgroup.generated(g, [g.sample(rng, 0)])
        lhs = rel_ell(minkowski_sum(x, xp), subgroup_join(b, bp))
        assert lhs <= rel_ell(x, b) + rel_ell(xp, bp) + 1e-12


def test_rel_ell_depends_only_on_intersection():
    # l(C, B) = l(C, B meet C) with the intersection built by enumeration
    rng = random.Random(15)
    g = FiniteProduct((4, 4))
    for _ in range(30):
        c = Subgroup.generated(g, [g.sample(rng, 0)])
        b = Subgroup.generated(g, [g.sample(rng, 0)])
        meet = Subgroup.generated(g, sorted(c.elements() & b.elements()))
        cset = FiniteSubset(g, frozenset(c.elements()))
        assert rel_ell(cset, b) == pytest.approx(rel_ell(cset, meet))
