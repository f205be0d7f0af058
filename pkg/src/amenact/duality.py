"""Character duality for finite products, annihilators, and cotrajectories.

The dual of prod Z/n_i is the same product, paired by
<x, chi> = sum x_i chi_i / n_i mod 1 (kept as an exact integer test).
Compact duals of direct sums are handled through finite windows of the
full product; out-of-window queries are refused rather than truncated, so
every reported index is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import lattices
from .abelian import DirectSum, FiniteProduct, Subgroup, ell_of_order
from .actions import Action, MatrixEndo, ShiftEndo, subgroup_trajectory
from .errors import (
    BudgetExceededError,
    GroupMismatchError,
    UndecidableFamilyError,
    WindowEscapeError,
)
from .folner import FolnerNet
from .integral import IntegralEstimate, IntegralRow
from .monoid import MSubset

ANNIHILATOR_BOUND = 2**16


@dataclass(frozen=True)
class DualGroup:
    """The Pontryagin dual of a finite product, with its exact pairing."""

    group: FiniteProduct

    @property
    def characters(self) -> FiniteProduct:
        return self.group

    def pairing(self, x, chi) -> Fraction:
        total = Fraction(0)
        for a, c, n in zip(x, chi, self.group.factors):
            total += Fraction(a * c, n)
        return total % 1

    def pairing_is_zero(self, x, chi) -> bool:
        lcm = 1
        for n in self.group.factors:
            lcm = lcm * n // math.gcd(lcm, n)
        total = 0
        for a, c, n in zip(x, chi, self.group.factors):
            total += a * c * (lcm // n)
        return total % lcm == 0


def annihilator(b: Subgroup, bound: int = ANNIHILATOR_BOUND) -> Subgroup:
    """B-perp = {chi : chi(B) = 0}, by exact enumeration of characters."""
    group = b.group
    if not isinstance(group, FiniteProduct):
        raise GroupMismatchError("annihilators are computed in finite products")
    if group.order > bound:
        raise BudgetExceededError(f"|A| = {group.order} exceeds the bound {bound}")
    dual = DualGroup(group)
    gens = b.gens
    chis = [chi for chi in group.elements() if all(dual.pairing_is_zero(g, chi) for g in gens)]
    return Subgroup.generated(group, chis)


def dual_endomorphism(phi: MatrixEndo) -> MatrixEndo:
    """The pairing adjoint: <phi x, chi> = <x, phi^ chi> for all x, chi."""
    group = phi.group
    if not isinstance(group, FiniteProduct):
        raise GroupMismatchError("dual endomorphisms act on finite products")
    n = group.factors
    k = len(n)
    rows = tuple(
        tuple((phi.rows[i][j] * n[j] // n[i]) % n[j] for i in range(k))
        for j in range(k)
    )
    return MatrixEndo(group, rows)


def dual_action(alpha: Action) -> Action:
    """Duals of all generator endomorphisms, as an action on the character
    group (the acting monoid must be commutative, which it is here)."""
    return Action(
        alpha.monoid, alpha.group, [dual_endomorphism(phi) for phi in alpha.gen_endos]
    )


def cotrajectory(gamma: Action, f_set: MSubset, u: Subgroup) -> Subgroup:
    """C_F(gamma, U) = intersection of gamma(s)^{-1}(U) over s in F."""
    group = gamma.group
    if not isinstance(group, FiniteProduct):
        raise GroupMismatchError("use windowed cotrajectories on profinite spaces")
    if group.order > ANNIHILATOR_BOUND:
        raise BudgetExceededError("cotrajectory enumeration beyond the bound")
    u_elems = u.elements()
    kept = [
        chi
        for chi in group.elements()
        if all(gamma.apply(s, chi) in u_elems for s in f_set.elements)
    ]
    return Subgroup.generated(group, kept)


@dataclass
class CtReport:
    trajectory_order: int
    cotrajectory_index: int

    @property
    def equal(self) -> bool:
        return self.trajectory_order == self.cotrajectory_index


def ct_check(alpha: Action, b: Subgroup, f_set: MSubset) -> CtReport:
    """|T_F(alpha, B)| against [A^ : C_F(alpha^, B-perp)], both exact."""
    left = subgroup_trajectory(alpha, f_set, b).order()
    hat = dual_action(alpha)
    perp = annihilator(b)
    cot = cotrajectory(hat, f_set, perp)
    right = alpha.group.order // cot.order()
    return CtReport(left, right)


# ---------------------------------------------------------------------------
# windowed profinite duals


@dataclass(frozen=True)
class WindowedProfinite:
    """A finite window K_W = prod_{i in W} base of the full product group.

    Operations must keep every constraint coordinate inside the window;
    nothing is silently truncated.
    """

    base: FiniteProduct
    index: object  # the index monoid of the discrete side
    window: tuple  # sorted index elements

    @property
    def order(self):
        return self.base.order ** len(self.window)

    def contains_index(self, i) -> bool:
        return i in self.window


@dataclass(frozen=True)
class OpenSubgroup:
    """An open subgroup cut out by congruences on finitely many coordinates.

    ``support`` lists the constrained indices; ``rows`` is a lattice basis
    (including the modulus rows) over the flattened support coordinates:
    membership of chi means its support-restriction lies in the row lattice.
    """

    space: WindowedProfinite
    support: tuple
    rows: tuple

    def index_in_space(self) -> int:
        dim = len(self.support) * len(self.space.base.factors)
        if dim == 0:
            return 1
        idx = lattices.lattice_index(lattices.hnf([list(r) for r in self.rows], dim), dim)
        return idx

    def log_index(self) -> float:
        return ell_of_order(self.index_in_space())


def vanishing_subgroup(space: WindowedProfinite, coords, base_subgroup: Subgroup) -> OpenSubgroup:
    """{chi : chi_i in B0 for the listed i}; B0 a subgroup of the base."""
    coords = tuple(sorted(tuple(c) for c in coords))
    k = len(space.base.factors)
    for c in coords:
        if not space.contains_index(c):
            raise WindowEscapeError(f"coordinate {c} is outside the window", element=c)
    _, basis, _, _ = Subgroup.generated(space.base, base_subgroup.gens)._flat()
    blocks = []
    for t in range(len(coords)):
        for row in basis:
            placed = [0] * (len(coords) * k)
            placed[t * k : (t + 1) * k] = row
            blocks.append(placed)
    return OpenSubgroup(space, coords, tuple(tuple(r) for r in blocks))


def annihilator_window(space: WindowedProfinite, b: Subgroup) -> OpenSubgroup:
    """The annihilator of a finitely supported subgroup of the direct sum,
    realized as congruence constraints over the union of supports."""
    group = b.group
    if not isinstance(group, DirectSum) or group.base != space.base:
        raise GroupMismatchError("subgroup must live in the matching direct sum")
    if b.kind != "fg":
        raise UndecidableFamilyError("windowed annihilators need finite support")
    support = tuple(sorted({i for g in b.gens for i, _ in g}))
    for c in support:
        if not space.contains_index(c):
            raise WindowEscapeError(f"support {c} is outside the window", element=c)
    k = len(space.base.factors)
    d = len(support) * k
    factors = space.base.factors
    lcm = 1
    for n in factors:
        lcm = lcm * n // math.gcd(lcm, n)
    if not b.gens:
        rows = [[factors[t % k] if j == t else 0 for j in range(d)] for t in range(d)]
        return OpenSubgroup(space, support, tuple(tuple(r) for r in rows))
    # chi is in the annihilator iff sum_i <b_i, chi_i> = 0 mod 1 for every
    # generator b; with weights lcm/n_t this is an integer congruence mod lcm
    pos = {i: t for t, i in enumerate(support)}
    weight_rows = []
    for g in b.gens:
        row = [0] * d
        for i, v in g:
            at = pos[i] * k
            for t in range(k):
                row[at + t] = v[t] * (lcm // factors[t])
        weight_rows.append(row)
    g_count = len(weight_rows)
    stacked = [row for row in zip(*weight_rows)]  # d rows of length g_count
    stacked = [list(r) for r in stacked]
    stacked += [[lcm if j == i else 0 for j in range(g_count)] for i in range(g_count)]
    combos = lattices.kernel(stacked, g_count)
    sol_rows = [c[:d] for c in combos]
    sol_rows += [[factors[t % k] if j == t else 0 for j in range(d)] for t in range(d)]
    basis = lattices.hnf(sol_rows, d)
    return OpenSubgroup(space, support, tuple(tuple(r) for r in basis))


class ProfiniteShiftAction:
    """The adjoint index-translation action on a windowed product: the dual
    of the shift on the direct sum moves constraints forward by s."""

    def __init__(self, space: WindowedProfinite, monoid):
        self.space = space
        self.monoid = monoid

    def translate_support(self, support, s):
        index = self.space.index
        moved = tuple(sorted(index.op(i, s) for i in support))
        for c in moved:
            if not self.space.contains_index(c):
                raise WindowEscapeError(f"translate by {s} escapes the window", element=s)
        return moved


def cotrajectory_window(
    gamma: ProfiniteShiftAction, f_set: MSubset, u: OpenSubgroup
) -> OpenSubgroup:
    """C_F(gamma, U) for the shift action, as one merged constraint."""
    space = gamma.space
    k = len(space.base.factors)
    union: set = set()
    translated = []
    for s in sorted(f_set.elements):
        moved = gamma.translate_support(u.support, s)
        translated.append((moved, u.rows))
        union.update(moved)
    union = tuple(sorted(union))
    pos = {i: t for t, i in enumerate(union)}
    d = len(union) * k
    factors = space.base.factors

    def preimage_rows(moved, rows):
        out = []
        covered = set(moved)
        for row in rows:
            placed = [0] * d
            for t, i in enumerate(moved):
                at = pos[i] * k
                placed[at : at + k] = row[t * k : (t + 1) * k]
            out.append(placed)
        for i in union:
            if i not in covered:
                at = pos[i] * k
                for t in range(k):
                    unit = [0] * d
                    unit[at + t] = 1
                    out.append(unit)
        return out

    acc = None
    for moved, rows in translated:
        pre = preimage_rows(moved, rows)
        acc = pre if acc is None else lattices.intersect(acc, pre, d)
    if acc is None:
        acc = [[factors[t % k] if j == t else 0 for j in range(d)] for t in range(d)]
    basis = lattices.hnf(acc, d)
    return OpenSubgroup(space, union, tuple(tuple(r) for r in basis))


def h_top_estimate(gamma, u, net: FolnerNet, prefix: int) -> IntegralEstimate:
    """Ratio table log [K : C_{F_i}(gamma, U)] / |F_i|.

    ``gamma`` is either an Action on a finite character group (with U a
    Subgroup) or a ProfiniteShiftAction (with U an OpenSubgroup); a window
    escape reports the largest valid prefix.
    """
    est = IntegralEstimate("h_top")
    for i in range(1, prefix + 1):
        fi = net.subset(i)
        try:
            if isinstance(gamma, ProfiniteShiftAction):
                cot = cotrajectory_window(gamma, fi, u)
                index = cot.index_in_space()
            else:
                cot = cotrajectory(gamma, fi, u)
                index = gamma.group.order // cot.order()
        except WindowEscapeError as err:
            raise WindowEscapeError(
                f"window escape at net index {i}; largest valid prefix is {i - 1}",
                element=err.element,
            ) from err
        value = math.log(index)
        est.rows.append(IntegralRow(i, len(fi), value, value / len(fi)))
    return est


# ---------------------------------------------------------------------------
# the bridge report


@dataclass
class BridgeRow:
    index: int
    size: int
    ell_trajectory: float
    log_index: float

    @property
    def difference(self) -> float:
        return abs(self.ell_trajectory - self.log_index)


@dataclass
class BridgeReport:
    rows: list
    exact_at_every_index: bool

    @property
    def algebraic_tail(self):
        return self.rows[-1].ell_trajectory / self.rows[-1].size

    @property
    def topological_tail(self):
        return self.rows[-1].log_index / self.rows[-1].size

    def to_csv(self) -> str:
        import csv as _csv
        import io as _io

        buf = _io.StringIO()
        w = _csv.writer(buf)
        w.writerow(["index", "size", "ell_trajectory", "log_index", "difference"])
        for r in self.rows:
            w.writerow(
                [r.index, r.size, repr(r.ell_trajectory), repr(r.log_index), repr(r.difference)]
            )
        return buf.getvalue()


def bridge_check(alpha: Action, b: Subgroup, net: FolnerNet, prefix: int) -> BridgeReport:
    """Pair the subgroup seed with its annihilator and compare trajectory
    length against cotrajectory log-index at every net index, exactly."""
    group = alpha.group
    rows = []
    exact = True
    if isinstance(group, FiniteProduct):
        hat = dual_action(alpha)
        perp = annihilator(b)
        for i in range(1, prefix + 1):
            fi = net.subset(i)
            order = subgroup_trajectory(alpha, fi, b).order()
            cot = cotrajectory(hat, fi, perp)
            index = group.order // cot.order()
            exact = exact and order == index
            rows.append(BridgeRow(i, len(fi), math.log(order), math.log(index)))
        return BridgeReport(rows, exact)
    if isinstance(group, DirectSum):
        for phi in alpha.gen_endos:
            if not isinstance(phi, ShiftEndo) or phi.base is not None:
                raise UndecidableFamilyError("bridge on direct sums needs pure shifts")
        support = sorted({i for g in b.gens for i, _ in g})
        extent = set(support)
        for s in net.subset(prefix).elements:
            for i in support:
                extent.add(group.index.op(i, s))
        space = WindowedProfinite(group.base, group.index, tuple(sorted(extent)))
        gamma = ProfiniteShiftAction(space, alpha.monoid)
        u = annihilator_window(space, b)
        for i in range(1, prefix + 1):
            fi = net.subset(i)
            order = subgroup_trajectory(alpha, fi, b).order()
            cot = cotrajectory_window(gamma, fi, u)
            index = cot.index_in_space()
            exact = exact and order == index
            rows.append(BridgeRow(i, len(fi), ell_of_order(order), ell_of_order(index)))
        return BridgeReport(rows, exact)
    raise GroupMismatchError(f"no bridge mode for {group}")


def subgroup_lattice(group: FiniteProduct, bound: int = 2**13):
    """Every subgroup of a small finite product, as (gens, elements) pairs.

    Breadth-first closure over one-element extensions; feasible up to a few
    thousand subgroups.
    """
    if group.order > bound:
        raise BudgetExceededError(f"subgroup enumeration beyond {bound} elements")
    add = group.add
    zero = group.zero
    all_elements = list(group.elements())
    trivial = frozenset({zero})
    seen = {trivial: ()}
    frontier = [(trivial, ())]
    while frontier:
        nxt = []
        for elems, gens in frontier:
            for x in all_elements:
                if x in elems:
                    continue
                new = set(elems)
                shift = x
                while shift not in elems:
                    new.update(add(h, shift) for h in elems)
                    shift = add(shift, x)
                newf = frozenset(new)
                if newf not in seen:
                    entry = (newf, gens + (x,))
                    seen[newf] = entry[1]
                    nxt.append(entry)
        frontier = nxt
    return [(gens, elems) for elems, gens in seen.items()]


def random_endomorphism(group: FiniteProduct, rng) -> MatrixEndo:
    """A uniformly random well-defined matrix endomorphism.

    Entry (i, j) must be a multiple of n_i / gcd(n_i, n_j) mod n_i for the
    map to respect the factor orders.
    """
    n = group.factors
    k = len(n)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            g = math.gcd(n[i], n[j])
            step = n[i] // g
            row.append((step * rng.randrange(g)) % n[i])
        rows.append(tuple(row))
    return MatrixEndo(group, tuple(rows))
