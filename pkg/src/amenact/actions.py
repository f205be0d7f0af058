"""Monoid actions by endomorphisms, trajectories, and entropy estimates.

An action is defined by one endomorphism per canonical monoid generator;
group families additionally require the generators to be automorphisms.
Trajectory growth is computed exactly: elementwise for finite seed sets,
through subgroup canonical forms (exact big-integer orders) for subgroup
seeds, which is what keeps the box-scale checks of the addition and
vanishing laws cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import lattices
from .abelian import (
    AbelianGroup,
    DirectSum,
    FiniteProduct,
    FiniteSubset,
    FreeZ,
    QuotientProjection,
    Subgroup,
    ell_of_order,
    quotient_group,
    subgroup_as_group,
)
from .errors import (
    BudgetExceededError,
    GroupMismatchError,
    MonoidMismatchError,
    NotInvariantError,
    UndecidableFamilyError,
)
from .folner import DEFAULT_ELEMENT_BUDGET, FolnerNet, translate_net
from .integral import IntegralEstimate, IntegralRow, SetFunction
from .monoid import (
    FiniteAbelianMonoid,
    MonoidHom,
    MSubset,
    ProductMonoid,
    SemidirectZZ,
)


# ---------------------------------------------------------------------------
# endomorphisms


class Endomorphism:
    group: AbelianGroup

    def apply(self, x):
        raise NotImplementedError

    def apply_set(self, xs: frozenset) -> frozenset:
        apply = self.apply
        return frozenset(apply(x) for x in xs)

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        raise NotImplementedError

    def power(self, k: int) -> "Endomorphism":
        if k < 0:
            return self.inverse().power(-k)
        acc = identity_endo(self.group)
        base = self
        while k:
            if k & 1:
                acc = acc.compose(base)
            base = base.compose(base)
            k >>= 1
        return acc

    def inverse(self) -> "Endomorphism":
        raise NotImplementedError

    def is_automorphism(self) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class MatrixEndo(Endomorphism):
    """x -> M x on Z^r or on prod Z/n_i (columns must satisfy the order
    congruences M[i][j] * n_j = 0 mod n_i for the map to be well defined)."""

    group: AbelianGroup
    rows: tuple

    def __post_init__(self):
        k = len(self.rows)
        if isinstance(self.group, FiniteProduct):
            n = self.group.factors
            if k != len(n) or any(len(r) != len(n) for r in self.rows):
                raise GroupMismatchError("matrix shape does not match the group")
            for i in range(k):
                for j in range(k):
                    if (self.rows[i][j] * n[j]) % n[i]:
                        raise GroupMismatchError(
                            f"entry ({i},{j}) violates the order congruence"
                        )
        elif isinstance(self.group, FreeZ):
            if k != self.group.rank or any(len(r) != k for r in self.rows):
                raise GroupMismatchError("matrix shape does not match the group")
        else:
            raise GroupMismatchError("matrix endomorphisms act on flat groups")

    def apply(self, x):
        rows = self.rows
        if isinstance(self.group, FiniteProduct):
            n = self.group.factors
            return tuple(
                sum(r[j] * x[j] for j in range(len(x))) % n[i]
                for i, r in enumerate(rows)
            )
        return tuple(sum(r[j] * x[j] for j in range(len(x))) for r in rows)

    def apply_set(self, xs):
        if len(self.rows) == 1:
            a = self.rows[0][0]
            if isinstance(self.group, FiniteProduct):
                n = self.group.factors[0]
                return frozenset(((a * x[0]) % n,) for x in xs)
            return frozenset((a * x[0],) for x in xs)
        return frozenset(self.apply(x) for x in xs)

    def compose(self, other):
        if not isinstance(other, MatrixEndo) or other.group != self.group:
            raise GroupMismatchError("composition across different groups")
        k = len(self.rows)
        prod = tuple(
            tuple(sum(self.rows[i][t] * other.rows[t][j] for t in range(k)) for j in range(k))
            for i in range(k)
        )
        if isinstance(self.group, FiniteProduct):
            n = self.group.factors
            prod = tuple(
                tuple(prod[i][j] % n[i] for j in range(k)) for i in range(k)
            )
        return MatrixEndo(self.group, prod)

    def determinant_unit(self) -> bool:
        rows = [list(r) for r in self.rows]
        return abs(_det(rows)) == 1

    def is_automorphism(self):
        if isinstance(self.group, FreeZ):
            return self.determinant_unit()
        image = Subgroup.generated(
            self.group, [self.apply(_unit(len(self.group.factors), j)) for j in range(len(self.group.factors))]
        )
        return image.order() == self.group.order

    def inverse(self):
        if isinstance(self.group, FreeZ):
            inv = lattices.unimodular_inverse([list(r) for r in self.rows])
            return MatrixEndo(self.group, tuple(tuple(r) for r in inv))
        if self.group.order > 2**16:
            raise BudgetExceededError("inversion beyond the enumeration bound")
        k = len(self.group.factors)
        cols = []
        targets = {_unit(k, j): j for j in range(k)}
        found = {}
        for x in self.group.elements():
            y = self.apply(x)
            if y in targets and targets[y] not in found:
                found[targets[y]] = x
        if len(found) != k:
            raise GroupMismatchError("endomorphism is not invertible")
        for j in range(k):
            cols.append(found[j])
        rows = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
        return MatrixEndo(self.group, rows)


def _unit(k, j):
    return tuple(int(i == j) for i in range(k))


def _det(rows):
    n = len(rows)
    if n == 0:
        return 1
    from fractions import Fraction

    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return int(det)


@dataclass(frozen=True)
class ShiftEndo(Endomorphism):
    """Index translation composed with a base endomorphism on a direct sum.

    The translation vector lives in Z^d; coordinates whose translated index
    leaves the index monoid are annihilated (that is what makes one-sided
    truncating shifts locally nilpotent).
    """

    group: DirectSum
    shift: tuple
    base: MatrixEndo | None = None  # None = identity on the base

    def _base_apply(self):
        if self.base is None:
            return lambda v: v
        return self.base.apply

    def apply(self, x):
        index = self.group.index
        move = self.shift
        bapply = self._base_apply()
        bzero = self.group.base.zero
        out = {}
        for i, v in x:
            j = tuple(a + b for a, b in zip(i, move))
            if not index.contains(j):
                continue
            w = bapply(v)
            if w == bzero:
                continue
            cur = out.get(j)
            if cur is None:
                out[j] = w
            else:
                w2 = self.group.base.add(cur, w)
                if w2 == bzero:
                    del out[j]
                else:
                    out[j] = w2
        return frozenset(out.items())

    def compose(self, other):
        if not isinstance(other, ShiftEndo) or other.group != self.group:
            raise GroupMismatchError("composition across different groups")
        # self after other: translations add; bases compose
        move = tuple(a + b for a, b in zip(self.shift, other.shift))
        if self.base is None:
            base = other.base
        elif other.base is None:
            base = self.base
        else:
            base = self.base.compose(other.base)
        return ShiftEndo(self.group, move, base)

    def is_automorphism(self):
        translated_ok = self.group.index.is_group or not any(self.shift)
        base_ok = self.base is None or self.base.is_automorphism()
        return translated_ok and base_ok

    def inverse(self):
        if not self.is_automorphism():
            raise GroupMismatchError("shift endomorphism is not invertible")
        inv_base = None if self.base is None else self.base.inverse()
        return ShiftEndo(self.group, tuple(-a for a in self.shift), inv_base)


@dataclass(frozen=True)
class _IdentityEndo(Endomorphism):
    group: AbelianGroup

    def apply(self, x):
        return x

    def apply_set(self, xs):
        return xs

    def compose(self, other):
        return other

    def is_automorphism(self):
        return True

    def inverse(self):
        return self


def identity_endo(group) -> Endomorphism:
    if isinstance(group, DirectSum):
        return ShiftEndo(group, (0,) * group.index.dim, None)
    if isinstance(group, (FreeZ, FiniteProduct)):
        k = group.rank if isinstance(group, FreeZ) else len(group.factors)
        return MatrixEndo(group, tuple(_unit(k, j) for j in range(k)))
    return _IdentityEndo(group)


def scalar_endo(group, a: int) -> Endomorphism:
    """Multiplication by a."""
    if isinstance(group, FreeZ):
        k = group.rank
    elif isinstance(group, FiniteProduct):
        k = len(group.factors)
    else:
        raise GroupMismatchError("scalar endomorphisms act on flat groups")
    return MatrixEndo(group, tuple(tuple(a * int(i == j) for j in range(k)) for i in range(k)))


def shift_endo(group: DirectSum, move, base: MatrixEndo | None = None) -> ShiftEndo:
    return ShiftEndo(group, tuple(move), base)


# ---------------------------------------------------------------------------
# actions


class Action:
    """A left action by endomorphisms over a commutative acting monoid."""

    def __init__(self, monoid, group, gen_endos, validate=True):
        if isinstance(monoid, SemidirectZZ):
            raise UndecidableFamilyError("semidirect acting monoids are not supported")
        self.monoid = monoid
        self.group = group
        self.gen_endos = tuple(gen_endos)
        self._cache = {}
        if validate:
            self._validate()

    @classmethod
    def from_generators(cls, monoid, group, gen_endos) -> "Action":
        return cls(monoid, group, gen_endos)

    def _validate(self):
        gens = self.monoid.generators()
        if len(gens) != len(self.gen_endos):
            raise MonoidMismatchError(
                f"need {len(gens)} generator endomorphisms, got {len(self.gen_endos)}"
            )
        for phi in self.gen_endos:
            if phi.group != self.group:
                raise GroupMismatchError("generator endomorphism on the wrong group")
        for i, phi in enumerate(self.gen_endos):
            for psi in self.gen_endos[i + 1:]:
                if phi.compose(psi) != psi.compose(phi):
                    raise MonoidMismatchError("generator endomorphisms must commute")
        if self.monoid.is_group:
            for phi in self.gen_endos:
                if not phi.is_automorphism():
                    raise MonoidMismatchError(
                        "group actions need invertible generator images"
                    )
        if isinstance(self.monoid, (FiniteAbelianMonoid, ProductMonoid)):
            for g, phi in zip(self.monoid.generators(), self.gen_endos):
                order = _generator_order(self.monoid, g)
                if order is not None and phi.power(order) != identity_endo(self.group):
                    raise MonoidMismatchError(
                        "generator image must respect the generator's order"
                    )

    def endo(self, s) -> Endomorphism:
        if s in self._cache:
            return self._cache[s]
        exponents = self.monoid.generator_exponents(s)
        acc = identity_endo(self.group)
        for phi, k in zip(self.gen_endos, exponents):
            if k:
                acc = acc.compose(phi.power(k))
        self._cache[s] = acc
        return acc

    def apply(self, s, x):
        return self.endo(s).apply(x)

    def apply_set(self, s, xs: frozenset) -> frozenset:
        return self.endo(s).apply_set(xs)

    def __repr__(self):
        return f"Action({self.monoid} on {self.group})"


def action_from_generators(monoid, group, gen_endos) -> Action:
    """Validated action from one endomorphism per canonical generator."""
    return Action(monoid, group, gen_endos)


def _generator_order(monoid, g):
    if isinstance(monoid, FiniteAbelianMonoid):
        j = g.index(1)
        return monoid.factors[j]
    if isinstance(monoid, ProductMonoid):
        at = 0
        for p in monoid.parts:
            block = g[at : at + p.dim]
            if any(block):
                if isinstance(p, FiniteAbelianMonoid):
                    return p.factors[block.index(1)]
                return None
            at += p.dim
    return None


class ConjugatedAction(Action):
    """xi . alpha(eta^{-1}(t)) . xi^{-1}, for isomorphisms xi, eta."""

    def __init__(self, base_action, xi, eta):
        self.base_action = base_action
        self.xi = xi
        self.eta = eta
        self.monoid = eta.target
        self.group = xi.target
        self._cache = {}

    def endo(self, t):
        if t not in self._cache:
            inner = self.base_action.endo(self.eta.inv(t))
            self._cache[t] = _SandwichEndo(self.group, self.xi, inner)
        return self._cache[t]


@dataclass(frozen=True)
class _SandwichEndo(Endomorphism):
    group: AbelianGroup
    xi: object
    inner: Endomorphism

    def apply(self, x):
        return self.xi.fwd(self.inner.apply(self.xi.inv(x)))

    def compose(self, other):
        raise UndecidableFamilyError("conjugated endomorphisms do not compose here")


@dataclass(frozen=True)
class GroupIso:
    source: AbelianGroup
    target: AbelianGroup
    fwd: object
    inv: object
    label: str = "iso"

    def __call__(self, x):
        return self.fwd(x)

    @classmethod
    def identity(cls, group):
        return cls(group, group, lambda x: x, lambda x: x, "id")

    @classmethod
    def negation(cls, group):
        return cls(group, group, group.neg, group.neg, "-id")

    @classmethod
    def from_matrix(cls, group, rows):
        endo = MatrixEndo(group, tuple(tuple(r) for r in rows))
        if not endo.is_automorphism():
            raise GroupMismatchError("matrix is not an automorphism")
        inv = endo.inverse()
        return cls(group, group, endo.apply, inv.apply, "matrix")

    def check(self, rng, trials=50, bound=5):
        for _ in range(trials):
            x = self.source.sample(rng, bound)
            y = self.source.sample(rng, bound)
            if self.fwd(self.source.add(x, y)) != self.target.add(self.fwd(x), self.fwd(y)):
                raise GroupMismatchError("map is not additive")
            if self.inv(self.fwd(x)) != x:
                raise GroupMismatchError("inverse does not invert")


@dataclass(frozen=True)
class MonoidIso:
    source: object
    target: object
    fwd: object
    inv: object
    label: str = "iso"

    @classmethod
    def identity(cls, monoid):
        return cls(monoid, monoid, lambda x: x, lambda x: x, "id")

    @classmethod
    def negation(cls, monoid):
        if not monoid.is_group:
            raise MonoidMismatchError("negation needs a group")
        return cls(monoid, monoid, monoid.inverse, monoid.inverse, "-id")


def conjugate_action(alpha: Action, xi: GroupIso, eta: MonoidIso) -> Action:
    """The weakly conjugated action beta with xi . alpha(s) = beta(eta(s)) . xi."""
    if xi.source != alpha.group or eta.source != alpha.monoid:
        raise GroupMismatchError("isomorphisms do not match the action")
    return ConjugatedAction(alpha, xi, eta)


# ---------------------------------------------------------------------------
# trajectories


def trajectory(
    alpha: Action, f_set: MSubset, x: FiniteSubset, budget: int = DEFAULT_ELEMENT_BUDGET
) -> FiniteSubset:
    """T_F(X): the Minkowski sum of the images alpha(s)(X) over s in F."""
    if f_set.monoid != alpha.monoid:
        raise MonoidMismatchError("F lives in a different monoid")
    if x.group != alpha.group:
        raise GroupMismatchError("X lives in a different group")
    if not x.elements:
        raise ValueError("the seed set must be nonempty")
    group = alpha.group
    acc = None
    for s in sorted(f_set.elements):
        img = alpha.apply_set(s, x.elements)
        acc = img if acc is None else group.sumset(acc, img)
        if len(acc) > budget:
            raise BudgetExceededError(
                f"trajectory exceeded {budget} elements", completed=s
            )
    return FiniteSubset(group, acc)


class _IncrementalTrajectory:
    """One-slot cache exploiting T_{F u D} = T_F + T_D on increasing nets."""

    def __init__(self, alpha, x: FiniteSubset, budget):
        self.alpha = alpha
        self.x = x
        self.budget = budget
        self._last_f = frozenset()
        self._last_t = None

    def counts_for(self, f_set: MSubset) -> int:
        group = self.alpha.group
        if self._last_t is not None and self._last_f <= f_set.elements:
            acc = self._last_t
            new = f_set.elements - self._last_f
        else:
            acc = None
            new = f_set.elements
        for s in sorted(new):
            img = self.alpha.apply_set(s, self.x.elements)
            acc = img if acc is None else group.sumset(acc, img)
            if len(acc) > self.budget:
                raise BudgetExceededError(
                    f"trajectory exceeded {self.budget} elements", completed=s
                )
        self._last_f = f_set.elements
        self._last_t = acc
        return len(acc)


def trajectory_function(
    alpha: Action, x: FiniteSubset, budget: int = DEFAULT_ELEMENT_BUDGET
) -> SetFunction:
    """The trajectory-length function F -> log |T_F(X)|."""
    inc = _IncrementalTrajectory(alpha, x, budget)
    return SetFunction(
        alpha.monoid,
        lambda f: math.log(inc.counts_for(f)),
        f"traj({len(x)} pts)",
        probe=False,
    )


def subgroup_trajectory(alpha: Action, f_set: MSubset, b: Subgroup) -> Subgroup:
    """T_F(B) = <alpha(s)(B) : s in F>, with exact order."""
    if b.group != alpha.group:
        raise GroupMismatchError("subgroup lives in a different group")
    if b.kind == "percoord":
        base_images = []
        for s in sorted(f_set.elements):
            endo = alpha.endo(s)
            if not isinstance(endo, ShiftEndo) or not alpha.group.index.is_group:
                raise UndecidableFamilyError(
                    "coordinatewise trajectories need full shift actions"
                )
            base = endo.base
            if base is None:
                base_images.append(b.base_subgroup)
            else:
                base_images.append(
                    Subgroup.generated(
                        alpha.group.base, [base.apply(g) for g in b.base_subgroup.gens]
                    )
                )
        acc = base_images[0]
        for extra in base_images[1:]:
            acc = acc.join(extra)
        return Subgroup.percoord(alpha.group, acc)
    gens = []
    for s in sorted(f_set.elements):
        endo = alpha.endo(s)
        gens.extend(endo.apply(g) for g in b.gens)
    return Subgroup.generated(alpha.group, gens)


# ---------------------------------------------------------------------------
# entropy estimates


@dataclass
class EntropyEstimate:
    """Ratio table of log |T_{F_i}(X)| / |F_i| for one seed along one net."""

    estimate: IntegralEstimate
    counts: list
    seed_label: str
    net_label: str

    @property
    def tail(self):
        return self.estimate.tail

    @property
    def oscillation(self):
        return self.estimate.oscillation

    def to_csv(self) -> str:
        import csv as _csv
        import io as _io

        buf = _io.StringIO()
        w = _csv.writer(buf)
        w.writerow(["index", "size", "count", "ratio"])
        for row, count in zip(self.estimate.rows, self.counts):
            w.writerow([row.index, row.size, count, repr(float(row.ratio))])
        return buf.getvalue()


def h_alg_estimate(
    alpha: Action,
    seed,
    net: FolnerNet,
    prefix: int,
    budget: int = DEFAULT_ELEMENT_BUDGET,
) -> EntropyEstimate:
    """Entropy ratio table for a finite seed set or a subgroup seed.

    Subgroup seeds ride the canonical-form machinery (orders stay exact
    even when they are astronomically large); set seeds materialize the
    trajectory elementwise under the element budget.
    """
    if prefix < 1:
        raise ValueError("prefix must be >= 1")
    est = IntegralEstimate("h_alg")
    counts = []
    if isinstance(seed, Subgroup):
        running = None
        done_sets: frozenset = frozenset()
        for i in range(1, prefix + 1):
            fi = net.subset(i)
            if net.increasing and running is not None and done_sets <= fi.elements:
                extra = MSubset(alpha.monoid, fi.elements - done_sets)
                if len(extra):
                    running = running.join(subgroup_trajectory(alpha, extra, seed))
            else:
                running = subgroup_trajectory(alpha, fi, seed)
            done_sets = fi.elements
            order = running.order()
            counts.append(order)
            value = ell_of_order(order)
            est.rows.append(IntegralRow(i, len(fi), value, value / len(fi)))
        return EntropyEstimate(est, counts, "subgroup", net.label)
    if not isinstance(seed, FiniteSubset):
        raise GroupMismatchError("seed must be a FiniteSubset or a Subgroup")
    inc = _IncrementalTrajectory(alpha, seed, budget)
    for i in range(1, prefix + 1):
        fi = net.subset(i)
        count = inc.counts_for(fi)
        counts.append(count)
        value = math.log(count)
        est.rows.append(IntegralRow(i, len(fi), value, value / len(fi)))
    return EntropyEstimate(est, counts, f"set({len(seed)})", net.label)


@dataclass
class GeneratorCertificate:
    window_scale: int
    monoid_scale: int
    covered: bool


@dataclass
class EntReport:
    """Entropy over finite subgroups: certified value or flagged lower bound."""

    value: float
    certified: bool
    estimate: EntropyEstimate
    certificate: GeneratorCertificate | None
    note: str = ""


def _window_certificate(alpha, seed: Subgroup, scale: int, cap: int = 4096):
    """Check that the full trajectory of the seed exhausts the torsion part
    over a bounded window: every window element must land in T_F(seed) for
    a matching monoid window F."""
    group = alpha.group
    if isinstance(group, FiniteProduct):
        targets = set(group.elements()) if group.order <= cap else None
        if targets is None:
            raise BudgetExceededError("certificate window exceeds the cap")
    elif isinstance(group, DirectSum):
        targets = set(group.window_elements(scale, cap))
    else:
        raise GroupMismatchError("certificates need torsion groups")
    for m_scale in range(scale, 4 * scale + 5):
        f = alpha.monoid.window(m_scale)
        t = subgroup_trajectory(alpha, f, seed)
        if all(t.contains(x) for x in targets):
            return GeneratorCertificate(scale, m_scale, True)
    return GeneratorCertificate(scale, 4 * scale + 4, False)


def ent_estimate(
    alpha: Action,
    generator_subgroup: Subgroup | None,
    family,
    net: FolnerNet,
    prefix: int,
    cert_scale: int = 1,
    budget: int = DEFAULT_ELEMENT_BUDGET,
) -> EntReport:
    """Entropy over finite subgroups.

    With a generating subgroup (plus a window certificate that its full
    trajectory exhausts the torsion part), the single estimate is the
    entropy.  Otherwise the max over the supplied family is returned,
    flagged as a lower bound.
    """
    if not alpha.group.is_torsion:
        raise GroupMismatchError("subgroup entropy needs a torsion group")
    if generator_subgroup is not None:
        cert = _window_certificate(alpha, generator_subgroup, cert_scale)
        est = h_alg_estimate(alpha, generator_subgroup, net, prefix, budget)
        note = "" if cert.covered else "window certificate failed; value is a lower bound"
        return EntReport(est.tail, cert.covered, est, cert, note)
    if not family:
        raise ValueError("supply a generator subgroup or a family of subgroups")
    best = None
    for b in family:
        est = h_alg_estimate(alpha, b, net, prefix, budget)
        if best is None or est.tail > best.tail:
            best = est
    return EntReport(best.tail, False, best, None, "max over supplied family (lower bound)")


# ---------------------------------------------------------------------------
# restriction / quotient / addition


def restriction(alpha: Action, embed: MonoidHom) -> Action:
    """The action of the embedded submonoid: t -> alpha(embed(t))."""
    if embed.target != alpha.monoid:
        raise MonoidMismatchError("embedding does not land in the acting monoid")
    endos = [alpha.endo(embed(g)) for g in embed.source.generators()]
    return Action(embed.source, alpha.group, endos)


def _check_invariant(alpha: Action, b: Subgroup):
    for k, phi in enumerate(alpha.gen_endos):
        if b.kind == "percoord":
            if not isinstance(phi, ShiftEndo):
                raise NotInvariantError("coordinatewise subgroups need shift actions")
            base = phi.base
            if base is not None:
                for g in b.base_subgroup.gens:
                    if not b.base_subgroup.contains(base.apply(g)):
                        raise NotInvariantError(
                            "base image escapes the subgroup", generator=k, element=g
                        )
        else:
            for g in b.gens:
                if not b.contains(phi.apply(g)):
                    raise NotInvariantError(
                        "generator image escapes the subgroup", generator=k, element=g
                    )


def _induced_matrix(group_small, embed, express, phi):
    k = len(group_small.factors) if isinstance(group_small, FiniteProduct) else group_small.rank
    cols = []
    for j in range(k):
        image = phi.apply(embed(_unit(k, j)))
        cols.append(express(image))
    rows = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
    return MatrixEndo(group_small, rows)


def quotient_and_sub_actions(alpha: Action, b: Subgroup):
    """(alpha_B, alpha_{A/B}, context) for an invariant subgroup B.

    The context carries the presentation of B and the quotient projection,
    so callers can translate seeds between the three groups.
    """
    if b.group != alpha.group:
        raise GroupMismatchError("subgroup lives in a different group")
    _check_invariant(alpha, b)
    b_group, embed, express = subgroup_as_group(b)
    q_group, proj = quotient_group(alpha.group, b)

    sub_endos = []
    quo_endos = []
    for phi in alpha.gen_endos:
        # induced endomorphism on B
        if isinstance(phi, ShiftEndo) and b.kind == "percoord":
            if phi.base is None:
                sub_base = None
            else:
                b0_group, b0_embed, b0_express = subgroup_as_group(b.base_subgroup)
                sub_base = _induced_matrix(b0_group, b0_embed, b0_express, phi.base)
            if isinstance(b_group, DirectSum):
                sub_endos.append(ShiftEndo(b_group, phi.shift, sub_base))
            else:
                sub_endos.append(identity_endo(b_group))
        elif isinstance(phi, ShiftEndo):
            sub_endos.append(_induced_sum_endo(alpha.group, b_group, embed, express, phi))
        else:
            sub_endos.append(_induced_matrix(b_group, embed, express, phi))

        # induced endomorphism on A/B, by projection shape
        if proj.kind == "identity":
            quo_endos.append(phi)
        elif proj.kind == "trivial":
            quo_endos.append(identity_endo(q_group))
        elif proj.kind == "percoord":
            (base_proj,) = proj.data
            if phi.base is None:
                quo_base = None
            else:
                quo_base = _induced_quotient_matrix(base_proj, phi.base)
            quo_endos.append(ShiftEndo(q_group, phi.shift, quo_base))
        else:
            quo_endos.append(_induced_quotient_matrix(proj, phi))

    sub_action = Action(alpha.monoid, b_group, sub_endos)
    quo_action = Action(alpha.monoid, q_group, quo_endos)
    context = {
        "b_group": b_group,
        "embed": embed,
        "express": express,
        "quotient": q_group,
        "projection": proj,
    }
    return sub_action, quo_action, context


def _induced_sum_endo(big_group, b_group, embed, express, phi):
    if isinstance(b_group, FiniteProduct):
        return _induced_matrix(b_group, embed, express, phi)
    raise UndecidableFamilyError("finitely generated direct-sum subactions need shifts")


def _induced_quotient_matrix(proj: QuotientProjection, phi: MatrixEndo) -> Endomorphism:
    q = proj.target
    if isinstance(q, FiniteProduct) and not q.factors:
        return identity_endo(q)
    k = len(q.factors) if isinstance(q, FiniteProduct) else q.rank
    cols = []
    for j in range(k):
        x = proj.section(_unit(k, j))
        cols.append(proj(phi.apply(x)))
    rows = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
    return MatrixEndo(q, rows)


@dataclass
class AdditionReport:
    total: EntReport
    sub: EntReport
    quotient: EntReport
    exact_at_every_index: bool

    @property
    def residual(self) -> float:
        return abs(self.total.value - self.sub.value - self.quotient.value)


def addition_check(
    alpha: Action,
    b: Subgroup,
    net: FolnerNet,
    prefix: int,
    seed_total: Subgroup,
    seed_sub: Subgroup,
    seed_quotient: Subgroup,
) -> AdditionReport:
    """Entropy additivity over an invariant subgroup, with the per-index
    integer identity |T(A-seed)| = |T(B-seed)| * |T(Q-seed)| checked exactly
    whenever it holds."""
    sub_action, quo_action, _ = quotient_and_sub_actions(alpha, b)
    total = ent_estimate(alpha, seed_total, None, net, prefix)
    sub = ent_estimate(sub_action, seed_sub, None, net, prefix)
    quo = ent_estimate(quo_action, seed_quotient, None, net, prefix)
    exact = all(
        t == s * q
        for t, s, q in zip(total.estimate.counts, sub.estimate.counts, quo.estimate.counts)
    )
    return AdditionReport(total, sub, quo, exact)


# ---------------------------------------------------------------------------
# local nilpotency probe


@dataclass
class NilpotencyReport:
    annihilator: object  # the monoid element found, or None
    tail: float | None
    note: str = ""


def locally_nilpotent_probe(
    alpha: Action, x: FiniteSubset, net: FolnerNet, prefix: int, window_scale: int = 6
) -> NilpotencyReport:
    """Search a window for s annihilating X; if found, the entropy tail
    along the right-translated net F_i s is reported (it vanishes)."""
    if alpha.monoid.is_group:
        return NilpotencyReport(None, None, "no group admits a weakly locally nilpotent action")
    zero = alpha.group.zero
    if all(v == zero for v in x.elements):
        return NilpotencyReport(alpha.monoid.identity, 0.0, "seed is zero")
    for s in sorted(alpha.monoid.window(window_scale).elements):
        if all(alpha.apply(s, v) == zero for v in x.elements):
            shift = MSubset(alpha.monoid, frozenset({s}))
            est = h_alg_estimate(alpha, x, translate_net(net, shift), prefix)
            return NilpotencyReport(s, est.tail)
    return NilpotencyReport(None, None, f"no annihilator in window {window_scale}")
