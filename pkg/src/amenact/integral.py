"""The subadditive integral: averaged limits f(F_i)/|F_i| along a net.

The class of admissible functions (increasing, subadditive, left
subinvariant, bounded on singletons) is sampled, not proved; the limit
itself exists by the subadditive convergence theorem for cancellative
amenable semigroups, so an estimate reports the ratio table, its tail
value, and the tail oscillation instead of pretending to certify a limit.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass, field

from .errors import MonoidMismatchError
from .folner import FolnerNet, kernel_box_net
from .monoid import MonoidHom, MSubset, Section, set_product


class SetFunction:
    """Memoized nonnegative function on the finite subsets of a monoid."""

    def __init__(self, monoid, evaluator, label="f", probe=True):
        self.monoid = monoid
        self._evaluator = evaluator
        self.label = label
        self._memo = {}
        if probe:
            one = MSubset(monoid, frozenset({monoid.identity}))
            if evaluator(one) < 0:
                raise ValueError(f"{label} is negative on the singleton identity")

    def __call__(self, f_set: MSubset) -> float:
        if f_set.monoid != self.monoid:
            raise MonoidMismatchError(f"{self.label} expects subsets of {self.monoid}")
        key = f_set.sorted_key()
        if key not in self._memo:
            value = self._evaluator(f_set)
            if value < 0:
                raise ValueError(f"{self.label} is negative on {key[:4]}...")
            self._memo[key] = value
        return self._memo[key]

    def __repr__(self):
        return f"SetFunction({self.label})"


def card(monoid) -> SetFunction:
    return SetFunction(monoid, lambda f: len(f), "card")


def constant(monoid, a) -> SetFunction:
    if a < 0:
        raise ValueError("constant must be nonnegative")
    return SetFunction(monoid, lambda f: a, f"const({a})")


def card_pi(pi: MonoidHom) -> SetFunction:
    """F -> |pi(F)|; its integral is 1/|kernel| on supported families."""
    return SetFunction(pi.source, lambda f: len(pi.apply_set(f)), "card_pi")


def shifted(f: SetFunction, e: MSubset) -> SetFunction:
    """The shift f^E : X -> f(X E)."""
    if e.monoid != f.monoid:
        raise MonoidMismatchError("shift set lives in a different monoid")
    return SetFunction(
        f.monoid, lambda x: f(set_product(x, e)), f"{f.label}^E", probe=False
    )


@dataclass
class IntegralRow:
    index: int
    size: int
    value: float
    ratio: float


@dataclass
class IntegralEstimate:
    """Ratio table f(F_i)/|F_i| with the tail value and tail oscillation."""

    label: str
    rows: list = field(default_factory=list)

    @property
    def tail(self) -> float:
        return self.rows[-1].ratio

    @property
    def oscillation(self) -> float:
        back = self.rows[-max(1, len(self.rows) // 4):]
        ratios = [r.ratio for r in back]
        return max(ratios) - min(ratios)

    def converged(self, tol: float = 1e-2) -> bool:
        return self.oscillation < tol

    def ratios(self):
        return [r.ratio for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["index", "size", "value", "ratio"])
        for r in self.rows:
            w.writerow([r.index, r.size, repr(float(r.value)), repr(float(r.ratio))])
        return buf.getvalue()


def integral(f: SetFunction, net: FolnerNet, prefix: int) -> IntegralEstimate:
    """Evaluate the ratio table over the first ``prefix`` net indices."""
    if prefix < 2:
        raise ValueError("prefix must be >= 2")
    est = IntegralEstimate(f.label)
    for i in range(1, prefix + 1):
        fi = net.subset(i)
        value = float(f(fi))
        est.rows.append(IntegralRow(i, len(fi), value, value / len(fi)))
    return est


@dataclass
class AxiomViolation:
    axiom: str
    witness: tuple
    values: tuple


@dataclass
class AxiomReport:
    seed: int
    trials: int
    violations: list

    @property
    def ok(self):
        return not self.violations


def sample_axioms(f: SetFunction, monoid, trials: int, window: int, seed: int = 0) -> AxiomReport:
    """Randomized check of the admissibility axioms, with witnesses.

    Verifies, on random subsets of the canonical window: monotonicity,
    subadditivity, left subinvariance f(sF) <= f(F), and the singleton
    bound f({s}) <= f({1}).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    pool = sorted(monoid.window(window).elements)
    report = AxiomReport(seed, trials, [])
    tol = 1e-9
    one = MSubset(monoid, frozenset({monoid.identity}))
    f_one = f(one)
    for _ in range(trials):
        f1 = MSubset(monoid, frozenset(rng.sample(pool, rng.randint(1, min(5, len(pool))))))
        f2 = MSubset(monoid, frozenset(rng.sample(pool, rng.randint(1, min(5, len(pool))))))
        s = pool[rng.randrange(len(pool))]
        union = f1.union(f2)
        v1, v2, vu = f(f1), f(f2), f(union)
        if vu > v1 + v2 + tol:
            report.violations.append(AxiomViolation("subadditive", (f1, f2), (v1, v2, vu)))
        if v1 > vu + tol:
            report.violations.append(AxiomViolation("increasing", (f1, union), (v1, vu)))
        moved = MSubset(monoid, frozenset(monoid.op(s, x) for x in f1.elements))
        vm = f(moved)
        if vm > v1 + tol:
            report.violations.append(AxiomViolation("left-subinvariant", (s, f1), (vm, v1)))
        vs = f(MSubset(monoid, frozenset({s})))
        if vs > f_one + tol:
            report.violations.append(AxiomViolation("singleton-bound", (s,), (vs, f_one)))
    return report


def theta(
    f: SetFunction,
    pi: MonoidHom,
    sigma: Section,
    y: MSubset,
    n_net: FolnerNet | None,
    prefix: int,
) -> float:
    """The kernel average at Y: the integral of f^{sigma(Y)} over N."""
    if n_net is None:
        n_net = kernel_box_net(pi)
    lifted = sigma.apply_set(y)
    return integral(shifted(f, lifted), n_net, prefix).tail


def theta_function(
    f: SetFunction, pi: MonoidHom, sigma: Section, n_net: FolnerNet | None, prefix: int
) -> SetFunction:
    """The transform of f as a set function on the quotient monoid."""
    if n_net is None:
        n_net = kernel_box_net(pi)
    return SetFunction(
        pi.target,
        lambda y: theta(f, pi, sigma, y, n_net, prefix),
        f"theta({f.label})",
        probe=False,
    )


@dataclass
class FubiniReport:
    left: IntegralEstimate       # integral of f over S
    right: IntegralEstimate      # integral of theta over C
    c_prefix: int
    n_prefix: int

    @property
    def difference(self) -> float:
        return abs(self.left.tail - self.right.tail)


def fubini_check(
    f: SetFunction,
    pi: MonoidHom,
    sigma: Section,
    s_net: FolnerNet,
    c_net: FolnerNet,
    n_net: FolnerNet | None,
    prefix: int,
    c_prefix: int | None = None,
    n_prefix: int | None = None,
) -> FubiniReport:
    """Evaluate both sides of the product formula and report the gap.

    The kernel direction must outpace the quotient direction for the two
    finite-prefix estimates to meet, so the inner prefixes default to
    roughly the square root of the outer one.
    """
    if c_prefix is None:
        c_prefix = max(2, math.isqrt(prefix))
    if n_prefix is None:
        n_prefix = max(4, math.isqrt(prefix) + 2)
    left = integral(f, s_net, prefix)
    th = theta_function(f, pi, sigma, n_net, n_prefix)
    right = integral(th, c_net, c_prefix)
    return FubiniReport(left, right, c_prefix, n_prefix)
