"""Right Folner nets: generators, defect diagnostics, and eps-tilings.

A net here is a linearized sequence index -> finite subset, memoized on
demand.  Canonically indexed nets keep their (E, n) indexing and expose a
cofinal linearization for integral evaluation.  All defect and tiling
quantities are exact rationals.
"""

from __future__ import annotations

import io
import csv
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .errors import (
    BudgetExceededError,
    InvalidWitnessError,
    MonoidMismatchError,
    SearchBudgetError,
    UndecidableFamilyError,
)
from .monoid import (
    FiniteAbelianMonoid,
    FreeAbelian,
    FreeCommutative,
    MonoidHom,
    MSubset,
    ProductMonoid,
    Section,
    SemidirectZZ,
    boundary,
    exact_ratio,
    set_product,
)

DEFAULT_ELEMENT_BUDGET = 10**7
CANONICAL_SEARCH_BUDGET = 2**16


class FolnerNet:
    """Lazily generated, memoized sequence of finite subsets."""

    def __init__(self, monoid, generate, label="net", increasing=False):
        self.monoid = monoid
        self._generate = generate
        self.label = label
        self.increasing = increasing
        self._cache = {}

    def subset(self, i: int) -> MSubset:
        if i < 1:
            raise ValueError("net indices start at 1")
        if i not in self._cache:
            self._cache[i] = self._generate(i)
        return self._cache[i]

    def prefix(self, k: int):
        return [self.subset(i) for i in range(1, k + 1)]

    def __repr__(self):
        return f"FolnerNet({self.label} on {self.monoid})"


def box_net(monoid) -> FolnerNet:
    """The standard box sequence: [0,n)^d for N^d, [-n,n]^d for Z^d, the
    whole group for finite S, and componentwise boxes for products."""
    if isinstance(monoid, FreeCommutative):
        def gen(n):
            return MSubset(monoid, frozenset(iproduct(range(n), repeat=monoid.dim)))
        return FolnerNet(monoid, gen, "boxes", increasing=True)
    if isinstance(monoid, FreeAbelian):
        def gen(n):
            return MSubset(monoid, frozenset(iproduct(range(-n, n + 1), repeat=monoid.dim)))
        return FolnerNet(monoid, gen, "boxes", increasing=True)
    if isinstance(monoid, FiniteAbelianMonoid):
        whole = MSubset(monoid, frozenset(monoid.elements()))
        return FolnerNet(monoid, lambda n: whole, "constant", increasing=True)
    if isinstance(monoid, ProductMonoid):
        nets = [box_net(p) for p in monoid.parts]

        def gen(n):
            grids = [sorted(net.subset(n).elements) for net in nets]
            return MSubset(monoid, frozenset(sum(c, ()) for c in iproduct(*grids)))

        return FolnerNet(monoid, gen, "boxes", increasing=True)
    raise UndecidableFamilyError(f"no box net for {monoid}")


@dataclass(frozen=True)
class DefectRow:
    index: int
    size: int
    element: object  # a monoid element, or "E" for the whole test set
    ratio: Fraction


@dataclass
class DefectReport:
    """Per-index translation defects |F s (sym diff) F| / |F|."""

    net_label: str
    rows: list = field(default_factory=list)

    def max_defect(self, index: int) -> Fraction:
        return max(r.ratio for r in self.rows if r.index == index)

    def indices(self):
        return sorted({r.index for r in self.rows})

    def tail_max(self) -> Fraction:
        return self.max_defect(self.indices()[-1])

    def tail_nonincreasing(self) -> bool:
        """True when the per-index max defect never increases over the
        second half of the evaluated prefix."""
        idx = self.indices()
        back = [self.max_defect(i) for i in idx[len(idx) // 2 :]]
        return all(a >= b for a, b in zip(back, back[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["index", "size", "element", "ratio"])
        for r in self.rows:
            w.writerow([r.index, r.size, r.element, float(r.ratio)])
        return buf.getvalue()


def verify_folner(net: FolnerNet, test: MSubset, prefix: int) -> DefectReport:
    """Exact defect table of the net against every element of ``test`` and
    against the whole set at once."""
    if prefix < 2:
        raise ValueError("prefix must be >= 2")
    if test.monoid != net.monoid:
        raise MonoidMismatchError("test set lives in a different monoid")
    report = DefectReport(net.label)
    for i in range(1, prefix + 1):
        f = net.subset(i)
        size = len(f)
        for s in test:
            moved = f.translate(s).elements
            report.rows.append(DefectRow(i, size, s, Fraction(len(moved ^ f.elements), size)))
        fe = set_product(f, test).elements
        report.rows.append(DefectRow(i, size, "E", Fraction(len(fe ^ f.elements), size)))
    return report


def translate_net(net: FolnerNet, e: MSubset) -> FolnerNet:
    """Index-wise right product F_i E."""
    if e.monoid != net.monoid:
        raise MonoidMismatchError("translate set lives in a different monoid")
    return FolnerNet(
        net.monoid,
        lambda i: set_product(net.subset(i), e),
        f"{net.label}*E",
        increasing=net.increasing,
    )


class CanonicalNet:
    """Canonically indexed net: at (E, n), the smallest box F of its family
    with F s ~_{1/n} F for every s in E."""

    def __init__(self, monoid, budget: int = CANONICAL_SEARCH_BUDGET):
        if not isinstance(monoid, (FreeCommutative, FreeAbelian, FiniteAbelianMonoid, ProductMonoid)):
            raise UndecidableFamilyError(f"no canonical boxes for {monoid}")
        self.monoid = monoid
        self.budget = budget
        self._cache = {}

    def _box(self, m: int) -> MSubset:
        mon = self.monoid
        if isinstance(mon, FiniteAbelianMonoid):
            return MSubset(mon, frozenset(mon.elements()))
        if isinstance(mon, ProductMonoid):
            grids = [sorted(CanonicalNet(p)._box(m).elements) for p in mon.parts]
            return MSubset(mon, frozenset(sum(c, ()) for c in iproduct(*grids)))
        return MSubset(mon, frozenset(iproduct(range(m), repeat=mon.dim)))

    def at(self, e: MSubset, n: int) -> MSubset:
        key = (e.sorted_key(), n)
        if key in self._cache:
            return self._cache[key]
        if isinstance(self.monoid, FiniteAbelianMonoid):
            out = self._box(1)
            self._cache[key] = out
            return out
        for m in range(1, self.budget + 1):
            f = self._box(m)
            size = len(f)
            if all(
                n * len(f.translate(s).elements ^ f.elements) <= size for s in e
            ):
                self._cache[key] = f
                return f
        raise SearchBudgetError(f"no box of side <= {self.budget} works for {key}")

    def folner_net(self, e: MSubset | None = None) -> FolnerNet:
        """Cofinal linearization n -> F_(E, n) with E fixed."""
        if e is None:
            gens = [self.monoid.identity]
            if not isinstance(self.monoid, FiniteAbelianMonoid):
                gens += self.monoid.generators()
            e = MSubset(self.monoid, frozenset(gens))
        return FolnerNet(
            self.monoid, lambda n: self.at(e, n), "canonical", increasing=True
        )


def canonical_net(monoid) -> CanonicalNet:
    return CanonicalNet(monoid)


def product_net(net_h: FolnerNet, net_k: FolnerNet, monoid=None) -> FolnerNet:
    """Doubly indexed product net (H_i x K_j), linearized diagonally: pairs
    enumerated with max(i, j) increasing."""
    target = monoid if monoid is not None else ProductMonoid((net_h.monoid, net_k.monoid))
    if target.dim != net_h.monoid.dim + net_k.monoid.dim:
        raise MonoidMismatchError("product monoid does not fit the factor nets")

    def pair(index: int):
        # enumerate pairs with max(i, j) = k, ending each block on the
        # diagonal so that prefix tails sit on square indices
        k = 1
        count = 0
        while True:
            block = (
                [(a, k) for a in range(1, k)]
                + [(k, b) for b in range(1, k)]
                + [(k, k)]
            )
            if index <= count + len(block):
                return block[index - count - 1]
            count += len(block)
            k += 1

    def gen(i):
        a, b = pair(i)
        hs = sorted(net_h.subset(a).elements)
        ks = sorted(net_k.subset(b).elements)
        return MSubset(target, frozenset(h + k for h in hs for k in ks))

    return FolnerNet(target, gen, f"{net_h.label}x{net_k.label}")


def kernel_box_net(pi: MonoidHom) -> FolnerNet:
    """Box net of the kernel N = pi^{-1}(1), embedded back into the source."""
    n_mon, embed = pi.kernel_embedding()
    if n_mon.dim == 0:
        one = MSubset(pi.source, frozenset({pi.source.identity}))
        return FolnerNet(pi.source, lambda i: one, "ker-boxes", increasing=True)
    inner = box_net(n_mon)

    def gen(i):
        return MSubset(pi.source, frozenset(embed(t) for t in inner.subset(i).elements))

    return FolnerNet(pi.source, gen, "ker-boxes", increasing=True)


def _solve_left_factor(monoid, w1, w2):
    """z with w1 = z * w2, for group or commutative families."""
    if monoid.is_group:
        return monoid.op(w1, monoid.inverse(w2))
    z = tuple(a - b for a, b in zip(w1, w2))
    if not monoid.contains(z):
        raise UndecidableFamilyError("correction element escapes the monoid")
    return z


def split_extension_net(
    n_canon: CanonicalNet, c_canon: CanonicalNet, pi: MonoidHom, sigma: Section
) -> "SplitExtensionNet":
    return SplitExtensionNet(n_canon, c_canon, pi, sigma)


class SplitExtensionNet:
    """The canonically indexed net N_(zeta(Y,n) u X, m) sigma(C_(Y,n)) on S,
    over pairs ((X, m), (Y, n)) with m >= n."""

    def __init__(self, n_canon, c_canon, pi, sigma):
        self.pi = pi
        self.sigma = sigma
        self.n_canon = n_canon
        self.c_canon = c_canon
        self.monoid = pi.source
        self.n_embed = pi.kernel_embedding()[1]

    def _zeta(self, c_part: MSubset, x_elems, y_elems):
        """Correction elements z_{c,x} and z_{c,y}, expressed in N coords."""
        s_mon = self.monoid
        sigma = self.sigma
        out = {self.n_canon.monoid.identity}
        for c in c_part:
            sc = sigma(c)
            for x in x_elems:
                w1 = s_mon.op(sc, self.n_embed(x))
                z = _solve_left_factor(s_mon, w1, sc)
                out.add(self.pi.kernel_express(z))
            for y in y_elems:
                w1 = s_mon.op(sc, sigma(y))
                w2 = sigma(self.pi.target.op(c, y))
                z = _solve_left_factor(s_mon, w1, w2)
                out.add(self.pi.kernel_express(z))
        return out

    def at(self, x: MSubset, m: int, y: MSubset, n: int) -> MSubset:
        if m < n:
            raise ValueError("the index set requires m >= n")
        c_part = self.c_canon.at(y, n)
        zeta = self._zeta(c_part, x.elements, y.elements)
        n_index = MSubset(self.n_canon.monoid, frozenset(zeta) | x.elements)
        n_part = self.n_canon.at(n_index, m)
        lifted_n = frozenset(self.n_embed(t) for t in n_part.elements)
        lifted_c = frozenset(self.sigma(c) for c in c_part.elements)
        f = set_product(MSubset(self.monoid, lifted_n), MSubset(self.monoid, lifted_c))
        if len(f) != len(n_part) * len(c_part):
            raise UndecidableFamilyError("good-section bijection failed")
        return f

    def folner_net(self, x: MSubset | None = None, y: MSubset | None = None) -> FolnerNet:
        """Diagonal linearization with the m >= n filter applied."""
        n_mon, c_mon = self.n_canon.monoid, self.c_canon.monoid
        if x is None:
            x = MSubset(n_mon, frozenset([n_mon.identity] + n_mon.generators()))
        if y is None:
            y = MSubset(c_mon, frozenset([c_mon.identity] + c_mon.generators()))

        def pair(index: int):
            m, count = 1, 0
            while True:
                if index <= count + m:
                    return (m, index - count)
                count += m
                m += 1

        def gen(i):
            m, n = pair(i)
            return self.at(x, m, y, n)

        return FolnerNet(self.monoid, gen, "split-extension")


def semidirect_defect(n: int, m: int, x, budget: int = DEFAULT_ELEMENT_BUDGET) -> Fraction:
    """delta_{n,m}(x) = |G_{m,n} x \\ G_{m,n}| / |G_{m,n}| in Z^2 x| Z with
    A_m = [0, m-1]^2 and C_n = [0, n-1], counted exactly slice by slice.

    Right-translating by x moves the slice at height c by the integer
    vector phi(c)(x_1, x_2); each slice's escape count is enumerated per
    coordinate (the slice is a box, so the two axes count independently).
    """
    g = SemidirectZZ()
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    if n * m * m > budget:
        raise BudgetExceededError(f"|G| = {n * m * m} exceeds budget {budget}")
    x = tuple(x)
    if len(x) == 2:
        x = (x[0], x[1], 0)
    escaped = 0
    for c in range(n):
        w1 = g.phi(c)[0][0] * x[0] + g.phi(c)[0][1] * x[1]
        w2 = g.phi(c)[1][0] * x[0] + g.phi(c)[1][1] * x[1]
        if not 0 <= c + x[2] < n:
            escaped += m * m
            continue
        stay1 = sum(1 for a in range(m) if 0 <= a + w1 < m)
        stay2 = sum(1 for a in range(m) if 0 <= a + w2 < m)
        escaped += m * m - stay1 * stay2
    return Fraction(escaped, n * m * m)


# ---------------------------------------------------------------------------
# eps-disjointness and tilings


def _max_flow(adj, source, sink, capacity):
    """Plain BFS augmenting-path max flow on a small graph."""
    flow = {e: 0 for e in capacity}
    total = 0
    while True:
        parent = {source: None}
        queue = [source]
        while queue and sink not in parent:
            u = queue.pop(0)
            for v in adj[u]:
                residual = capacity.get((u, v), 0) - flow.get((u, v), 0) + flow.get((v, u), 0)
                if v not in parent and residual > 0:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            return total, flow
        # trace back, push one unit (all capacities here are integral)
        path = []
        v = sink
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        push = min(
            capacity.get(e, 0) - flow.get(e, 0) + flow.get((e[1], e[0]), 0) for e in path
        )
        for (u, v) in path:
            back = flow.get((v, u), 0)
            if back >= push:
                flow[(v, u)] = back - push
            else:
                flow[(v, u)] = 0
                flow[(u, v)] = flow.get((u, v), 0) + push - back
        total += push


def is_eps_disjoint(family, eps):
    """Decide eps-disjointness exactly; on success return a certificate.

    The family (Y_j) is eps-disjoint when pairwise disjoint Z_j <= Y_j
    exist with (1 - eps)|Y_j| <= |Z_j|.  Existence is a flow-feasibility
    question on the element-set incidence graph.
    """
    eps = exact_ratio(eps)
    family = list(family)
    need = []
    for y in family:
        bound = (1 - eps) * len(y)
        need.append(max(0, -(-bound.numerator // bound.denominator)))  # ceil
    elements = sorted({e for y in family for e in y.elements})
    source, sink = ("src",), ("snk",)
    adj = {source: [], sink: []}
    capacity = {}
    for j, y in enumerate(family):
        sn = ("set", j)
        adj.setdefault(sn, []).append(source)
        adj[source].append(sn)
        capacity[(source, sn)] = need[j]
        for e in y.elements:
            en = ("el", e)
            adj.setdefault(en, [])
            adj[sn].append(en)
            adj[en].append(sn)
            capacity[(sn, en)] = 1
            if (en, sink) not in capacity:
                adj[en].append(sink)
                adj[sink].append(en)
                capacity[(en, sink)] = 1
    total, flow = _max_flow(adj, source, sink, capacity)
    if total < sum(need):
        return False, None
    cert = []
    for j, y in enumerate(family):
        sn = ("set", j)
        chosen = frozenset(
            e for e in y.elements if flow.get((sn, ("el", e)), 0) == 1
        )
        cert.append(MSubset(y.monoid, chosen))
    return True, cert


@dataclass(frozen=True)
class TilingWitness:
    """Tiles F_j with center sets P_j; the translates P_j F_j should be
    pairwise disjoint and nearly cover the target set."""

    tiles: tuple
    centers: tuple


@dataclass
class TilingReport:
    d: int
    u: int
    b: int
    disjoint: bool  # the sets P_j F_j are pairwise disjoint across tiles
    within: bool    # each translate family (s F_j)_{s in P_j} is eps-disjoint
    inside: bool
    covers: bool    # d - u < eps d
    mass: bool      # 0 <= b - u < eps b
    eps: Fraction

    @property
    def ok(self):
        return self.disjoint and self.within and self.inside and self.covers and self.mass


def check_tiling(d_set: MSubset, witness: TilingWitness, eps) -> TilingReport:
    """Verify the tiling clauses exactly and report all margins."""
    eps = exact_ratio(eps)
    monoid = d_set.monoid
    placed = []
    within = True
    for tile, centers in zip(witness.tiles, witness.centers):
        translates = [
            MSubset(monoid, frozenset(monoid.op(s, t) for t in tile.elements))
            for s in sorted(centers.elements)
        ]
        tile_union = frozenset().union(*(t.elements for t in translates)) if translates else frozenset()
        if sum(len(t) for t in translates) != len(tile_union):
            ok, _ = is_eps_disjoint(translates, eps)
            within = within and ok
        placed.append(tile_union)
    union = frozenset().union(*placed) if placed else frozenset()
    disjoint = sum(len(p) for p in placed) == len(union)
    inside = union <= d_set.elements
    d = len(d_set)
    u = len(union)
    b = sum(len(c) * len(t) for c, t in zip(witness.centers, witness.tiles))
    covers = Fraction(d - u) < eps * d
    mass = 0 <= b - u and (Fraction(b - u) < eps * b if b else False)
    return TilingReport(d, u, b, disjoint, within, inside, covers, mass, eps)


def remtil_check(d_set: MSubset, witness: TilingWitness, eps) -> bool:
    """u <= b and |1/d - 1/b| < 2 eps / b, in exact rational arithmetic."""
    report = check_tiling(d_set, witness, eps)
    if not report.ok:
        raise InvalidWitnessError("witness fails the tiling clauses")
    if report.u > report.b:
        return False
    return abs(Fraction(1, report.d) - Fraction(1, report.b)) < 2 * report.eps / report.b


def greedy_tiler(d_set: MSubset, tiles, eps, *, validate=True):
    """Greedy largest-first placement of disjoint translates s F_j inside D.

    Scans centers in the monoid's canonical element order; stops as soon as
    the uncovered fraction drops below eps.  The returned witness is always
    re-validated with check_tiling; None when the bound is unreachable.
    """
    eps = exact_ratio(eps)
    monoid = d_set.monoid
    tiles = sorted(tiles, key=len, reverse=True)
    d_elems = d_set.elements
    d = len(d_elems)
    covered: set = set()
    centers = []
    op = monoid.op
    done = False
    for tile in tiles:
        chosen = set()
        if not done:
            t_elems = sorted(tile.elements)
            for s in sorted(d_elems):
                placed = [op(s, t) for t in t_elems]
                if any(p not in d_elems or p in covered for p in placed):
                    continue
                covered.update(placed)
                chosen.add(s)
                if Fraction(d - len(covered)) < eps * d:
                    done = True
                    break
        centers.append(MSubset(monoid, frozenset(chosen)))
    witness = TilingWitness(tuple(tiles), tuple(centers))
    if not validate:
        return witness
    report = check_tiling(d_set, witness, eps)
    return witness if report.ok else None


@dataclass
class FillingReport:
    pair_ratios: list   # (j, k, ratio, bound, holds) over tile pairs j < k
    region_ratios: list  # (j, ratio, bound, holds) against the region
    n_tiles: int

    @property
    def pairs_hold(self):
        return all(h for *_, h in self.pair_ratios)

    @property
    def region_holds(self):
        return all(h for *_, h in self.region_ratios)


def filling_hypotheses(tiles, d_set: MSubset, eps) -> FillingReport:
    """Exact check of the two boundary-ratio hypotheses that feed the
    filling argument: |bd_{F_j}(F_k)|/|F_k| <= eps^{2N}/|F_j| for j < k and
    |bd_{F_j}(D)|/|D| <= eps^{2N}."""
    eps = exact_ratio(eps)
    tiles = list(tiles)
    n = len(tiles)
    power = eps**(2 * n)
    pair_rows, region_rows = [], []
    for j in range(n):
        for k in range(j + 1, n):
            ratio = Fraction(len(boundary(tiles[k], tiles[j])), len(tiles[k]))
            bound = power / len(tiles[j])
            pair_rows.append((j, k, ratio, bound, ratio <= bound))
    for j in range(n):
        ratio = Fraction(len(boundary(d_set, tiles[j])), len(d_set))
        region_rows.append((j, ratio, power, ratio <= power))
    return FillingReport(pair_rows, region_rows, n)
