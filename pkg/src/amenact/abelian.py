"""Discrete abelian groups with exact element and subgroup arithmetic.

Three families cover everything the entropy machinery needs:

* ``FreeZ(rank)``           -- Z^rank, elements are int tuples;
* ``FiniteProduct(factors)`` -- prod Z/n_i, tuples reduced mod the factors;
* ``DirectSum(base, index)`` -- finitely supported maps from the element set
  of a monoid into a finite product, stored as frozensets of
  (index, value) pairs with nonzero values.

Subgroups are canonicalized through integer row reduction (Hermite form
over the generators plus the modulus rows), so orders, membership, coset
counts, and joins are all exact.  Every value here is immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iproduct

from . import lattices
from .errors import BudgetExceededError, GroupMismatchError, UnsupportedQuotientError
from .monoid import Monoid


class AbelianGroup:
    """Common surface of the three group families."""

    is_torsion = False

    @property
    def zero(self):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scalar(self, k, x):
        if k < 0:
            return self.neg(self.scalar(-k, x))
        acc = self.zero
        while k:
            if k & 1:
                acc = self.add(acc, x)
            x = self.add(x, x)
            k >>= 1
        return acc

    def contains(self, x) -> bool:
        raise NotImplementedError

    def element(self, data):
        """Normalize arbitrary coordinate data into an element."""
        raise NotImplementedError

    @property
    def order(self):
        """Group order; None for infinite groups."""
        return None

    def sumset(self, X: frozenset, Y: frozenset) -> frozenset:
        add = self.add
        return frozenset(add(x, y) for x in X for y in Y)

    def sort_key(self, x):
        return x

    def sample(self, rng, bound: int):
        raise NotImplementedError


@dataclass(frozen=True)
class FreeZ(AbelianGroup):
    """Z^rank."""

    rank: int

    @property
    def zero(self):
        return (0,) * self.rank

    @property
    def is_torsion(self):
        return self.rank == 0

    @property
    def order(self):
        return 1 if self.rank == 0 else None

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def scalar(self, k, x):
        return tuple(k * a for a in x)

    def contains(self, x):
        return len(x) == self.rank and all(isinstance(a, int) for a in x)

    def element(self, data):
        out = tuple(int(a) for a in data)
        if len(out) != self.rank:
            raise GroupMismatchError(f"expected {self.rank} coordinates")
        return out

    def sumset(self, X, Y):
        if self.rank == 1:
            xs = [x[0] for x in X]
            ys = [y[0] for y in Y]
            return frozenset((a + b,) for a in xs for b in ys)
        add = self.add
        return frozenset(add(x, y) for x in X for y in Y)

    def sample(self, rng, bound):
        return tuple(rng.randint(-bound, bound) for _ in range(self.rank))

    def __str__(self):
        return f"Z^{self.rank}"


@dataclass(frozen=True)
class FiniteProduct(AbelianGroup):
    """prod Z/n_i; the empty product is the trivial group."""

    factors: tuple

    is_torsion = True

    def __post_init__(self):
        if not all(isinstance(n, int) and n >= 1 for n in self.factors):
            raise ValueError("factors must be positive integers")

    @property
    def zero(self):
        return (0,) * len(self.factors)

    @property
    def order(self):
        o = 1
        for n in self.factors:
            o *= n
        return o

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.factors))

    def neg(self, x):
        return tuple((-a) % n for a, n in zip(x, self.factors))

    def scalar(self, k, x):
        return tuple((k * a) % n for a, n in zip(x, self.factors))

    def contains(self, x):
        return len(x) == len(self.factors) and all(
            isinstance(a, int) and 0 <= a < n for a, n in zip(x, self.factors)
        )

    def element(self, data):
        data = tuple(data)
        if len(data) != len(self.factors):
            raise GroupMismatchError(f"expected {len(self.factors)} coordinates")
        return tuple(int(a) % n for a, n in zip(data, self.factors))

    def elements(self):
        return iproduct(*(range(n) for n in self.factors))

    def sumset(self, X, Y):
        if len(self.factors) == 1:
            n = self.factors[0]
            xs = [x[0] for x in X]
            ys = [y[0] for y in Y]
            return frozenset(((a + b) % n,) for a in xs for b in ys)
        add = self.add
        return frozenset(add(x, y) for x in X for y in Y)

    def sample(self, rng, bound):
        return tuple(rng.randrange(n) for n in self.factors)

    def __str__(self):
        return " x ".join(f"Z/{n}" for n in self.factors) if self.factors else "0"


@dataclass(frozen=True)
class DirectSum(AbelianGroup):
    """base^(index): finitely supported families over a monoid's elements."""

    base: FiniteProduct
    index: Monoid

    @property
    def is_torsion(self):
        return True

    @property
    def order(self):
        if self.base.order == 1:
            return 1
        if self.index.is_finite:
            return self.base.order ** len(self.index.window(1))
        return None

    @property
    def zero(self):
        return frozenset()

    def add(self, x, y):
        if not x:
            return y
        if not y:
            return x
        d = dict(x)
        badd = self.base.add
        bzero = self.base.zero
        for i, v in y:
            cur = d.get(i)
            if cur is None:
                d[i] = v
            else:
                w = badd(cur, v)
                if w == bzero:
                    del d[i]
                else:
                    d[i] = w
        return frozenset(d.items())

    def neg(self, x):
        bneg = self.base.neg
        return frozenset((i, bneg(v)) for i, v in x)

    def scalar(self, k, x):
        bs = self.base.scalar
        bzero = self.base.zero
        return frozenset((i, w) for i, v in x if (w := bs(k, v)) != bzero)

    def contains(self, x):
        if not isinstance(x, frozenset):
            return False
        return all(
            self.index.contains(i) and self.base.contains(v) and v != self.base.zero
            for i, v in x
        )

    def element(self, data):
        """Accepts {index: value} mappings or (index, value) pair iterables."""
        pairs = data.items() if isinstance(data, dict) else data
        out = {}
        for i, v in pairs:
            i = tuple(i) if not isinstance(i, tuple) else i
            if not self.index.contains(i):
                raise GroupMismatchError(f"{i} is not in the index monoid")
            v = self.base.element(v)
            if v != self.base.zero:
                out[i] = v
        return frozenset(out.items())

    def basis_vector(self, i, value=None):
        """The element supported at index i with the given base value."""
        i = tuple(i) if not isinstance(i, tuple) else i
        if value is None:
            value = tuple(1 % n for n in self.base.factors)
        value = self.base.element(value)
        if value == self.base.zero:
            return self.zero
        return frozenset({(i, value)})

    def support(self, x):
        return sorted(i for i, _ in x)

    def sort_key(self, x):
        return tuple(sorted(x))

    def window_elements(self, scale: int, cap: int = 4096):
        """All elements supported inside the index window of the given scale."""
        idx = sorted(self.index.window(scale).elements)
        total = self.base.order ** len(idx)
        if total > cap:
            raise BudgetExceededError(f"window of size {total} exceeds cap {cap}")
        vals = list(self.base.elements())
        out = []
        for combo in iproduct(vals, repeat=len(idx)):
            out.append(frozenset(
                (i, v) for i, v in zip(idx, combo) if v != self.base.zero
            ))
        return frozenset(out)

    def sample(self, rng, bound):
        idx = sorted(self.index.window(bound).elements)
        out = {}
        for _ in range(rng.randint(0, min(3, len(idx)))):
            i = idx[rng.randrange(len(idx))]
            v = self.base.sample(rng, bound)
            if v != self.base.zero:
                out[i] = v
        return frozenset(out.items())

    def __str__(self):
        return f"({self.base})^({self.index})"


# ---------------------------------------------------------------------------
# finite subsets


@dataclass(frozen=True)
class FiniteSubset:
    group: AbelianGroup
    elements: frozenset

    @classmethod
    def of(cls, group, items):
        return cls(group, frozenset(group.element(x) for x in items))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements, key=self.group.sort_key))

    def __contains__(self, x):
        return x in self.elements

    @property
    def contains_zero(self) -> bool:
        return self.group.zero in self.elements

    def with_zero(self) -> "FiniteSubset":
        return FiniteSubset(self.group, self.elements | {self.group.zero})

    def union(self, other):
        _same_group(self, other)
        return FiniteSubset(self.group, self.elements | other.elements)


def _same_group(X, Y):
    if X.group != Y.group:
        raise GroupMismatchError(f"{X.group} != {Y.group}")


def minkowski_sum(X: FiniteSubset, Y: FiniteSubset) -> FiniteSubset:
    """{x + y : x in X, y in Y}."""
    _same_group(X, Y)
    return FiniteSubset(X.group, X.group.sumset(X.elements, Y.elements))


def iterated_sum(X: FiniteSubset, m: int) -> FiniteSubset:
    """The m-fold sumset X + X + ... + X."""
    if m < 1:
        raise ValueError("m must be >= 1")
    acc = X
    for _ in range(m - 1):
        acc = minkowski_sum(acc, X)
    return acc


def ell(X: FiniteSubset) -> float:
    """log |X|; zero on singletons."""
    return math.log(len(X.elements))


def ell_of_order(order) -> float:
    if order is None or order == math.inf:
        return math.inf
    return math.log(order)


# ---------------------------------------------------------------------------
# subgroups


def _moduli_rows(factors):
    k = len(factors)
    return [[factors[i] if j == i else 0 for j in range(k)] for i in range(k)]


class Subgroup:
    """A subgroup given by finitely many generators, or coordinatewise.

    ``Subgroup.generated(A, gens)`` covers FreeZ, FiniteProduct, and
    finitely supported subgroups of a DirectSum.  ``Subgroup.percoord(A,
    B0)`` is the diagonal subgroup B0^(index) of a DirectSum, which is how
    invariant subgroups like 2A enter the Addition Theorem checks.
    """

    def __init__(self, group, kind, gens=(), base_subgroup=None, _window=None):
        self.group = group
        self.kind = kind
        self.gens = tuple(gens)
        self.base_subgroup = base_subgroup
        self._data = None
        self._forced_window = _window

    # construction ---------------------------------------------------------

    @classmethod
    def generated(cls, group, gens):
        gens = tuple(group.element(g) if not group.contains(g) else g for g in gens)
        gens = tuple(g for g in gens if g != group.zero)
        return cls(group, "fg", gens)

    @classmethod
    def trivial(cls, group):
        return cls(group, "fg", ())

    @classmethod
    def full(cls, group):
        if isinstance(group, FiniteProduct):
            k = len(group.factors)
            return cls.generated(group, [tuple(int(i == j) % n for j, n in enumerate(group.factors)) for i in range(k)])
        if isinstance(group, DirectSum):
            return cls.percoord(group, Subgroup.full(group.base))
        raise UnsupportedQuotientError(f"no full subgroup for {group}")

    @classmethod
    def percoord(cls, group: DirectSum, base_subgroup: "Subgroup"):
        if not isinstance(group, DirectSum):
            raise GroupMismatchError("percoord subgroups live in direct sums")
        if base_subgroup.group != group.base:
            raise GroupMismatchError("base subgroup must live in the base group")
        return cls(group, "percoord", base_subgroup=base_subgroup)

    # canonical data --------------------------------------------------------

    def _flat(self):
        """(dim, basis, order, window) canonical lattice data."""
        if self._data is not None:
            return self._data
        g = self.group
        if self.kind == "percoord":
            raise AssertionError("percoord subgroups have no flat form")
        if isinstance(g, FreeZ):
            basis = lattices.hnf([list(x) for x in self.gens], g.rank)
            order = 1 if not basis else math.inf
            self._data = (g.rank, basis, order, None)
        elif isinstance(g, FiniteProduct):
            k = len(g.factors)
            rows = [list(x) for x in self.gens] + _moduli_rows(g.factors)
            basis = lattices.hnf(rows, k)
            order = g.order // lattices.lattice_index(basis, k)
            self._data = (k, basis, order, None)
        elif isinstance(g, DirectSum):
            window = self._forced_window
            if window is None:
                window = sorted({i for x in self.gens for i, _ in x})
            window = tuple(window)
            flat_gens = [_flatten(g, x, window) for x in self.gens]
            k = len(window) * len(g.base.factors)
            rows = flat_gens + _moduli_rows(g.base.factors * len(window))
            basis = lattices.hnf(rows, k)
            idx = lattices.lattice_index(basis, k)
            order = (g.base.order ** len(window)) // idx if k else 1
            self._data = (k, basis, order, window)
        else:
            raise UnsupportedQuotientError(f"subgroups of {g} are unsupported")
        return self._data

    # queries ----------------------------------------------------------------

    def order(self):
        if self.kind == "percoord":
            b = self.base_subgroup.order()
            if b == 1:
                return 1
            if self.group.index.is_finite:
                return b ** len(self.group.index.window(1))
            return math.inf
        return self._flat()[2]

    def contains(self, x) -> bool:
        if self.kind == "percoord":
            return all(self.base_subgroup.contains(v) for _, v in x)
        g = self.group
        if isinstance(g, DirectSum):
            _, basis, _, window = self._flat()
            if any(i not in window for i, _ in x):
                return False
            return lattices.contains(basis, _flatten(g, x, window))
        _, basis, _, _ = self._flat()
        return lattices.contains(basis, list(x))

    def coset_key(self, x):
        """Canonical representative data of x + B; equal keys <=> same coset."""
        if self.kind == "percoord":
            bk = self.base_subgroup.coset_key
            bz = self.base_subgroup.coset_key(self.group.base.zero)
            return frozenset((i, key) for i, v in x if (key := bk(v)) != bz)
        g = self.group
        if isinstance(g, DirectSum):
            _, basis, _, window = self._flat()
            inside = [(i, v) for i, v in x if i in window]
            outside = frozenset((i, v) for i, v in x if i not in window)
            red = lattices.reduce_mod(basis, _flatten(g, frozenset(inside), window))
            return (red, outside)
        _, basis, _, _ = self._flat()
        return lattices.reduce_mod(basis, list(x))

    def elements(self):
        """All elements (finite subgroups only), by closure from generators."""
        o = self.order()
        if o == math.inf:
            raise BudgetExceededError("infinite subgroup")
        if self.kind == "percoord":
            raise UnsupportedQuotientError("enumerate percoord subgroups via the base")
        g = self.group
        seen = {g.zero}
        frontier = [g.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for gen in self.gens:
                    y = g.add(x, gen)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        assert len(seen) == o
        return seen

    def join(self, other: "Subgroup") -> "Subgroup":
        if self.group != other.group:
            raise GroupMismatchError("subgroup join across different groups")
        if self.kind == "percoord" and other.kind == "percoord":
            return Subgroup.percoord(self.group, self.base_subgroup.join(other.base_subgroup))
        if self.kind == "percoord" or other.kind == "percoord":
            per, fg = (self, other) if self.kind == "percoord" else (other, self)
            if all(per.contains(x) for x in fg.gens):
                return per
            raise UnsupportedQuotientError("mixed percoord/fg join is unsupported")
        return Subgroup.generated(self.group, self.gens + other.gens)

    def canonical_key(self):
        if self.kind == "percoord":
            return ("percoord", self.base_subgroup.canonical_key())
        dim, basis, order, window = self._flat()
        if isinstance(self.group, DirectSum):
            window, basis = _trim_window(self.group, window, basis)
        return ("fg", window, tuple(tuple(r) for r in basis))

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group == other.group
            and self.canonical_key() == other.canonical_key()
        )

    def __hash__(self):
        return hash((self.group, self.canonical_key()))

    def __repr__(self):
        if self.kind == "percoord":
            return f"Subgroup.percoord({self.base_subgroup!r})"
        return f"Subgroup<{len(self.gens)} gens, order {self.order()}>"


def _flatten(group: DirectSum, x, window):
    k = len(group.base.factors)
    out = [0] * (len(window) * k)
    pos = {i: t for t, i in enumerate(window)}
    for i, v in x:
        at = pos[i] * k
        out[at : at + k] = v
    return out


def _trim_window(group: DirectSum, window, basis):
    """Drop window indices on which the subgroup is trivial, re-canonicalize."""
    k = len(group.base.factors)
    keep = []
    for t, i in enumerate(window):
        block = range(t * k, (t + 1) * k)
        if any(row[c] % group.base.factors[c - t * k] for row in basis for c in block):
            keep.append(t)
    if len(keep) == len(window):
        return window, basis
    new_window = tuple(window[t] for t in keep)
    cols = [c for t in keep for c in range(t * k, (t + 1) * k)]
    rows = [[row[c] for c in cols] for row in basis]
    return new_window, lattices.hnf(rows, len(cols))


def subgroup_join(B: Subgroup, C: Subgroup) -> Subgroup:
    """Smallest subgroup containing both."""
    return B.join(C)


def subgroup_order(B: Subgroup):
    """Exact order; math.inf for positive-rank subgroups of free groups."""
    return B.order()


def rel_ell(Y: FiniteSubset, B: Subgroup) -> float:
    """log of the number of distinct cosets y + B with y in Y."""
    if Y.group != B.group:
        raise GroupMismatchError("subset and subgroup live in different groups")
    return math.log(len({B.coset_key(y) for y in Y.elements}))


def subgroup_as_group(B: Subgroup):
    """(G, embed, express): an abstract presentation of B.

    ``G`` is a FiniteProduct (or FreeZ for free subgroups), ``embed`` maps
    G-coordinates to elements of the ambient group, and ``express`` inverts
    it on B.  This is what induced actions on invariant subgroups run on.
    """
    g = B.group
    if B.kind == "percoord":
        base_g, base_embed, base_express = subgroup_as_group(B.base_subgroup)
        new = DirectSum(base_g, g.index) if base_g.factors else FiniteProduct(())
        if not base_g.factors:
            return new, (lambda t: g.zero), (lambda x: ())
        bzero = base_g.zero

        def embed(x):
            return frozenset((i, base_embed(v)) for i, v in x)

        def express(y):
            return frozenset((i, w) for i, v in y if (w := base_express(v)) != bzero)

        return new, embed, express
    if isinstance(g, FreeZ):
        _, basis, _, _ = B._flat()
        rows = [list(r) for r in basis]
        new = FreeZ(len(rows))

        def embed(t):
            return tuple(sum(c * row[j] for c, row in zip(t, rows)) for j in range(g.rank))

        def express(y):
            combo = lattices.express(rows, g.rank, list(y))
            if combo is None:
                raise GroupMismatchError("element is outside the subgroup")
            return tuple(combo)

        return new, embed, express
    if isinstance(g, DirectSum):
        _, basis, _, window = B._flat()
        flat = FiniteProduct(g.base.factors * len(window))
        flat_sub = Subgroup.generated(flat, [tuple(r % n for r, n in zip(row, flat.factors)) for row in basis])
        new, f_embed, f_express = subgroup_as_group(flat_sub)
        k = len(g.base.factors)

        def embed(t):
            flat_el = f_embed(t)
            return frozenset(
                (i, v)
                for pos, i in enumerate(window)
                if (v := flat_el[pos * k : (pos + 1) * k]) != g.base.zero
            )

        def express(y):
            return f_express(tuple(_flatten(g, y, window)))

        return new, embed, express

    # finite product: present B as Z^m / relations via Smith normal form
    gens = [list(x) for x in B.gens]
    if not gens:
        return FiniteProduct(()), (lambda t: g.zero), (lambda y: ())
    m, k = len(gens), len(g.factors)
    stacked = gens + _moduli_rows(g.factors)
    combos = lattices.kernel(stacked, k)
    relations = [c[:m] for c in combos]
    diag, v = lattices.snf_diagonal(relations, m)
    v_inv = lattices.unimodular_inverse(v)
    kept = [i for i, d in enumerate(diag) if d != 1]
    new = FiniteProduct(tuple(diag[i] for i in kept))

    def embed(t):
        coeff = [0] * m
        for ti, i in zip(t, kept):
            for j in range(m):
                coeff[j] += ti * v_inv[i][j]
        out = g.zero
        for c, gen in zip(coeff, gens):
            out = g.add(out, g.scalar(c, tuple(gen)))
        return out

    def express(y):
        combo = lattices.express(stacked, k, list(y))
        if combo is None:
            raise GroupMismatchError("element is outside the subgroup")
        a = combo[:m]
        img = [sum(a[i] * v[i][j] for i in range(m)) for j in range(m)]
        return tuple(img[i] % diag[i] for i in kept)

    return new, embed, express


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientProjection:
    source: AbelianGroup
    target: AbelianGroup
    kind: str  # 'snf' | 'drop' | 'percoord' | 'identity' | 'trivial'
    data: tuple = ()

    def __call__(self, x):
        if self.kind == "identity":
            return x
        if self.kind == "trivial":
            return self.target.zero
        if self.kind == "snf":
            v, diag, kept = self.data
            img = [sum(x[i] * v[i][j] for i in range(len(x))) for j in range(len(x))]
            return tuple(img[j] % diag[j] for j in kept)
        if self.kind == "drop":
            (kept,) = self.data
            return tuple(x[i] for i in kept)
        if self.kind == "percoord":
            (base_proj,) = self.data
            bz = base_proj.target.zero
            return frozenset((i, w) for i, v in x if (w := base_proj(v)) != bz)
        raise UnsupportedQuotientError(self.kind)

    def on_subset(self, X: FiniteSubset) -> FiniteSubset:
        if X.group != self.source:
            raise GroupMismatchError("subset is not in the quotient's source")
        return FiniteSubset(self.target, frozenset(self(x) for x in X.elements))

    def section(self, q):
        """Some preimage of a target element (a set-theoretic section)."""
        if self.kind == "identity":
            return q
        if self.kind == "trivial":
            return self.source.zero
        if self.kind == "snf":
            v, diag, kept = self.data
            v_inv = lattices.unimodular_inverse([list(r) for r in v])
            k = len(diag)
            full = [0] * k
            for pos, j in enumerate(kept):
                full[j] = q[pos]
            x = tuple(sum(full[j] * v_inv[j][i] for j in range(k)) for i in range(k))
            if isinstance(self.source, FiniteProduct):
                return self.source.element(x)
            return x
        if self.kind == "drop":
            (kept,) = self.data
            out = [0] * (self.source.rank if isinstance(self.source, FreeZ) else len(self.source.factors))
            for pos, j in enumerate(kept):
                out[j] = q[pos]
            return tuple(out)
        if self.kind == "percoord":
            (base_proj,) = self.data
            return frozenset((i, base_proj.section(v)) for i, v in q)
        raise UnsupportedQuotientError(self.kind)

    def on_subgroup(self, B: Subgroup) -> Subgroup:
        if B.kind == "percoord" and self.kind == "percoord":
            (base_proj,) = self.data
            return Subgroup.percoord(self.target, base_proj.on_subgroup(B.base_subgroup))
        return Subgroup.generated(self.target, [self(x) for x in B.gens])


def quotient_group(A: AbelianGroup, B: Subgroup):
    """The quotient A/B plus a coordinate projection, for supported shapes."""
    if B.group != A:
        raise GroupMismatchError("subgroup is not inside the group")
    if B.kind == "fg" and not B.gens:
        return A, QuotientProjection(A, A, "identity")

    if isinstance(A, FiniteProduct):
        k = len(A.factors)
        rows = [list(x) for x in B.gens] + _moduli_rows(A.factors)
        diag, v = lattices.snf_diagonal(rows, k)
        kept = tuple(j for j, d in enumerate(diag) if d != 1)
        target = FiniteProduct(tuple(diag[j] for j in kept))
        return target, QuotientProjection(A, target, "snf", (tuple(tuple(r) for r in v), tuple(diag), kept))

    if isinstance(A, FreeZ):
        basis = lattices.hnf([list(x) for x in B.gens], A.rank)
        if len(basis) == A.rank:
            diag, v = lattices.snf_diagonal(basis, A.rank)
            kept = tuple(j for j, d in enumerate(diag) if d != 1)
            target = FiniteProduct(tuple(diag[j] for j in kept))
            return target, QuotientProjection(A, target, "snf", (tuple(tuple(r) for r in v), tuple(diag), kept))
        unit_cols = set()
        for row in basis:
            nz = [j for j, a in enumerate(row) if a]
            if len(nz) != 1 or row[nz[0]] != 1:
                raise UnsupportedQuotientError(
                    "free-group quotients need full rank or a unit coordinate sublattice"
                )
            unit_cols.add(nz[0])
        kept = tuple(j for j in range(A.rank) if j not in unit_cols)
        target = FreeZ(len(kept))
        return target, QuotientProjection(A, target, "drop", (kept,))

    if isinstance(A, DirectSum):
        if B.kind == "percoord":
            qbase, base_proj = quotient_group(A.base, B.base_subgroup)
            if qbase.order == 1:
                target = FiniteProduct(())
                return target, QuotientProjection(A, target, "trivial")
            target = DirectSum(qbase, A.index)
            return target, QuotientProjection(A, target, "percoord", (base_proj,))
        raise UnsupportedQuotientError(
            "direct-sum quotients are supported along coordinatewise subgroups only"
        )

    raise UnsupportedQuotientError(f"unsupported quotient of {A}")
