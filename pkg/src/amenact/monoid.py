"""Finitely described cancellative monoids and their finite subsets.

Elements of every family are flat integer tuples, so they hash fast, sort
deterministically, and serialize trivially.  The monoid object owns all
arithmetic; subsets are thin immutable wrappers around frozensets.

Supported families: N^d, Z^d, finite abelian groups, flat products of
those, and the semidirect product Z^2 x| Z given by a unimodular 2x2
integer matrix.  Right-to-left multiplication is exposed through an
opposite view rather than a separate family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from .errors import (
    MonoidMismatchError,
    NotCancellativeError,
    NotSemiGoodError,
    UndecidableFamilyError,
)


def exact_ratio(eps) -> Fraction:
    """Exact rational value of a tolerance parameter.

    Fractions, ints, and numeric strings pass through exactly; floats are
    converted to their exact binary value.
    """
    if isinstance(eps, Fraction):
        return eps
    if isinstance(eps, int):
        return Fraction(eps)
    if isinstance(eps, str):
        return Fraction(eps)
    return Fraction(eps)


class MonoidBase:
    """Minimal monoid protocol: identity, multiplication, membership."""

    is_cancellative = True

    @property
    def identity(self):
        raise NotImplementedError

    def op(self, x, y):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def subset(self, elements) -> "MSubset":
        return MSubset.of(self, elements)


class Monoid(MonoidBase):
    """Base class for the cancellative families."""

    dim = 0
    is_group = False
    is_finite = False

    def inverse(self, x):
        raise NotImplementedError(f"{self} is not a group")

    def is_unit(self, x) -> bool:
        return self.is_group or x == self.identity

    def window(self, n: int) -> "MSubset":
        """Canonical finite window of scale n (exhaustive for finite S)."""
        raise NotImplementedError

    def generators(self):
        """Canonical generating directions, one per coordinate."""
        raise NotImplementedError

    def generator_exponents(self, x):
        """Exponent vector of x over generators(); negative parts allowed
        only in group families."""
        return tuple(x)

    def sample(self, rng, n: int):
        elems = sorted(self.window(n).elements)
        return elems[rng.randrange(len(elems))]

    def opposite(self) -> "Monoid":
        return OppositeMonoid(self)


@dataclass(frozen=True)
class FreeCommutative(Monoid):
    """N^d under addition."""

    dim: int

    @property
    def identity(self):
        return (0,) * self.dim

    def op(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def contains(self, x):
        return len(x) == self.dim and all(isinstance(a, int) and a >= 0 for a in x)

    def is_unit(self, x):
        return not any(x)

    def window(self, n):
        return MSubset(self, frozenset(iproduct(range(n), repeat=self.dim)))

    def generators(self):
        return [tuple(1 if i == j else 0 for j in range(self.dim)) for i in range(self.dim)]

    def __str__(self):
        return f"N^{self.dim}"


@dataclass(frozen=True)
class FreeAbelian(Monoid):
    """Z^d under addition."""

    dim: int
    is_group = True

    @property
    def identity(self):
        return (0,) * self.dim

    def op(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inverse(self, x):
        return tuple(-a for a in x)

    def contains(self, x):
        return len(x) == self.dim and all(isinstance(a, int) for a in x)

    def window(self, n):
        return MSubset(self, frozenset(iproduct(range(-n, n + 1), repeat=self.dim)))

    def generators(self):
        return [tuple(1 if i == j else 0 for j in range(self.dim)) for i in range(self.dim)]

    def __str__(self):
        return f"Z^{self.dim}"


@dataclass(frozen=True)
class FiniteAbelianMonoid(Monoid):
    """The finite abelian group prod Z/n_i, seen as a (cancellative) monoid."""

    factors: tuple

    is_group = True
    is_finite = True

    def __post_init__(self):
        if not all(isinstance(n, int) and n >= 1 for n in self.factors):
            raise ValueError("factors must be positive integers")

    @property
    def dim(self):
        return len(self.factors)

    @property
    def order(self):
        o = 1
        for n in self.factors:
            o *= n
        return o

    @property
    def identity(self):
        return (0,) * len(self.factors)

    def op(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.factors))

    def inverse(self, x):
        return tuple((-a) % n for a, n in zip(x, self.factors))

    def contains(self, x):
        return len(x) == len(self.factors) and all(
            isinstance(a, int) and 0 <= a < n for a, n in zip(x, self.factors)
        )

    def elements(self):
        return iproduct(*(range(n) for n in self.factors))

    def window(self, n):
        return MSubset(self, frozenset(self.elements()))

    def generators(self):
        d = len(self.factors)
        return [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]

    def __str__(self):
        return " x ".join(f"Z/{n}" for n in self.factors) if self.factors else "1"


@dataclass(frozen=True)
class ProductMonoid(Monoid):
    """Direct product of monoid families, with flat concatenated coordinates."""

    parts: tuple

    def __post_init__(self):
        if not all(isinstance(p, Monoid) for p in self.parts):
            raise ValueError("parts must be Monoid instances")

    @property
    def dim(self):
        return sum(p.dim for p in self.parts)

    @property
    def is_group(self):
        return all(p.is_group for p in self.parts)

    @property
    def is_finite(self):
        return all(p.is_finite for p in self.parts)

    def _slices(self):
        out, at = [], 0
        for p in self.parts:
            out.append((p, at, at + p.dim))
            at += p.dim
        return out

    @property
    def identity(self):
        return sum((p.identity for p in self.parts), ())

    def op(self, x, y):
        out = ()
        for p, a, b in self._slices():
            out += p.op(x[a:b], y[a:b])
        return out

    def inverse(self, x):
        out = ()
        for p, a, b in self._slices():
            out += p.inverse(x[a:b])
        return out

    def contains(self, x):
        if len(x) != self.dim:
            return False
        return all(p.contains(x[a:b]) for p, a, b in self._slices())

    def is_unit(self, x):
        return all(p.is_unit(x[a:b]) for p, a, b in self._slices())

    def window(self, n):
        grids = [sorted(p.window(n).elements) for p in self.parts]
        elems = frozenset(sum(combo, ()) for combo in iproduct(*grids))
        return MSubset(self, elems)

    def generators(self):
        gens = []
        for p, a, b in self._slices():
            pad_l, pad_r = (0,) * a, (0,) * (self.dim - b)
            gens.extend(pad_l + g + pad_r for g in p.generators())
        return gens

    def __str__(self):
        return " x ".join(str(p) for p in self.parts)


def _mat_apply(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def _mat_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


@lru_cache(maxsize=4096)
def _mat_power(matrix, inv, n):
    base = matrix if n >= 0 else inv
    out = ((1, 0), (0, 1))
    for _ in range(abs(n)):
        out = _mat_mul(out, base)
    return out


@dataclass(frozen=True)
class SemidirectZZ(Monoid):
    """Z^2 x| Z with (a1, c1) * (a2, c2) = (a1 + phi(c1) a2, c1 + c2).

    phi(n) is the n-th power of a fixed unimodular integer matrix; the
    default shear phi(n)(v1, v2) = (v1 + n*v2, v2) is the interesting
    non-Folner-product case.  Elements are (v1, v2, c).
    """

    matrix: tuple = ((1, 1), (0, 1))

    is_group = True
    dim = 3

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        if a * d - b * c not in (1, -1):
            raise ValueError("matrix must be unimodular")

    @property
    def identity(self):
        return (0, 0, 0)

    def phi(self, n: int):
        (a, b), (c, d) = self.matrix
        det = a * d - b * c
        inv = ((d * det, -b * det), (-c * det, a * det))
        return _mat_power(self.matrix, inv, n)

    def op(self, x, y):
        v = _mat_apply(self.phi(x[2]), (y[0], y[1]))
        return (x[0] + v[0], x[1] + v[1], x[2] + y[2])

    def inverse(self, x):
        w = _mat_apply(self.phi(-x[2]), (-x[0], -x[1]))
        return (w[0], w[1], -x[2])

    def contains(self, x):
        return len(x) == 3 and all(isinstance(a, int) for a in x)

    def window(self, n):
        rng = range(-n, n + 1)
        return MSubset(self, frozenset((a, b, c) for a in rng for b in rng for c in rng))

    def generators(self):
        raise UndecidableFamilyError("semidirect products carry no action generators here")

    def __str__(self):
        return "Z^2 x| Z"


@dataclass(frozen=True)
class OppositeMonoid(Monoid):
    """Same carrier, multiplication swapped."""

    base: Monoid

    @property
    def dim(self):
        return self.base.dim

    @property
    def is_group(self):
        return self.base.is_group

    @property
    def is_finite(self):
        return self.base.is_finite

    @property
    def identity(self):
        return self.base.identity

    def op(self, x, y):
        return self.base.op(y, x)

    def inverse(self, x):
        return self.base.inverse(x)

    def contains(self, x):
        return self.base.contains(x)

    def is_unit(self, x):
        return self.base.is_unit(x)

    def window(self, n):
        return MSubset(self, self.base.window(n).elements)

    def generators(self):
        return self.base.generators()

    def opposite(self):
        return self.base

    def __str__(self):
        return f"({self.base})^op"


@dataclass(frozen=True)
class CappedAdd(MonoidBase):
    """{0, ..., cap} with x (+) y = min(cap, x + y).

    Not cancellative; allowed only as the target of a homomorphism (the
    no-good-section fixture), never as an acting monoid.
    """

    cap: int

    is_cancellative = False
    is_group = False
    is_finite = True
    dim = 1

    @property
    def identity(self):
        return (0,)

    def op(self, x, y):
        return (min(self.cap, x[0] + y[0]),)

    def contains(self, x):
        return len(x) == 1 and 0 <= x[0] <= self.cap

    def elements(self):
        return ((i,) for i in range(self.cap + 1))

    def __str__(self):
        return f"min-cap({self.cap})"


def validate_cancellative(op, elements) -> None:
    """Raise NotCancellativeError if op violates cancellation on the window."""
    elems = list(elements)
    for a in elems:
        seen_l, seen_r = {}, {}
        for x in elems:
            l, r = op(a, x), op(x, a)
            if l in seen_l and seen_l[l] != x:
                raise NotCancellativeError(f"{a}*{x} == {a}*{seen_l[l]}")
            if r in seen_r and seen_r[r] != x:
                raise NotCancellativeError(f"{x}*{a} == {seen_r[r]}*{a}")
            seen_l[l], seen_r[r] = x, x


@dataclass(frozen=True)
class FiniteWindowMonoid(MonoidBase):
    """Explicit finite multiplication window; rejects non-cancellative input."""

    elems: frozenset
    table: tuple  # tuple of ((x, y), xy) pairs

    @classmethod
    def from_op(cls, elements, op):
        elems = frozenset(elements)
        validate_cancellative(op, elems)
        table = tuple(sorted(((x, y), op(x, y)) for x in elems for y in elems))
        return cls(elems, table)

    @property
    def identity(self):
        for e in self.elems:
            if all(xy == y for ((x, y), xy) in self.table if x == e):
                return e
        raise NotImplementedError("window has no identity")

    def op(self, x, y):
        return dict(self.table)[(x, y)]

    def contains(self, x):
        return x in self.elems


@dataclass(frozen=True)
class MSubset:
    """Nonempty-by-convention finite subset of a monoid."""

    monoid: MonoidBase
    elements: frozenset

    @classmethod
    def of(cls, monoid, elements):
        elems = frozenset(tuple(e) for e in elements)
        for e in elems:
            if not monoid.contains(e):
                raise MonoidMismatchError(f"{e} is not an element of {monoid}")
        return cls(monoid, elems)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __contains__(self, x):
        return x in self.elements

    @property
    def contains_identity(self) -> bool:
        return self.monoid.identity in self.elements

    def sorted_key(self):
        return tuple(sorted(self.elements))

    def union(self, other):
        _same_monoid(self, other)
        return MSubset(self.monoid, self.elements | other.elements)

    def translate(self, s):
        """Right translate F*s."""
        op = self.monoid.op
        return MSubset(self.monoid, frozenset(op(f, s) for f in self.elements))


def _same_monoid(F, E):
    if F.monoid != E.monoid:
        raise MonoidMismatchError(f"{F.monoid} != {E.monoid}")


def set_product(F: MSubset, E: MSubset) -> MSubset:
    """Elementwise product set {f e : f in F, e in E}."""
    _same_monoid(F, E)
    op = F.monoid.op
    return MSubset(F.monoid, frozenset(op(f, e) for f in F.elements for e in E.elements))


def sym_diff_ratio(F: MSubset, s) -> Fraction:
    """|Fs (sym diff) F| / |F| as an exact rational."""
    if not F.elements:
        raise ValueError("F must be nonempty")
    fs = F.translate(s).elements
    return Fraction(len(fs ^ F.elements), len(F.elements))


def eps_equiv(F: MSubset, Fp: MSubset, eps) -> bool:
    """|F| == |F'| and |F sym-diff F'| <= eps |F|, decided exactly."""
    _same_monoid(F, Fp)
    if len(F.elements) != len(Fp.elements):
        return False
    return len(F.elements ^ Fp.elements) <= exact_ratio(eps) * len(F.elements)


def boundary(D: MSubset, E: MSubset) -> MSubset:
    """The E-boundary {s in D : sE not fully inside D}."""
    _same_monoid(D, E)
    op = D.monoid.op
    din = D.elements
    out = frozenset(s for s in din if any(op(s, e) not in din for e in E.elements))
    return MSubset(D.monoid, out)


def multi_ore(monoid: Monoid, ss):
    """Common right multiple t = r_i s_i for commutative/group families."""
    ss = list(ss)
    if isinstance(monoid, (FreeCommutative, FiniteAbelianMonoid)) or monoid.is_group:
        if monoid.is_group:
            t = ss[0]
            return t, [monoid.op(t, monoid.inverse(s)) for s in ss]
        t = tuple(max(s[i] for s in ss) for i in range(monoid.dim))
        return t, [tuple(a - b for a, b in zip(t, s)) for s in ss]
    raise UndecidableFamilyError(f"no common-multiple rule for {monoid}")


# ---------------------------------------------------------------------------
# homomorphisms, kernels, sections


@dataclass(frozen=True)
class MonoidHom:
    """Coordinate-level homomorphism between supported families."""

    source: MonoidBase
    target: MonoidBase
    kind: str  # 'project' | 'mod' | 'scale' | 'cap' | 'semidirect-c'
    data: tuple = ()

    def __call__(self, x):
        if self.kind == "project":
            return tuple(x[i] for i in self.data)
        if self.kind == "mod":
            return tuple(a % n for a, n in zip(x, self.target.factors))
        if self.kind == "scale":
            return tuple(a * k for a, k in zip(x, self.data))
        if self.kind == "cap":
            return (min(self.target.cap, x[0]),)
        if self.kind == "semidirect-c":
            return (x[2],)
        raise UndecidableFamilyError(self.kind)

    def apply_set(self, F: MSubset) -> MSubset:
        if F.monoid != self.source:
            raise MonoidMismatchError("subset not in the source monoid")
        return MSubset(self.target, frozenset(self(x) for x in F.elements))

    @property
    def is_surjective(self) -> bool:
        return self.kind != "scale" or all(k in (1, -1) for k in self.data)

    def kernel_embedding(self):
        """(N, embed) with N a monoid family isomorphic to ker = preimage of 1
        and embed mapping N-elements into the source."""
        src = self.source
        if self.kind == "project":
            keep = [i for i in range(src.dim) if i not in self.data]
            sub, place = _sub_family(src, keep)
            return sub, place
        if self.kind == "mod":
            factors = self.target.factors
            if isinstance(src, FreeCommutative):
                n = FreeCommutative(src.dim)
            elif isinstance(src, FreeAbelian):
                n = FreeAbelian(src.dim)
            else:
                raise UndecidableFamilyError(f"mod kernel for {src}")
            return n, lambda t: tuple(a * m for a, m in zip(t, factors))
        if self.kind == "cap":
            return FreeCommutative(0), lambda t: (0,)
        if self.kind == "semidirect-c":
            return FreeAbelian(2), lambda t: (t[0], t[1], 0)
        raise UndecidableFamilyError(f"kernel of {self.kind}")

    def kernel_express(self, s):
        """Inverse of the kernel embedding on elements of the kernel."""
        src = self.source
        if self.kind == "project":
            kept = [i for i in range(src.dim) if i not in self.data]
            if any(s[i] != src.identity[i] for i in self.data):
                raise MonoidMismatchError(f"{s} is not in the kernel")
            return tuple(s[i] for i in kept)
        if self.kind == "mod":
            factors = self.target.factors
            if any(a % n for a, n in zip(s, factors)):
                raise MonoidMismatchError(f"{s} is not in the kernel")
            return tuple(a // n for a, n in zip(s, factors))
        if self.kind == "cap":
            if s != (0,):
                raise MonoidMismatchError(f"{s} is not in the kernel")
            return ()
        if self.kind == "semidirect-c":
            if s[2] != 0:
                raise MonoidMismatchError(f"{s} is not in the kernel")
            return (s[0], s[1])
        raise UndecidableFamilyError(f"kernel of {self.kind}")

    def kernel_is_group(self) -> bool:
        n, _ = self.kernel_embedding()
        return n.is_group

    def __str__(self):
        return f"{self.source} -> {self.target} [{self.kind}]"


def _sub_family(src: Monoid, coords):
    """Sub-monoid of a flat family on the given coordinates, with embedding."""
    coords = tuple(coords)

    def place(t):
        out = list(src.identity)
        for c, v in zip(coords, t):
            out[c] = v
        return tuple(out)

    if isinstance(src, FreeCommutative):
        return FreeCommutative(len(coords)), place
    if isinstance(src, FreeAbelian):
        return FreeAbelian(len(coords)), place
    if isinstance(src, FiniteAbelianMonoid):
        return FiniteAbelianMonoid(tuple(src.factors[c] for c in coords)), place
    if isinstance(src, ProductMonoid):
        parts, at = [], 0
        blocks = []
        for p in src.parts:
            blocks.append((at, at + p.dim, p))
            at += p.dim
        chosen = []
        for a, b, p in blocks:
            block = tuple(range(a, b))
            if all(c in coords for c in block):
                chosen.append(p)
            elif any(c in coords for c in block):
                raise UndecidableFamilyError("projection must respect product blocks")
        sub = ProductMonoid(tuple(chosen)) if len(chosen) != 1 else chosen[0]
        return sub, place
    raise UndecidableFamilyError(f"sub-family of {src}")


def projection_hom(source: Monoid, coords, target=None) -> MonoidHom:
    coords = tuple(coords)
    inferred, _ = _sub_family(source, coords)
    if target is None:
        target = inferred
    elif target != inferred:
        raise MonoidMismatchError(f"projection lands in {inferred}, not {target}")
    return MonoidHom(source, target, "project", coords)


def mod_hom(source: Monoid, factors) -> MonoidHom:
    return MonoidHom(source, FiniteAbelianMonoid(tuple(factors)), "mod")


def scale_hom(source: Monoid, target: Monoid, scale) -> MonoidHom:
    """Injective embedding t -> (k_i t_i); used for restriction actions."""
    if any(k == 0 for k in scale):
        raise ValueError("scale factors must be nonzero")
    return MonoidHom(source, target, "scale", tuple(scale))


def cap_hom(cap: int) -> MonoidHom:
    return MonoidHom(FreeCommutative(1), CappedAdd(cap), "cap")


def semidirect_quotient_hom(source: SemidirectZZ) -> MonoidHom:
    return MonoidHom(source, FreeAbelian(1), "semidirect-c", ())


@dataclass(frozen=True)
class Section:
    """A section of a surjective homomorphism, with sigma(1) = 1."""

    hom: MonoidHom
    kind: str  # 'minimal' | 'canonical'

    def __call__(self, c):
        pi = self.hom
        if pi.kind == "project":
            out = list(pi.source.identity)
            for i, v in zip(pi.data, c):
                out[i] = v
            return tuple(out)
        if pi.kind == "mod":
            return tuple(c)
        if pi.kind == "semidirect-c":
            return (0, 0, c[0])
        raise UndecidableFamilyError(pi.kind)

    def apply_set(self, Y: MSubset) -> MSubset:
        if Y.monoid != self.hom.target:
            raise MonoidMismatchError("subset not in the section's domain")
        return MSubset(self.hom.source, frozenset(self(c) for c in Y.elements))


def fiber(pi: MonoidHom, c, bound: int) -> MSubset:
    """pi^{-1}(c) intersected with the source's canonical window."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    win = pi.source.window(bound)
    return MSubset(pi.source, frozenset(s for s in win.elements if pi(s) == c))


def is_good_element(pi: MonoidHom, s) -> bool:
    """Decide N s = fiber(s) = s N symbolically, per family."""
    if not pi.is_surjective:
        raise UndecidableFamilyError("goodness is defined for surjections only")
    src = pi.source
    if isinstance(src, Monoid) and src.is_group:
        return True
    if pi.kind == "project":
        n, embed = pi.kernel_embedding()
        kept = [i for i in range(src.dim) if i not in pi.data]
        return n.is_unit(tuple(s[i] for i in kept))
    if pi.kind == "mod":
        # N + s covers the fiber iff s is the minimal representative
        return all(0 <= a < m for a, m in zip(s, pi.target.factors))
    if pi.kind == "cap":
        return s[0] < pi.target.cap
    raise UndecidableFamilyError(f"no goodness rule for {pi.kind} on {src}")


def check_good_window(pi: MonoidHom, s, bound: int) -> bool:
    """Bounded falsifier backing the symbolic goodness rule.

    The inclusions Ns, sN <= fiber(s) hold tautologically, so the
    falsifiable content is coverage: every fiber element inside the
    source window must be reachable as ts and st with t from a kernel
    window (taken with a margin so coverage is decided correctly).
    """
    n_mon, embed = pi.kernel_embedding()
    if n_mon.dim:
        win = n_mon.window(4 * bound).elements
    else:
        win = {()}
    ns = {pi.source.op(embed(t), s) for t in win}
    sn = {pi.source.op(s, embed(t)) for t in win}
    fib_w = fiber(pi, pi(s), bound).elements
    return fib_w <= ns and fib_w <= sn


def find_good_section(pi: MonoidHom):
    """A good section with sigma(1) = 1, or None if no section is good."""
    if not pi.is_surjective:
        raise UndecidableFamilyError("sections are for surjections")
    src = pi.source
    if pi.kind == "cap":
        return None  # every section hits a preimage of the cap, which is bad
    if pi.kind in ("project", "mod", "semidirect-c"):
        if isinstance(src, Monoid) and src.is_group:
            return Section(pi, "canonical")
        if pi.kind == "project":
            return Section(pi, "canonical")
        if pi.kind == "mod":
            return Section(pi, "minimal")
    raise UndecidableFamilyError(f"no section rule for {pi.kind} on {src}")


def fiber_conjugation(pi: MonoidHom, sigma: Section, s, n):
    """The unique h with n s = s h, for semi-good s."""
    src = pi.source
    if isinstance(src, SemidirectZZ):
        if s[:2] != (0, 0):
            raise NotSemiGoodError("only canonical-section elements are handled")
        w = _mat_apply(src.phi(-s[2]), (n[0], n[1]))
        return (w[0], w[1], 0)
    if isinstance(src, (FreeCommutative, FreeAbelian, FiniteAbelianMonoid, ProductMonoid)):
        return n  # commutative: h_s is the identity map
    raise NotSemiGoodError(f"no conjugation rule for {src}")
