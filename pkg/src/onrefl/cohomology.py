"""Finite models of local Galois cohomology with level filtrations.

An H1Model is an explicit finite group presented as vectors over F_ell,
together with its dual, a perfect mu_ell-valued pairing, and a decreasing
chain of level subgroups L_lmin >= ... >= L_lmax.  The chain always starts
at the full group and ends at {0}; the index range depends on which of the
two torsors is split:

    lmin = -1 if the dual side is split else 0
    lmax = e+1 if this side is split else e
    |L_i| = q^(e-i) * h0          for 0 <= i <= e
    L_i-perp = L'_(e-i)           on the full index range

Fourier transforms are normalized by 1/h0, so the double transform is
multiplication by q^e composed with negation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

# ---------------------------------------------------------------------------
# exact cyclotomic rationals Q(zeta_ell), ell in {2, 3, 5}


class CycQ:
    """Element of Q(zeta_ell) with Fraction coordinates on 1, zeta, ..., zeta^(ell-2)."""

    __slots__ = ("ell", "coeffs")

    def __init__(self, ell: int, coeffs=None):
        if ell not in (2, 3, 5):
            raise ValueError("only exponents 2, 3, 5 are supported")
        self.ell = ell
        if coeffs is None:
            coeffs = [Fraction(0)] * (ell - 1)
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @classmethod
    def zero(cls, ell: int) -> "CycQ":
        return cls(ell)

    @classmethod
    def one(cls, ell: int) -> "CycQ":
        return cls.rational(ell, 1)

    @classmethod
    def rational(cls, ell: int, value) -> "CycQ":
        coeffs = [Fraction(0)] * (ell - 1)
        coeffs[0] = Fraction(value)
        return cls(ell, coeffs)

    @classmethod
    def zeta_pow(cls, ell: int, k: int) -> "CycQ":
        k %= ell
        coeffs = [Fraction(0)] * (ell - 1)
        if k < ell - 1:
            coeffs[k] = Fraction(1)
        else:
            # zeta^(ell-1) = -(1 + zeta + ... + zeta^(ell-2))
            coeffs = [Fraction(-1)] * (ell - 1)
        return cls(ell, coeffs)

    def __add__(self, other: "CycQ") -> "CycQ":
        assert self.ell == other.ell
        return CycQ(self.ell, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "CycQ") -> "CycQ":
        assert self.ell == other.ell
        return CycQ(self.ell, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "CycQ":
        return CycQ(self.ell, [-a for a in self.coeffs])

    def scale(self, r) -> "CycQ":
        r = Fraction(r)
        return CycQ(self.ell, [a * r for a in self.coeffs])

    def __mul__(self, other: "CycQ") -> "CycQ":
        assert self.ell == other.ell
        ell = self.ell
        raw = [Fraction(0)] * (2 * ell - 3)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                raw[i + j] += a * b
        out = list(raw[: ell - 1]) + [Fraction(0)] * max(0, ell - 1 - len(raw))
        for m in range(ell - 1, len(raw)):
            c = raw[m]
            if not c:
                continue
            k = m % ell
            if k < ell - 1:
                out[k] += c
            else:
                for i in range(ell - 1):
                    out[i] -= c
        return CycQ(ell, out)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycQ):
            return self.ell == other.ell and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == CycQ.rational(self.ell, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ell, self.coeffs))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not rational: {self}")
        return self.coeffs[0]

    def __repr__(self):
        return f"CycQ({self.ell}, {list(self.coeffs)})"


# ---------------------------------------------------------------------------
# Legendre / Hilbert symbols


def legendre_symbol(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def smallest_nonresidue(p: int) -> int:
    for u in range(2, p):
        if legendre_symbol(u, p) == -1:
            return u
    raise ValueError("p must be an odd prime")


def hilbert_symbol(a: int, b: int, p: int) -> int:
    """Hilbert symbol (a, b)_p; p = 0 means the real place."""
    if a == 0 or b == 0:
        raise ValueError("arguments must be nonzero")
    if p == 0:
        return -1 if (a < 0 and b < 0) else 1
    alpha, u = _split_valuation(a, p)
    beta, v = _split_valuation(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_v = ((v - 1) // 2) % 2
        omega_u = ((u * u - 1) // 8) % 2
        omega_v = ((v * v - 1) // 8) % 2
        exp = eps_u * eps_v + alpha * omega_v + beta * omega_u
        return -1 if exp % 2 else 1
    sign = 1
    if (alpha * beta) % 2 and p % 4 == 3:
        sign = -sign
    if beta % 2 and legendre_symbol(u, p) == -1:
        sign = -sign
    if alpha % 2 and legendre_symbol(v, p) == -1:
        sign = -sign
    return sign


def _split_valuation(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class LevelParams:
    """Shape data shared by a model and its symbolic level calculus."""

    q: int
    e: int
    h0: int
    h0_dual: int

    @property
    def lmin(self) -> int:
        return -1 if self.h0_dual > 1 else 0

    @property
    def lmax(self) -> int:
        return self.e + 1 if self.h0 > 1 else self.e

    def dual(self) -> "LevelParams":
        return LevelParams(self.q, self.e, self.h0_dual, self.h0)

    def h1_size(self) -> int:
        return self.q ** self.e * self.h0 * self.h0_dual


class H1Model:
    """Explicit filtered group with a perfect pairing into mu_ell.

    Elements of both sides are tuples over F_ell.  level_masks[i] is the set
    of coordinates that vanish on L_i (so masks grow with i).
    """

    def __init__(
        self,
        ell: int,
        params: LevelParams,
        n_coords: int,
        dual_n_coords: int,
        gram: tuple[tuple[int, ...], ...],
        level_masks: dict[int, frozenset[int]],
        dual_level_masks: dict[int, frozenset[int]],
        labels: dict[tuple[int, ...], int] | None = None,
    ):
        self.ell = ell
        self.params = params
        self.n_coords = n_coords
        self.dual_n_coords = dual_n_coords
        self.gram = gram
        self.level_masks = level_masks
        self.dual_level_masks = dual_level_masks
        self.labels = labels
        self.elements = [tuple(v) for v in product(range(ell), repeat=n_coords)]
        self.dual_elements = [tuple(v) for v in product(range(ell), repeat=dual_n_coords)]

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.n_coords

    @property
    def dual_zero(self) -> tuple[int, ...]:
        return (0,) * self.dual_n_coords

    def neg(self, x: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((-c) % self.ell for c in x)

    def add(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((a + b) % self.ell for a, b in zip(x, y))

    def pairing_exp(self, x: tuple[int, ...], y: tuple[int, ...]) -> int:
        total = 0
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.gram[i]
            for j, yj in enumerate(y):
                if yj:
                    total += xi * row[j] * yj
        return total % self.ell

    def _level_of(self, x, masks) -> int:
        best = None
        for i in sorted(masks):
            if all(x[c] == 0 for c in masks[i]):
                best = i
        assert best is not None
        return best

    def level_of(self, x: tuple[int, ...]) -> int:
        return self._level_of(x, self.level_masks)

    def dual_level_of(self, y: tuple[int, ...]) -> int:
        return self._level_of(y, self.dual_level_masks)

    def level_space(self, i: int) -> list[tuple[int, ...]]:
        mask = self.level_masks[i]
        return [x for x in self.elements if all(x[c] == 0 for c in mask)]

    def dual_level_space(self, i: int) -> list[tuple[int, ...]]:
        mask = self.dual_level_masks[i]
        return [y for y in self.dual_elements if all(y[c] == 0 for c in mask)]

    def perp(self, subset) -> list[tuple[int, ...]]:
        subset = list(subset)
        return [
            y
            for y in self.dual_elements
            if all(self.pairing_exp(x, y) == 0 for x in subset)
        ]


def _factor_prime_power(q: int) -> tuple[int, int]:
    for ell in (2, 3, 5):
        if q % ell == 0:
            f = 0
            m = q
            while m % ell == 0:
                m //= ell
                f += 1
            if m != 1:
                break
            return ell, f
    raise ValueError(f"q = {q} is not a power of 2, 3, or 5")


def build_generic_model(
    q: int, e: int, split: bool, split_dual: bool, ell: int | None = None
) -> H1Model:
    """Filtered model with graded middle of size q^e and optional end coordinates.

    Coordinates on this side: u (iff split), then x_{i,j} for 0 <= i < e,
    0 <= j < f, then r (iff split_dual).  u lies in every L_i up to L_e; r
    lies only in L_(-1); x_{i,*} enters L_k exactly for k <= i.
    """
    if ell is None:
        ell, f = _factor_prime_power(q)
    else:
        f = 0
        m = q
        while m % ell == 0 and m > 1:
            m //= ell
            f += 1
        if e > 0 and ell ** f != q:
            raise ValueError("q must be a power of ell when e > 0")
    h0 = ell if split else 1
    h0_dual = ell if split_dual else 1
    params = LevelParams(q, e, h0, h0_dual)

    def coords(has_u: bool, has_r: bool):
        names = []
        if has_u:
            names.append("u")
        for i in range(e):
            for j in range(f):
                names.append((i, j))
        if has_r:
            names.append("r")
        return names

    names = coords(split, split_dual)
    dual_names = coords(split_dual, split)
    index = {nm: k for k, nm in enumerate(names)}
    dual_index = {nm: k for k, nm in enumerate(dual_names)}

    gram = [[0] * len(dual_names) for _ in names]
    for i in range(e):
        for j in range(f):
            gram[index[(i, j)]][dual_index[(e - 1 - i, j)]] = 1
    if split:
        gram[index["u"]][dual_index["r"]] = 1
    if split_dual:
        gram[index["r"]][dual_index["u"]] = ell - 1

    def masks(names_side, index_side, side_params: LevelParams):
        out: dict[int, frozenset[int]] = {}
        for lev in range(side_params.lmin, side_params.lmax + 1):
            dead = set()
            if "r" in index_side and lev >= 0:
                dead.add(index_side["r"])
            for i in range(e):
                for j in range(f):
                    if i < lev:
                        dead.add(index_side[(i, j)])
            if lev == e + 1:
                dead = set(range(len(names_side)))
            out[lev] = frozenset(dead)
        return out

    return H1Model(
        ell,
        params,
        len(names),
        len(dual_names),
        tuple(tuple(row) for row in gram),
        masks(names, index, params),
        masks(dual_names, dual_index, params.dual()),
    )


def build_square_class_model(p: int) -> H1Model:
    """Square classes of the p-adic field with the Hilbert pairing.

    Levels: L_(-1) everything, L_0 units, then units congruent to 1 to
    increasing depth, ending at the trivial class.
    """
    if p == 2:
        gens = [-1, 5, 2]
        e = 1
        # L_0: kill 2-coordinate; L_1: units that are squares mod 4; L_2: trivial
        level_masks = {
            -1: frozenset(),
            0: frozenset({2}),
            1: frozenset({0, 2}),
            2: frozenset({0, 1, 2}),
        }
    else:
        u = smallest_nonresidue(p)
        gens = [u, p]
        e = 0
        level_masks = {
            -1: frozenset(),
            0: frozenset({1}),
            1: frozenset({0, 1}),
        }
    n = len(gens)
    gram = tuple(
        tuple(0 if hilbert_symbol(gi, gj, p) == 1 else 1 for gj in gens) for gi in gens
    )
    params = LevelParams(q=p if p != 2 else 2, e=e, h0=2, h0_dual=2)
    labels = {}
    for vec in product(range(2), repeat=n):
        val = 1
        for c, g in zip(vec, gens):
            if c:
                val *= g
        labels[vec] = val
    return H1Model(2, params, n, n, gram, level_masks, dict(level_masks), labels)


def build_tame_cubic_model(p: int, split: bool, split_dual: bool) -> H1Model:
    """Order-1/3/9 model for a residue characteristic away from 3.

    split / split_dual say whether disc and -3*disc are squares, i.e. whether
    the quadratic torsor on each side is split.  The pairing on the order-9
    model is the determinant form, with the unramified line isotropic.
    """
    if p == 3:
        raise ValueError("tame model needs residue characteristic away from 3")
    return build_generic_model(p, 0, split, split_dual, ell=3)


# ---------------------------------------------------------------------------
# Fourier transforms


def fourier_transform(values: dict, model: H1Model, from_dual: bool = False) -> dict:
    """Transform f -> f-hat, normalized by 1/h0 of the source side.

    values maps source elements to Fraction or CycQ; the result maps target
    elements to CycQ.  The double transform equals q^e * f(-x).
    """
    ell = model.ell
    if from_dual:
        source = model.dual_elements
        target = model.elements
        h0 = model.params.h0_dual
        pair = lambda a, b: model.pairing_exp(b, a)
    else:
        source = model.elements
        target = model.dual_elements
        h0 = model.params.h0
        pair = model.pairing_exp
    inv = Fraction(1, h0)
    out = {}
    for beta in target:
        acc = CycQ.zero(ell)
        for alpha in source:
            v = values.get(alpha, 0)
            if isinstance(v, CycQ):
                term = v
            else:
                v = Fraction(v)
                if not v:
                    continue
                term = CycQ.rational(ell, v)
            acc = acc + term * CycQ.zeta_pow(ell, pair(alpha, beta))
        out[beta] = acc.scale(inv)
    return out


# ---------------------------------------------------------------------------
# symbolic level calculus


@dataclass(frozen=True)
class LevelVector:
    """Formal rational combination of level-space indicators sum c_i [L_i].

    Evaluation on a class of level l gives sum of c_i over i <= l.
    """

    params: LevelParams
    coeffs: tuple[tuple[int, Fraction], ...]

    @classmethod
    def make(cls, params: LevelParams, mapping: dict[int, Fraction]) -> "LevelVector":
        clean = []
        for i in sorted(mapping):
            c = Fraction(mapping[i])
            if c:
                if i < params.lmin or i > params.lmax:
                    raise ValueError(f"level index {i} out of range")
                clean.append((i, c))
        return cls(params, tuple(clean))

    @classmethod
    def indicator(cls, params: LevelParams, i: int) -> "LevelVector":
        return cls.make(params, {i: Fraction(1)})

    @classmethod
    def zero(cls, params: LevelParams) -> "LevelVector":
        return cls(params, ())

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def __add__(self, other: "LevelVector") -> "LevelVector":
        assert self.params == other.params
        m = self.as_dict()
        for i, c in other.coeffs:
            m[i] = m.get(i, Fraction(0)) + c
        return LevelVector.make(self.params, m)

    def scale(self, r) -> "LevelVector":
        r = Fraction(r)
        return LevelVector.make(self.params, {i: c * r for i, c in self.coeffs})

    def __sub__(self, other: "LevelVector") -> "LevelVector":
        return self + other.scale(-1)

    def value_at_level(self, lev: int) -> Fraction:
        return sum((c for i, c in self.coeffs if i <= lev), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs


def level_fourier(vec: LevelVector) -> LevelVector:
    """Transform of a level combination, on the dual index range.

    [i] -> q^(e-i) [e-i] for 0 <= i <= e; the end indicators follow the same
    geometry: the full space maps to a point mass, the point mass to the
    constant 1/h0.
    """
    p = vec.params
    dual = p.dual()
    out: dict[int, Fraction] = {}

    def bump(i: int, c: Fraction):
        out[i] = out.get(i, Fraction(0)) + c

    for i, c in vec.coeffs:
        if i == -1:
            bump(dual.lmax, c * p.q ** p.e * p.h0_dual)
        elif i == p.e + 1:
            bump(dual.lmin, c * Fraction(1, p.h0))
        else:
            bump(p.e - i, c * p.q ** (p.e - i))
    return LevelVector.make(dual, out)


# ---------------------------------------------------------------------------
# level -> (offset, root multiplicity) dictionary for cubic classes


def level_offset_disc(level: int, e: int, dual_disc_parity: int) -> tuple[int, int]:
    """Minimal disc valuation d0 and the Hensel multiplicity h for a class level.

    dual_disc_parity is v(disc) mod 2 of the *dual* quadratic torsor.  Level
    -1 means the radical classes (h = 3); levels 0..e carry h in {1, 2} fixed
    by h = level + dual_disc_parity mod 2; the top level (split side) has
    d0 = 0.
    """
    if level == -1:
        h = 3
    elif 0 <= level <= e:
        h = 2 if (level + dual_disc_parity) % 2 == 0 else 1
    elif level == e + 1:
        h = 2
    else:
        raise ValueError("level out of range")
    d0 = max(0, 3 * e + 2 - 3 * level - h)
    return d0, h
