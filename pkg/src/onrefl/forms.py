"""Integral binary quadratic and cubic forms and their GL2(Z) structure.

A binary quadratic form (a, b, c) stands for ax^2 + bxy + cy^2, a binary
cubic form (a, b, c, d) for ax^3 + bx^2y + cxy^2 + dy^3.  Cubic forms carry
the determinant-twisted GL2(Z) action, so f and -f always lie in the same
orbit and discriminants are preserved rather than scaled.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

BinaryQuadraticForm = tuple[int, int, int]
BinaryCubicForm = tuple[int, int, int, int]
UnimodularMatrix = tuple[tuple[int, int], tuple[int, int]]

# splitting of a cubic form mod p: multiplicities of projective roots,
# "0" meaning p divides the whole form
SplittingType = str
SPLITTING_TYPES = ("111", "12", "3", "1^2 1", "1^3", "0")


def disc_quadratic(q: BinaryQuadraticForm) -> int:
    a, b, c = q
    return b * b - 4 * a * c


def superdiscriminant(q: BinaryQuadraticForm) -> int:
    """a * disc, the GL2(Z)-invariant that replaces disc for quadratics here."""
    a, b, c = q
    return a * (b * b - 4 * a * c)


def disc_cubic(f: BinaryCubicForm) -> int:
    a, b, c, d = f
    return (
        18 * a * b * c * d
        + b * b * c * c
        - 4 * a * c ** 3
        - 4 * b ** 3 * d
        - 27 * a * a * d * d
    )


def content_cubic(f: BinaryCubicForm) -> int:
    return gcd(gcd(f[0], f[1]), gcd(f[2], f[3]))


def mat_det(g: UnimodularMatrix) -> int:
    return g[0][0] * g[1][1] - g[0][1] * g[1][0]


def mat_mul(g: UnimodularMatrix, h: UnimodularMatrix) -> UnimodularMatrix:
    return (
        (g[0][0] * h[0][0] + g[0][1] * h[1][0], g[0][0] * h[0][1] + g[0][1] * h[1][1]),
        (g[1][0] * h[0][0] + g[1][1] * h[1][0], g[1][0] * h[0][1] + g[1][1] * h[1][1]),
    )


def is_unimodular(g: UnimodularMatrix) -> bool:
    return mat_det(g) in (1, -1)


IDENTITY: UnimodularMatrix = ((1, 0), (0, 1))


def act_cubic(g: UnimodularMatrix, f: BinaryCubicForm) -> BinaryCubicForm:
    """Twisted substitution action: (g.f)(x, y) = f(g11 x + g21 y, g12 x + g22 y) / det g."""
    a, b, c, d = f
    p, r = g[0]
    q, s = g[1]
    det = p * s - q * r
    if det not in (1, -1):
        raise ValueError("matrix must be unimodular")
    a2 = a * p ** 3 + b * p * p * r + c * p * r * r + d * r ** 3
    b2 = (
        3 * a * p * p * q
        + b * (p * p * s + 2 * p * q * r)
        + c * (2 * p * r * s + q * r * r)
        + 3 * d * r * r * s
    )
    c2 = (
        3 * a * p * q * q
        + b * (2 * p * q * s + q * q * r)
        + c * (p * s * s + 2 * q * r * s)
        + 3 * d * r * s * s
    )
    d2 = a * q ** 3 + b * q * q * s + c * q * s * s + d * s ** 3
    return (a2 * det, b2 * det, c2 * det, d2 * det)


def translate_quadratic(q: BinaryQuadraticForm, k: int) -> BinaryQuadraticForm:
    """Substitute x -> x + k y; keeps a and the discriminant."""
    a, b, c = q
    return (a, b + 2 * a * k, a * k * k + b * k + c)


def translate_cubic(f: BinaryCubicForm, k: int) -> BinaryCubicForm:
    """Substitute x -> x + k y (determinant 1, no twist needed)."""
    a, b, c, d = f
    return (
        a,
        3 * a * k + b,
        3 * a * k * k + 2 * b * k + c,
        a * k ** 3 + b * k * k + c * k + d,
    )


def hessian(f: BinaryCubicForm) -> BinaryQuadraticForm:
    """Quadratic covariant (P, U, Q); disc(hessian) = -3 disc(f)."""
    a, b, c, d = f
    return (b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)


def eval_quadratic(q: BinaryQuadraticForm, x: int, y: int) -> int:
    a, b, c = q
    return a * x * x + b * x * y + c * y * y


def eval_cubic(f: BinaryCubicForm, x: int, y: int) -> int:
    a, b, c, d = f
    return a * x ** 3 + b * x * x * y + c * x * y * y + d * y ** 3


@dataclass(frozen=True)
class CubicRingTable:
    """Multiplication table of the rank-3 ring attached to a cubic form.

    Basis (1, xi, eta); each product is recorded as coefficients
    (constant, xi, eta).
    """

    xi_sq: tuple[int, int, int]
    eta_sq: tuple[int, int, int]
    xi_eta: tuple[int, int, int]

    def trace_xi(self) -> int:
        # mult-by-xi matrix has diagonal (0, xi_sq[1], xi_eta[2])
        return self.xi_sq[1] + self.xi_eta[2]

    def trace_eta(self) -> int:
        return self.xi_eta[1] + self.eta_sq[2]

    def multiply(
        self, u: tuple[int, int, int], v: tuple[int, int, int]
    ) -> tuple[int, int, int]:
        u0, u1, u2 = u
        v0, v1, v2 = v
        out = [u0 * v0, u0 * v1 + u1 * v0, u0 * v2 + u2 * v0]
        for coeff, table in (
            (u1 * v1, self.xi_sq),
            (u2 * v2, self.eta_sq),
            (u1 * v2 + u2 * v1, self.xi_eta),
        ):
            out[0] += coeff * table[0]
            out[1] += coeff * table[1]
            out[2] += coeff * table[2]
        return (out[0], out[1], out[2])


def cubic_ring_of_form(f: BinaryCubicForm) -> CubicRingTable:
    """Ring Z<1, xi, eta> with xi*eta = -ad, xi^2 = -ac + b xi - a eta,
    eta^2 = -bd + d xi - c eta."""
    a, b, c, d = f
    return CubicRingTable(
        xi_sq=(-a * c, b, -a),
        eta_sq=(-b * d, d, -c),
        xi_eta=(-a * d, 0, 0),
    )


def trace_ideal_exponent_at_3(f: BinaryCubicForm) -> int:
    """3-adic valuation of the trace ideal (3, tr xi, tr eta) of the form's ring.

    tr xi = b and tr eta = -c, so the exponent is 1 exactly when 3 | b and 3 | c.
    """
    return 1 if f[1] % 3 == 0 and f[2] % 3 == 0 else 0


def _proj_roots_mod_p(f: BinaryCubicForm, p: int) -> list[int]:
    """Multiplicities of the roots of f in P^1(F_p); empty for an irreducible cubic."""
    a, b, c, d = (x % p for x in f)
    mults = []
    for x in range(p):
        # multiplicity of [x : 1] by repeated deflation of f(t + x, 1)
        a2, b2, c2, d2 = translate_cubic((a, b, c, d), x)
        m = 0
        for coeff in (d2, c2, b2, a2):
            if coeff % p == 0:
                m += 1
            else:
                break
        if m:
            mults.append(m)
    if a == 0:
        # [1 : 0]; deflate in the other variable
        m = 0
        for coeff in (a, b, c, d):
            if coeff % p == 0:
                m += 1
            else:
                break
        mults.append(m)
    return sorted(mults, reverse=True)


def splitting_type(f: BinaryCubicForm, p: int) -> SplittingType:
    if content_cubic(f) % p == 0:
        return "0"
    mults = _proj_roots_mod_p(f, p)
    if mults == [1, 1, 1]:
        return "111"
    if mults == [1]:
        return "12"
    if mults == []:
        return "3"
    if mults == [2, 1]:
        return "1^2 1"
    if mults == [3]:
        return "1^3"
    raise AssertionError(f"impossible multiplicities {mults}")


def distinct_root_count_mod_p(f: BinaryCubicForm, p: int) -> int:
    """Number of distinct roots of f in P^1(F_p); p+1 when p divides the form."""
    if content_cubic(f) % p == 0:
        return p + 1
    return len(_proj_roots_mod_p(f, p))


def simple_root_count_mod_N(f: BinaryCubicForm, N: int) -> int:
    """Product over primes p | N of the number of simple roots of f in P^1(F_p)."""
    out = 1
    n = N
    p = 2
    while p * p <= n:
        if n % p == 0:
            out *= _simple_roots_at_p(f, p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out *= _simple_roots_at_p(f, n)
    return out


def _simple_roots_at_p(f: BinaryCubicForm, p: int) -> int:
    if content_cubic(f) % p == 0:
        return 0
    return sum(1 for m in _proj_roots_mod_p(f, p) if m == 1)


# ---------------------------------------------------------------------------
# positive-definite reduction and automorphisms, used for stabilizers and
# (by the orbit enumerator) for canonical representatives


def compose_quadratic(q: BinaryQuadraticForm, g: UnimodularMatrix) -> BinaryQuadraticForm:
    """Substitution with the same index pattern as act_cubic (no determinant twist).

    hessian(act_cubic(g, f)) == compose_quadratic(hessian(f), g).
    """
    a, b, c = q
    p, r = g[0]
    s, t = g[1]
    return (
        a * p * p + b * p * r + c * r * r,
        2 * a * p * s + b * (p * t + s * r) + 2 * c * r * t,
        a * s * s + b * s * t + c * t * t,
    )


def gauss_reduce(q: BinaryQuadraticForm) -> tuple[BinaryQuadraticForm, UnimodularMatrix]:
    """Properly reduce a positive-definite form.

    Returns (reduced, g) with compose_quadratic(q, g) == reduced.
    """
    a, b, c = q
    if a <= 0 or disc_quadratic(q) >= 0:
        raise ValueError("form must be positive definite")
    g = IDENTITY
    swap = ((0, -1), (1, 0))  # (x, y) -> (y, -x)
    while True:
        if c < a:
            a, b, c = c, -b, a
            g = mat_mul(swap, g)
            continue
        if b > a or b <= -a:
            k = _center_translation(a, b)
            a, b, c = a, b + 2 * a * k, a * k * k + b * k + c
            g = mat_mul(((1, 0), (k, 1)), g)
            continue
        if a == c and b < 0:
            a, b, c = c, -b, a
            g = mat_mul(swap, g)
            continue
        return (a, b, c), g


def _center_translation(a: int, b: int) -> int:
    """k minimizing |b + 2ak| with result in (-a, a]."""
    k = round(-b / (2 * a))
    while b + 2 * a * k > a:
        k -= 1
    while b + 2 * a * k <= -a:
        k += 1
    return k


def aut_posdef(q: BinaryQuadraticForm) -> list[UnimodularMatrix]:
    """All g in GL2(Z), both determinants, with q o g = q (q positive definite)."""
    a, b, c = q
    disc = 4 * a * c - b * b
    if a <= 0 or disc <= 0:
        raise ValueError("form must be positive definite")

    def vectors_with_value(v: int) -> list[tuple[int, int]]:
        out = []
        ybound = isqrt(4 * a * v // disc) + 1
        for y in range(-ybound, ybound + 1):
            # a x^2 + (b y) x + (c y^2 - v) = 0
            dd = b * b * y * y - 4 * a * (c * y * y - v)
            if dd < 0:
                continue
            r = isqrt(dd)
            if r * r != dd:
                continue
            for num in (-b * y + r, -b * y - r):
                if num % (2 * a) == 0:
                    out.append((num // (2 * a), y))
        return sorted(set(out))

    rows1 = vectors_with_value(a)
    rows2 = vectors_with_value(c)
    auts = []
    for row1 in rows1:
        for row2 in rows2:
            g = (row1, row2)
            if is_unimodular(g) and compose_quadratic(q, g) == q:
                auts.append(g)
    return auts


def _rational_proj_root(f: BinaryCubicForm) -> tuple[int, int] | None:
    """A primitive (x, y) with f(x, y) = 0, or None if no rational projective root."""
    a, b, c, d = f
    if a == 0:
        return (1, 0)
    # rational roots x/y of a t^3 + b t^2 + c t + d with x | d', y | a after scaling;
    # search divisors of a*d via the classical bound
    for y in _divisors(abs(a)):
        if d == 0:
            if eval_cubic(f, 0, 1) == 0:
                return (0, 1)
        for x in _divisors(abs(d)) if d != 0 else [0]:
            for sx in (1, -1):
                if gcd(x, y) == 1 and eval_cubic(f, sx * x, y) == 0:
                    return (sx * x, y)
    return None


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    for i in range(1, isqrt(n) + 1):
        if n % i == 0:
            out.append(i)
            out.append(n // i)
    return sorted(set(out))


def _unimodular_with_row(x: int, y: int) -> UnimodularMatrix:
    """Determinant-1 matrix whose first row is (x, y), gcd(x, y) = 1."""
    if gcd(x, y) != 1:
        raise ValueError("row must be primitive")
    u, v = _bezout(x, y)  # u x + v y = 1
    return ((x, y), (-v, u))


def _bezout(a: int, b: int) -> tuple[int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def stabilizer_order_cubic(f: BinaryCubicForm) -> int:
    """Order of the stabilizer of f in GL2(Z) under the twisted action.

    Always a divisor of 6.  Requires disc(f) != 0.
    """
    disc = disc_cubic(f)
    if disc == 0:
        raise ValueError("degenerate form")
    if disc > 0:
        hred, g = gauss_reduce(hessian(f))
        moved = act_cubic(g, f)
        return sum(1 for u in aut_posdef(hred) if act_cubic(u, moved) == moved)
    root = _rational_proj_root(f)
    if root is None:
        return 1
    g = _unimodular_with_row(*root)
    # root now at [1:0]: form (0, b, c, d); extra symmetry iff b | c
    _, b, c, _ = act_cubic(g, f)
    assert b != 0
    return 2 if c % b == 0 else 1
