"""GL2(Z)-orbit enumeration of integer binary cubic forms.

Forms of fixed nonzero discriminant are produced by a finite search box,
identified up to the twisted GL2(Z) action by a canonical representative,
and counted with weight (selector value)/|stabilizer|.  On top of the
enumeration sit the verifiers for the global reflection identity, its
totally-ramified refinement, the discriminant-reduction identities, the
Z[1/N] right-hand sides, and the coefficient form of the extra functional
equation for the associated Dirichlet series.

Canonical representatives: for D > 0 the Hessian is positive definite, so a
form is moved until its Hessian is Gauss-reduced and the lexicographically
least orbit member with lax-reduced Hessian is taken (an exact, integer-only
computation).  For D < 0 a reducible form is normalized exactly against the
stabilizer of its rational root; an irreducible form is first reduced by a
floating-point walk on the positive definite quadratic factor of f(x, 1)
and the lexicographic minimum is then taken over the orbit members inside
explicit integer coefficient bounds, which is again exact.
"""
from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator

from mpmath import mp

from .forms import (
    BinaryCubicForm,
    IDENTITY,
    act_cubic,
    content_cubic,
    disc_cubic,
    distinct_root_count_mod_p,
    gauss_reduce,
    hessian,
    eval_cubic,
    mat_mul,
    simple_root_count_mod_N,
    splitting_type,
    stabilizer_order_cubic,
    trace_ideal_exponent_at_3,
    translate_cubic,
    _divisors,
    _unimodular_with_row,
)
from .records import VerificationRecord

_S = ((0, 1), (-1, 0))
_T = ((1, 0), (1, 1))
_F = ((1, 0), (0, -1))
_GENS = (IDENTITY, _S, ((0, -1), (1, 0)), _T, ((1, 0), (-1, 1)), _F)
# all words of length <= 2 in the generators; enough to step between any two
# adjacent reduced positions (boundary identifications and automorphisms)
_EDGE_WORDS = tuple(
    sorted({mat_mul(g, h) for g in _GENS for h in _GENS} - {IDENTITY})
)


@dataclass(frozen=True)
class OrbitRepresentative:
    form: BinaryCubicForm
    stabilizer_order: int


# ---------------------------------------------------------------------------
# canonical representatives


def _min_over_component(start: BinaryCubicForm, node_ok) -> BinaryCubicForm:
    """Lexicographic minimum of the orbit members reachable from start
    through forms satisfying node_ok, stepping by _EDGE_WORDS."""
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for m in _EDGE_WORDS:
            h = act_cubic(m, f)
            if h not in seen and node_ok(h):
                seen.add(h)
                stack.append(h)
        if len(seen) > 20000:
            raise AssertionError("runaway orbit component")
    return min(seen)


def _lax_reduced_hessian(f: BinaryCubicForm) -> bool:
    A, B, C = hessian(f)
    return abs(B) <= A <= C


def _all_proj_roots(f: BinaryCubicForm) -> list[tuple[int, int]]:
    """All primitive rational projective zeros, normalized to y > 0 or (1, 0)."""
    a, b, c, d = f
    roots = set()
    if a == 0:
        roots.add((1, 0))
    poly = [a, b, c, d]
    while poly and poly[0] == 0:
        poly.pop(0)
    if poly and poly[-1] == 0:
        roots.add((0, 1))
    while poly and poly[-1] == 0:
        poly.pop()
    if len(poly) >= 2:
        for y in _divisors(abs(poly[0])):
            for x in _divisors(abs(poly[-1])):
                for sx in (x, -x):
                    if gcd(sx, y) == 1 and eval_cubic(f, sx, y) == 0:
                        roots.add((sx, y))
    return sorted(roots)


def _cusp_candidates(f: BinaryCubicForm) -> list[BinaryCubicForm]:
    """All orbit members of shape (0, b>0, 0<=c<2b, d); nonempty iff f has a
    rational root.  Complete: the stabilizer of the cusp modulo sign is
    generated by translations and the y-flip."""
    out = []
    for root in _all_proj_roots(f):
        moved = act_cubic(_unimodular_with_row(*root), f)
        for base in (moved, act_cubic(_F, moved)):
            z, b, c, d = base
            if b < 0:
                z, b, c, d = 0, -b, -c, -d
            k = -(c // (2 * b))
            out.append(act_cubic(((1, 0), (k, 1)), (z, b, c, d)))
    return out


@lru_cache(maxsize=1 << 16)
def _pair_covariant(f: BinaryCubicForm):
    """(B, C) with x^2 + Bx + C the positive definite factor of f(x,1)/a.

    Only meaningful for irreducible f of negative discriminant, where f has
    one real and two conjugate complex roots.
    """
    with mp.workdps(40):
        roots = mp.polyroots(list(f), maxsteps=120, extraprec=60)
        z = max(roots, key=lambda r: abs(mp.im(r)))
        assert abs(mp.im(z)) > mp.mpf("1e-20"), "complex pair expected"
        return (-2 * mp.re(z), mp.re(z) ** 2 + mp.im(z) ** 2)


_TOL = 1e-12


def _reduce_negative(f: BinaryCubicForm) -> BinaryCubicForm:
    """Gauss walk on the pair covariant; lands on a nearly-reduced form."""
    for _ in range(100000):
        B, C = _pair_covariant(f)
        if C < 1 - _TOL:
            f = act_cubic(_S, f)
        elif abs(B) > 1 + _TOL:
            f = translate_cubic(f, int(mp.nint(-B / 2)))
        else:
            return f
    raise AssertionError("covariant walk did not terminate")


def _iroot(n: int, k: int) -> int:
    x = int(round(n ** (1.0 / k)))
    while x > 0 and x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _negative_bounds(absD: int) -> tuple[int, int, int, int]:
    # every reduced-covariant form obeys these coefficient bounds: with the
    # complex pair z in the usual fundamental domain, |a|^4 <= 16|D|/27,
    # |theta| <= |D|^(1/4) + 2 and |z|^2 <= |D|^(1/3) + 2
    a0 = _iroot(16 * absD // 27, 4) + 2
    t = _iroot(absD, 4) + 2
    u = _iroot(absD, 3) + 2
    return (a0, 2 * a0 * t, 2 * a0 * (t + u), 2 * a0 * t * u)


def canonical_form(f: BinaryCubicForm) -> BinaryCubicForm:
    """Canonical representative of the orbit of f; idempotent."""
    D = disc_cubic(f)
    if D == 0:
        raise ValueError("degenerate form")
    if D > 0:
        _, g = gauss_reduce(hessian(f))
        return _min_over_component(act_cubic(g, f), _lax_reduced_hessian)
    cusp = _cusp_candidates(f)
    if cusp:
        return min(cusp)
    ba, bb, bc, bd = _negative_bounds(-D)

    def in_bounds(h: BinaryCubicForm) -> bool:
        return (
            abs(h[0]) <= ba
            and abs(h[1]) <= bb
            and abs(h[2]) <= bc
            and abs(h[3]) <= bd
        )

    return _min_over_component(_reduce_negative(f), in_bounds)


# ---------------------------------------------------------------------------
# search box


def _solve_d(a: int, b: int, c: int, D: int) -> Iterator[int]:
    # 27 a^2 d^2 + (4 b^3 - 18 a b c) d + (D - b^2 c^2 + 4 a c^3) = 0
    lead = 27 * a * a
    mid = 4 * b**3 - 18 * a * b * c
    const = D - b * b * c * c + 4 * a * c**3
    quad = mid * mid - 4 * lead * const
    if quad < 0:
        return
    r = isqrt(quad)
    if r * r != quad:
        return
    for num in (-mid + r, -mid - r):
        if num % (2 * lead) == 0:
            yield num // (2 * lead)
        if r == 0:
            break


def _box_candidates(D: int) -> Iterator[BinaryCubicForm]:
    """Integral forms of discriminant D meeting every orbit at least once."""
    # forms with a = 0: b^2 | D and the cusp stabilizer normalizes (b, c)
    absD = abs(D)
    b = 1
    while b * b <= absD:
        if D % (b * b) == 0:
            rest = D // (b * b)  # c^2 - 4 b d
            for c in range(0, 2 * b):
                num = c * c - rest
                if num % (4 * b) == 0:
                    yield (0, b, c, num // (4 * b))
        b += 1
    if D > 0:
        # Hessian-reduced with leading coefficient P in [1, sqrt(D)]; the
        # syzygy 4P^3 = G(1,0)^2 + 27 D a^2 bounds a
        amax = 0
        while 729 * (amax + 1) ** 4 <= 16 * D:
            amax += 1
        amax += 1
        pmax = isqrt(D) + 1
        for a in range(1, amax + 1):
            for bb in range(-(3 * a) // 2 + 1, (3 * a) // 2 + 1):
                clo = -((pmax - bb * bb) // (3 * a))
                chi = (bb * bb - 1) // (3 * a)
                for c in range(clo, chi + 1):
                    for d in _solve_d(a, bb, c, D):
                        yield (a, bb, c, d)
    else:
        # reduced-covariant bounds: a^4 <= 2|D| with slack, |b^2 - 3ac|
        # within 3 sqrt(|D|)
        amax = 0
        while (amax + 1) ** 4 <= 4 * absD:
            amax += 1
        amax += 1
        pmax = 3 * isqrt(absD) + 3
        for a in range(1, amax + 1):
            for bb in range(-(3 * a) // 2 + 1, (3 * a) // 2 + 1):
                clo = -((pmax - bb * bb) // (3 * a))
                chi = (bb * bb + pmax) // (3 * a)
                for c in range(clo, chi + 1):
                    for d in _solve_d(a, bb, c, D):
                        yield (a, bb, c, d)


# ---------------------------------------------------------------------------
# enumeration with optional per-discriminant disk cache

CACHE_ENV = "ONREFL_CACHE_DIR"
_CACHE_VERSION = "1"


def _cache_path(D: int, cache_dir: str | None) -> str | None:
    base = cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV)
    if not base:
        return None
    return os.path.join(base, f"v{_CACHE_VERSION}", f"D{D}.txt")


def _cache_read(path: str | None) -> list[OrbitRepresentative] | None:
    if path is None or not os.path.exists(path):
        return None
    out = []
    with open(path) as fh:
        for line in fh:
            a, b, c, d, stab = (int(t) for t in line.split())
            out.append(OrbitRepresentative((a, b, c, d), stab))
    return out


def _cache_write(path: str | None, reps: list[OrbitRepresentative]) -> None:
    if path is None:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path))
    with os.fdopen(fd, "w") as fh:
        for rep in reps:
            a, b, c, d = rep.form
            fh.write(f"{a} {b} {c} {d} {rep.stabilizer_order}\n")
    os.replace(tmp, path)


def enumerate_cubic_orbits(
    D: int, cache_dir: str | None = None
) -> list[OrbitRepresentative]:
    """One canonical representative per orbit of discriminant D, sorted."""
    if D == 0:
        raise ValueError("discriminant must be nonzero")
    path = _cache_path(D, cache_dir)
    cached = _cache_read(path)
    if cached is not None:
        return cached
    reps: dict[BinaryCubicForm, int] = {}
    for f in set(_box_candidates(D)):
        assert disc_cubic(f) == D
        cf = canonical_form(f)
        if cf not in reps:
            reps[cf] = stabilizer_order_cubic(cf)
    out = [OrbitRepresentative(f, s) for f, s in sorted(reps.items())]
    _cache_write(path, out)
    return out


# ---------------------------------------------------------------------------
# local selectors and weighted class numbers


@dataclass(frozen=True)
class SplittingTypeIs:
    p: int
    sigma: str

    def weight(self, f: BinaryCubicForm) -> int:
        return 1 if splitting_type(f, self.p) == self.sigma else 0


@dataclass(frozen=True)
class SimpleRootWeight:
    p: int

    def weight(self, f: BinaryCubicForm) -> int:
        return simple_root_count_mod_N(f, self.p)


@dataclass(frozen=True)
class SimpleRootWeightComposite:
    N: int

    def weight(self, f: BinaryCubicForm) -> int:
        return simple_root_count_mod_N(f, self.N)


@dataclass(frozen=True)
class RootWeight:
    """Number of roots in P^1(Z/p), each distinct root counted once."""

    p: int

    def weight(self, f: BinaryCubicForm) -> int:
        return distinct_root_count_mod_p(f, self.p)


@dataclass(frozen=True)
class MaximalAt:
    p: int

    def weight(self, f: BinaryCubicForm) -> int:
        return 1 if is_maximal_at_p(f, self.p) else 0


@dataclass(frozen=True)
class TracedAt3:
    def weight(self, f: BinaryCubicForm) -> int:
        return 1 if trace_ideal_exponent_at_3(f) >= 1 else 0


@dataclass(frozen=True)
class DiscScale:
    """Bookkeeping record: divide the discriminant by p^(2k) before counting."""

    p: int
    k: int = 1


LocalSelector = (
    SplittingTypeIs
    | SimpleRootWeight
    | SimpleRootWeightComposite
    | RootWeight
    | MaximalAt
    | TracedAt3
    | DiscScale
)


def class_number(
    D: int,
    selectors: list[LocalSelector] | None = None,
    cache_dir: str | None = None,
) -> Fraction:
    """Sum over orbits of discriminant D of (selector weight)/|stabilizer|."""
    if D == 0:
        raise ValueError("discriminant must be nonzero")
    scale = 1
    weights = []
    for s in selectors or []:
        if isinstance(s, DiscScale):
            scale *= s.p ** (2 * s.k)
        else:
            weights.append(s)
    if D % scale:
        raise ValueError("disc scaling requires p^(2k) | D")
    total = Fraction(0)
    for rep in enumerate_cubic_orbits(D // scale, cache_dir):
        w = 1
        for s in weights:
            w *= s.weight(rep.form)
            if w == 0:
                break
        if w:
            total += Fraction(w, rep.stabilizer_order)
    return total


def _roots_with_mult(f: BinaryCubicForm, p: int) -> list[tuple[tuple[int, int], int]]:
    out = []
    for x in range(p):
        shifted = translate_cubic(tuple(t % p for t in f), x)
        m = 0
        for coeff in (shifted[3], shifted[2], shifted[1], shifted[0]):
            if coeff % p == 0:
                m += 1
            else:
                break
        if m:
            out.append(((x, 1), m))
    if f[0] % p == 0:
        m = 0
        for coeff in f:
            if coeff % p == 0:
                m += 1
            else:
                break
        out.append(((1, 0), m))
    return out


def is_maximal_at_p(f: BinaryCubicForm, p: int) -> bool:
    """Whether the cubic ring of f has no index-p overring.

    False iff p divides the content, or some multiple root of f mod p moved
    to [1:0] leaves coefficients with p^2 | a and p | b.  For a multiple root
    the leading coefficient mod p^2 does not depend on the chosen lift.
    """
    if disc_cubic(f) == 0:
        raise ValueError("degenerate form")
    if content_cubic(f) % p == 0:
        return False
    for root, mult in _roots_with_mult(f, p):
        if mult >= 2:
            moved = act_cubic(_unimodular_with_row(*root), f)
            if moved[0] % (p * p) == 0 and moved[1] % p == 0:
                return False
    return True


# ---------------------------------------------------------------------------
# global identities


def _c_infinity(D: int) -> int:
    return 3 if D > 0 else 1


def verify_cubic_on(D: int, cache_dir: str | None = None) -> VerificationRecord:
    """Reflection identity: traced count at -27D against c_inf times the
    plain count at D."""
    lhs = class_number(-27 * D, [TracedAt3()], cache_dir)
    rhs = _c_infinity(D) * class_number(D, [], cache_dir)
    return VerificationRecord("cubic-on", {"D": D}, lhs, rhs)


def verify_totally_ramified_reflection(
    D: int, p: int, cache_dir: str | None = None
) -> VerificationRecord:
    """Both reflection identities with a totally ramified selector at p.

    Requires p != 3 prime and p not dividing D.
    """
    if p == 3:
        raise ValueError("p = 3 is excluded")
    if D % p == 0:
        raise ValueError("D must be prime to p")
    c = _c_infinity(D)
    t13l = class_number(
        -27 * p * p * D, [TracedAt3(), SplittingTypeIs(p, "1^3")], cache_dir
    )
    lhs1 = t13l / c
    rhs1 = 2 * class_number(D, [SplittingTypeIs(p, "111")], cache_dir) - class_number(
        D, [SplittingTypeIs(p, "3")], cache_dir
    )
    lhs2 = c * class_number(p * p * D, [SplittingTypeIs(p, "1^3")], cache_dir)
    rhs2 = 2 * class_number(
        -27 * D, [TracedAt3(), SplittingTypeIs(p, "111")], cache_dir
    ) - class_number(-27 * D, [TracedAt3(), SplittingTypeIs(p, "3")], cache_dir)
    return VerificationRecord(
        "ramified-reflection", {"D": D, "p": p}, (lhs1, lhs2), (rhs1, rhs2)
    )


def verify_disc_reduction(
    D: int, p: int, cache_dir: str | None = None
) -> VerificationRecord:
    """Single-prime discriminant reduction at p (p != 3, p^2 | D)."""
    if p == 3:
        raise ValueError("p = 3 is excluded")
    if D == 0 or D % (p * p):
        raise ValueError("p^2 must divide D")
    c = _c_infinity(D)
    rhs = class_number(D // (p * p), [RootWeight(p)], cache_dir)
    if D % p**4 == 0:
        rhs += class_number(D // p**4, [], cache_dir)
        rhs -= class_number(D // p**4, [RootWeight(p)], cache_dir)
    reflected = 2 * class_number(
        -27 * D // (p * p), [TracedAt3(), SplittingTypeIs(p, "111")], cache_dir
    ) - class_number(
        -27 * D // (p * p), [TracedAt3(), SplittingTypeIs(p, "3")], cache_dir
    )
    rhs += Fraction(1, c) * reflected
    lhs = class_number(D, [], cache_dir)
    return VerificationRecord("disc-reduction", {"D": D, "p": p}, lhs, rhs)


def _affine_root_sum(
    D: int,
    base: list[LocalSelector],
    plain: tuple[int, ...],
    minus_one: tuple[int, ...],
    one_minus: tuple[int, ...],
    traced: bool,
    cache_dir: str | None,
) -> Fraction:
    """Weighted count with factors R_p (plain), (R_p - 1), and (1 - R_p),
    expanded multilinearly."""
    total = Fraction(0)
    m1 = list(minus_one)
    om = list(one_minus)
    for amask in range(1 << len(m1)):
        aset = [m1[i] for i in range(len(m1)) if amask >> i & 1]
        asign = (-1) ** (len(m1) - len(aset))
        for bmask in range(1 << len(om)):
            bset = [om[i] for i in range(len(om)) if bmask >> i & 1]
            bsign = (-1) ** len(bset)
            sel: list[LocalSelector] = list(base)
            if traced:
                sel.append(TracedAt3())
            sel.extend(RootWeight(p) for p in (*plain, *aset, *bset))
            total += asign * bsign * class_number(D, sel, cache_dir)
    return total


def _bucket_splits(primes: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    buckets: list[list[int]] = [[], [], []]

    def rec(i: int):
        if i == len(primes):
            yield tuple(tuple(b) for b in buckets)
            return
        for b in buckets:
            b.append(primes[i])
            yield from rec(i + 1)
            b.pop()

    yield from rec(0)


def verify_disc_reduction_multi(
    D: int, primes: list[int], t: int, cache_dir: str | None = None
) -> VerificationRecord:
    """Multi-prime discriminant reduction: q = prod(primes) squarefree,
    3 not dividing q, q^2 | D, threshold t < q.  Checks both identities."""
    primes = sorted(primes)
    q = 1
    for p in primes:
        q *= p
    if len(set(primes)) != len(primes) or q % 3 == 0:
        raise ValueError("primes must be distinct and avoid 3")
    if D == 0 or D % (q * q):
        raise ValueError("q^2 must divide D")
    if not 0 <= t < q:
        raise ValueError("threshold must satisfy 0 <= t < q")
    c = _c_infinity(D)

    def vp_is_two(ps: tuple[int, ...]) -> bool:
        for p in ps:
            v = 0
            n = abs(D)
            while n % p == 0:
                n //= p
                v += 1
            if v != 2:
                return False
        return True

    sides = []
    for traced_side in (False, True):
        lhs = class_number(
            -27 * D if traced_side else D,
            [TracedAt3()] if traced_side else [],
            cache_dir,
        )
        rhs = Fraction(0)
        for q1s, q2s, q3s in _bucket_splits(tuple(primes)):
            q1 = q2 = q3 = 1
            for p in q1s:
                q1 *= p
            for p in q2s:
                q2 *= p
            for p in q3s:
                q3 *= p
            if q1 <= t:
                den = q2 * q2 * q3**4
                top = -27 * D if traced_side else D
                if top % den:
                    continue
                rhs += _affine_root_sum(
                    top // den,
                    [MaximalAt(p) for p in q1s],
                    q2s,
                    (),
                    q3s,
                    traced_side,
                    cache_dir,
                )
            else:
                if not vp_is_two(q1s + q3s):
                    continue
                den = q1 * q1 * q3 * q3
                top = D if traced_side else -27 * D
                term = _affine_root_sum(
                    top // den, [], (), q1s, q3s, not traced_side, cache_dir
                )
                rhs += c * term if traced_side else Fraction(1, c) * term
        sides.append((lhs, rhs))
    return VerificationRecord(
        "disc-reduction-multi",
        {"D": D, "primes": tuple(primes), "t": t},
        (sides[0][0], sides[1][0]),
        (sides[0][1], sides[1][1]),
    )


def _fundamental_at(D: int, p: int) -> bool:
    if p == 2:
        return D % 4 == 1 or D % 16 in (8, 12)
    return D % (p * p) != 0


def z1n_rhs(
    D: int, N: int, case: str, cache_dir: str | None = None
) -> Fraction:
    """Right-hand side of the Z[1/N] reflection identity, variant (a), (b),
    or (c); the left-hand sides live over Z[1/N] and are not computed here."""
    if N <= 1:
        raise ValueError("N must exceed 1")
    n, fac = N, []
    p = 2
    while p * p <= n:
        if n % p == 0:
            fac.append(p)
            n //= p
            if n % p == 0:
                raise ValueError("N must be squarefree")
        p += 1
    if n > 1:
        fac.append(n)
    if D == 0:
        raise ValueError("discriminant must be nonzero")
    for p in fac:
        if not _fundamental_at(D, p):
            raise ValueError(f"D must be fundamental at {p}")
    c = _c_infinity(D)
    if case == "a":
        if N % 3 == 0:
            raise ValueError("variant (a) needs 3 not dividing N")
        return c * class_number(D, [SimpleRootWeightComposite(N)], cache_dir)
    if case == "b":
        if N % 3 == 0:
            raise ValueError("variant (b) needs 3 not dividing N")
        if D % 27:
            raise ValueError("variant (b) needs 27 | D")
        return Fraction(c, 3) * class_number(
            D, [TracedAt3(), SimpleRootWeightComposite(N)], cache_dir
        )
    if case == "c":
        if N % 3:
            raise ValueError("variant (c) needs 3 | N")
        return c * class_number(D, [SimpleRootWeightComposite(N)], cache_dir)
    raise ValueError("case must be 'a', 'b', or 'c'")


# ---------------------------------------------------------------------------
# Dirichlet series coefficients


@dataclass(frozen=True)
class ShintaniCoefficientTable:
    """Nonzero coefficients of the class-number Dirichlet series for one
    signature (sign of the discriminant) and traced flag."""

    sign: int
    traced: bool
    bound: int
    entries: tuple[tuple[int, Fraction], ...]

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.entries)


def shintani_coefficients(
    sign: int, traced: bool, X: int, cache_dir: str | None = None
) -> ShintaniCoefficientTable:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if X < 1:
        raise ValueError("bound must be at least 1")
    sel: list[LocalSelector] = [TracedAt3()] if traced else []
    entries = []
    for n in range(1, X + 1):
        val = class_number(sign * n, sel, cache_dir)
        if val:
            entries.append((n, val))
    return ShintaniCoefficientTable(sign, traced, X, tuple(entries))


def verify_shintani_reflection(
    sign: int, X: int, cache_dir: str | None = None
) -> list[VerificationRecord]:
    """Termwise functional equation between the plain series at signature
    sign and the traced series at the opposite signature: the coefficient at
    |disc| = 27n on the traced side is c_inf times the one at n.  Equivalent
    to the reflection identity, with the disc-scaling powers stripped."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    c = 3 if sign > 0 else 1
    out = []
    for n in range(1, X + 1):
        lhs = class_number(-27 * sign * n, [TracedAt3()], cache_dir)
        rhs = c * class_number(sign * n, [], cache_dir)
        out.append(VerificationRecord("shintani-fe", {"sign": sign, "n": n}, lhs, rhs))
    return out
