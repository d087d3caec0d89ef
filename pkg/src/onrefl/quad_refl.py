"""Counting binary quadratic forms by superdiscriminant, and the reflection law.

Forms are counted up to the translation equivalence x -> x + ky, which fixes
a and moves b by 2ak; the superdiscriminant I = a(b^2 - 4ac) is a complete
invariant of the relevant family.  For nonzero I the classes with a given
divisor a of I are the b in (-|a|, |a|] with b^2 = I/a mod 4a.

The reflection law relates counts at n and 4n:

    #even-b positive-disc classes at 4n  =  #classes at n
    #even-b classes at 4n               =  2 * #positive-disc classes at n
"""
from __future__ import annotations

from dataclasses import dataclass

from .cohomology import legendre_symbol
from .records import VerificationRecord

BinaryQuadraticForm = tuple[int, int, int]

# smallest-prime-factor sieve, grown on demand
_SPF: list[int] = [0, 1]


def _ensure_spf(limit: int) -> None:
    global _SPF
    if len(_SPF) > limit:
        return
    size = max(limit + 1, 2 * len(_SPF), 1 << 12)
    spf = list(range(size))
    for p in range(2, int(size ** 0.5) + 1):
        if spf[p] == p:
            for m in range(p * p, size, p):
                if spf[m] == m:
                    spf[m] = p
    _SPF = spf


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of |n| as (p, exponent) pairs."""
    n = abs(n)
    if n <= 1:
        return []
    _ensure_spf(n)
    out = []
    while n > 1:
        p = _SPF[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize(n):
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


def sqrt_root_count(m: int, p: int, k: int) -> int:
    """Number of x mod p^k with x^2 = m (mod p^k)."""
    if k == 0:
        return 1
    pk = p ** k
    m %= pk
    if m == 0:
        return p ** (k // 2)
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    if v % 2:
        return 0
    scale = p ** (v // 2)
    kk = k - v
    if p == 2:
        if kk == 1:
            return scale
        if kk == 2:
            return 2 * scale if m % 4 == 1 else 0
        return 4 * scale if m % 8 == 1 else 0
    return 2 * scale if legendre_symbol(m, p) == 1 else 0


def sqrt_count_mod(m: int, modulus: int) -> int:
    """Number of x mod modulus with x^2 = m, by prime-power factorization."""
    count = 1
    for p, k in factorize(modulus):
        count *= sqrt_root_count(m, p, k)
        if count == 0:
            return 0
    return count


@dataclass(frozen=True)
class SuperdiscCounts:
    """Class counts at one superdiscriminant: all, even-b, positive-disc, both."""

    q: int
    q2: int
    qplus: int
    q2plus: int


def enumerate_superdisc(n: int) -> list[BinaryQuadraticForm]:
    """All translation-classes (a, b, c) with a(b^2-4ac) = n, b in (-|a|, |a|]."""
    if n == 0:
        raise ValueError("superdiscriminant must be nonzero")
    forms = []
    for a0 in divisors(n):
        for a in (a0, -a0):
            if n % a:
                continue
            disc = n // a
            for b in range(-abs(a) + 1, abs(a) + 1):
                num = b * b - disc
                if num % (4 * a) == 0:
                    forms.append((a, b, num // (4 * a)))
    return sorted(forms)


def q_counts(n: int) -> SuperdiscCounts:
    """Fast class counts via square-root counting modulo 4a and a."""
    if n == 0:
        raise ValueError("superdiscriminant must be nonzero")
    q = q2 = qplus = q2plus = 0
    for a0 in divisors(n):
        for a in (a0, -a0):
            disc = n // a
            total = sqrt_count_mod(disc, 4 * a0) // 2
            even = sqrt_count_mod(disc // 4, a0) if disc % 4 == 0 else 0
            q += total
            q2 += even
            if disc > 0:
                qplus += total
                q2plus += even
    return SuperdiscCounts(q, q2, qplus, q2plus)


def counts_from_forms(forms: list[BinaryQuadraticForm]) -> SuperdiscCounts:
    q = len(forms)
    q2 = sum(1 for _, b, _ in forms if b % 2 == 0)
    qplus = sum(1 for a, b, c in forms if b * b - 4 * a * c > 0)
    q2plus = sum(1 for a, b, c in forms if b % 2 == 0 and b * b - 4 * a * c > 0)
    return SuperdiscCounts(q, q2, qplus, q2plus)


def verify_quadratic_on(n: int, fast: bool = True) -> VerificationRecord:
    """Check the two reflection identities linking counts at n and 4n."""
    cn = q_counts(n) if fast else counts_from_forms(enumerate_superdisc(n))
    c4n = q_counts(4 * n) if fast else counts_from_forms(enumerate_superdisc(4 * n))
    lhs = (c4n.q2plus, c4n.q2)
    rhs = (cn.q, 2 * cn.qplus)
    return VerificationRecord(
        theorem="quad-on",
        params={"n": n},
        lhs=lhs,
        rhs=rhs,
    )


def verify_legendre_identity(p1: int, p3: int) -> VerificationRecord:
    """Counts at p1*p3 and 4*p1*p3 encode the two Legendre symbols.

    p1 = 1 mod 4 and p3 = 3 mod 4 must be distinct odd primes; the reflection
    law then forces quadratic reciprocity for the pair.
    """
    if p1 % 4 != 1 or p3 % 4 != 3:
        raise ValueError("need p1 = 1 (mod 4) and p3 = 3 (mod 4)")
    c = q_counts(p1 * p3)
    c4 = q_counts(4 * p1 * p3)
    lhs = (c.qplus, c4.q2)
    rhs = (5 + legendre_symbol(p1, p3), 10 + 2 * legendre_symbol(p3, p1))
    return VerificationRecord(
        theorem="legendre",
        params={"p1": p1, "p3": p3},
        lhs=lhs,
        rhs=rhs,
    )
