"""Cohomology models: pairings, level chains, transforms, level calculus."""
from __future__ import annotations

from fractions import Fraction

import pytest

from onrefl.cohomology import (
    CycQ,
    LevelParams,
    LevelVector,
    build_generic_model,
    build_square_class_model,
    build_tame_cubic_model,
    fourier_transform,
    hilbert_symbol,
    legendre_symbol,
    level_fourier,
    level_offset_disc,
    smallest_nonresidue,
)


def _square_class_id(v: int, p: int, modulus: int):
    """(valuation mod 2, unit-part class) of v mod modulus, or None if too deep."""
    v %= modulus
    if v == 0:
        return None
    m = 0
    while v % p == 0:
        v //= p
        m += 1
    if p == 2:
        if modulus // 2 ** m < 8:
            return None
        return (m % 2, v % 8)
    if modulus // p ** m < p:
        return None
    return (m % 2, legendre_symbol(v, p))


def norm_class_set(a: int, p: int) -> set:
    """Square classes represented by z^2 - a x^2, the norms from adjoining sqrt(a)."""
    modulus = 2 ** 7 if p == 2 else p ** 4
    out = set()
    for z in range(modulus):
        zz = z * z
        for x in range(modulus):
            cls = _square_class_id(zz - a * x * x, p, modulus)
            if cls is not None:
                out.add(cls)
    return out


def hilbert_oracle(a: int, b: int, p: int, cache={}) -> int:
    """(a, b)_p = 1 iff b is a norm from the quadratic algebra given by a."""
    if p == 0:
        return -1 if a < 0 and b < 0 else 1
    key = (a, p)
    if key not in cache:
        cache[key] = norm_class_set(a, p)
    modulus = 2 ** 7 if p == 2 else p ** 4
    cls = _square_class_id(b, p, modulus)
    assert cls is not None
    return 1 if cls in cache[key] else -1


def test_cycq_arithmetic():
    for ell in (2, 3, 5):
        one = CycQ.one(ell)
        z = CycQ.zeta_pow(ell, 1)
        # zeta^ell = 1 and 1 + zeta + ... + zeta^(ell-1) = 0
        acc = CycQ.zero(ell)
        power = one
        for _ in range(ell):
            acc = acc + power
            power = power * z
        assert power == one  # z^ell
        assert acc == CycQ.zero(ell)
        assert (z * z) == CycQ.zeta_pow(ell, 2)
        assert one.scale(Fraction(3, 2)).as_fraction() == Fraction(3, 2)


def test_legendre_and_hilbert_against_oracle():
    cases = []
    for p in (3, 5, 7):
        u = smallest_nonresidue(p)
        reps = [1, u, p, u * p]
        for a in reps:
            for b in reps:
                cases.append((a, b, p))
    for a, b, p in cases:
        assert hilbert_symbol(a, b, p) == hilbert_oracle(a, b, p), (a, b, p)
    for a in (1, -1, 5, -5, 2, -2, 10, -10):
        for b in (1, -1, 5, 2, -10):
            assert hilbert_symbol(a, b, 2) == hilbert_oracle(a, b, 2), (a, b)
    assert hilbert_symbol(-1, -1, 0) == -1
    assert hilbert_symbol(-1, 2, 0) == 1


def test_hilbert_bimultiplicative():
    for p in (2, 3, 5, 13):
        vals = [1, -1, 2, 5, p, -p, 3 * p]
        for a in vals:
            for b in vals:
                for c in vals:
                    assert hilbert_symbol(a * b, c, p) == hilbert_symbol(
                        a, c, p
                    ) * hilbert_symbol(b, c, p)


def _check_model_geometry(m):
    p = m.params
    # chain sizes
    for i in range(0, p.e + 1):
        assert len(m.level_space(i)) == p.q ** (p.e - i) * p.h0, i
    assert len(m.level_space(p.lmin)) == p.h1_size()
    assert len(m.level_space(p.lmax)) == 1
    # chain is decreasing
    prev = None
    for i in range(p.lmin, p.lmax + 1):
        cur = set(m.level_space(i))
        if prev is not None:
            assert cur <= prev
        prev = cur
    # pairing is perfect: only 0 pairs trivially with everything
    for x in m.elements:
        if all(m.pairing_exp(x, y) == 0 for y in m.dual_elements):
            assert x == m.zero
    for y in m.dual_elements:
        if all(m.pairing_exp(x, y) == 0 for x in m.elements):
            assert y == m.dual_zero
    # subgroup duality on the whole index range
    for i in range(p.lmin, p.lmax + 1):
        j = p.e - i
        perp = set(m.perp(m.level_space(i)))
        assert perp == set(m.dual_level_space(j)), (i, j)
    # level_of consistency
    for x in m.elements:
        lev = m.level_of(x)
        assert x in m.level_space(lev)
        if lev < p.lmax:
            assert x not in m.level_space(lev + 1)


def test_square_class_models():
    for p in (2, 3, 5, 7, 13):
        m = build_square_class_model(p)
        _check_model_geometry(m)
        # labels are genuine square-class representatives
        labels = m.labels
        assert len(set(labels.values())) == len(labels)
    m = build_square_class_model(2)
    # frozen chain for p = 2: units at level >= 0, 1 mod 4 at level >= 1
    by_level = {}
    for x in m.elements:
        by_level.setdefault(m.level_of(x), set()).add(m.labels[x])
    assert by_level[2] == {1}
    assert by_level[1] == {5}
    assert by_level[0] == {-1, -5}
    assert by_level[-1] == {2, -2, 10, -10}


def test_generic_models():
    for q, e in ((2, 1), (3, 1), (5, 1), (9, 2)):
        for split in (True, False):
            for split_dual in (True, False):
                m = build_generic_model(q, e, split, split_dual)
                _check_model_geometry(m)
                assert m.params.h1_size() == len(m.elements)


def test_tame_cubic_models():
    for split, split_dual in ((True, True), (True, False), (False, True), (False, False)):
        m = build_tame_cubic_model(7, split, split_dual)
        _check_model_geometry(m)
    m = build_tame_cubic_model(7, True, True)
    assert len(m.elements) == 9
    # unramified line is isotropic: L_0 perp L'_0
    for x in m.level_space(0):
        for y in m.dual_level_space(0):
            assert m.pairing_exp(x, y) == 0


def test_double_transform_is_scaled_negation():
    for builder in (
        lambda: build_square_class_model(5),
        lambda: build_square_class_model(2),
        lambda: build_generic_model(3, 1, True, True),
        lambda: build_generic_model(9, 2, True, False),
        lambda: build_generic_model(2, 1, False, True),
        lambda: build_tame_cubic_model(7, True, True),
    ):
        m = builder()
        p = m.params
        # an arbitrary rational test function
        f = {x: Fraction(i * i - 2 * i + 3, 2) for i, x in enumerate(m.elements)}
        fhat = fourier_transform(f, m)
        fhathat = fourier_transform(fhat, m, from_dual=True)
        scale = p.q ** p.e
        for x in m.elements:
            expected = CycQ.rational(m.ell, f[m.neg(x)] * scale)
            assert fhathat[x] == expected, x


def test_indicator_transform():
    m = build_generic_model(3, 1, True, True)
    p = m.params
    for i in range(p.lmin, p.lmax + 1):
        space = m.level_space(i)
        f = {x: Fraction(1) for x in space}
        fhat = fourier_transform(f, m)
        perp = set(m.perp(space))
        scale = Fraction(len(space), p.h0)
        for y in m.dual_elements:
            expected = scale if y in perp else Fraction(0)
            assert fhat[y] == CycQ.rational(m.ell, expected)


def test_level_fourier_matches_models():
    """The symbolic rules agree with honest transforms of level indicators."""
    shapes = [
        build_square_class_model(5),
        build_square_class_model(2),
        build_generic_model(3, 1, True, True),
        build_generic_model(3, 1, True, False),
        build_generic_model(3, 1, False, True),
        build_generic_model(9, 2, False, False),
        build_tame_cubic_model(7, True, True),
    ]
    for m in shapes:
        p = m.params
        dual = p.dual()
        for i in range(p.lmin, p.lmax + 1):
            vec = LevelVector.indicator(p, i)
            tv = level_fourier(vec)
            f = {x: Fraction(1) for x in m.level_space(i)}
            fhat = fourier_transform(f, m)
            for y in m.dual_elements:
                lev = m.dual_level_of(y)
                assert fhat[y] == CycQ.rational(m.ell, tv.value_at_level(lev)), (i, y)


def test_level_fourier_involutive():
    for q, e, h0, h0d in ((3, 1, 3, 3), (3, 2, 3, 1), (9, 2, 1, 3), (2, 1, 2, 2), (5, 1, 1, 1)):
        p = LevelParams(q, e, h0, h0d)
        for i in range(p.lmin, p.lmax + 1):
            vec = LevelVector.indicator(p, i)
            twice = level_fourier(level_fourier(vec))
            assert twice == vec.scale(q ** e), (q, e, h0, h0d, i)


def test_level_vector_algebra():
    p = LevelParams(3, 1, 3, 3)
    v = LevelVector.make(p, {-1: Fraction(1), 0: Fraction(-1), 2: Fraction(3)})
    w = LevelVector.indicator(p, 0)
    assert (v + w).as_dict() == {-1: Fraction(1), 2: Fraction(3)}
    assert v.value_at_level(-1) == 1
    assert v.value_at_level(1) == 0
    assert v.value_at_level(2) == 3
    with pytest.raises(ValueError):
        LevelVector.make(p, {3: Fraction(1)})


def test_level_offset_disc():
    # radical classes
    assert level_offset_disc(-1, 0, 0) == (2, 3)
    assert level_offset_disc(-1, 1, 1) == (5, 3)
    # unramified cubic: level e, even combination, d0 = 0
    for e in (0, 1, 2):
        d0, h = level_offset_disc(e, e, e % 2)
        assert (d0, h) == (0, 2)
    # ramified quadratic side: level e with odd combination gives d0 = 1
    d0, h = level_offset_disc(1, 1, 0)
    assert (d0, h) == (1, 1)
    # wild non-radical levels over Q3 (e = 1): level 0 classes
    assert level_offset_disc(0, 1, 0) == (3, 2)  # Eisenstein-type, disc val 3
    assert level_offset_disc(0, 1, 1) == (4, 1)  # cyclic-type, disc val 4
    # top level always d0 = 0
    assert level_offset_disc(2, 1, 0)[0] == 0


def test_legendre_symbol_basic():
    assert legendre_symbol(2, 7) == 1
    assert legendre_symbol(3, 7) == -1
    assert legendre_symbol(14, 7) == 0
    assert smallest_nonresidue(7) == 3
