"""Command-line front end: runs verification sweeps and emits TSV or
JSON-lines reports.

Each suite expands to a deterministic list of tasks sorted by parameter
tuple; tasks may run in parallel (--jobs) but records are emitted in task
order regardless of completion order, so identical invocations produce
identical reports except for the ms column.  Exit status is 0 iff every
record passes.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import cohomology, cubic_enum, local_cubic, local_quad, quad_refl
from .records import VerificationRecord, render_value


def _primes_below(bound: int) -> list[int]:
    sieve = [True] * max(bound, 2)
    sieve[0] = sieve[1] = False
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            for j in range(i * i, bound, i):
                sieve[j] = False
    return [i for i, ok in enumerate(sieve) if ok]


# ---------------------------------------------------------------------------
# record builders not already provided by the library modules


def _levels_model(kind: str, *args):
    if kind == "generic":
        return cohomology.build_generic_model(*args)
    if kind == "square-class":
        return cohomology.build_square_class_model(*args)
    return cohomology.build_tame_cubic_model(*args)


def verify_level_perp(kind: str, *args) -> VerificationRecord:
    """Annihilator of each level subgroup is the complementary dual level."""
    m = _levels_model(kind, *args)
    p = m.params
    bad = []
    for i in range(p.lmin, p.lmax + 1):
        got = sorted(m.perp(m.level_space(i)))
        want = sorted(m.dual_level_space(p.e - i))
        if got != want:
            bad.append(i)
    return VerificationRecord(
        "level-perp",
        {"model": kind, "args": args},
        "ok" if not bad else f"mismatch at levels {bad}",
        "ok",
    )


def verify_double_transform(kind: str, *args) -> VerificationRecord:
    """Fourier transform applied twice is q^e times the reflection x -> -x."""
    m = _levels_model(kind, *args)
    p = m.params
    f = {x: Fraction(i * i - 2 * i + 3, 2) for i, x in enumerate(m.elements)}
    fhat = cohomology.fourier_transform(f, m)
    fhathat = cohomology.fourier_transform(fhat, m, from_dual=True)
    scale = p.q**p.e
    bad = [
        x
        for x in m.elements
        if fhathat[x] != cohomology.CycQ.rational(m.ell, f[m.neg(x)] * scale)
    ]
    return VerificationRecord(
        "level-double-transform",
        {"model": kind, "args": args},
        "ok" if not bad else f"{len(bad)} mismatches",
        "ok",
    )


def z1n_examples(cache_dir: str | None) -> list[VerificationRecord]:
    """Frozen right-hand sides of the inverted-N reflection identities."""
    cases = [
        (1, 15, "c", Fraction(9, 2)),
        (1, 2, "a", Fraction(3, 2)),
        (5, 2, "a", Fraction(3, 2)),
        (-27, 2, "b", Fraction(1, 6)),
        (-27, 5, "b", Fraction(1, 6)),
    ]
    out = []
    for D, N, case, expected in cases:
        got = cubic_enum.z1n_rhs(D, N, case, cache_dir)
        out.append(
            VerificationRecord(
                "z1n-rhs", {"D": D, "N": N, "case": case}, got, expected
            )
        )
    return out


# ---------------------------------------------------------------------------
# task table: every task is (function name, kwargs), picklable for --jobs

_TASK_FUNCS = {
    "quad_on": quad_refl.verify_quadratic_on,
    "legendre": quad_refl.verify_legendre_identity,
    "cubic_on": cubic_enum.verify_cubic_on,
    "ramified_reflection": cubic_enum.verify_totally_ramified_reflection,
    "disc_reduction": cubic_enum.verify_disc_reduction,
    "disc_reduction_multi": cubic_enum.verify_disc_reduction_multi,
    "z1n_examples": z1n_examples,
    "shintani": cubic_enum.verify_shintani_reflection,
    "local_quad_duality": local_quad.verify_local_quad_duality,
    "gf_symbolic": local_quad.verify_gf_symbolic_duality,
    "gf_closed": local_quad.verify_gf_closed_form,
    "family_consistency": local_cubic.verify_family_consistency,
    "involution": local_cubic.verify_involution,
    "symbolic_duality": local_cubic.verify_symbolic_duality,
    "tame_duality": local_cubic.verify_tame_duality,
    "subring_counts": local_cubic.verify_subring_counts,
    "level_perp": verify_level_perp,
    "double_transform": verify_double_transform,
}


def _run_task(task) -> list[tuple[VerificationRecord, float]]:
    name, args, kwargs = task
    t0 = time.perf_counter()
    out = _TASK_FUNCS[name](*args, **kwargs)
    ms = (time.perf_counter() - t0) * 1000.0
    records = out if isinstance(out, list) else [out]
    return [(rec, ms) for rec in records]


def _suite_tasks(suite: str, opts) -> list[tuple]:
    cache = {"cache_dir": opts.cache_dir}
    if suite == "quad-on":
        return [("quad_on", (n,), {}) for n in range(-opts.nmax, opts.nmax + 1) if n]
    if suite == "legendre":
        ps = _primes_below(opts.bound)
        return [
            ("legendre", (p1, p3), {})
            for p1 in ps
            if p1 % 4 == 1
            for p3 in ps
            if p3 % 4 == 3
        ]
    if suite == "cubic-on":
        return [
            ("cubic_on", (D,), cache)
            for D in range(-opts.dmax, opts.dmax + 1)
            if D
        ]
    if suite == "disc-reduce":
        tasks = []
        for p in (2, 5, 7):
            for D in range(-opts.dmax, opts.dmax + 1):
                if D == 0:
                    continue
                if D % p:
                    tasks.append(("ramified_reflection", (D, p), cache))
                elif D % (p * p) == 0 and (p != 2 or (D // 4) % 4 in (0, 1)):
                    tasks.append(("disc_reduction", (D, p), cache))
        tasks.append(("disc_reduction_multi", (100, [2, 5], 3), cache))
        tasks.append(("disc_reduction_multi", (1225, [5, 7], 6), cache))
        return tasks
    if suite == "z1n":
        return [("z1n_examples", (opts.cache_dir,), {})]
    if suite == "zeta":
        return [("shintani", (sign, opts.nmax), cache) for sign in (1, -1)]
    if suite == "local-quad":
        tasks = [
            ("local_quad_duality", (p, t, 6), {})
            for p in (3, 5, 7, 11)
            for t in (0,)
        ]
        tasks += [("local_quad_duality", (2, t, 6), {}) for t in (0, 1)]
        tasks += [
            ("gf_symbolic", (q, e, t, 24), {})
            for q in (2, 3, 9)
            for e in range(0, 3)
            for t in range(0, e + 1)
        ]
        tasks += [
            ("gf_closed", (q, e, t, 24), {})
            for q in (2, 3, 9)
            for e in range(0, 3)
            for t in range(0, e + 1)
        ]
        return tasks
    if suite == "local-cubic":
        tasks = []
        for q in (3, 9):
            for e in (1, 2):
                for n_t in (0, 1):
                    for split in (False, True):
                        if split and n_t % 2:
                            continue
                        for dual in (False, True):
                            if dual and (n_t + e) % 2:
                                continue
                            for t in range(0, e + 1):
                                for n in range(n_t % 2, 13, 2):
                                    args = (q, e, n, t, n_t, split, dual)
                                    tasks.append(("family_consistency", args, {}))
                                    tasks.append(("involution", args, {}))
                                    tasks.append(("symbolic_duality", args, {}))
        return tasks
    if suite == "tame-cubic":
        tasks = [("tame_duality", (p, 8), {}) for p in (2, 5, 7, 11, 13)]
        tasks += [("subring_counts", (p, 6, 1), {}) for p in (2, 3, 5)]
        return tasks
    if suite == "levels":
        tasks = []
        for q, e in ((2, 1), (3, 1), (5, 1), (9, 2)):
            for flags in ((True, True), (False, False)):
                args = ("generic", q, e, *flags)
                tasks.append(("level_perp", args, {}))
                tasks.append(("double_transform", args, {}))
        for p in (2, 3, 5, 7, 13):
            args = ("square-class", p)
            tasks.append(("level_perp", args, {}))
            tasks.append(("double_transform", args, {}))
        return tasks
    raise ValueError(f"unknown suite: {suite}")


SUITES = (
    "quad-on",
    "legendre",
    "cubic-on",
    "disc-reduce",
    "z1n",
    "local-quad",
    "local-cubic",
    "tame-cubic",
    "zeta",
    "levels",
)

_DEFAULTS = {"nmax": {"quad-on": 100, "zeta": 40}, "dmax": {"cubic-on": 50, "disc-reduce": 60}}


def run_suite(suite: str, opts, jobs: int = 1) -> list[tuple[VerificationRecord, float]]:
    tasks = _suite_tasks(suite, opts)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_task, tasks, chunksize=4))
    else:
        chunks = [_run_task(t) for t in tasks]
    return [pair for chunk in chunks for pair in chunk]


def emit(pairs, fmt: str, stream) -> None:
    if fmt == "tsv":
        stream.write("theorem\tparams\tlhs\trhs\tpass\tms\n")
        for rec, ms in pairs:
            stream.write("\t".join(rec.as_row(ms)) + "\n")
        return
    for rec, ms in pairs:
        stream.write(
            json.dumps(
                {
                    "theorem": rec.theorem,
                    "params": rec.params_text(),
                    "lhs": render_value(rec.lhs),
                    "rhs": render_value(rec.rhs),
                    "pass": rec.passed,
                    "ms": round(ms, 1),
                },
                sort_keys=True,
            )
            + "\n"
        )


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="onrefl", description="verification sweeps for the reflection identities"
    )
    ap.add_argument("--suite", required=True, choices=SUITES)
    ap.add_argument("--format", choices=("tsv", "json-lines"), default="tsv")
    ap.add_argument("--out", default=None, help="output path (default stdout)")
    ap.add_argument("--cache-dir", default=None, help="orbit cache directory")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--nmax", type=int, default=None, help="sweep bound (quad-on, zeta)")
    ap.add_argument("--dmax", type=int, default=None, help="discriminant bound (cubic suites)")
    ap.add_argument("--bound", type=int, default=200, help="prime bound (legendre)")
    opts = ap.parse_args(argv)
    if opts.nmax is None:
        opts.nmax = _DEFAULTS["nmax"].get(opts.suite, 40)
    if opts.dmax is None:
        opts.dmax = _DEFAULTS["dmax"].get(opts.suite, 50)

    pairs = run_suite(opts.suite, opts, jobs=opts.jobs)
    if opts.out:
        with open(opts.out, "w") as fh:
            emit(pairs, opts.format, fh)
    else:
        try:
            emit(pairs, opts.format, sys.stdout)
        except BrokenPipeError:
            # downstream closed early (e.g. | head): die quietly like a filter
            devnull = os.open(os.devnull, os.O_WRONLY)
            os.dup2(devnull, sys.stdout.fileno())
            return 141
    return 0 if all(rec.passed for rec, _ in pairs) else 1


if __name__ == "__main__":
    sys.exit(main())
