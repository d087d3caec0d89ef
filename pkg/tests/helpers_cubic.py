"""Brute-force cubic orbit oracle, independent of the package's search box
and canonicalization: scan every form up to a coefficient height, partition
by breadth-first search over single generator moves below a height cap, and
compute stabilizers by scanning small unimodular matrices."""
from functools import lru_cache

from onrefl.forms import act_cubic, disc_cubic

GENS = (((0, 1), (-1, 0)), ((1, 0), (1, 1)), ((1, 0), (-1, 1)), ((1, 0), (0, -1)))


@lru_cache(maxsize=4)
def forms_by_disc(height: int, bound: int) -> dict:
    table: dict = {}
    rng = range(-height, height + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    f = (a, b, c, d)
                    D = disc_cubic(f)
                    if D != 0 and abs(D) <= bound:
                        table.setdefault(D, []).append(f)
    return table


def brute_components(D: int, height: int, cap: int, bound: int = 50) -> list:
    """Partition the height-bounded forms of discriminant D into orbits,
    connecting through forms of height at most cap."""
    small = set(forms_by_disc(height, bound).get(D, []))
    components = []
    while small:
        start = min(small)
        seen = {start}
        stack = [start]
        members = set()
        while stack:
            f = stack.pop()
            if f in small:
                members.add(f)
            for g in GENS:
                h = act_cubic(g, f)
                if h not in seen and max(abs(t) for t in h) <= cap:
                    seen.add(h)
                    stack.append(h)
        small -= members
        components.append(sorted(members))
    return components


@lru_cache(maxsize=1)
def small_unimodular(bound: int = 9) -> tuple:
    out = []
    rng = range(-bound, bound + 1)
    for p in rng:
        for q in rng:
            for r in rng:
                for s in rng:
                    if p * s - q * r in (1, -1):
                        out.append(((p, r), (q, s)))
    return tuple(out)


def brute_stabilizer_order(f) -> int:
    return sum(1 for g in small_unimodular() if act_cubic(g, f) == f)


def shortest_member(component) -> tuple:
    """Member with the smallest coefficient height, where stabilizer
    elements stay within the small matrix bound."""
    return min(component, key=lambda f: (max(abs(t) for t in f), f))
