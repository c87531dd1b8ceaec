"""Intersection lattices of central rank-3 arrangements.

Only the rank-2 flats (lines) are stored; ``V``, the hyperplanes and the
origin are implicit.  Everything downstream of :func:`build_lattice` that
decides inductive freeness reads incidence data only, never coordinates.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .arrangement import Arrangement, canonical, cross, intersection_lines


class NotDivisibleByTMinus1(ArithmeticError):
    pass


@dataclass(frozen=True)
class Flat2:
    direction: tuple | None
    incident: tuple


@dataclass(frozen=True)
class CharPoly:
    c3: int
    c2: int
    c1: int
    c0: int

    @property
    def coefficients(self):
        return [self.c3, self.c2, self.c1, self.c0]

    def __call__(self, t):
        return ((self.c3 * t + self.c2) * t + self.c1) * t + self.c0

    def __str__(self):
        parts = []
        for c, mono in zip(self.coefficients, ("t^3", "t^2", "t", "")):
            if c == 0:
                continue
            mag = abs(c)
            body = mono if (mag == 1 and mono) else f"{mag}{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass
class IntersectionLattice:
    n: int
    flats: list
    per_hyperplane: list = field(default=None)

    def __post_init__(self):
        if self.per_hyperplane is None:
            per = [[] for _ in range(self.n)]
            for k, f in enumerate(self.flats):
                for i in f.incident:
                    per[i].append(k)
            self.per_hyperplane = [tuple(p) for p in per]

    @classmethod
    def from_incidence(cls, n, incident_sets):
        return cls(n, [Flat2(None, tuple(sorted(s))) for s in incident_sets])

    def restriction_counts(self) -> list[int]:
        return [len(p) for p in self.per_hyperplane]

    def flat_sizes(self) -> list[int]:
        return [len(f.incident) for f in self.flats]

    def pair_count_ok(self) -> bool:
        return sum(math.comb(len(f.incident), 2) for f in self.flats) == math.comb(self.n, 2)

    def is_rank3(self) -> bool:
        # rank <= 2 iff every pair of hyperplanes shares the same line
        return not (self.n < 3 or (len(self.flats) == 1 and len(self.flats[0].incident) == self.n))

    def delete(self, h: int) -> IntersectionLattice:
        """Lattice of ``A \\ {H}``, hyperplane indices above ``h`` shift down by one."""
        flats = []
        for f in self.flats:
            inc = tuple(i if i < h else i - 1 for i in f.incident if i != h)
            if len(inc) >= 2:
                flats.append(Flat2(f.direction, inc))
        return IntersectionLattice(self.n - 1, flats)

    def subset(self, keep) -> IntersectionLattice:
        """Lattice of the subarrangement on ``keep`` (sorted), re-indexed 0..len-1."""
        keep = sorted(keep)
        pos = {h: i for i, h in enumerate(keep)}
        flats = []
        for f in self.flats:
            inc = tuple(pos[i] for i in f.incident if i in pos)
            if len(inc) >= 2:
                flats.append(Flat2(f.direction, inc))
        return IntersectionLattice(len(keep), flats)


def build_lattice(a: Arrangement) -> IntersectionLattice:
    a.require_rank3()
    return IntersectionLattice(len(a), [Flat2(d, inc) for d, inc in intersection_lines(a)])


def extend_lattice(L: IntersectionLattice, a: Arrangement, normal) -> IntersectionLattice:
    """Lattice of ``a + [normal]`` (new hyperplane gets index ``len(a)``).

    Existing flats whose line lies in the new plane gain it; every hyperplane
    not met along such a flat yields a new double point.
    """
    F = a.field
    new = len(a)
    flats = []
    met = set()
    for f in L.flats:
        if F.is_zero(F.dot(normal, f.direction)):
            flats.append(Flat2(f.direction, f.incident + (new,)))
            met.update(f.incident)
        else:
            flats.append(f)
    for k, beta in enumerate(a.normals):
        if k not in met:
            flats.append(Flat2(canonical(F, cross(F, beta, normal)), (k, new)))
    return IntersectionLattice(new + 1, flats)


def char_poly(L: IntersectionLattice) -> CharPoly:
    """chi(t) = t^3 - n t^2 + b2 t - (b2 - n + 1), b2 = sum over lines of mu = |A_X| - 1."""
    b2 = sum(len(f.incident) - 1 for f in L.flats)
    return CharPoly(1, -L.n, b2, -(1 - L.n + b2))


def factor_exponents(c: CharPoly):
    """``(1, d1, d2)`` if chi = (t-1)(t-d1)(t-d2) with integers 0 <= d1 <= d2, else ``None``."""
    if c(1) != 0:
        raise NotDivisibleByTMinus1(str(c))
    # (t - 1)(t^2 + p t + q)
    p = c.c2 + c.c3
    q = -c.c0
    disc = p * p - 4 * q
    if disc < 0:
        return None
    s = math.isqrt(disc)
    if s * s != disc or (p + s) % 2:
        return None
    d1, d2 = (-p - s) // 2, (-p + s) // 2
    if d1 < 0:
        return None
    return tuple(sorted((1, d1, d2)))


def chi_exponents(L: IntersectionLattice):
    return factor_exponents(char_poly(L))


def invariants(a_or_L) -> tuple[Counter, Counter]:
    """(multiset of |A^H|, multiset of |A_p| over lines p)."""
    L = a_or_L if isinstance(a_or_L, IntersectionLattice) else build_lattice(a_or_L)
    return Counter(L.restriction_counts()), Counter(L.flat_sizes())


def format_multiset(c: Counter) -> str:
    return "{{" + ", ".join(f"{k}^{v}" for k, v in sorted(c.items())) + "}}"


# ---------------------------------------------------------------------------
# isomorphism

def _refine(L1: IntersectionLattice, L2: IntersectionLattice):
    """Stable colouring of the disjoint union of the two incidence graphs."""
    graphs = []
    for L in (L1, L2):
        hyp = [("H",) for _ in range(L.n)]
        fl = [("F", len(f.incident)) for f in L.flats]
        graphs.append((L, hyp, fl))
    ncolors = -1
    while True:
        sigs = []
        for L, hyp, fl in graphs:
            hs = [(hyp[i], tuple(sorted(fl[k] for k in L.per_hyperplane[i]))) for i in range(L.n)]
            fs = [(fl[k], tuple(sorted(hyp[i] for i in f.incident))) for k, f in enumerate(L.flats)]
            sigs.append((hs, fs))
        palette = {s: i for i, s in enumerate(sorted({s for hs, fs in sigs for s in hs + fs}))}
        graphs = [(L, [(palette[s],) for s in hs], [(palette[s],) for s in fs])
                  for (L, _, _), (hs, fs) in zip(graphs, sigs)]
        if len(palette) == ncolors:
            break
        ncolors = len(palette)
    return [g[1] for g in graphs]


def _pair_flat(L: IntersectionLattice):
    table = [[None] * L.n for _ in range(L.n)]
    for k, f in enumerate(L.flats):
        for i in f.incident:
            for j in f.incident:
                if i != j:
                    table[i][j] = k
    return table


def check_bijection(L1: IntersectionLattice, L2: IntersectionLattice, sigma) -> bool:
    """True iff ``sigma`` maps the incident sets of ``L1`` exactly onto those of ``L2``."""
    if L1.n != L2.n or sorted(sigma) != list(range(L2.n)) or len(sigma) != L1.n:
        return False
    image = {frozenset(sigma[i] for i in f.incident) for f in L1.flats}
    target = {frozenset(f.incident) for f in L2.flats}
    return image == target and len(L1.flats) == len(L2.flats)


def lattice_isomorphic(L1: IntersectionLattice, L2: IntersectionLattice):
    """Lexicographically least incidence-preserving bijection, or ``None``."""
    if L1.n != L2.n or sorted(L1.flat_sizes()) != sorted(L2.flat_sizes()):
        return None
    c1, c2 = _refine(L1, L2)
    if sorted(c1) != sorted(c2):
        return None
    n = L1.n
    p1, p2 = _pair_flat(L1), _pair_flat(L2)
    size1, size2 = L1.flat_sizes(), L2.flat_sizes()
    sigma = [None] * n
    used = [False] * n
    fmap: dict = {}
    rmap: dict = {}

    def assign(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or c1[i] != c2[j]:
                continue
            added = []
            ok = True
            for k in range(i):
                f1, f2 = p1[i][k], p2[j][sigma[k]]
                if f1 is None or f2 is None:
                    ok = f1 is None and f2 is None
                elif size1[f1] != size2[f2]:
                    ok = False
                elif f1 in fmap:
                    ok = fmap[f1] == f2
                elif f2 in rmap:
                    ok = False
                else:
                    fmap[f1] = f2
                    rmap[f2] = f1
                    added.append(f1)
                if not ok:
                    break
            if ok:
                sigma[i] = j
                used[j] = True
                if assign(i + 1):
                    return True
                used[j] = False
                sigma[i] = None
            for f1 in added:
                del rmap[fmap.pop(f1)]
        return False

    if not assign(0):
        return None
    return sigma if check_bijection(L1, L2, sigma) else None
