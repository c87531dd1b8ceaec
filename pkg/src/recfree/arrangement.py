"""Central arrangements of planes in K^3.

A hyperplane is stored by its normal covector, scaled so that the first
nonzero coordinate is 1.  Covectors are rows; a group element ``g`` acts on
them from the right, ``v -> v @ g``.
"""
from __future__ import annotations

import hashlib
from collections import Counter
from fractions import Fraction

from .exactfield import Field, FieldElement, Matrix, make_field, rank_payloads


class ArrangementError(Exception):
    pass


class ZeroNormal(ArrangementError, ValueError):
    pass


class RankDeficient(ArrangementError):
    pass


class OrbitCapExceeded(ArrangementError):
    pass


class DuplicateSeed(ArrangementError):
    pass


def _payload(F: Field, x):
    if isinstance(x, FieldElement):
        F._check(x.field)
        return x.payload
    if isinstance(x, (int, Fraction, str, list)):
        return F(x).payload
    return x


def canonical(F: Field, vec):
    """Scale ``vec`` so its first nonzero entry is 1; ``None`` for the zero vector."""
    for i, x in enumerate(vec):
        if not F.is_zero(x):
            if x == F.one:
                return tuple(vec)
            inv = F.inv(x)
            return tuple(F.zero if j < i else (F.one if j == i else F.mul(y, inv)) for j, y in enumerate(vec))
    return None


def cross(F: Field, u, v):
    mul, sub = F.mul, F.sub
    return (
        sub(mul(u[1], v[2]), mul(u[2], v[1])),
        sub(mul(u[2], v[0]), mul(u[0], v[2])),
        sub(mul(u[0], v[1]), mul(u[1], v[0])),
    )


def vec_times_matrix(F: Field, v, g: Matrix):
    return tuple(F.dot(v, [g.data[i][j] for i in range(g.rows)]) for j in range(g.cols))


class Hyperplane:
    """``ker(alpha)`` for a canonical normal ``alpha``."""

    __slots__ = ("field", "normal")

    def __init__(self, field: Field, normal):
        normal = tuple(_payload(field, x) for x in normal)
        if len(normal) != 3:
            raise ValueError("normals live in K^3")
        canon = canonical(field, normal)
        if canon is None:
            raise ZeroNormal("zero normal vector")
        self.field = field
        self.normal = canon

    def __eq__(self, other):
        return isinstance(other, Hyperplane) and self.field is other.field and self.normal == other.normal

    def __hash__(self):
        return hash(self.normal)

    def __repr__(self):
        return "(" + ", ".join(self.field.to_str(x) for x in self.normal) + ")^perp"

    def contains(self, direction) -> bool:
        return self.field.is_zero(self.field.dot(self.normal, direction))


class Arrangement:
    """Ordered, duplicate-free list of hyperplanes through the origin of K^3."""

    def __init__(self, field: Field, hyperplanes=()):
        self.field = make_field(field)
        hs = []
        seen = set()
        for h in hyperplanes:
            if not isinstance(h, Hyperplane):
                h = Hyperplane(self.field, h)
            elif h.field is not self.field:
                raise ArrangementError("hyperplane over a different field")
            if h.normal in seen:
                continue
            seen.add(h.normal)
            hs.append(h)
        self.hyperplanes = tuple(hs)
        self._index = {h.normal: i for i, h in enumerate(hs)}

    @property
    def normals(self):
        return [h.normal for h in self.hyperplanes]

    def __len__(self):
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __getitem__(self, i):
        return self.hyperplanes[i]

    def __contains__(self, h):
        if not isinstance(h, Hyperplane):
            h = Hyperplane(self.field, h)
        return h.normal in self._index

    def index(self, h) -> int:
        if not isinstance(h, Hyperplane):
            h = Hyperplane(self.field, h)
        try:
            return self._index[h.normal]
        except KeyError:
            raise ArrangementError(f"{h} is not in the arrangement") from None

    def __eq__(self, other):
        return isinstance(other, Arrangement) and self.field is other.field and self.hyperplanes == other.hyperplanes

    def same_set(self, other) -> bool:
        return self.field is other.field and set(self._index) == set(other._index)

    def __hash__(self):
        return hash(self.hyperplanes)

    def __repr__(self):
        return f"Arrangement({self.field!r}, {len(self)} hyperplanes)"

    def rank(self) -> int:
        return rank_payloads(self.field, self.normals) if self.hyperplanes else 0

    def require_rank3(self):
        if self.rank() != 3:
            raise RankDeficient(f"arrangement has rank {self.rank()}, need 3")

    def add(self, h) -> Arrangement:
        if not isinstance(h, Hyperplane):
            h = Hyperplane(self.field, h)
        if h.normal in self._index:
            raise ArrangementError(f"{h} already in the arrangement")
        return Arrangement(self.field, self.hyperplanes + (h,))

    def subset(self, indices) -> Arrangement:
        return Arrangement(self.field, [self.hyperplanes[i] for i in sorted(indices)])

    def canonical_hash(self) -> str:
        from .io import dump_arrangement

        return hashlib.sha256(dump_arrangement(self).encode()).hexdigest()


def make_arrangement(field, normals) -> Arrangement:
    """Canonicalise and deduplicate ``normals``, keeping first-seen order."""
    return Arrangement(make_field(field), normals)


def delete(a: Arrangement, h: int) -> Arrangement:
    if not 0 <= h < len(a):
        raise IndexError(f"hyperplane index {h} out of range")
    return Arrangement(a.field, a.hyperplanes[:h] + a.hyperplanes[h + 1:])


# ---------------------------------------------------------------------------
# rank-2 flats

def intersection_lines(a: Arrangement):
    """Group the pairwise intersections of ``a`` into lines.

    Returns a list of ``(direction, incident)`` with ``incident`` the sorted
    tuple of hyperplane indices through the canonical ``direction``.  Lines are
    listed in order of their smallest pair ``(i, j)``.
    """
    F = a.field
    normals = a.normals
    n = len(normals)
    covered = [set() for _ in range(n)]
    lines = []
    for i in range(n):
        for j in range(i + 1, n):
            if j in covered[i]:
                continue
            d = canonical(F, cross(F, normals[i], normals[j]))
            inc = tuple(k for k in range(n) if k in (i, j) or F.is_zero(F.dot(normals[k], d)))
            for p in inc:
                covered[p].update(inc)
            lines.append((d, inc))
    return lines


def restrict_count(a: Arrangement, h: int) -> int:
    """``|A^H|``: the number of distinct lines ``H & H'`` for ``H'`` != ``H``."""
    if not 0 <= h < len(a):
        raise IndexError(f"hyperplane index {h} out of range")
    a.require_rank3()
    F = a.field
    alpha = a.normals[h]
    return len({canonical(F, cross(F, alpha, beta)) for k, beta in enumerate(a.normals) if k != h})


def localization_sizes(a: Arrangement) -> Counter:
    a.require_rank3()
    return Counter(len(inc) for _, inc in intersection_lines(a))


# ---------------------------------------------------------------------------
# Ziegler multirestriction

class MultiArrangement2D:
    """Binary linear forms ``a*s + b*t`` with multiplicities."""

    def __init__(self, field: Field, forms):
        self.field = field
        merged: dict = {}
        for form, m in forms:
            form = tuple(_payload(field, x) for x in form)
            c = canonical(field, form)
            if c is None:
                raise ZeroNormal("zero binary form")
            if m < 1:
                raise ValueError("multiplicities must be >= 1")
            merged[c] = merged.get(c, 0) + m
        self.forms = tuple(merged.items())

    @property
    def total(self) -> int:
        return sum(m for _, m in self.forms)

    def __len__(self):
        return len(self.forms)

    def __repr__(self):
        body = ", ".join(f"({self.field.to_str(f[0])})s+({self.field.to_str(f[1])})t:{m}" for f, m in self.forms)
        return f"MultiArrangement2D({body})"


def plane_basis(F: Field, alpha):
    """Basis (u, v) of ker(alpha): the non-pivot coordinates set to (1,0) and (0,1)."""
    piv = next(i for i, x in enumerate(alpha) if not F.is_zero(x))
    others = [i for i in range(3) if i != piv]
    basis = []
    for k in others:
        v = [F.zero] * 3
        v[k] = F.one
        v[piv] = F.neg(F.div(alpha[k], alpha[piv]))
        basis.append(tuple(v))
    return basis[0], basis[1]


def ziegler_restrict(a: Arrangement, h: int) -> MultiArrangement2D:
    if not 0 <= h < len(a):
        raise IndexError(f"hyperplane index {h} out of range")
    a.require_rank3()
    F = a.field
    u, v = plane_basis(F, a.normals[h])
    forms = [((F.dot(beta, u), F.dot(beta, v)), 1) for k, beta in enumerate(a.normals) if k != h]
    return MultiArrangement2D(F, forms)


# ---------------------------------------------------------------------------
# group orbits

def orbit_arrangement(field, generators, seeds, cap: int = 10000) -> Arrangement:
    """Projective orbit of the seed covectors under the right action of the group.

    Inverses of the generators are included, so the closure is under the group
    and not only the monoid.  Output is sorted by the field's payload key.
    """
    F = make_field(field)
    gens = list(generators)
    gens += [g.inverse() for g in generators]
    found = {}
    queue = []
    for s in seeds:
        c = canonical(F, tuple(_payload(F, x) for x in s))
        if c is None:
            raise ZeroNormal("zero seed")
        if c not in found:
            found[c] = None
            queue.append(c)
    while queue:
        v = queue.pop()
        for g in gens:
            w = canonical(F, vec_times_matrix(F, v, g))
            if w not in found:
                if len(found) >= cap:
                    raise OrbitCapExceeded(f"orbit exceeds {cap} covectors")
                found[w] = None
                queue.append(w)
    ordered = sorted(found, key=lambda v: tuple(F.key(x) for x in v))
    return Arrangement(F, ordered)


def disjoint_union(*parts: Arrangement) -> Arrangement:
    F = parts[0].field
    seen = set()
    out = []
    for part in parts:
        for h in part:
            if h.normal in seen:
                raise DuplicateSeed(f"{h} occurs in more than one orbit")
            seen.add(h.normal)
            out.append(h)
    return Arrangement(F, out)
