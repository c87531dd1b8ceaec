"""Recursive freeness: local obstructions and addition/deletion certificates.

An arrangement reached in a recursive-freeness chain is entered either by an
addition (from ``A \\ H``) or a deletion (from ``A + H``).  :func:`local_steps`
tests every such neighbour; :func:`refute_recursive_freeness` turns a clean
sweep into an obstruction report.  Hyperplanes that meet at most one line of
L(A) are handled by a counting bound instead of one by one.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .arrangement import Arrangement, Hyperplane, canonical, cross, delete
from .freeness import is_free_rank3
from .induction import (
    NotFree, Verification, YES, add_step, base_exponents, delete_step, find_if_certificate,
    remainder, restriction_exponents, verify_if_certificate,
)
from .lattice import IntersectionLattice, build_lattice, extend_lattice

SMALL_FIELD_THRESHOLD = 31


@dataclass
class Candidate:
    hyperplane: Hyperplane
    witness: tuple  # two flat indices spanning the plane
    flats: tuple  # every flat of L(A) lying in the plane


@dataclass
class CandidateSet:
    candidates: list

    def __len__(self):
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)

    @property
    def hyperplanes(self):
        return [c.hyperplane for c in self.candidates]


def _flats_in_plane(F, normal, L):
    return tuple(k for k, f in enumerate(L.flats) if F.is_zero(F.dot(normal, f.direction)))


def candidate_hyperplanes(a: Arrangement, lattice: IntersectionLattice | None = None) -> CandidateSet:
    """Planes not in ``a`` that contain at least two lines of L(a), one per plane."""
    L = lattice if lattice is not None else build_lattice(a)
    F = a.field
    m = len(L.flats)
    covered = [bytearray(m) for _ in range(m)]

    def cover(flats):
        for i in flats:
            row = covered[i]
            for j in flats:
                row[j] = 1

    for flats in L.per_hyperplane:
        cover(flats)
    out = []
    for i in range(m):
        row = covered[i]
        for j in range(i + 1, m):
            if row[j]:
                continue
            normal = canonical(F, cross(F, L.flats[i].direction, L.flats[j].direction))
            flats = _flats_in_plane(F, normal, L)
            cover(flats)
            out.append(Candidate(Hyperplane(F, normal), (i, j), flats))
    return CandidateSet(out)


def projective_plane_hyperplanes(F):
    """All hyperplanes of P^2(F_p), canonical normals in lexicographic order."""
    p = F.p
    out = [(0, 0, 1)]
    out += [(0, 1, c) for c in range(p)]
    out += [(1, b, c) for b in range(p) for c in range(p)]
    return [Hyperplane(F, v) for v in out]


def brute_force_candidates(a: Arrangement, lattice=None):
    """Oracle for small prime fields: scan P^2(F_p) and count lines directly."""
    L = lattice if lattice is not None else build_lattice(a)
    F = a.field
    return [h for h in projective_plane_hyperplanes(F)
            if h not in a and len(_flats_in_plane(F, h.normal, L)) >= 2]


# ---------------------------------------------------------------------------

def admissible_addition_sizes(exps):
    """Possible |(A+H)^H| for an admissible addition to a free A with exponents ``exps``.

    The exponents of A+H are those of A with one entry raised by one; the
    restriction has exponents (1, c-1) contained in them.  This keeps every c
    with c-1 a non-unit entry of some such option, a superset of what is
    strictly compatible with ``exps``.
    """
    sizes = set()
    for slot in range(3):
        option = list(exps)
        option[slot] += 1
        if 1 not in option:
            continue
        rest = list(option)
        rest.remove(1)
        sizes.update(x + 1 for x in rest)
    return sorted(sizes)


@dataclass
class BoundCertificate:
    zero_point: int
    one_point: int
    admissible_sizes: list
    certified: bool

    @property
    def max_admissible(self):
        return max(self.admissible_sizes) if self.admissible_sizes else None

    def to_json(self):
        return {"zero_point_size": self.zero_point, "one_point_min_size": self.one_point,
                "admissible_sizes": self.admissible_sizes, "certified": self.certified}


def low_incidence_bound(a: Arrangement, lattice=None, exponents=None) -> BoundCertificate:
    """Sizes |(A+H)^H| for planes H through at most one line of L(A), vs. the admissible sizes."""
    L = lattice if lattice is not None else build_lattice(a)
    if exponents is None:
        report = is_free_rank3(a, lattice=L)
        if not report.free:
            raise NotFree(f"arrangement is not free ({report.reason})")
        exponents = report.exponents
    n = L.n
    zero = n
    one = 1 + n - max(L.flat_sizes())
    sizes = admissible_addition_sizes(exponents)
    return BoundCertificate(zero, one, sizes, min(zero, one) > max(sizes))


@dataclass
class StepResult:
    kind: str  # "delete" or "add"
    hyperplane: Hyperplane
    restriction_count: int
    free: bool
    exponents: Optional[tuple]
    admissible: bool
    reason: str
    decided_by: str  # "chi" or "ziegler" or "rank2"

    def to_json(self):
        F = self.hyperplane.field
        return {"kind": self.kind, "hyperplane": [F.encode(x) for x in self.hyperplane.normal],
                "restriction_count": self.restriction_count, "free": self.free,
                "exponents": list(self.exponents) if self.exponents else None,
                "admissible": self.admissible, "reason": self.reason, "decided_by": self.decided_by}

    def outcome(self):
        return (self.kind, self.hyperplane.normal, self.restriction_count, self.free, self.exponents, self.admissible)


def _judge(kind, h, count, report):
    exps = report.exponents
    decided = "chi" if report.ziegler_exponents is None else "ziegler"
    if not report.free:
        return StepResult(kind, h, count, False, None, False, report.reason, decided)
    ok = remainder(restriction_exponents(count), exps) is not None
    reason = "ADMISSIBLE" if ok else "EXPONENTS_NOT_CONTAINED"
    return StepResult(kind, h, count, True, exps, ok, reason, decided)


def deletion_step(a: Arrangement, L: IntersectionLattice, h: int) -> StepResult:
    """Can ``a`` be reached by adding ``a[h]`` to ``a \\ a[h]``?"""
    count = len(L.per_hyperplane[h])
    smaller = delete(a, h)
    Ls = L.delete(h)
    if not Ls.is_rank3():
        exps = base_exponents(Ls.n)
        ok = remainder(restriction_exponents(count), exps) is not None
        return StepResult("delete", a[h], count, True, exps, ok,
                          "ADMISSIBLE" if ok else "EXPONENTS_NOT_CONTAINED", "rank2")
    return _judge("delete", a[h], count, is_free_rank3(smaller, lattice=Ls))


def addition_step(a: Arrangement, L: IntersectionLattice, h: Hyperplane) -> StepResult:
    """Can ``a`` be reached by deleting ``h`` from ``a + h``?"""
    Lb = extend_lattice(L, a, h.normal)
    count = len(Lb.per_hyperplane[len(a)])
    return _judge("add", h, count, is_free_rank3(a.add(h), lattice=Lb))


_WORKER = {}


def _init_worker(a, L):
    _WORKER["a"], _WORKER["L"] = a, L


def _addition_chunk(hs):
    return [addition_step(_WORKER["a"], _WORKER["L"], h) for h in hs]


def _map_additions(a, L, hyperplanes, threads):
    if threads <= 1 or len(hyperplanes) < 2:
        return [addition_step(a, L, h) for h in hyperplanes]
    size = max(1, len(hyperplanes) // (threads * 4))
    chunks = [hyperplanes[i:i + size] for i in range(0, len(hyperplanes), size)]
    with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(a, L)) as pool:
        return [r for chunk in pool.map(_addition_chunk, chunks) for r in chunk]


def uses_exhaustive_scan(a: Arrangement) -> bool:
    return a.field.kind == "prime" and a.field.p <= SMALL_FIELD_THRESHOLD


@dataclass
class StepReport:
    exponents: tuple
    deletions: list
    additions: list
    mode: str  # "candidates" or "exhaustive"
    bound: Optional[BoundCertificate]

    @property
    def admissible_deletions(self):
        return [s for s in self.deletions if s.admissible]

    @property
    def admissible_additions(self):
        return [s for s in self.additions if s.admissible]

    def to_json(self):
        return {"exponents": list(self.exponents), "mode": self.mode,
                "bound": self.bound.to_json() if self.bound else None,
                "deletions": [s.to_json() for s in self.deletions],
                "additions": [s.to_json() for s in self.additions]}


def local_steps(a: Arrangement, threads: int | None = None, lattice=None, candidates=None) -> StepReport:
    """Every Addition-Deletion step into ``a``, from below and from above."""
    L = lattice if lattice is not None else build_lattice(a)
    report = is_free_rank3(a, lattice=L)
    if not report.free:
        raise NotFree(f"arrangement is not free ({report.reason})")
    threads = threads or os.cpu_count() or 1
    deletions = [deletion_step(a, L, h) for h in range(len(a))]
    if uses_exhaustive_scan(a):
        mode = "exhaustive"
        pool = [h for h in projective_plane_hyperplanes(a.field) if h not in a]
        bound = None
    else:
        mode = "candidates"
        cands = candidates if candidates is not None else candidate_hyperplanes(a, L)
        pool = cands.hyperplanes
        bound = low_incidence_bound(a, L, report.exponents)
    additions = _map_additions(a, L, pool, threads)
    return StepReport(report.exponents, deletions, additions, mode, bound)


@dataclass
class ObstructionReport:
    steps: StepReport
    arrangement_hash: str = ""

    def to_json(self):
        s = self.steps
        return {
            "arrangement_hash": self.arrangement_hash,
            "exponents": list(s.exponents),
            "mode": s.mode,
            "deletions_checked": len(s.deletions),
            "additions_checked": len(s.additions),
            "bound": s.bound.to_json() if s.bound else None,
            "deletions": [x.to_json() for x in s.deletions],
            "additions": [x.to_json() for x in s.additions],
        }


def obstruction_holds(steps: StepReport) -> bool:
    if steps.admissible_deletions or steps.admissible_additions:
        return False
    return steps.mode == "exhaustive" or bool(steps.bound and steps.bound.certified)


def refute_recursive_freeness(a: Arrangement, threads: int | None = None, steps: StepReport | None = None):
    """An :class:`ObstructionReport` if no Addition-Deletion step leads into ``a``, else ``None``.

    ``None`` does not mean ``a`` is recursively free.
    """
    steps = steps if steps is not None else local_steps(a, threads)
    if not obstruction_holds(steps):
        return None
    return ObstructionReport(steps, a.canonical_hash())


def replay_obstruction(a: Arrangement, report: ObstructionReport, threads: int | None = None) -> bool:
    """Recompute every step of ``report`` from scratch and compare outcomes."""
    fresh = local_steps(a, threads)
    old = report.steps
    same = [s.outcome() for s in fresh.deletions] == [s.outcome() for s in old.deletions]
    same &= [s.outcome() for s in fresh.additions] == [s.outcome() for s in old.additions]
    same &= fresh.mode == old.mode
    if fresh.bound or old.bound:
        same &= fresh.bound == old.bound
    return same and obstruction_holds(fresh)


# ---------------------------------------------------------------------------
# positive certificates

@dataclass
class RFCertificate:
    """Start from ``base`` (inductively free) and apply signed steps ("+", H) / ("-", H)."""

    base: Arrangement
    steps: list = field(default_factory=list)

    def to_json(self):
        from .io import arrangement_to_json

        F = self.base.field
        return {"base": arrangement_to_json(self.base),
                "steps": [{"op": op, "hyperplane": [F.encode(x) for x in h.normal]} for op, h in self.steps]}

    @classmethod
    def from_json(cls, data):
        from .io import arrangement_from_json

        base = arrangement_from_json(data["base"])
        F = base.field
        steps = []
        for st in data["steps"]:
            if st["op"] not in ("+", "-"):
                raise ValueError(f"step op must be '+' or '-', got {st['op']!r}")
            steps.append((st["op"], Hyperplane(F, [F.parse(x) for x in st["hyperplane"]])))
        return cls(base, steps)

    def target(self) -> Arrangement:
        cur = self.base
        for op, h in self.steps:
            cur = cur.add(h) if op == "+" else delete(cur, cur.index(h))
        return cur


def _restriction_size(a: Arrangement, h: int) -> int:
    """|A^H| for any rank; a pencil restricts to a single point."""
    F = a.field
    alpha = a.normals[h]
    return len({canonical(F, cross(F, alpha, beta)) for k, beta in enumerate(a.normals) if k != h})


def _exps_of(a: Arrangement):
    if a.rank() <= 2:
        return base_exponents(len(a))
    report = is_free_rank3(a)
    return report.exponents if report.free else None


def verify_rf_certificate(cert: RFCertificate, if_budget: int = 10 ** 6, target: Arrangement | None = None) -> Verification:
    """Recheck the base's inductive freeness and every step's exponent condition."""
    base = cert.base
    if base.rank() <= 2:
        exps = base_exponents(len(base))
    else:
        verdict = find_if_certificate(base, budget=if_budget)
        if verdict.status != YES:
            return Verification(False, None, f"base is not inductively free ({verdict.status})")
        if not verify_if_certificate(base, verdict.certificate):
            return Verification(False, None, "base certificate failed verification")
        exps = verdict.exponents
    cur = base
    for step, (op, h) in enumerate(cert.steps):
        if op == "+":
            if h in cur:
                return Verification(False, step, f"{h} already present")
            nxt = cur.add(h)
            count = _restriction_size(nxt, len(cur))
            new = add_step(exps, count)
        elif op == "-":
            if h not in cur:
                return Verification(False, step, f"{h} not present")
            idx = cur.index(h)
            count = _restriction_size(cur, idx)
            nxt = delete(cur, idx)
            new = delete_step(exps, count)
        else:
            return Verification(False, step, f"unknown step {op!r}")
        if new is None:
            return Verification(False, step, f"exp A'' = {restriction_exponents(count)} not contained in {exps}")
        check = _exps_of(nxt)
        if check != new:
            return Verification(False, step, f"freeness check gives {check}, step rule gives {new}")
        cur, exps = nxt, new
    if target is not None and not cur.same_set(target):
        return Verification(False, len(cert.steps), "chain does not end at the target")
    return Verification(True, exponents=exps)


def _moves(x: Arrangement, L, hints, allow_deletions=True):
    """Admissible neighbours of ``x``: (op, hyperplane, neighbour, its exponents)."""
    F = x.field
    seen = set()
    pool = []
    for h in hints:
        if not isinstance(h, Hyperplane):
            h = Hyperplane(F, h)
        if h not in x and h.normal not in seen:
            seen.add(h.normal)
            pool.append(h)
    if uses_exhaustive_scan(x):
        rest = [h for h in projective_plane_hyperplanes(F) if h not in x]
    else:
        rest = candidate_hyperplanes(x, L).hyperplanes
    pool += [h for h in rest if h.normal not in seen]
    for h in pool:
        st = addition_step(x, L, h)
        if st.admissible:
            yield "+", h, x.add(h), st.exponents
    if allow_deletions:
        for i in range(len(x)):
            st = deletion_step(x, L, i)
            if st.admissible and st.decided_by != "rank2":
                yield "-", x[i], delete(x, i), st.exponents


def search_rf_certificate(a: Arrangement, max_additions: int = 8, budget: int = 200, hints=(),
                          if_budget: int = 2000, allow_deletions: bool = True) -> Optional[RFCertificate]:
    """Bounded depth-first search for a path of admissible steps to an inductively free arrangement.

    Additions from ``hints`` are tried first, in order.  Returns a verified
    certificate or ``None`` (which proves nothing).
    """
    report = is_free_rank3(a)
    if not report.free:
        raise NotFree(f"arrangement is not free ({report.reason})")
    hints = list(hints)
    visited = set()
    expanded = 0

    def dfs(x: Arrangement, path, adds):
        nonlocal expanded
        key = frozenset(h.normal for h in x)
        if key in visited or expanded >= budget:
            return None
        visited.add(key)
        expanded += 1
        L = build_lattice(x)
        if find_if_certificate(x, budget=if_budget, lattice=L).status == YES:
            return x, path
        for op, h, y, _ in _moves(x, L, hints if adds < max_additions else (), allow_deletions):
            if op == "+" and adds >= max_additions:
                continue
            found = dfs(y, path + [(op, h)], adds + (op == "+"))
            if found:
                return found
            if expanded >= budget:
                return None
        return None

    found = dfs(a, [], 0)
    if not found:
        return None
    base, path = found
    # the search walked target -> base; the certificate walks base -> target
    steps = [("-" if op == "+" else "+", h) for op, h in reversed(path)]
    cert = RFCertificate(base, steps)
    if not verify_rf_certificate(cert, target=a):
        raise AssertionError("search produced an unverifiable certificate")
    return cert
