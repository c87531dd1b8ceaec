"""Inductive freeness of rank-3 arrangements.

The searcher works on intersection lattices only: inductive freeness is a
property of the lattice, and every quantity it needs (restriction counts,
characteristic polynomials, sub-lattices of deletions) is read off incidence
data.  The certificate verifier is separate code that recomputes everything
from coordinates.

Exponent conventions: exponents are sorted 3-tuples.  An arrangement of rank
at most 2 with k hyperplanes has exponents (0, 1, k-1) (or (0, 0, 1) and
(0, 0, 0) for one and no hyperplanes).  The restriction to a hyperplane H has
exponents (1, |A^H| - 1) and containment is tested as a sub-multiset.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .arrangement import Arrangement, Hyperplane, delete, restrict_count
from .freeness import is_free_rank3
from .lattice import IntersectionLattice, build_lattice, chi_exponents


class NotFree(ValueError):
    pass


YES, NO, UNKNOWN = "YES", "NO", "UNKNOWN"
LEMMA31, EXHAUSTED = "LEMMA31", "EXHAUSTED"


def base_exponents(k: int) -> tuple:
    """Exponents of an arrangement of rank <= 2 with k hyperplanes."""
    if k == 0:
        return (0, 0, 0)
    if k == 1:
        return (0, 0, 1)
    return (0, 1, k - 1)


def restriction_exponents(count: int) -> tuple:
    return (1, count - 1)


def remainder(small, big):
    """The element of ``big`` left over when ``small`` is a sub-multiset of it, else ``None``."""
    rest = Counter(big)
    rest.subtract(Counter(small))
    if any(v < 0 for v in rest.values()):
        return None
    left = list(rest.elements())
    return left[0] if len(left) == 1 else None


def add_step(exps_small, count):
    """Exponents after adding H to a free arrangement when exp A'' is contained.

    Returns ``None`` when (1, count-1) is not a sub-multiset of ``exps_small``.
    """
    r = remainder(restriction_exponents(count), exps_small)
    return None if r is None else tuple(sorted((1, count - 1, r + 1)))


def delete_step(exps_big, count):
    """Exponents after deleting H from a free arrangement when exp A'' is contained."""
    r = remainder(restriction_exponents(count), exps_big)
    return None if r is None else tuple(sorted((1, count - 1, r - 1)))


# ---------------------------------------------------------------------------

@dataclass
class RestrictionLemmaProof:
    e: int
    f: int
    required: tuple
    observed: dict

    def to_json(self):
        return {"exponents": [1, self.e, self.f], "required": list(self.required),
                "observed_restriction_multiset": {str(k): v for k, v in sorted(self.observed.items())}}


def restriction_lemma(L: IntersectionLattice, exps) -> Optional[RestrictionLemmaProof]:
    """Proof of non-inductive-freeness if no |A^H| lies in {e+1, f+1}."""
    _, e, f = exps
    required = tuple(sorted({e + 1, f + 1}))
    counts = Counter(L.restriction_counts())
    if any(c in required for c in counts):
        return None
    return RestrictionLemmaProof(e, f, required, dict(counts))


def refute_if_lemma(a: Arrangement, lattice=None) -> Optional[RestrictionLemmaProof]:
    L = lattice if lattice is not None else build_lattice(a)
    report = is_free_rank3(a, lattice=L)
    if not report.free:
        raise NotFree(f"arrangement is not free ({report.reason})")
    return restriction_lemma(L, report.exponents)


@dataclass
class IFCertificate:
    """Deletion chain: ``deletions[i]`` is removed from the i-th arrangement of the chain."""

    deletions: list
    exponents: list = field(default_factory=list)  # per step: (exp A', exp A'')

    def to_json(self, field_=None):
        F = field_ or self.deletions[0].field
        return {
            "deletions": [[F.encode(x) for x in h.normal] for h in self.deletions],
            "exponents": [{"deleted": list(e1), "restriction": list(e2)} for e1, e2 in self.exponents],
        }


@dataclass
class IFVerdict:
    status: str
    certificate: Optional[IFCertificate] = None
    proof: Optional[str] = None
    lemma: Optional[RestrictionLemmaProof] = None
    exponents: Optional[tuple] = None
    nodes: int = 0
    detail: str = ""

    def to_json(self):
        out = {"status": self.status, "proof": self.proof, "nodes_expanded": self.nodes,
               "exponents": list(self.exponents) if self.exponents else None}
        if self.lemma:
            out["lemma"] = self.lemma.to_json()
        if self.certificate:
            out["certificate"] = self.certificate.to_json()
        if self.detail:
            out["detail"] = self.detail
        return out


class _BudgetExhausted(Exception):
    pass


def search_if(L: IntersectionLattice, budget: int = 10 ** 6, memo: bool = True):
    """Lattice-only search. Returns ``(status, exponents, deletion_path, nodes, lemma_proof)``.

    ``deletion_path`` lists original hyperplane indices, each with the step's
    (exp A', exp A'').
    """
    table: dict = {}
    nodes = 0
    root_lemma = None

    def solve(keep: tuple, L: IntersectionLattice, depth: int):
        nonlocal nodes, root_lemma
        if not L.is_rank3():
            return base_exponents(L.n), []
        if memo and keep in table:
            return table[keep]
        nodes += 1
        if nodes > budget:
            raise _BudgetExhausted
        result = None
        exps = chi_exponents(L)
        if exps is not None:
            counts = L.restriction_counts()
            options = [h for h in range(L.n) if remainder(restriction_exponents(counts[h]), exps) is not None]
            if not options and depth == 0:
                root_lemma = restriction_lemma(L, exps)
            options.sort(key=lambda h: (-counts[h], h))
            for h in options:
                child = solve(keep[:h] + keep[h + 1:], L.delete(h), depth + 1)
                if child is None:
                    continue
                child_exps, path = child
                new = add_step(child_exps, counts[h])
                if new is None:
                    continue
                if new != exps:
                    raise ArithmeticError(f"addition gives {new}, chi gives {exps}")
                result = (exps, [(keep[h], child_exps, restriction_exponents(counts[h]))] + path)
                break
        if memo:
            table[keep] = result
        return result

    try:
        out = solve(tuple(range(L.n)), L, 0)
    except _BudgetExhausted:
        return UNKNOWN, None, None, nodes, None
    if out is None:
        return NO, None, None, nodes, root_lemma
    return YES, out[0], out[1], nodes, None


def find_if_certificate(a: Arrangement, budget: int = 10 ** 6, memo: bool = True, lattice=None) -> IFVerdict:
    L = lattice if lattice is not None else build_lattice(a)
    status, exps, path, nodes, lemma = search_if(L, budget, memo)
    if status == UNKNOWN:
        return IFVerdict(UNKNOWN, nodes=nodes, detail=f"node budget {budget} exhausted")
    if status == NO:
        if lemma is not None:
            return IFVerdict(NO, proof=LEMMA31, lemma=lemma, exponents=(1, lemma.e, lemma.f), nodes=nodes)
        detail = "" if chi_exponents(L) else "characteristic polynomial does not split"
        return IFVerdict(NO, proof=EXHAUSTED, nodes=nodes, detail=detail)
    # the chain stops at rank <= 2; the rest of the hyperplanes are deleted in index order
    used = {i for i, _, _ in path}
    tail = [a[i] for i in range(len(a)) if i not in used]
    cert = IFCertificate([a[i] for i, _, _ in path] + tail, [(e1, e2) for _, e1, e2 in path])
    check = verify_if_certificate(a, cert)
    if not check:
        raise AssertionError(f"searcher produced an invalid certificate: {check.reason}")
    return IFVerdict(YES, certificate=cert, exponents=exps, nodes=nodes)


@dataclass
class Verification:
    ok: bool
    step: Optional[int] = None
    reason: str = ""
    exponents: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def verify_if_certificate(a: Arrangement, cert: IFCertificate) -> Verification:
    """Replay a deletion chain from coordinates, recomputing every exponent."""
    chain = [a]
    deleted = []
    current = a
    for step, h in enumerate(cert.deletions):
        if not isinstance(h, Hyperplane):
            h = Hyperplane(a.field, h)
        if h not in current:
            return Verification(False, step, f"{h} is not in the arrangement")
        idx = current.index(h)
        rank3 = current.rank() > 2
        current = delete(current, idx)
        if rank3:
            deleted.append(idx)
            chain.append(current)
    if chain[-1].rank() > 2:
        return Verification(False, len(deleted), "chain does not reach rank <= 2")
    exps = base_exponents(len(chain[-1]))
    for step in range(len(deleted) - 1, -1, -1):
        big, idx = chain[step], deleted[step]
        count = restrict_count(big, idx)
        new = add_step(exps, count)
        if new is None:
            return Verification(False, step, f"exp A'' = {restriction_exponents(count)} not contained in exp A' = {exps}")
        if step < len(cert.exponents):
            rec_deleted, rec_res = cert.exponents[step]
            if tuple(rec_deleted) != exps or tuple(rec_res) != restriction_exponents(count):
                return Verification(False, step, "recorded exponents disagree with recomputation")
        report = is_free_rank3(big)
        if not report.free or report.exponents != new:
            return Verification(False, step, f"freeness check gives {report.exponents}, chain gives {new}")
        exps = new
    return Verification(True, exponents=exps)


def certificate_from_json(a: Arrangement, data) -> IFCertificate:
    F = a.field
    dels = [Hyperplane(F, [F.parse(x) for x in h]) for h in data["deletions"]]
    exps = [(tuple(e["deleted"]), tuple(e["restriction"])) for e in data.get("exponents", [])]
    return IFCertificate(dels, exps)
