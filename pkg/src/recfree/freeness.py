"""Freeness of rank-3 arrangements via the Ziegler restriction.

A central rank-3 arrangement is free iff its characteristic polynomial is
``(t-1)(t-d1)(t-d2)`` where ``(d1, d2)`` are the exponents of the Ziegler
multirestriction onto any one of its hyperplanes (Yoshinaga's criterion).
The multirestriction exponents are computed by exact linear algebra on
homogeneous derivations of the binary form ring K[s, t].
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .arrangement import Arrangement, MultiArrangement2D, ziegler_restrict
from .exactfield import Field, rank_payloads
from .lattice import IntersectionLattice, build_lattice, char_poly, factor_exponents
from .poly import Poly, as_poly, det3


class EmptyMultiarrangement(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


CHI_DOES_NOT_SPLIT = "CHI_DOES_NOT_SPLIT"
PRODUCT_MISMATCH = "PRODUCT_MISMATCH"
FREE = "FREE"

POSITIVE_CHARACTERISTIC_NOTE = (
    "verdict over a field of positive characteristic uses the same criterion as in "
    "characteristic 0; confirm independently with saito_verify if needed"
)


@dataclass(frozen=True)
class ExponentPair:
    d1: int
    d2: int

    def __iter__(self):
        return iter((self.d1, self.d2))

    @property
    def product(self):
        return self.d1 * self.d2


# ---------------------------------------------------------------------------
# rank-2 multiarrangements

def _divisibility_rows(F: Field, form, m: int, d: int):
    """Linear conditions on (f_0..f_d, g_0..g_d) for alpha^m | a*f + b*g.

    f = sum f_i s^i t^(d-i), likewise g; alpha = a*s + b*t is canonical, so
    either a == 1 or alpha == t.  After s -> s - b*t the form alpha becomes s,
    and divisibility by s^m kills the coefficients of s^j, j < m.
    """
    a, b = form
    width = 2 * (d + 1)
    rows = []
    if F.is_zero(a):  # alpha = t: t^m | g
        for i in range(max(0, d - m + 1), d + 1):
            row = [F.zero] * width
            row[d + 1 + i] = F.one
            rows.append(row)
        return rows
    negb = F.neg(b)
    powers = [F.one]
    for _ in range(d):
        powers.append(F.mul(powers[-1], negb))
    for j in range(min(m, d + 1)):
        row = [F.zero] * width
        for i in range(j, d + 1):
            w = F.mul(F.from_int(math.comb(i, j)), powers[i - j])
            if F.is_zero(w):
                continue
            row[i] = w
            row[d + 1 + i] = F.mul(w, b)
        rows.append(row)
    return rows


def derivation_space_dim(M: MultiArrangement2D, d: int) -> int:
    """Dimension of the degree-d part of D(A, m) for a rank-2 multiarrangement."""
    if d < 0:
        return 0
    F = M.field
    rows = []
    for form, m in M.forms:
        rows.extend(_divisibility_rows(F, form, m, d))
    return 2 * (d + 1) - (rank_payloads(F, rows) if rows else 0)


def multi_exponents(M: MultiArrangement2D) -> ExponentPair:
    """Exponents ``(d1, d2)``, ``d1 <= d2``, of a rank-2 multiarrangement.

    D(A, m) is free of rank 2 with ``d1 + d2 = |m|``, so the least degree
    carrying a nonzero derivation is ``d1`` and it is at most ``|m| // 2``.
    """
    if not M.forms:
        raise EmptyMultiarrangement("multiarrangement has no forms")
    total = M.total
    for d in range(total // 2 + 1):
        if derivation_space_dim(M, d) > 0:
            return ExponentPair(d, total - d)
    raise ArithmeticError("no derivation up to degree |m|/2")


def multi_exponents_direct(M: MultiArrangement2D) -> ExponentPair:
    """Cross-check for :func:`multi_exponents` from the graded dimension formula.

    The degree-d part of D(A, m) has dimension
    ``max(0, d-d1+1) + max(0, d-d2+1)``.  One solve at ``k = |m| // 2`` pins
    ``d1`` (a second solve at ``k-1`` separates ``d1 = k`` from ``d1 = k-1``
    when |m| is even); minimality is confirmed by an empty space at ``d1 - 1``.
    """
    if not M.forms:
        raise EmptyMultiarrangement("multiarrangement has no forms")
    total = M.total
    k = total // 2
    dims = {}

    def dim(d):
        if d not in dims:
            dims[d] = derivation_space_dim(M, d)
        return dims[d]

    D = dim(k)
    if total % 2 == 0 and D == 2:
        d1 = k if dim(k - 1) == 0 else k - 1
    else:
        d1 = k + 1 - D
    if not (0 <= d1 <= k and dim(d1) >= 1 and dim(d1 - 1) == 0):
        raise ArithmeticError(f"inconsistent derivation dimensions {dims} for |m| = {total}")
    return ExponentPair(d1, total - d1)


# ---------------------------------------------------------------------------
# rank 3

@dataclass
class FreenessReport:
    free: bool
    exponents: Optional[tuple]
    witness_hyperplane: int
    chi_exponents: Optional[tuple]
    ziegler_exponents: Optional[ExponentPair]
    reason: str
    chi: tuple = ()
    note: Optional[str] = None

    def to_json(self):
        return {
            "free": self.free,
            "exponents": list(self.exponents) if self.exponents else None,
            "witness_hyperplane": self.witness_hyperplane,
            "chi": list(self.chi),
            "chi_exponents": list(self.chi_exponents) if self.chi_exponents else None,
            "ziegler_exponents": list(self.ziegler_exponents) if self.ziegler_exponents else None,
            "reason": self.reason,
            "note": self.note,
        }


def is_free_rank3(a: Arrangement, witness: int = 0, lattice: IntersectionLattice | None = None) -> FreenessReport:
    """Decide freeness; the Ziegler exponents are only computed when chi splits."""
    L = lattice if lattice is not None else build_lattice(a)
    if not 0 <= witness < len(a):
        raise IndexError(f"witness index {witness} out of range")
    chi = char_poly(L)
    chi_exps = factor_exponents(chi)
    note = POSITIVE_CHARACTERISTIC_NOTE if a.field.characteristic else None
    if chi_exps is None:
        return FreenessReport(False, None, witness, None, None, CHI_DOES_NOT_SPLIT, tuple(chi.coefficients), note)
    z = multi_exponents(ziegler_restrict(a, witness))
    if tuple(sorted((1, z.d1, z.d2))) != chi_exps:
        return FreenessReport(False, None, witness, chi_exps, z, PRODUCT_MISMATCH, tuple(chi.coefficients), note)
    return FreenessReport(True, chi_exps, witness, chi_exps, z, FREE, tuple(chi.coefficients), note)


def free_exponents(a: Arrangement, lattice=None):
    """Exponents if ``a`` is free, else ``None``."""
    return is_free_rank3(a, lattice=lattice).exponents


# ---------------------------------------------------------------------------
# Saito's criterion

def _derivation_degree(theta):
    degs = set()
    for f in theta:
        if not f.is_homogeneous():
            raise DegreeMismatch(f"component {f!r} is not homogeneous")
        degs |= f.degrees()
    if len(degs) > 1:
        raise DegreeMismatch(f"components have different degrees {sorted(degs)}")
    return degs.pop() if degs else None


def defining_polynomial(a: Arrangement) -> Poly:
    F = a.field
    Q = Poly.const(F, F.one)
    for alpha in a.normals:
        Q = Q * Poly.linear(F, alpha)
    return Q


def _divides_linear(F: Field, alpha, P: Poly) -> bool:
    piv = next(i for i, x in enumerate(alpha) if not F.is_zero(x))
    images = []
    for v in range(3):
        if v == piv:
            coeffs = [F.zero if j == piv else F.neg(F.div(alpha[j], alpha[piv])) for j in range(3)]
            images.append(Poly.linear(F, coeffs))
        else:
            images.append(Poly.var(F, v))
    return P.substitute(images).is_zero()


def is_logarithmic(a: Arrangement, theta) -> bool:
    """True iff theta(alpha_H) is divisible by alpha_H for every H in ``a``."""
    F = a.field
    theta = [as_poly(F, f) for f in theta]
    for alpha in a.normals:
        image = Poly(F)
        for c, f in zip(alpha, theta):
            if not F.is_zero(c):
                image = image + f * c
        if not _divides_linear(F, alpha, image):
            return False
    return True


def saito_verify(a: Arrangement, basis) -> bool:
    """True iff the three derivations lie in D(A) and their determinant is c * Q(A), c != 0.

    ``basis`` is three derivations, each a triple of polynomials (or strings)
    giving the coefficients of d/dx, d/dy, d/dz.
    """
    a.require_rank3()
    F = a.field
    thetas = [[as_poly(F, f) for f in theta] for theta in basis]
    if len(thetas) != 3 or any(len(t) != 3 for t in thetas):
        raise ValueError("need three derivations with three components each")
    for theta in thetas:
        _derivation_degree(theta)
    if not all(is_logarithmic(a, theta) for theta in thetas):
        return False
    det = det3(thetas)
    if det.is_zero():
        return False
    Q = defining_polynomial(a)
    mono = next(iter(Q.terms))
    if mono not in det.terms:
        return False
    c = F.div(det.terms[mono], Q.terms[mono])
    return det == Q * c
