"""Exact scalar fields (Q, Q(zeta_n), F_p) and dense linear algebra over them.

Every field object doubles as the descriptor of its elements.  Hot loops in the
rest of the package work directly on *payloads* through the field methods
(``F.add(a, b)`` etc.); :class:`FieldElement` wraps a payload for the public,
operator-overloaded API.

Payload conventions:

* rational   -- :class:`fractions.Fraction`
* prime(p)   -- ``int`` in ``[0, p)``
* cyclotomic -- ``(nums, den)``: a tuple of ``phi(n)`` integers and a positive
  integer denominator with ``gcd(*nums, den) == 1``.  The element is
  ``sum(nums[i] * zeta**i) / den``.  Canonical forms are unique, so payload
  equality is element equality.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


class FieldError(Exception):
    pass


class DescriptorMismatch(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class ParseError(FieldError, ValueError):
    pass


# ---------------------------------------------------------------------------
# integer polynomials (coefficient lists, lowest degree first)

def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_divexact(p, q):
    """Exact division of integer polynomials by a monic divisor."""
    p = list(p)
    dq = len(q) - 1
    assert q[-1] == 1
    quot = [0] * (len(p) - dq)
    for k in range(len(p) - 1, dq - 1, -1):
        c = p[k]
        if c:
            quot[k - dq] = c
            for j in range(dq + 1):
                p[k - dq + j] -= c * q[j]
    if any(p):
        raise ArithmeticError("division is not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (lowest degree first) of the n-th cyclotomic polynomial.

    Computed as ``(t^n - 1) / prod(Phi_d for d | n, d < n)``.

    >>> cyclotomic_poly(5)
    (1, 1, 1, 1, 1)
    >>> cyclotomic_poly(12)
    (1, 0, -1, 0, 1)
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_poly(d))
    return tuple(_poly_divexact(num, den))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ParseError(f"not a scalar: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a scalar: {text!r}")
    s = text.strip()
    try:
        if "/" in s:
            a, b = s.split("/")
            q = Fraction(int(a), int(b))
        else:
            q = Fraction(int(s))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {text!r}") from None
    return q


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# fields

class Field:
    """Base class; concrete fields are interned, so ``is`` and ``==`` agree."""

    kind: str
    zero = None
    one = None
    characteristic = 0

    # element API -------------------------------------------------------
    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            self._check(value.field)
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        if isinstance(value, Fraction):
            return FieldElement(self, self.from_fraction(value))
        return FieldElement(self, self.parse(value))

    def _check(self, other: Field):
        if other is not self:
            raise DescriptorMismatch(f"{self} vs {other}")

    def descriptor(self) -> dict:
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    # payload arithmetic, overridden ------------------------------------
    def is_zero(self, a) -> bool:
        return a == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def dot(self, u, v):
        acc = self.zero
        for a, b in zip(u, v):
            if not self.is_zero(a) and not self.is_zero(b):
                acc = self.add(acc, self.mul(a, b))
        return acc

    def __reduce__(self):
        return (make_field, (self.descriptor(),))


class RationalField(Field):
    kind = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def descriptor(self):
        return {"kind": "rational"}

    def from_int(self, k):
        return Fraction(k)

    def from_fraction(self, q):
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero")
        return a / b

    def parse(self, text):
        return _parse_rational(text)

    def encode(self, a):
        return _fmt_rational(a)

    def key(self, a):
        return a

    def to_str(self, a):
        return _fmt_rational(a)


class PrimeField(Field):
    kind = "prime"
    zero = 0
    one = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"GF({self.p})"

    def descriptor(self):
        return {"kind": "prime", "p": self.p}

    def from_int(self, k):
        return k % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def dot(self, u, v):
        return sum(a * b for a, b in zip(u, v)) % self.p

    def parse(self, text):
        if isinstance(text, bool):
            raise ParseError(f"not a scalar: {text!r}")
        if isinstance(text, str):
            try:
                text = int(text.strip())
            except ValueError:
                raise ParseError(f"bad F_{self.p} element {text!r}") from None
        if not isinstance(text, int) or not 0 <= text < self.p:
            raise ParseError(f"F_{self.p} element must be an integer in [0, {self.p - 1}], got {text!r}")
        return text

    def encode(self, a):
        return a

    def key(self, a):
        return a

    def to_str(self, a):
        return str(a)


class CyclotomicField(Field):
    """Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1)."""

    kind = "cyclotomic"

    def __init__(self, n: int):
        if n < 3:
            raise FieldError("cyclotomic fields need n >= 3")
        self.n = n
        self.modulus = cyclotomic_poly(n)
        self.degree = len(self.modulus) - 1
        self.zero = ((0,) * self.degree, 1)
        self.one = ((1,) + (0,) * (self.degree - 1), 1)

    def __repr__(self):
        return f"CyclotomicField({self.n})"

    def descriptor(self):
        return {"kind": "cyclotomic", "n": self.n}

    # canonical form
    def _norm(self, nums, den):
        if den < 0:
            nums = [-c for c in nums]
            den = -den
        g = math.gcd(den, *nums)
        if g != 1:
            nums = [c // g for c in nums]
            den //= g
        return (tuple(nums), den)

    def _reduce(self, coeffs):
        """Reduce an integer coefficient list modulo the (monic) cyclotomic polynomial."""
        phi = self.modulus
        d = self.degree
        r = list(coeffs)
        for k in range(len(r) - 1, d - 1, -1):
            c = r[k]
            if c:
                base = k - d
                for j in range(d):
                    if phi[j]:
                        r[base + j] -= c * phi[j]
        if len(r) < d:
            r.extend([0] * (d - len(r)))
        return r[:d]

    def from_int(self, k):
        return ((k,) + (0,) * (self.degree - 1), 1)

    def from_fraction(self, q):
        q = Fraction(q)
        return ((q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def zeta_power(self, k: int):
        coeffs = [0] * (k % self.n + 1)
        coeffs[-1] = 1
        return self._norm(self._reduce(coeffs), 1)

    def from_coefficients(self, coeffs):
        """Element from any list of rational coefficients of zeta^i (any length)."""
        qs = [Fraction(c) for c in coeffs]
        den = 1
        for q in qs:
            den = den * q.denominator // math.gcd(den, q.denominator)
        ints = [q.numerator * (den // q.denominator) for q in qs] or [0]
        return self._norm(self._reduce(ints), den)

    def coefficients(self, a) -> list[Fraction]:
        nums, den = a
        return [Fraction(c, den) for c in nums]

    def is_zero(self, a):
        return not any(a[0])

    def add(self, a, b):
        (an, ad), (bn, bd) = a, b
        if ad == bd:
            return self._norm([x + y for x, y in zip(an, bn)], ad)
        return self._norm([x * bd + y * ad for x, y in zip(an, bn)], ad * bd)

    def sub(self, a, b):
        (an, ad), (bn, bd) = a, b
        if ad == bd:
            return self._norm([x - y for x, y in zip(an, bn)], ad)
        return self._norm([x * bd - y * ad for x, y in zip(an, bn)], ad * bd)

    def neg(self, a):
        return (tuple(-c for c in a[0]), a[1])

    def _conv(self, an, bn):
        out = [0] * (2 * self.degree - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        out[i + j] += x * y
        return out

    def mul(self, a, b):
        return self._norm(self._reduce(self._conv(a[0], b[0])), a[1] * b[1])

    def dot(self, u, v):
        # accumulate over a common denominator, normalise once
        acc = [0] * (2 * self.degree - 1)
        den = 1
        for (an, ad), (bn, bd) in zip(u, v):
            if not any(an) or not any(bn):
                continue
            conv = self._conv(an, bn)
            d = ad * bd
            if d == den:
                acc = [x + y for x, y in zip(acc, conv)]
            else:
                acc = [x * d + y * den for x, y in zip(acc, conv)]
                den *= d
        return self._norm(self._reduce(acc), den)

    def inv(self, a):
        """Inverse by the extended Euclidean algorithm in Q[t] against Phi_n."""
        nums, den = a
        if not any(nums):
            raise DivisionByZero("inverse of zero")
        # invariant: s_i * a == r_i (mod Phi_n), all over Q
        r0 = [Fraction(c) for c in self.modulus]
        r1 = [Fraction(c) for c in _poly_trim(nums)]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
        # r1 is a nonzero constant (Phi_n irreducible)
        c = r1[0]
        coeffs = [x / c * den for x in s1]
        return self.from_coefficients(coeffs)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def parse(self, text):
        if isinstance(text, list):
            if len(text) != self.degree:
                raise ParseError(f"Q(zeta_{self.n}) element needs {self.degree} coefficients, got {len(text)}")
            return self.from_coefficients([_parse_rational(t) for t in text])
        if isinstance(text, (int, str)):
            return self.from_fraction(_parse_rational(text))
        raise ParseError(f"not a Q(zeta_{self.n}) element: {text!r}")

    def encode(self, a):
        return [_fmt_rational(q) for q in self.coefficients(a)]

    def key(self, a):
        return tuple(self.coefficients(a))

    def to_str(self, a):
        terms = []
        for i, q in enumerate(self.coefficients(a)):
            if not q:
                continue
            mono = "" if i == 0 else ("zeta" if i == 1 else f"zeta^{i}")
            if not mono:
                terms.append(_fmt_rational(q))
            elif q == 1:
                terms.append(mono)
            elif q == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{_fmt_rational(q)}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _qpoly_trim(p):
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _qpoly_sub(p, q):
    out = [Fraction(0)] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] -= c
    return _qpoly_trim(out)


def _qpoly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _qpoly_trim(out)


def _qpoly_divmod(p, q):
    p = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quot = [Fraction(0)] * max(1, len(p) - dq)
    for k in range(len(p) - 1, dq - 1, -1):
        c = p[k] / lead
        if c:
            quot[k - dq] = c
            for j in range(dq + 1):
                p[k - dq + j] -= c * q[j]
    rem = _qpoly_trim(p[:dq] if dq else [Fraction(0)])
    return _qpoly_trim(quot), rem


_QQ = RationalField()


@lru_cache(maxsize=None)
def _cyclotomic(n):
    return CyclotomicField(n)


@lru_cache(maxsize=None)
def _prime(p):
    return PrimeField(p)


def QQ() -> RationalField:
    return _QQ


def cyclotomic_field(n: int) -> CyclotomicField:
    return _cyclotomic(int(n))


def prime_field(p: int) -> PrimeField:
    return _prime(int(p))


def make_field(desc) -> Field:
    """Field from a descriptor dict such as ``{"kind": "prime", "p": 11}``."""
    if isinstance(desc, Field):
        return desc
    if not isinstance(desc, dict):
        raise ParseError(f"bad field descriptor {desc!r}")
    kind = desc.get("kind")
    try:
        if kind == "rational":
            return _QQ
        if kind == "cyclotomic":
            return cyclotomic_field(desc["n"])
        if kind == "prime":
            return prime_field(desc["p"])
    except KeyError as e:
        raise ParseError(f"field descriptor missing {e}") from None
    raise ParseError(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------

class FieldElement:
    """An element of a :class:`Field`, immutable and hashable."""

    __slots__ = ("field", "payload")

    def __init__(self, field: Field, payload):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            self.field._check(other.field)
            return other.payload
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.from_fraction(other)
        return NotImplemented

    def _wrap(self, payload):
        return FieldElement(self.field, payload)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.payload, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.payload, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.payload))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.payload, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.payload, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.payload))

    def __neg__(self):
        return self._wrap(self.field.neg(self.payload))

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result, base = self.field.one, self.payload
        while k:
            if k & 1:
                result = self.field.mul(result, base)
            base = self.field.mul(base, base)
            k >>= 1
        return self._wrap(result)

    def inv(self):
        return self._wrap(self.field.inv(self.payload))

    def is_zero(self):
        return self.field.is_zero(self.payload)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.payload == other.payload
        if isinstance(other, (int, Fraction)):
            return self.payload == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.kind, self.payload))

    def __repr__(self):
        return f"{self.field!r}({self.field.to_str(self.payload)})"

    def __str__(self):
        return self.field.to_str(self.payload)


# ---------------------------------------------------------------------------
# dense linear algebra on payload matrices (lists of rows)

class Matrix:
    """Immutable dense matrix over a field; entries are stored as payloads."""

    def __init__(self, field: Field, rows):
        self.field = field
        data = []
        for row in rows:
            conv = []
            for x in row:
                if isinstance(x, FieldElement):
                    field._check(x.field)
                    conv.append(x.payload)
                else:
                    conv.append(field(x).payload if isinstance(x, (int, Fraction, str, list)) else x)
            data.append(tuple(conv))
        if data and len({len(r) for r in data}) != 1:
            raise ValueError("ragged matrix")
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        self.data = tuple(data)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return FieldElement(self.field, self.data[i][j])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field is other.field and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __sub__(self, other):
        F = self.field
        F._check(other.field)
        return Matrix(F, [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __matmul__(self, other):
        F = self.field
        F._check(other.field)
        cols = list(zip(*other.data))
        return Matrix(F, [[F.dot(r, c) for c in cols] for r in self.data])

    def inverse(self):
        F = self.field
        n = self.rows
        aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(self.data)]
        ech, pivots = row_echelon(F, aug)
        if pivots[:n] != list(range(n)):
            raise DivisionByZero("singular matrix")
        return Matrix(F, [r[n:] for r in ech[:n]])

    def __repr__(self):
        body = "; ".join(", ".join(self.field.to_str(x) for x in r) for r in self.data)
        return f"Matrix({self.field!r}, [{body}])"


def row_echelon(F: Field, rows):
    """Reduced row echelon form of a list of payload rows.

    Pivots are chosen as the first nonzero entry scanning columns left to right,
    rows top to bottom.  Returns ``(rows, pivot_columns)``; the input is not
    modified.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    is_zero, sub, mul = F.is_zero, F.sub, F.mul
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        prow = [mul(x, inv) if not is_zero(x) else x for x in m[r]]
        prow[c] = F.one
        m[r] = prow
        nz = [j for j in range(c + 1, ncols) if not is_zero(prow[j])]
        for i in range(len(m)):
            if i == r:
                continue
            f = m[i][c]
            if is_zero(f):
                continue
            row = m[i]
            for j in nz:
                row[j] = sub(row[j], mul(f, prow[j]))
            row[c] = F.zero
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _as_rows(m):
    if isinstance(m, Matrix):
        return m.field, m.data, m.cols
    raise TypeError("expected a Matrix")


def mat_rank(m: Matrix) -> int:
    F, rows, _ = _as_rows(m)
    return len(row_echelon(F, rows)[1])


def mat_kernel(m: Matrix) -> list[tuple[FieldElement, ...]]:
    """Basis of the right null space, one vector per free column (RREF order)."""
    F, rows, ncols = _as_rows(m)
    return [tuple(FieldElement(F, x) for x in v) for v in kernel_payloads(F, rows, ncols)]


def kernel_payloads(F: Field, rows, ncols):
    ech, pivots = row_echelon(F, rows)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for r, pc in enumerate(pivots):
            x = ech[r][free]
            if not F.is_zero(x):
                v[pc] = F.neg(x)
        basis.append(tuple(v))
    return basis


def rank_payloads(F: Field, rows) -> int:
    return len(row_echelon(F, rows)[1])


def mat_det(m: Matrix) -> FieldElement:
    F = m.field
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m.data]
    n = m.rows
    det = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not F.is_zero(a[i][c])), None)
        if piv is None:
            return FieldElement(F, F.zero)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = F.neg(det)
        det = F.mul(det, a[c][c])
        inv = F.inv(a[c][c])
        for i in range(c + 1, n):
            f = F.mul(a[i][c], inv)
            if not F.is_zero(f):
                for j in range(c, n):
                    a[i][j] = F.sub(a[i][j], F.mul(f, a[c][j]))
    return FieldElement(F, det)
