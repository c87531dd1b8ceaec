"""Sparse polynomials in x, y, z over an exact field, plus a small expression parser."""
from __future__ import annotations

import re
from fractions import Fraction

from .exactfield import Field, FieldElement, ParseError

VARS = ("x", "y", "z")


class Poly:
    """Immutable sparse polynomial ``{(i, j, k): payload}``."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        clean = {}
        for mono, c in (terms or {}).items():
            if not field.is_zero(c):
                clean[mono] = c
        self.terms = clean

    @classmethod
    def const(cls, F, c):
        return cls(F, {(0, 0, 0): c})

    @classmethod
    def var(cls, F, i):
        mono = [0, 0, 0]
        mono[i] = 1
        return cls(F, {tuple(mono): F.one})

    @classmethod
    def linear(cls, F, coeffs):
        return cls(F, {tuple(int(i == j) for j in range(3)): c for i, c in enumerate(coeffs)})

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return {sum(m) for m in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def __add__(self, other):
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out[m], c) if m in out else c
        return Poly(F, out)

    def __neg__(self):
        return Poly(self.field, {m: self.field.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if not isinstance(other, Poly):
            other = Poly.const(F, other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                p = F.mul(c1, c2)
                out[m] = F.add(out[m], p) if m in out else p
        return Poly(F, out)

    def __pow__(self, k):
        result = Poly.const(self.field, self.field.one)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field is other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute(self, images):
        """Replace x, y, z by the polynomials ``images``."""
        F = self.field
        out = Poly(F)
        cache = {}
        for mono, c in self.terms.items():
            term = Poly.const(F, c)
            for v, e in enumerate(mono):
                if e:
                    if (v, e) not in cache:
                        cache[v, e] = images[v] ** e
                    term = term * cache[v, e]
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            c = self.field.to_str(self.terms[mono])
            m = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(VARS, mono) if e)
            if not m:
                parts.append(f"({c})" if " " in c else c)
            elif c == "1":
                parts.append(m)
            else:
                parts.append(f"({c})*{m}" if " " in c or "/" in c else f"{c}*{m}")
        return " + ".join(parts)


def det3(M) -> Poly:
    (a, b, c), (d, e, f), (g, h, i) = M
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


# ---------------------------------------------------------------------------
# parsing "3*x^2*y - (1/2)*zeta*z + 4"

_TOKEN = re.compile(r"\s*(?:(\d+)|(zeta|x|y|z)|(.))")


def parse_poly(F: Field, text: str) -> Poly:
    """Parse an expression in x, y, z (and ``zeta`` over cyclotomic fields).

    Supports ``+ - * / ^`` and parentheses; division only by nonzero constants.
    """
    tokens = []
    for num, name, op in _TOKEN.findall(text):
        if num:
            tokens.append(("num", int(num)))
        elif name:
            tokens.append(("name", name))
        elif op.strip():
            tokens.append(("op", op))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        node = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term():
        node = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            if op == "*":
                node = node * rhs
            else:
                if rhs.degrees() - {0} or rhs.is_zero():
                    raise ParseError(f"can only divide by nonzero constants in {text!r}")
                node = node * F.inv(rhs.terms[(0, 0, 0)])
        return node

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
        return power()

    def power():
        node = atom()
        if peek() == ("op", "^"):
            take()
            kind, e = take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {text!r}")
            node = node ** e
        return node

    def atom():
        kind, val = take()
        if kind == "num":
            return Poly.const(F, F.from_int(val))
        if kind == "name":
            if val == "zeta":
                if F.kind != "cyclotomic":
                    raise ParseError("zeta is only available over cyclotomic fields")
                return Poly.const(F, F.zeta_power(1))
            return Poly.var(F, VARS.index(val))
        if (kind, val) == ("op", "("):
            node = expr()
            if take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {text!r}")
            return node
        raise ParseError(f"unexpected {val!r} in {text!r}")

    result = expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return result


def as_poly(F: Field, value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, str):
        return parse_poly(F, value)
    if isinstance(value, FieldElement):
        return Poly.const(F, value.payload)
    if isinstance(value, (int, Fraction)):
        return Poly.const(F, F(value).payload)
    raise ParseError(f"cannot read a polynomial from {value!r}")
