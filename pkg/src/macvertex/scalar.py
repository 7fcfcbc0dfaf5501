"""Exact arithmetic over the fraction field Q(p, s, u1, ..., v1, ..., w, ...).

Everything downstream (Fock states, Nekrasov factors, series coefficients)
lives in the fraction field of integer-coefficient sparse polynomials.  The
deformation parameters are carried through their square roots:

    q = p^2,   t = s^2,   gamma = (t/q)^(1/2) = s/p,

so all the half-integer powers that show up in fused currents and flaming
factors are honest Laurent monomials and no branch bookkeeping is needed.
Any expression entered as q, t or gamma is rewritten through p, s.

A Scalar is an *unreduced* pair num/den of ring elements.  Reduction by
multivariate gcd is lazy: it happens at explicit `normalize()` points, before
serialization, and automatically once a fraction grows past a size threshold.
Equality is always decidable exactly by cross multiplication; an optional
Schwartz-Zippel filter over a 62-bit prime gives a fast probabilistic "no".

The raw polynomial arithmetic (mul / gcd / exact division) is delegated to
sympy's sparse polynomial rings; this module owns the field semantics,
canonical text form and the q-Pochhammer evaluation.
"""

from __future__ import annotations

import random
from typing import Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.rings import ring as _sympy_ring

__all__ = ["Field", "Scalar", "PoleError", "ScalarParseError"]

# Fractions whose combined term count exceeds this are gcd-reduced eagerly.
AUTO_REDUCE_TERMS = 900

# 62-bit prime for the probabilistic equality filter.
_SZ_PRIME = (1 << 61) - 1


class PoleError(ZeroDivisionError):
    """A denominator vanished identically (division by zero as a rational function)."""


class ScalarParseError(ValueError):
    """The canonical-grammar parser rejected its input."""


class Field:
    """A fixed ordered symbol table and the fraction field built on it.

    The table must contain `p` and `s`; q, t, gamma are derived, never stored.
    Lexicographic monomial order on the table makes printed output canonical.
    """

    def __init__(self, symbols: Sequence[str]):
        symbols = tuple(symbols)
        if "p" not in symbols or "s" not in symbols:
            raise ValueError("field symbol table must contain 'p' and 's'")
        if len(set(symbols)) != len(symbols):
            raise ValueError("duplicate symbols in field table")
        for bad in ("q", "t", "gamma"):
            if bad in symbols:
                raise ValueError(f"'{bad}' is derived (q=p^2, t=s^2, gamma=s/p), not a symbol")
        self.symbols = symbols
        self.ring = _sympy_ring(" ".join(symbols), ZZ, lex)[0]
        self._gens = {name: g for name, g in zip(symbols, self.ring.gens)}
        self._one = self.ring.one
        self._zero = self.ring.zero
        self.one = Scalar(self, self._one, self._one)
        self.zero = Scalar(self, self._zero, self._one)
        self.p = self.sym("p")
        self.s = self.sym("s")
        self.q = self.p * self.p
        self.t = self.s * self.s
        self.gamma = self.s / self.p

    # -- construction ------------------------------------------------------

    @classmethod
    def standard(cls, N: int, extra: Sequence[str] = ()) -> "Field":
        """p, s, u1..uN, v1..vN, w plus any extra series symbols."""
        names = ["p", "s"]
        names += [f"u{i}" for i in range(1, N + 1)]
        names += [f"v{i}" for i in range(1, N + 1)]
        names.append("w")
        names += list(extra)
        return cls(names)

    def sym(self, name: str) -> "Scalar":
        try:
            return Scalar(self, self._gens[name], self._one)
        except KeyError:
            raise KeyError(f"symbol {name!r} not in field table {self.symbols}") from None

    def int(self, k: int) -> "Scalar":
        return Scalar(self, self.ring.ground_new(ZZ(k)), self._one)

    def u(self, N: int) -> Tuple["Scalar", ...]:
        return tuple(self.sym(f"u{i}") for i in range(1, N + 1))

    def v(self, N: int) -> Tuple["Scalar", ...]:
        return tuple(self.sym(f"v{i}") for i in range(1, N + 1))

    def __repr__(self) -> str:
        return f"Field({', '.join(self.symbols)})"

    # -- q-Pochhammer --------------------------------------------------------

    def qpoch(self, a: "Scalar", m: int, q: Optional["Scalar"] = None) -> "Scalar":
        """(a; q)_m with the three-branch definition, exact.

        m >= 1:  prod_{n=1..m} (1 - q^(n-1) a)
        m == 0:  1
        m <= -1: prod_{n=1..-m} (1 - q^(-n) a)^(-1); raises PoleError when a
                 collides with a positive q power so that a factor vanishes.
        """
        if q is None:
            q = self.q
        a = self._coerce(a)
        out = self.one
        if m >= 1:
            qp = self.one
            for _ in range(m):
                out = out * (self.one - qp * a)
                qp = qp * q
        elif m <= -1:
            qinv = q.inverse()
            qp = qinv
            for _ in range(-m):
                factor = self.one - qp * a
                if factor.is_zero():
                    raise PoleError("pole in q-Pochhammer")
                out = out / factor
                qp = qp * qinv
        return out

    def qpoch_ratio(self, alpha: "Scalar", beta: "Scalar", m: int,
                    q: Optional["Scalar"] = None) -> "Scalar":
        """(alpha; q)_m / (beta; q)_m, with the negative-m branch taken as the
        analytically continued product prod_{j=1}^{-m} (1-q^-j beta)/(1-q^-j alpha)
        so that a vanishing numerator factor yields 0 instead of a pole."""
        if q is None:
            q = self.q
        if m >= 0:
            num = self.qpoch(alpha, m, q)
            den = self.qpoch(beta, m, q)
        else:
            num = self.one
            den = self.one
            qp = q.inverse()
            for _ in range(-m):
                num = num * (self.one - qp * beta)
                den = den * (self.one - qp * alpha)
                qp = qp * q.inverse()
        if den.is_zero():
            raise PoleError("pole in q-Pochhammer ratio")
        return num / den

    def _coerce(self, x) -> "Scalar":
        if isinstance(x, Scalar):
            if x.field is not self:
                raise ValueError("scalar belongs to a different field")
            return x
        if isinstance(x, int):
            return self.int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into field scalar")

    # -- parsing / conversion ----------------------------------------------

    def parse(self, text: str) -> "Scalar":
        return _Parser(self, text).parse()

    def convert(self, x: "Scalar", mapping: Optional[Mapping[str, "Scalar"]] = None) -> "Scalar":
        """Move a scalar from another field into this one.

        `mapping` sends source symbol names to scalars of this field; unmapped
        names must exist verbatim in this field's table.
        """
        mapping = dict(mapping or {})
        values = []
        for name in x.field.symbols:
            if name in mapping:
                values.append(self._coerce(mapping[name]))
            else:
                values.append(self.sym(name))
        num = _eval_poly(x.num, values, self)
        den = _eval_poly(x.den, values, self)
        if den.is_zero():
            raise PoleError("denominator vanishes under conversion")
        return num / den


def _eval_poly(poly, values: Sequence["Scalar"], field: Field) -> "Scalar":
    """Evaluate a ring element at Scalar-valued points of `field`."""
    total = field.zero
    for monom, coeff in poly.iterterms():
        term = field.int(int(coeff))
        for val, e in zip(values, monom):
            if e:
                term = term * val.pow(e)
        total = total + term
    return total


class Scalar:
    """An immutable element of the fraction field (unreduced num/den pair)."""

    __slots__ = ("field", "num", "den", "_norm")

    def __init__(self, field: Field, num, den, _norm: bool = False):
        if not den:
            raise PoleError("zero denominator")
        if not num:
            den = field._one
        self.field = field
        self.num = num
        self.den = den
        self._norm = _norm

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == self.den

    # -- arithmetic ----------------------------------------------------------

    def _wrap(self, num, den) -> "Scalar":
        out = Scalar(self.field, num, den)
        if len(out.num) + len(out.den) > AUTO_REDUCE_TERMS:
            out = out.normalize()
        return out

    def __add__(self, other: "Scalar") -> "Scalar":
        other = self.field._coerce(other)
        if self.den == other.den:
            return self._wrap(self.num + other.num, self.den)
        return self._wrap(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "Scalar") -> "Scalar":
        other = self.field._coerce(other)
        if self.den == other.den:
            return self._wrap(self.num - other.num, self.den)
        return self._wrap(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.num, self.den)

    def __mul__(self, other: "Scalar") -> "Scalar":
        other = self.field._coerce(other)
        if not self.num or not other.num:
            return self.field.zero
        return self._wrap(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        other = self.field._coerce(other)
        if not other.num:
            raise PoleError("division by zero scalar")
        if not self.num:
            return self.field.zero
        return self._wrap(self.num * other.den, self.den * other.num)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other) -> "Scalar":
        return self.field._coerce(other) - self

    def __rtruediv__(self, other) -> "Scalar":
        return self.field._coerce(other) / self

    def inverse(self) -> "Scalar":
        if not self.num:
            raise PoleError("inverse of zero")
        return Scalar(self.field, self.den, self.num)

    def pow(self, e: int) -> "Scalar":
        if e == 0:
            return self.field.one
        if e < 0:
            return self.inverse().pow(-e)
        return Scalar(self.field, self.num ** e, self.den ** e)

    __pow__ = pow

    # -- equality ------------------------------------------------------------

    def equals(self, other: "Scalar", probabilistic: bool = False, seed: Optional[int] = None) -> bool:
        """True iff self - other = 0 as a rational function.

        The exact decision cross-multiplies and compares polynomials.  The
        Schwartz-Zippel filter (evaluation mod a 62-bit prime at random points)
        runs first: its "no" is authoritative; its "yes" falls through to the
        exact check unless `probabilistic` is set.
        """
        other = self.field._coerce(other)
        rng = random.Random(seed if seed is not None else 0x5eed)
        for _ in range(2):
            verdict = _modular_probe(self, other, rng)
            if verdict is False:
                return False
            if verdict is True and probabilistic:
                return True
        return self.num * other.den == other.num * self.den

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        n, d = self.normalize().as_pair()
        return hash((self.field.symbols, tuple(sorted(n.iterterms())), tuple(sorted(d.iterterms()))))

    # -- normalization -------------------------------------------------------

    def normalize(self) -> "Scalar":
        """gcd-reduced copy with a sign-canonical denominator (idempotent)."""
        if self._norm:
            return self
        if not self.num:
            return self.field.zero
        num, den = _strip_monomial_content(self.field, self.num, self.den)
        if len(den) > 1 or len(num) > 1:
            g = num.gcd(den)
            if g != self.field._one:
                num = num.exquo(g)
                den = den.exquo(g)
        if den.LC < 0:
            num, den = -num, -den
        return Scalar(self.field, num, den, _norm=True)

    def as_pair(self):
        return self.num, self.den

    # -- substitution --------------------------------------------------------

    def substitute(self, bindings: Mapping[str, "Scalar"]) -> "Scalar":
        """Exact composition: replace listed symbols by scalars of this field."""
        field = self.field
        values = []
        for name in field.symbols:
            if name in bindings:
                values.append(field._coerce(bindings[name]))
            else:
                values.append(field.sym(name))
        num = _eval_poly(self.num, values, field)
        den = _eval_poly(self.den, values, field)
        if den.is_zero():
            raise PoleError("denominator vanishes under substitution")
        return num / den

    # -- canonical text form ---------------------------------------------------

    def __str__(self) -> str:
        red = self.normalize()
        num = _poly_str(red.num, self.field)
        if red.den == self.field._one:
            return num
        den = _poly_str(red.den, self.field)
        num_s = f"({num})" if ("+" in num or (num.count("-") - num.startswith("-")) > 0) else num
        den_s = f"({den})" if not _is_atomic(den) else den
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"Scalar({self})"


def _is_atomic(text: str) -> bool:
    return not any(op in text for op in ("+", "-", "*", "/"))


def _strip_monomial_content(field: Field, num, den):
    """Cancel the common monomial-with-integer-content part of num and den.

    This cheap dict-level pass handles the dominant case (monomial or nearly
    monomial denominators) without invoking full multivariate gcd.
    """
    from math import gcd as _igcd
    nvars = len(field.symbols)
    mins = [None, None]
    contents = [0, 0]
    for idx, poly in enumerate((num, den)):
        lo = [10 ** 9] * nvars
        ct = 0
        for monom, coeff in poly.iterterms():
            for i, e in enumerate(monom):
                if e < lo[i]:
                    lo[i] = e
            ct = _igcd(ct, int(coeff))
        mins[idx] = lo
        contents[idx] = abs(ct)
    shift = tuple(min(a, b) for a, b in zip(mins[0], mins[1]))
    content = _igcd(contents[0], contents[1])
    if content <= 1 and not any(shift):
        return num, den
    out = []
    for poly in (num, den):
        terms = {tuple(e - s for e, s in zip(monom, shift)): coeff // content
                 for monom, coeff in poly.iterterms()}
        out.append(poly.ring.from_dict(terms))
    return out[0], out[1]


def _poly_str(poly, field: Field) -> str:
    if not poly:
        return "0"
    parts = []
    for monom, coeff in sorted(poly.iterterms(), reverse=True):
        factors = []
        c = int(coeff)
        for name, e in zip(field.symbols, monom):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(abs(c))] + factors)
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _modular_probe(x: Scalar, y: Scalar, rng: random.Random) -> Optional[bool]:
    """One Schwartz-Zippel trial of x == y mod a 62-bit prime.

    Returns False on a definite mismatch, True on a matching sample, None if
    the sample hit a denominator zero and must be discarded.
    """
    point = [rng.randrange(1, _SZ_PRIME) for _ in x.field.symbols]
    vals = []
    for poly in (x.num, x.den, y.num, y.den):
        vals.append(_eval_mod(poly, point))
    if vals[1] == 0 or vals[3] == 0:
        return None
    return (vals[0] * vals[3] - vals[2] * vals[1]) % _SZ_PRIME == 0


def _eval_mod(poly, point: Sequence[int]) -> int:
    total = 0
    for monom, coeff in poly.iterterms():
        term = int(coeff) % _SZ_PRIME
        for base, e in zip(point, monom):
            if e:
                term = (term * pow(base, e, _SZ_PRIME)) % _SZ_PRIME
        total = (total + term) % _SZ_PRIME
    return total


class _Parser:
    """Recursive-descent parser for the canonical grammar.

    Accepts integers, the field's symbols, q/t/gamma sugar, + - * / ^ (or **),
    and parentheses.  `2*q*u1/(1-t)^2` style input round-trips with __str__.
    """

    def __init__(self, field: Field, text: str):
        self.field = field
        self.text = text
        self.pos = 0

    def parse(self) -> Scalar:
        value = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ScalarParseError(f"trailing input at position {self.pos}: {self.text[self.pos:]!r}")
        return value

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expr(self) -> Scalar:
        value = self._term()
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                value = value + self._term()
            elif ch == "-":
                self.pos += 1
                value = value - self._term()
            else:
                return value

    def _term(self) -> Scalar:
        value = self._factor()
        while True:
            ch = self._peek()
            if ch == "*" and not self.text.startswith("**", self.pos):
                self.pos += 1
                value = value * self._factor()
            elif ch == "/":
                self.pos += 1
                value = value / self._factor()
            else:
                return value

    def _factor(self) -> Scalar:
        ch = self._peek()
        if ch == "-":
            self.pos += 1
            return -self._factor()
        if ch == "+":
            self.pos += 1
            return self._factor()
        base = self._atom()
        self._skip_ws()
        if self.text.startswith("**", self.pos):
            self.pos += 2
            return base.pow(self._int())
        if self._peek() == "^":
            self.pos += 1
            return base.pow(self._int())
        return base

    def _int(self) -> int:
        self._skip_ws()
        start = self.pos
        if self._peek() in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ScalarParseError(f"expected integer at position {start}")
        return int(self.text[start:self.pos])

    def _atom(self) -> Scalar:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            value = self._expr()
            if self._peek() == ";":
                # q-Pochhammer sugar: (a; q)_m
                self.pos += 1
                base = self._expr()
                if self._peek() != ")":
                    raise ScalarParseError(f"missing ')' at position {self.pos}")
                self.pos += 1
                self._skip_ws()
                if self._peek() != "_":
                    raise ScalarParseError(f"expected '_<int>' after Pochhammer at position {self.pos}")
                self.pos += 1
                return self.field.qpoch(value, self._int(), base)
            if self._peek() != ")":
                raise ScalarParseError(f"missing ')' at position {self.pos}")
            self.pos += 1
            return value
        if ch.isdigit():
            return self.field.int(self._int())
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name == "q":
                return self.field.q
            if name == "t":
                return self.field.t
            if name == "gamma":
                return self.field.gamma
            try:
                return self.field.sym(name)
            except KeyError:
                raise ScalarParseError(f"unknown symbol {name!r}") from None
        raise ScalarParseError(f"unexpected character {ch!r} at position {self.pos}")
