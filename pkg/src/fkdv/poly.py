"""Sparse exact multivariate polynomials over big rationals.

Coefficients are :class:`fractions.Fraction` (aliased ``Rat``), which already
carries the invariants we need: positive denominator, lowest terms, zero as
0/1.  Monomials map symbols to positive exponents; polynomials map monomials
to nonzero coefficients, so equal values always have equal term maps.

The canonical term order is graded lexicographic with the fixed symbol order
from :mod:`fkdv.symbols`: higher total degree first, ties broken by the
exponent of the earliest symbol.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Optional, Union

from .symbols import Sym

Rat = Fraction

Coeffable = Union["MPoly", Fraction, int]


class Mono:
    """A product of symbols with positive integer exponents; unit is empty."""

    __slots__ = ("exps", "degree", "_hash")

    def __init__(self, exps: Mapping[Sym, int] | Iterable[tuple[Sym, int]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        cleaned = [(s, e) for s, e in items if e != 0]
        for s, e in cleaned:
            if e < 0:
                raise ValueError(f"negative exponent on {s}")
        cleaned.sort(key=lambda se: se[0].key)
        self.exps = tuple(cleaned)
        self.degree = sum(e for _, e in cleaned)
        self._hash = hash(self.exps)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Mono) and self.exps == other.exps

    def __mul__(self, other: "Mono") -> "Mono":
        merged = dict(self.exps)
        for s, e in other.exps:
            merged[s] = merged.get(s, 0) + e
        return Mono(merged)

    def __pow__(self, n: int) -> "Mono":
        if n < 0:
            raise ValueError("negative power")
        return Mono([(s, e * n) for s, e in self.exps])

    def exponent(self, s: Sym) -> int:
        for t, e in self.exps:
            if t is s:
                return e
        return 0

    def symbols(self) -> set[Sym]:
        return {s for s, _ in self.exps}

    def is_unit(self) -> bool:
        return not self.exps

    def _cmp(self, other: "Mono") -> int:
        if self.degree != other.degree:
            return -1 if self.degree < other.degree else 1
        i = j = 0
        a, b = self.exps, other.exps
        while i < len(a) and j < len(b):
            sa, ea = a[i]
            sb, eb = b[j]
            if sa is sb:
                if ea != eb:
                    return 1 if ea > eb else -1
                i += 1
                j += 1
            elif sa < sb:
                return 1  # earlier symbol with positive exponent wins
            else:
                return -1
        if i < len(a):
            return 1
        if j < len(b):
            return -1
        return 0

    def __lt__(self, other: "Mono") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "Mono") -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: "Mono") -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: "Mono") -> bool:
        return self._cmp(other) >= 0

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(s.name if e == 1 else f"{s.name}^{e}" for s, e in self.exps)

    __repr__ = __str__


_UNIT = Mono()


def _as_rat(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected rational, got {type(v).__name__}")


class MPoly:
    """Immutable sparse polynomial; do not mutate ``terms`` after creation."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Mono, Fraction] | None = None):
        self.terms: dict[Mono, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = _as_rat(c)
                if c != 0:
                    self.terms[m] = c
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Mono, Fraction]) -> "MPoly":
        # internal: takes ownership, trusts no zero coefficients
        self = object.__new__(cls)
        self.terms = terms
        self._hash = None
        return self

    @classmethod
    def zero(cls) -> "MPoly":
        return cls._raw({})

    @classmethod
    def const(cls, c) -> "MPoly":
        c = _as_rat(c)
        return cls._raw({} if c == 0 else {_UNIT: c})

    @classmethod
    def var(cls, s: Sym) -> "MPoly":
        return cls._raw({Mono([(s, 1)]): Fraction(1)})

    @classmethod
    def monomial(cls, m: Mono, c=1) -> "MPoly":
        c = _as_rat(c)
        return cls._raw({} if c == 0 else {m: c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: Coeffable) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Coeffable) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: Coeffable) -> "MPoly":
        return (-self) + other

    def __mul__(self, other: Coeffable) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            other = _as_rat(other)
            if other == 0:
                return MPoly.zero()
            return MPoly._raw({m: c * other for m, c in self.terms.items()})
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = out.get(m, 0) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return MPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m.degree for m in self.terms), default=-1)

    def symbols(self) -> set[Sym]:
        out: set[Sym] = set()
        for m in self.terms:
            out |= m.symbols()
        return out

    def leading(self) -> tuple[Mono, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms)
        return m, self.terms[m]

    def sorted_terms(self) -> list[tuple[Mono, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: mc[0], reverse=True)

    def is_constant(self) -> bool:
        return all(m.is_unit() for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms[_UNIT]

    def coefficient_of(self, s: Sym, power: int) -> "MPoly":
        """Polynomial coefficient of s**power (s removed from the monomials)."""
        out: dict[Mono, Fraction] = {}
        for m, c in self.terms.items():
            if m.exponent(s) == power:
                rest = Mono([(t, e) for t, e in m.exps if t is not s])
                out[rest] = out.get(rest, 0) + c
        return MPoly(out)

    def max_exponent(self, s: Sym) -> int:
        return max((m.exponent(s) for m in self.terms), default=0)

    def content(self) -> Fraction:
        """Positive gcd of the coefficients; 0 for the zero polynomial."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def normalize(self) -> "MPoly":
        """Divide by the positive content and make the leading coefficient
        positive.  Idempotent; preserves the zero set exactly."""
        if not self.terms:
            return self
        d = self.content()
        if self.leading()[1] < 0:
            d = -d
        if d == 1:
            return self
        return MPoly._raw({m: c / d for m, c in self.terms.items()})

    def substitute(self, bind: Mapping[Sym, Coeffable]) -> "MPoly":
        """Homomorphic substitution; unbound symbols remain."""
        out = MPoly.zero()
        for m, c in self.terms.items():
            residual: list[tuple[Sym, int]] = []
            scalar = c
            factors: list[MPoly] = []
            for s, e in m.exps:
                if s in bind:
                    v = bind[s]
                    if isinstance(v, (int, Fraction)):
                        scalar = scalar * _as_rat(v) ** e
                    else:
                        factors.append(v**e)
                else:
                    residual.append((s, e))
            term = MPoly.monomial(Mono(residual), scalar)
            for f in factors:
                term = term * f
            out = out + term
        return out

    def eval_rat(self, point: Mapping[Sym, Coeffable]) -> Fraction:
        """Exact evaluation; every symbol must be bound to a rational."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for s, e in m.exps:
                if s not in point:
                    raise KeyError(f"unbound symbol {s}")
                v *= _as_rat(point[s]) ** e
            total += v
        return total

    def as_univariate(self, x: Sym) -> Optional[list[Fraction]]:
        """Dense coefficient list in ``x`` (ascending), or None if any other
        symbol occurs.  Constants give a single-entry list."""
        coeffs: dict[int, Fraction] = {}
        for m, c in self.terms.items():
            e = m.exponent(x)
            if any(s is not x for s, _ in m.exps):
                return None
            coeffs[e] = coeffs.get(e, 0) + c
        n = max(coeffs, default=0)
        return [coeffs.get(i, Fraction(0)) for i in range(n + 1)]

    def monomial_gcd(self) -> Mono:
        """Componentwise-minimum monomial dividing every term."""
        if not self.terms:
            return _UNIT
        common: dict[Sym, int] | None = None
        for m in self.terms:
            exps = dict(m.exps)
            if common is None:
                common = exps
            else:
                common = {s: min(e, exps[s]) for s, e in common.items() if s in exps}
            if not common:
                return _UNIT
        return Mono(common or {})

    def divide_mono(self, g: Mono) -> "MPoly":
        """Exact division by a monomial dividing every term."""
        out: dict[Mono, Fraction] = {}
        shift = dict(g.exps)
        for m, c in self.terms.items():
            exps = dict(m.exps)
            for s, e in shift.items():
                if exps.get(s, 0) < e:
                    raise ValueError(f"{g} does not divide {m}")
                exps[s] -= e
            out[Mono(exps)] = c
        return MPoly._raw(out)

    def ascii(self) -> str:
        """Canonical ASCII form: graded-lex descending, ``^`` powers,
        ``*`` products.  Bit-stable for equal polynomials."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            mag = -c if neg else c
            if m.is_unit():
                body = str(mag)
            elif mag == 1:
                body = str(m)
            else:
                body = f"{mag}*{m}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    __str__ = ascii

    def __repr__(self) -> str:
        return f"MPoly({self.ascii()})"

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            mag = -c if neg else c
            if mag.denominator == 1:
                coef = str(mag.numerator)
            else:
                coef = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            mono = " ".join(
                s.latex() if e == 1 else f"{s.latex()}^{{{e}}}" for s, e in m.exps
            )
            if m.is_unit():
                body = coef
            elif mag == 1:
                body = mono
            else:
                body = f"{coef} {mono}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)


def arith(p: MPoly, q: MPoly, op: str) -> MPoly:
    """Exact ring operation, ``op`` one of add/sub/mul."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(coeffs: Iterable[Fraction | int]) -> set[Fraction]:
    """All rational roots of the dense coefficient list (ascending powers).

    Uses rational-root candidates on the primitive integer form, deflating by
    synthetic division after each hit so repeated and nested roots are found.
    Multiplicities are not reported.  Rejects the identically zero list: the
    caller must treat that case as a branch, not a root-finding problem.
    """
    cs = [_as_rat(c) for c in coeffs]
    if all(c == 0 for c in cs):
        raise ValueError("identically zero polynomial has every value as a root")
    while cs and cs[-1] == 0:
        cs.pop()
    roots: set[Fraction] = set()
    while len(cs) > 1 and cs[0] == 0:
        roots.add(Fraction(0))
        cs.pop(0)
    den = lcm(*[c.denominator for c in cs]) if cs else 1
    ints = [int(c * den) for c in cs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    while len(ints) > 1:
        a0, an = ints[0], ints[-1]
        hit = None
        for p in _divisors(a0):
            for q in _divisors(an):
                if gcd(p, q) != 1:
                    continue
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    acc = Fraction(0)
                    for c in reversed(ints):
                        acc = acc * cand + c
                    if acc == 0:
                        hit = cand
                        break
                if hit is not None:
                    break
            if hit is not None:
                break
        if hit is None:
            break
        roots.add(hit)
        # synthetic division by (x - hit), then back to primitive integers
        quot: list[Fraction] = [Fraction(0)] * (len(ints) - 1)
        carry = Fraction(0)
        for i in range(len(ints) - 1, 0, -1):
            carry = carry * hit + ints[i]
            quot[i - 1] = carry
        den = lcm(*[c.denominator for c in quot])
        ints = [int(c * den) for c in quot]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
    return roots


class _Parser:
    """Recursive-descent parser for the canonical ASCII polynomial form."""

    def __init__(self, text: str):
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[str]:
        out: list[str] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "+-*^()/":
                out.append(ch)
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                out.append(text[i:j])
                i = j
            elif ch.isalpha():
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                out.append(text[i:j])
                i = j
            else:
                raise ValueError(f"bad character {ch!r} in polynomial text")
        return out

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of polynomial text")
        self.pos += 1
        return tok

    def parse(self) -> MPoly:
        p = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing tokens at {self.peek()!r}")
        return p

    def expr(self) -> MPoly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        p = self.term() * sign
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.take() == "-":
                    sign = -sign
            p = p + self.term() * sign
        return p

    def term(self) -> MPoly:
        p = self.factor()
        while self.peek() == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> MPoly:
        p = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ValueError(f"expected integer exponent, got {tok!r}")
            p = p ** int(tok)
        return p

    def atom(self) -> MPoly:
        tok = self.take()
        if tok == "(":
            p = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parenthesis")
            return p
        if tok == "-":
            return -self.atom()
        if tok.isdigit():
            num = int(tok)
            if self.peek() == "/":
                self.take()
                den = self.take()
                if not den.isdigit():
                    raise ValueError(f"expected integer denominator, got {den!r}")
                return MPoly.const(Fraction(num, int(den)))
            return MPoly.const(num)
        return MPoly.var(Sym(tok))


def parse_poly(text: str) -> MPoly:
    """Parse the ASCII polynomial grammar (integers, rationals ``n/d``,
    symbols, ``+ - * ^`` and parentheses)."""
    return _Parser(text).parse()


def parse_rat(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rat(x: Fraction) -> str:
    return str(x)
