"""The tanh method: ansatz in an auxiliary function phi with phi' = k + phi^2.

A PhiPoly is a polynomial in phi whose coefficients are exact multivariate
polynomials in the parameter symbols.  Differentiation w.r.t. the wave
variable uses the rewrite d(phi^n) = n*k*phi^(n-1) + n*phi^(n+1), so the
algebra is closed and the ODE residual stays a PhiPoly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .equation import EquationSpec, SystemEq
from .equation import ode_residual as _shared_residual
from .errors import BalanceError, PoleError
from .poly import Coeffable, MPoly
from .symbols import K, Sym, a


@dataclass(frozen=True)
class BalanceTerm:
    """Order bookkeeping for one ODE term, linear in the ansatz degree M."""

    slope: int
    intercept: int
    label: str

    @classmethod
    def derivative(cls, p: int) -> "BalanceTerm":
        # order of v^(p) is M + p
        if p < 0:
            raise ValueError("derivative order must be >= 0")
        return cls(1, p, f"v^({p})")

    @classmethod
    def product(cls, p: int, q: int) -> "BalanceTerm":
        # order of v^(p) * v^(q) is 2M + p + q
        if p < 0 or q < 0:
            raise ValueError("derivative orders must be >= 0")
        return cls(2, p + q, f"v^({p})*v^({q})")

    @classmethod
    def power_derivative(cls, p: int, q: int) -> "BalanceTerm":
        # order of v^p * v^(q) is (p+1)M + q
        if p < 0 or q < 0:
            raise ValueError("orders must be >= 0")
        return cls(p + 1, q, f"v^{p}*v^({q})")

    def order_at(self, m: int) -> int:
        return self.slope * m + self.intercept

    def order_str(self) -> str:
        if self.slope == 0:
            return str(self.intercept)
        head = "M" if self.slope == 1 else f"{self.slope}M"
        if self.intercept == 0:
            return head
        return f"{head}+{self.intercept}"


def balance_M(terms: Sequence[BalanceTerm]) -> int:
    """Smallest positive integer M at which the two dominant orders agree.

    Every pair with distinct order expressions is considered; a candidate M
    is kept only when the balanced value is maximal among all terms at that
    M.  Raises BalanceError, naming the dominant orders, when no pair gives
    a positive integer.
    """
    exprs = sorted({(t.slope, t.intercept) for t in terms}, reverse=True)
    if len(exprs) < 2:
        raise BalanceError("need at least two distinct order expressions")
    candidates: list[int] = []
    for i in range(len(exprs)):
        for j in range(i + 1, len(exprs)):
            (s1, i1), (s2, i2) = exprs[i], exprs[j]
            if s1 == s2:
                continue
            num, den = i2 - i1, s1 - s2
            if num % den != 0:
                continue
            m = num // den
            if m < 1:
                continue
            top = s1 * m + i1
            if all(s * m + c <= top for s, c in exprs):
                candidates.append(m)
    if not candidates:
        (s1, i1), (s2, i2) = exprs[0], exprs[1]
        o1 = BalanceTerm(s1, i1, "").order_str()
        o2 = BalanceTerm(s2, i2, "").order_str()
        raise BalanceError(
            f"balancing {o1} against {o2} gives no positive integer order"
        )
    return min(candidates)


class PhiPoly:
    """Polynomial in the auxiliary function; coeffs[j] multiplies phi^j."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Coeffable] = ()):
        cs = [c if isinstance(c, MPoly) else MPoly.const(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[MPoly, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "PhiPoly":
        return cls()

    @classmethod
    def const(cls, c: Coeffable) -> "PhiPoly":
        return cls([c])

    @classmethod
    def phi(cls, power: int = 1) -> "PhiPoly":
        return cls([MPoly.zero()] * power + [MPoly.const(1)])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> MPoly:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else MPoly.zero()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PhiPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "PhiPoly") -> "PhiPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return PhiPoly([self.coeff(j) + other.coeff(j) for j in range(n)])

    def __sub__(self, other: "PhiPoly") -> "PhiPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return PhiPoly([self.coeff(j) - other.coeff(j) for j in range(n)])

    def __mul__(self, other: "PhiPoly") -> "PhiPoly":
        if not self.coeffs or not other.coeffs:
            return PhiPoly()
        out = [MPoly.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci.is_zero():
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] = out[i + j] + ci * cj
        return PhiPoly(out)

    def scale(self, c: Coeffable) -> "PhiPoly":
        return PhiPoly([ci * c for ci in self.coeffs])

    def diff(self) -> "PhiPoly":
        """d/dxi under the rewrite d(phi^n) = n*k*phi^(n-1) + n*phi^(n+1)."""
        k = MPoly.var(K)
        out = [MPoly.zero()] * (len(self.coeffs) + 1)
        for n, c in enumerate(self.coeffs):
            if n == 0 or c.is_zero():
                continue
            out[n - 1] = out[n - 1] + c * k * n
            out[n + 1] = out[n + 1] + c * n
        return PhiPoly(out)

    def substitute(self, bind: Mapping[Sym, Coeffable]) -> "PhiPoly":
        return PhiPoly([c.substitute(bind) for c in self.coeffs])

    def eval_numeric(self, phi_value: float, point: Mapping[Sym, Fraction]) -> float:
        total = 0.0
        for j, c in enumerate(self.coeffs):
            total += float(c.eval_rat(point)) * phi_value**j
        return total

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            head = f"({c})" if len(c.terms) > 1 else str(c)
            parts.append(head if j == 0 else f"{head}*phi^{j}")
        return " + ".join(parts) or "0"

    __repr__ = __str__


def phi_diff(p: PhiPoly) -> PhiPoly:
    return p.diff()


def build_ansatz(m: int) -> PhiPoly:
    """a0 + a1*phi + ... + aM*phi^M with fresh coefficient symbols."""
    if m < 1:
        raise ValueError("ansatz order must be >= 1")
    return PhiPoly([MPoly.var(a(j)) for j in range(m + 1)])


def ode_residual(spec: EquationSpec, v: PhiPoly) -> PhiPoly:
    return _shared_residual(spec, v)


def extract_system(residual: PhiPoly) -> list[SystemEq]:
    """Nonzero coefficient polynomials, normalized, ascending phi power."""
    return [
        SystemEq(power=j, poly=c.normalize())
        for j, c in enumerate(residual.coeffs)
        if not c.is_zero()
    ]


def balance_terms_for(spec: EquationSpec) -> list[BalanceTerm]:
    """Balance bookkeeping for the ODE terms present in ``spec``."""
    terms = [BalanceTerm.derivative(1), BalanceTerm.derivative(5)]
    if spec.alpha != 0:
        terms.append(BalanceTerm.power_derivative(2, 1))
    if spec.beta != 0:
        terms.append(BalanceTerm.product(1, 2))
    if spec.gamma != 0:
        terms.append(BalanceTerm.power_derivative(1, 3))
    return terms


@dataclass(frozen=True)
class PhiForm:
    """One closed-form solution of phi' = k + phi^2."""

    name: str
    k_sign: int  # +1, -1 or 0

    def value(self, k: float, xi: float) -> float:
        if self.k_sign > 0:
            if k <= 0:
                raise ValueError(f"{self.name} form needs k > 0")
            s = math.sqrt(k)
            if self.name == "tan":
                v = s * math.tan(s * xi)
            else:
                v = -s / math.tan(s * xi) if math.tan(s * xi) != 0 else math.inf
        elif self.k_sign < 0:
            if k >= 0:
                raise ValueError(f"{self.name} form needs k < 0")
            s = math.sqrt(-k)
            if self.name == "tanh":
                v = -s * math.tanh(s * xi)
            else:
                v = -s / math.tanh(s * xi) if math.tanh(s * xi) != 0 else math.inf
        else:
            if k != 0:
                raise ValueError("reciprocal form needs k = 0")
            if xi == 0:
                raise PoleError("pole at xi = 0")
            v = -1.0 / xi
        if not math.isfinite(v) or abs(v) > 1e6:
            raise PoleError(f"{self.name} form near a pole at xi = {xi}")
        return v


PHI_CATALOG = (
    PhiForm("tan", 1),
    PhiForm("cot", 1),
    PhiForm("tanh", -1),
    PhiForm("coth", -1),
    PhiForm("reciprocal", 0),
)


def phi_defect(form: PhiForm, k: float, xi: float, h: float = 1e-3) -> float:
    """Relative defect of phi' = k + phi^2 at xi, derivative from a
    fourth-order central stencil."""
    vals = [form.value(k, xi + s * h) for s in (-2, -1, 1, 2)]
    dphi = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * h)
    rhs = k + form.value(k, xi) ** 2
    return abs(dphi - rhs) / max(1.0, abs(dphi), abs(rhs))
