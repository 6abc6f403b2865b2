"""Fifth-order KdV coefficient family and the traveling-wave ODE combination.

The family is u_t + omega*u_xxxxx + alpha*u^2*u_x + beta*u_x*u_xx
+ gamma*u*u_xxx = 0; the Ito equation is the member (2, 6, 3, 1).  Under
u(x,t) = v(xi), xi = x + lam*t, the PDE becomes the ODE

    lam*v' + alpha*v^2*v' + beta*v'*v'' + gamma*v*v''' + omega*v''''' = 0

which is what both ansatz modules expand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import MPoly
from .symbols import LAM


@dataclass(frozen=True)
class EquationSpec:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    omega: Fraction
    lam: Fraction | None = None  # None keeps the wave speed symbolic

    def __post_init__(self):
        for field in ("alpha", "beta", "gamma", "omega"):
            v = getattr(self, field)
            if isinstance(v, int):
                object.__setattr__(self, field, Fraction(v))
            elif not isinstance(v, Fraction):
                raise TypeError(f"{field} must be rational")
        if self.lam is not None and isinstance(self.lam, int):
            object.__setattr__(self, "lam", Fraction(self.lam))
        if self.omega == 0:
            raise ValueError("omega must be nonzero: the family is fifth order")

    def lam_poly(self) -> MPoly:
        return MPoly.var(LAM) if self.lam is None else MPoly.const(self.lam)


def ito(lam: Fraction | None = None) -> EquationSpec:
    return EquationSpec(Fraction(2), Fraction(6), Fraction(3), Fraction(1), lam)


def ode_terms(spec: EquationSpec, v):
    """The five named terms of the traveling-wave ODE at the ansatz ``v``.

    ``v`` may be any closed differential algebra value (PhiPoly, STPoly):
    it needs diff(), scale(), + and *.
    """
    v1 = v.diff()
    v2 = v1.diff()
    v3 = v2.diff()
    v5 = v3.diff().diff()
    return [
        ("lam*v'", v1.scale(spec.lam_poly())),
        ("alpha*v^2*v'", (v * v * v1).scale(spec.alpha)),
        ("beta*v'*v''", (v1 * v2).scale(spec.beta)),
        ("gamma*v*v'''", (v * v3).scale(spec.gamma)),
        ("omega*v'''''", v5.scale(spec.omega)),
    ]


def ode_residual(spec: EquationSpec, v):
    terms = ode_terms(spec, v)
    total = terms[0][1]
    for _, t in terms[1:]:
        total = total + t
    return total


@dataclass(frozen=True)
class SystemEq:
    """One extracted coefficient equation, tagged with its origin."""

    power: int
    poly: MPoly
    tau_degree: int | None = None
    r_power: int | None = None
