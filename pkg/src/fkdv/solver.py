"""Rational branch solver for the extracted polynomial systems.

The solver explores a case tree over exact rational assignments.  At each
node it substitutes what is known, drops vanished equations, and flags any
surviving nonzero constant as a contradiction.  Otherwise it applies the
first available move:

1. branch on the rational roots of the best univariate equation
   (lowest degree, then fewest terms, then symbol order);
2. eliminate a symbol that occurs linearly with a constant coefficient,
   recording the dependency and resolving it to a rational once the
   remaining symbols are pinned;
3. split on a common monomial factor: each variable in the factor to zero,
   plus the cofactor branch.

Every discarded case surfaces as a contradiction or stuck leaf; nothing is
dropped silently.  Output order is canonical regardless of exploration
order, and every solved branch is re-verified against the original system
before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InternalInvariantError, UnboundSymbolError
from .poly import MPoly, rational_roots
from .symbols import Sym

SOLVED = "solved"
FREE = "solved_with_free_symbols"
CONTRADICTION = "contradiction"
STUCK = "stuck"


class Assignment:
    """Immutable map from symbols to exact rationals."""

    __slots__ = ("_map",)

    def __init__(self, bindings: Mapping[Sym, Fraction | int] | None = None):
        m: dict[Sym, Fraction] = {}
        if bindings:
            for s, v in bindings.items():
                if s in m:
                    raise ValueError(f"{s} bound twice")
                m[s] = Fraction(v)
        self._map = m

    def bind(self, s: Sym, v: Fraction | int) -> "Assignment":
        if s in self._map:
            raise ValueError(f"{s} bound twice")
        out = Assignment()
        out._map = dict(self._map)
        out._map[s] = Fraction(v)
        return out

    def merged(self, other: "Assignment") -> "Assignment":
        out = Assignment()
        out._map = dict(self._map)
        for s, v in other._map.items():
            if s in out._map:
                raise ValueError(f"{s} bound twice")
            out._map[s] = v
        return out

    def __contains__(self, s: Sym) -> bool:
        return s in self._map

    def __getitem__(self, s: Sym) -> Fraction:
        return self._map[s]

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Assignment) and self._map == other._map

    def items(self) -> list[tuple[Sym, Fraction]]:
        return sorted(self._map.items(), key=lambda sv: sv[0].key)

    def as_dict(self) -> dict[Sym, Fraction]:
        return dict(self._map)

    def __repr__(self) -> str:
        body = ", ".join(f"{s}={v}" for s, v in self.items())
        return f"Assignment({body})"


@dataclass(frozen=True)
class Branch:
    """One leaf of the case tree."""

    assignment: Assignment
    remaining: tuple[MPoly, ...]
    status: str
    free_symbols: tuple[Sym, ...] = ()
    witness: MPoly | None = None

    def sort_key(self):
        rank = (SOLVED, FREE, CONTRADICTION, STUCK).index(self.status)
        binds = tuple((s.name, str(v)) for s, v in self.assignment.items())
        wit = self.witness.ascii() if self.witness is not None else ""
        rem = tuple(p.ascii() for p in self.remaining)
        return (rank, binds, wit, rem)


@dataclass(frozen=True)
class SolveConfig:
    unknowns: tuple[Sym, ...]
    presets: Assignment = field(default_factory=Assignment)
    branch_budget: int = 10000

    def __post_init__(self):
        object.__setattr__(self, "unknowns", tuple(self.unknowns))
        overlap = [s for s in self.unknowns if s in self.presets]
        if overlap:
            raise ValueError(f"presets and unknowns overlap: {overlap}")
        if self.branch_budget < 1:
            raise ValueError("branch budget must be positive")


def verify_assignment(
    system: Sequence[MPoly], asg: Assignment | Mapping[Sym, Fraction | int]
) -> tuple[bool, MPoly | None]:
    """True iff every polynomial vanishes exactly under the assignment.

    The assignment must bind every symbol of the system; the first failing
    polynomial is returned as the witness on False.
    """
    point = asg.as_dict() if isinstance(asg, Assignment) else dict(asg)
    for p in system:
        for s in sorted(p.symbols(), key=lambda t: t.key):
            if s not in point:
                raise UnboundSymbolError(s)
    for p in system:
        if p.eval_rat(point) != 0:
            return False, p
    return True, None


def rational_lambda_grid(depth: int) -> list[Fraction]:
    """Wave speeds -6*m^4 for m = 1..depth, where sqrt(-lam/6) = m^2 and its
    square root m are both rational."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return [Fraction(-6) * m**4 for m in range(1, depth + 1)]


class _Node:
    __slots__ = ("bindings", "elims", "polys")

    def __init__(self, bindings, elims, polys):
        self.bindings: dict[Sym, Fraction] = bindings
        self.elims: list[tuple[Sym, MPoly]] = elims  # x -> expr, insertion order
        self.polys: list[MPoly] = polys


def _poly_key(p: MPoly):
    return (p.degree(), len(p.terms), p.ascii())


def solve(system: Sequence[MPoly], cfg: SolveConfig) -> list[Branch]:
    """Explore the case tree; returns canonically sorted leaves."""
    system = list(system)
    if not system:
        raise ValueError("empty system")
    allowed = set(cfg.unknowns) | set(cfg.presets.as_dict())
    outside = sorted(
        {s for p in system for s in p.symbols()} - allowed, key=lambda s: s.key
    )
    if outside:
        raise ValueError(f"system symbols outside unknowns and presets: {outside}")

    preset_map = cfg.presets.as_dict()
    start = [p.substitute(preset_map) for p in system]
    budget = [cfg.branch_budget]
    leaves: list[Branch] = []

    def finish(node: _Node, status: str, witness: MPoly | None = None) -> None:
        # resolve recorded eliminations that have become constant
        resolved = dict(node.bindings)
        pending: list[tuple[Sym, MPoly]] = []
        for x, expr in reversed(node.elims):
            expr = expr.substitute(resolved)
            if expr.is_constant():
                resolved[x] = expr.constant_value()
            else:
                pending.append((x, expr))
        remaining = list(node.polys)
        if status in (SOLVED, FREE):
            free = tuple(
                s for s in cfg.unknowns if s not in resolved
            )
            if status == SOLVED and (free or pending):
                status = FREE
            for x, expr in pending:
                remaining.append(MPoly.var(x) - expr)
            if status == SOLVED:
                ok, bad = verify_assignment(
                    system, Assignment(resolved).merged(cfg.presets)
                )
                if not ok:
                    raise InternalInvariantError(
                        f"solved branch fails re-verification on {bad}"
                    )
        else:
            free = ()
        leaves.append(
            Branch(
                assignment=Assignment(resolved),
                remaining=tuple(remaining),
                status=status,
                free_symbols=free,
                witness=witness,
            )
        )

    def substituted(node: _Node, s: Sym, v: Fraction) -> _Node:
        bind = {s: v}
        return _Node(
            {**node.bindings, s: v},
            [(x, expr.substitute(bind)) for x, expr in node.elims],
            [p.substitute(bind) for p in node.polys],
        )

    def explore(node: _Node) -> None:
        budget[0] -= 1
        polys: list[MPoly] = []
        for p in node.polys:
            if p.is_zero():
                continue
            if p.is_constant():
                node.polys = [q for q in node.polys if not q.is_zero()]
                finish(node, CONTRADICTION, witness=p)
                return
            polys.append(p.normalize())
        # deterministic working order, and deduplicate repeated equations
        polys = sorted(set(polys), key=_poly_key)
        node.polys = polys

        if not polys:
            finish(node, SOLVED)
            return
        if budget[0] <= 0:
            finish(node, STUCK, witness=polys[0])
            return

        unbound = [s for s in cfg.unknowns if s not in node.bindings]
        live = set(unbound) - {x for x, _ in node.elims}

        # move 1: univariate root branching
        univariate = [
            p for p in polys if len(syms := p.symbols()) == 1 and next(iter(syms)) in live
        ]
        if univariate:
            p = min(
                univariate,
                key=lambda q: (q.degree(), len(q.terms), next(iter(q.symbols())).key),
            )
            x = next(iter(p.symbols()))
            roots = rational_roots(p.as_univariate(x))
            if not roots:
                finish(node, STUCK, witness=p)
                return
            for root in sorted(roots):
                explore(substituted(node, x, root))
            return

        # move 2: linear elimination with a constant coefficient
        best = None
        for p in polys:
            for x in sorted(p.symbols(), key=lambda s: s.key):
                if x not in live or p.max_exponent(x) != 1:
                    continue
                c = p.coefficient_of(x, 1)
                if not c.is_constant():
                    continue
                key = (len(p.terms), p.degree(), x.key, p.ascii())
                if best is None or key < best[0]:
                    best = (key, p, x, c.constant_value())
        if best is not None:
            _, p, x, c = best
            expr = p.coefficient_of(x, 0) * Fraction(-1, 1) * (1 / c)
            bind = {x: expr}
            node.elims = [(y, q.substitute(bind)) for y, q in node.elims]
            node.elims.append((x, expr))
            node.polys = [q.substitute(bind) for q in polys]
            explore(node)
            return

        # move 3: common monomial case split
        candidates = [p for p in polys if not p.monomial_gcd().is_unit()]
        if candidates:
            p = min(candidates, key=_poly_key)
            g = p.monomial_gcd()
            rest = [q for q in polys if q is not p]
            for s in sorted(g.symbols(), key=lambda t: t.key):
                explore(substituted(_Node(node.bindings, node.elims, rest + [p]), s, Fraction(0)))
            explore(_Node(node.bindings, list(node.elims), rest + [p.divide_mono(g)]))
            return

        finish(node, STUCK, witness=polys[0])

    explore(_Node({}, [], start))
    leaves.sort(key=Branch.sort_key)
    return leaves
