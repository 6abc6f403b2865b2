import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fkdv.poly import MPoly, Mono, arith, parse_poly, rational_roots
from fkdv.symbols import Sym, a, b


A0, A1, A2 = a(0), a(1), a(2)
K = Sym("k")


def P(text):
    return parse_poly(text)


# ---------------------------------------------------------------- symbols


def test_symbols_interned_and_ordered():
    assert Sym("a2") is Sym("a2")
    order = [a(0), a(1), a(5), b(1), b(3), Sym("k"), Sym("lam"), Sym("mu"),
             Sym("r"), Sym("e"), Sym("rho"), Sym("alpha"), Sym("omega")]
    assert order == sorted(order, key=lambda s: s.key)


@pytest.mark.parametrize("bad", ["c1", "b0", "a-1", "lambda", "a01", "x"])
def test_symbols_closed_alphabet(bad):
    with pytest.raises(ValueError):
        Sym(bad)


# ---------------------------------------------------------------- arithmetic


def test_difference_of_squares():
    assert arith(P("a1+1"), P("a1-1"), "mul") == P("a1^2-1")


def test_additive_identity():
    p = P("3*a1*k - 7/2")
    assert arith(p, MPoly.zero(), "add") == p


def test_monomial_product():
    assert arith(P("2*a2"), P("3*k"), "mul") == P("6*a2*k")


def test_leading_term_graded_lex():
    m, c = P("4*a2^3+144*a2^2+720*a2").leading()
    assert c == 4 and m == next(iter(P("a2^3").terms))
    # at equal degree the earlier symbol dominates
    m, _ = P("a0*k + a1^2").leading()
    assert m == next(iter(P("a0*k").terms))


# ---------------------------------------------------------------- normalize


def test_normalize_paper_equation():
    assert P("4*a2^3+144*a2^2+720*a2").normalize() == P("a2^3+36*a2^2+180*a2")


def test_normalize_zero():
    assert MPoly.zero().normalize() == MPoly.zero()


def test_normalize_sign_flip():
    assert P("-3*a1").normalize() == P("a1")


def test_normalize_idempotent_random():
    rng = random.Random(5)
    for _ in range(50):
        p = _random_poly(rng)
        n = p.normalize()
        assert n.normalize() == n


def test_normalize_preserves_zero_set():
    rng = random.Random(6)
    for _ in range(50):
        p = _random_poly(rng)
        point = {s: F(rng.randint(-4, 4), rng.randint(1, 3)) for s in p.symbols()}
        assert (p.eval_rat(point) == 0) == (p.normalize().eval_rat(point) == 0)


# ---------------------------------------------------------------- substitute


def test_substitute_root_annihilates():
    p = P("4*a2^3+144*a2^2+720*a2")
    assert p.substitute({A2: F(-30)}).is_zero()
    assert p.substitute({A2: 0}).is_zero()


def test_substitute_exact_value():
    assert P("4*a2^3+144*a2^2+720*a2").substitute({A2: 1}) == MPoly.const(868)


def test_substitute_with_polynomial_value():
    p = P("a1^2 - k")
    q = p.substitute({A1: P("k+1")})
    assert q == P("k^2 + k + 1")


# ---------------------------------------------------------------- univariate


def test_as_univariate_dense_list():
    assert P("4*a2^3+144*a2^2+720*a2").as_univariate(A2) == [0, 720, 144, 4]


def test_as_univariate_second_symbol_absent():
    assert P("a1*a2").as_univariate(A2) is None


def test_as_univariate_constant():
    assert P("7").as_univariate(K) == [7]


# ---------------------------------------------------------------- roots


def test_rational_roots_paper_cubic():
    # oracle: 4*a2*(a2+6)*(a2+30) expands to the coefficient list
    assert P("4*a2*(a2+6)*(a2+30)") == P("4*a2^3+144*a2^2+720*a2")
    assert rational_roots([0, 720, 144, 4]) == {F(0), F(-6), F(-30)}


def test_rational_roots_none():
    assert rational_roots([1, 0, 1]) == set()


def test_rational_roots_half():
    assert rational_roots([-1, 2]) == {F(1, 2)}


def test_rational_roots_rejects_zero_polynomial():
    with pytest.raises(ValueError):
        rational_roots([0, 0, 0])


def test_rational_roots_vs_brute_force_grid():
    # any rational root p/q of a primitive integer polynomial has p | c0 and
    # q | cn, so coefficients in [-20, 20] keep all roots inside the grid
    rng = random.Random(11)
    for _ in range(60):
        deg = rng.randint(1, 4)
        coeffs = [rng.randint(-20, 20) for _ in range(deg)] + [rng.choice([1, -1]) * rng.randint(1, 20)]
        if all(c == 0 for c in coeffs):
            continue
        brute = set()
        n = len(coeffs) - 1
        for num in range(-200, 201):
            for den in range(1, 21):
                # homogenized integer evaluation of p(num/den)
                if sum(c * num**i * den ** (n - i) for i, c in enumerate(coeffs)) == 0:
                    brute.add(F(num, den))
        assert rational_roots(coeffs) == brute


# ---------------------------------------------------------------- properties

_SYMS = [a(0), a(1), a(2), b(1), Sym("k"), Sym("mu")]


def _random_poly(rng: random.Random) -> MPoly:
    terms = {}
    for _ in range(rng.randint(0, 4)):
        mono = Mono({s: rng.randint(1, 3) for s in rng.sample(_SYMS, rng.randint(0, 2))})
        terms[mono] = terms.get(mono, 0) + F(rng.randint(-9, 9), rng.randint(1, 4))
    return MPoly(terms)


@st.composite
def polys(draw):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        syms = draw(st.lists(st.sampled_from(_SYMS), max_size=2, unique=True))
        mono = Mono({s: draw(st.integers(1, 3)) for s in syms})
        num = draw(st.integers(-9, 9))
        den = draw(st.integers(1, 4))
        terms[mono] = terms.get(mono, 0) + F(num, den)
    return MPoly(terms)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@st.composite
def bindings(draw):
    out = {}
    for s in draw(st.lists(st.sampled_from(_SYMS), max_size=3, unique=True)):
        if draw(st.booleans()):
            out[s] = F(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
        else:
            out[s] = draw(polys())
    return out


@settings(max_examples=200, deadline=None, derandomize=True)
@given(polys(), polys(), bindings())
def test_substitution_is_a_homomorphism(p, q, bind):
    assert (p * q).substitute(bind) == p.substitute(bind) * q.substitute(bind)
    assert (p + q).substitute(bind) == p.substitute(bind) + q.substitute(bind)


@settings(max_examples=100, deadline=None, derandomize=True)
@given(polys())
def test_ascii_parse_round_trip(p):
    assert parse_poly(p.ascii()) == p
