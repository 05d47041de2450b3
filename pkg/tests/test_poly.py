import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gaussforge.errors import NotHomogeneousError, PolySyntaxError
from gaussforge.gf import field
from gaussforge.poly import MultiPoly, eval_many, monomials_of_degree, parse_poly

FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)]


@st.composite
def polys(draw, homogeneous=False, nvars=None, max_deg=5):
    F = field(*draw(st.sampled_from(FIELDS)))
    n = nvars or draw(st.integers(1, 4))
    d = draw(st.integers(0, max_deg))
    terms = {}
    for _ in range(draw(st.integers(0, 5))):
        if homogeneous:
            mons = monomials_of_degree(n, d)
            e = mons[draw(st.integers(0, len(mons) - 1))]
        else:
            e = tuple(draw(st.integers(0, 3)) for _ in range(n))
        terms[e] = draw(st.integers(1, F.q - 1))
    return MultiPoly(F, n, terms)


def points(draw, F, n):
    return tuple(draw(st.integers(0, F.q - 1)) for _ in range(n))


@settings(max_examples=150, deadline=None)
@given(polys())
def test_str_parse_roundtrip(f):
    assert parse_poly(str(f), f.field, f.nvars) == f


@settings(max_examples=100, deadline=None)
@given(polys(), st.data())
def test_ring_operations_agree_with_evaluation(f, data):
    F = f.field
    other = data.draw(polys(nvars=f.nvars))
    g = MultiPoly(F, f.nvars, {e: c % F.p for e, c in other.terms.items()})
    x = points(data.draw, F, f.nvars)
    assert (f + g).evaluate(x) == F.add(f(x), g(x))
    assert (f - g).evaluate(x) == F.sub(f(x), g(x))
    assert (f * g).evaluate(x) == F.mul(f(x), g(x))
    assert (f**3).evaluate(x) == F.pow(f(x), 3)
    assert f.scale(2).evaluate(x) == F.mul(2, f(x))


@settings(max_examples=100, deadline=None)
@given(polys(), st.data())
def test_partials_linear_and_leibniz(f, data):
    g = MultiPoly(f.field, f.nvars, {e: (c + 1) % f.field.p or 1 for e, c in f.terms.items()})
    for i in range(f.nvars):
        assert (f + g).partial(i) == f.partial(i) + g.partial(i)
        assert (f * g).partial(i) == f.partial(i) * g + f * g.partial(i)


@settings(max_examples=100, deadline=None)
@given(polys(homogeneous=True))
def test_euler_identity(f):
    assert f.euler_residual().is_zero()


def test_euler_rejects_inhomogeneous(gf3):
    with pytest.raises(NotHomogeneousError):
        parse_poly("Z0^2 + Z1", gf3, 2).euler_residual()


@settings(max_examples=60, deadline=None)
@given(polys(max_deg=3), st.data())
def test_substitution_composes(f, data):
    F, n = f.field, f.nvars
    A = [[data.draw(st.integers(0, F.q - 1)) for _ in range(n)] for _ in range(n)]
    B = [[data.draw(st.integers(0, F.q - 1)) for _ in range(n)] for _ in range(n)]
    AB = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for t in range(n):
                AB[i][j] = F.add(AB[i][j], F.mul(A[i][t], B[t][j]))
    # Z -> A Z then Z -> B Z equals Z -> A B Z
    assert f.substitute_linear(A).substitute_linear(B) == f.substitute_linear(AB)
    x = points(data.draw, F, n)
    Ax = [sum_f(F, (F.mul(a, b) for a, b in zip(row, x))) for row in A]
    assert f.substitute_linear(A).evaluate(x) == f.evaluate(Ax)


def sum_f(F, vals):
    acc = 0
    for v in vals:
        acc = F.add(acc, v)
    return acc


@settings(max_examples=60, deadline=None)
@given(polys(), st.data())
def test_vectorised_matches_scalar(f, data):
    F = f.field
    rows = [points(data.draw, F, f.nvars) for _ in range(20)]
    Z = np.array(rows, dtype=np.int64)
    assert f.vectorized(Z).tolist() == [f.evaluate(r) for r in rows]


def test_eval_many_and_gradient(sextic):
    Z = np.array([[1, 1, 1, 1, 1], [1, 2, 0, 1, 2], [0, 1, 1, 2, 2]], dtype=np.int64)
    got = eval_many(sextic.gradient, Z)
    assert got.shape == (3, 5)
    for row, z in zip(got.tolist(), Z.tolist()):
        assert row == [g.evaluate(z) for g in sextic.gradient]


def test_characteristic_kills_exponents(gf3):
    f = parse_poly("Z0^3*Z1 + Z1^6", gf3, 2)
    assert f.partial(0).is_zero()
    assert str(f.partial(0)) == "0"
    assert f.partial(1) == parse_poly("Z0^3", gf3, 2)


def test_canonical_printing(gf3):
    f = parse_poly("Z2^6 + Z1^6 + Z3*Z4*Z0^4", gf3, 5)
    assert str(f) == "Z0^4*Z3*Z4 + Z1^6 + Z2^6"
    assert str(parse_poly("-Z2^3*Z3^2", gf3, 4)) == "2*Z2^3*Z3^2"
    assert str(MultiPoly.zero(gf3, 2)) == "0"


def test_extension_coefficients():
    F = field(3, 2)
    f = parse_poly("[0,1]*Z0^2 + Z1^2", F, 2)
    assert f.evaluate((1, 0)) == 3
    assert parse_poly(str(f), F, 2) == f


@pytest.mark.parametrize(
    "text,pos",
    [("Z0 +", 4), ("Z0 ** Z1", 4), ("Z7", 0), ("(Z0 + Z1", 8), ("Z0 $ Z1", 3)],
)
def test_syntax_errors_report_position(gf3, text, pos):
    with pytest.raises(PolySyntaxError) as info:
        parse_poly(text, gf3, 2)
    assert info.value.pos == pos
    assert "^" in str(info.value)


def test_homogeneity_flag(gf3):
    with pytest.raises(NotHomogeneousError):
        parse_poly("Z0^2 + Z1", gf3, 2, homogeneous=True)
    assert parse_poly("Z0^2 + Z1^2", gf3, 2, homogeneous=True).is_homogeneous()
