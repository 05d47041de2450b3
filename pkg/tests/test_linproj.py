import pytest
from hypothesis import given, settings, strategies as st

from gaussforge.errors import DimensionMismatchError
from gaussforge.gf import field
from gaussforge.linproj import (
    LinearSubspace,
    ProjPoint,
    determinant,
    from_equations,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    span,
    whole_space,
)

F9 = field(3, 2)
FIELDS = [field(3), field(5), F9]


@st.composite
def subspaces(draw, F=None, N=None):
    F = F or draw(st.sampled_from(FIELDS))
    N = N if N is not None else draw(st.integers(1, 4))
    count = draw(st.integers(0, N + 1))
    vecs = [[draw(st.integers(0, F.q - 1)) for _ in range(N + 1)] for _ in range(count)]
    return span(F, N, vecs)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_grassmann_dimension_identity(data):
    U = data.draw(subspaces())
    W = data.draw(subspaces(U.field, U.ambient_dim))
    # affine-cone dimensions add up
    assert (U.join(W).dim + 1) + (U.meet(W).dim + 1) == (U.dim + 1) + (W.dim + 1)
    assert U.join(W).contains_subspace(U) and U.contains_subspace(U.meet(W))


@settings(max_examples=100, deadline=None)
@given(subspaces())
def test_equations_cut_out_the_subspace(U):
    V = from_equations(U.field, U.ambient_dim, U.equations())
    assert V == U
    for v in U.basis:
        assert not any(mat_vec(U.equations(), v, U.field))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_plucker_relation_for_lines_in_p3(data):
    F = data.draw(st.sampled_from(FIELDS))
    L = data.draw(subspaces(F, 3).filter(lambda s: s.dim == 1))
    p01, p02, p03, p12, p13, p23 = L.plucker()
    lhs = F.add(F.sub(F.mul(p01, p23), F.mul(p02, p13)), F.mul(p03, p12))
    assert lhs == 0


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_plucker_determines_subspace(data):
    F = data.draw(st.sampled_from(FIELDS))
    U = data.draw(subspaces(F, 3).filter(lambda s: not s.is_empty()))
    W = data.draw(subspaces(F, 3).filter(lambda s: s.dim == U.dim))
    assert (U.plucker() == W.plucker()) == (U == W)


def test_basis_change_gives_same_subspace():
    F = field(5)
    U = span(F, 3, [[1, 2, 0, 3], [0, 1, 4, 4]])
    W = span(F, 3, [[1, 3, 4, 2], [2, 4, 0, 1]])  # row1 + row2, 2 * row1
    assert U == W and U.plucker() == W.plucker()


def test_points_of_a_plane():
    P = span(F9, 3, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    pts = P.points()
    assert len(pts) == 81 + 9 + 1
    assert len(set(pts)) == len(pts)
    assert all(P.contains(x) for x in pts)


def test_rank_nullspace_determinant():
    F = field(7)
    M = [[1, 2, 3], [4, 5, 6], [0, 0, 0]]
    assert rank(M, F) == 2
    assert determinant(M, F) == 0
    kernel = nullspace(M, 3, F)
    assert len(kernel) == 1
    assert mat_vec(M, kernel[0], F) == [0, 0, 0]
    assert mat_mul([[1, 2]], [[3], [4]], F) == [[4]]
    A = [[2, 1], [1, 1]]
    assert determinant(A, F) == 1


def test_projective_point_normalisation_and_parse():
    x = ProjPoint.of(F9, [0, 3, 6])
    assert x.coords == (0, 1, 2)
    assert ProjPoint.parse("0,[0,1],[0,2]", F9) == x
    assert str(x) == "([0,0]:[1,0]:[2,0])"
    with pytest.raises(ValueError):
        ProjPoint.of(F9, [0, 0])


def test_embed_preserves_incidence():
    F = field(3)
    big = field(3, 4)
    U = span(F, 2, [[1, 1, 0], [0, 1, 1]])
    x = ProjPoint.of(F, [1, 2, 1])
    assert U.contains(x)
    assert U.embed(big).contains(x.embed(big))


def test_dimension_mismatch():
    F = field(3)
    with pytest.raises(DimensionMismatchError):
        whole_space(F, 2).join(whole_space(F, 3))
    with pytest.raises(DimensionMismatchError):
        span(F, 2, [[1, 0]])
    with pytest.raises(ValueError):
        LinearSubspace(F, 2, ()).plucker()
