"""Gauss map of a hypersurface X = V(f) at a single point.

Everything is computed on the affine cone.  With g = grad f(x) and
H = Hess f(x), the differential of the Gauss map sends a tangent direction
u (with g.u = 0) to H u modulo the line spanned by g.  The Euler identity
H x = (d-1) g makes the cone direction x harmless.  The degeneracy plane
kappa(x) is the projectivisation of {u : g.u = 0, H u in <g>}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .enumeration import sample_smooth_points
from .errors import DimensionMismatchError, NoSmoothPointError, NotOnVarietyError, SingularPointError
from .gf import TABLE_LIMIT
from .linproj import LinearSubspace, ProjPoint, mat_vec, nullspace, rank, span
from .poly import MultiPoly


def align(f: MultiPoly, x: ProjPoint) -> tuple[MultiPoly, ProjPoint]:
    """Bring f and x over a common field (one must embed in the other)."""
    if len(x.coords) != f.nvars:
        raise DimensionMismatchError(f"point {x} is not in P^{f.nvars - 1}")
    if x.field is f.field:
        return f, x
    if x.field.k <= f.field.k and f.field.k % x.field.k == 0:
        return f, x.embed(f.field)
    return f.embed(x.field), x


def gradient_at(f: MultiPoly, x: ProjPoint) -> list[int]:
    return [g.evaluate(x.coords) for g in f.gradient]


def hessian_at(f: MultiPoly, x: ProjPoint) -> list[list[int]]:
    return [[h.evaluate(x.coords) for h in row] for row in f.hessian]


def _checked_gradient(f: MultiPoly, x: ProjPoint) -> list[int]:
    if f.evaluate(x.coords):
        raise NotOnVarietyError(f"{x} does not lie on the hypersurface")
    g = gradient_at(f, x)
    if not any(g):
        raise SingularPointError(f"{x} is a singular point (gradient vanishes)")
    return g


def gauss_image(f: MultiPoly, x: ProjPoint) -> ProjPoint:
    """gamma(x) as the point (f_0(x) : ... : f_N(x)) of the dual space."""
    f, x = align(f, x)
    return ProjPoint.of(f.field, _checked_gradient(f, x))


def tangent_space(f: MultiPoly, x: ProjPoint) -> LinearSubspace:
    f, x = align(f, x)
    g = _checked_gradient(f, x)
    return span(f.field, f.nvars - 1, nullspace([g], f.nvars, f.field))


@dataclass(frozen=True)
class Differential:
    """d_x gamma on the affine tangent cone.

    ``matrix`` holds H t for each basis vector t of the cone {g.u = 0};
    ``image`` is the span of those vectors together with g, i.e. the image
    of the differential pulled back to the dual space.
    """

    matrix: tuple[tuple[int, ...], ...]
    rank: int
    image: LinearSubspace
    kernel: LinearSubspace


def _differential(f: MultiPoly, x: ProjPoint, g: list[int]) -> Differential:
    F, n1 = f.field, f.nvars
    H = hessian_at(f, x)
    cone = nullspace([g], n1, F)  # also the forms vanishing on <g>
    Ht = [mat_vec(H, t, F) for t in cone]
    # A[i][j] = cone_i . (H t_j): coordinates of H t_j modulo <g>
    A = [[_dot(phi, col, F) for col in Ht] for phi in cone]
    r = rank(A, F)
    coeffs = nullspace(A, len(cone), F)
    W = []
    for a in coeffs:
        v = [0] * n1
        for aj, t in zip(a, cone):
            if aj:
                v = [F.add(vi, F.mul(aj, ti)) for vi, ti in zip(v, t)]
        W.append(v)
    N = n1 - 1
    return Differential(
        matrix=tuple(tuple(c) for c in Ht),
        rank=r,
        image=span(F, N, Ht + [g]),
        kernel=span(F, N, W),
    )


def _dot(a, b, F) -> int:
    acc = 0
    for u, v in zip(a, b):
        if u and v:
            acc = F.add(acc, F.mul(u, v))
    return acc


def gauss_differential(f: MultiPoly, x: ProjPoint) -> Differential:
    f, x = align(f, x)
    return _differential(f, x, _checked_gradient(f, x))


def kappa(f: MultiPoly, x: ProjPoint) -> LinearSubspace:
    """The degeneracy plane kappa(x) spanned by x and ker d_x gamma."""
    return gauss_differential(f, x).kernel


@dataclass(frozen=True)
class GaussPointData:
    x: ProjPoint
    gamma_x: ProjPoint
    tangent: LinearSubspace
    hessian: tuple[tuple[int, ...], ...]
    rank_dgamma: int
    kappa_plane: LinearSubspace
    image: LinearSubspace
    generic: bool | None = None

    def to_json(self) -> dict:
        F = self.x.field
        return {
            "x": self.x.to_json(),
            "gamma": self.gamma_x.to_json(),
            "tangent": self.tangent.to_json(),
            "rank": self.rank_dgamma,
            "kappa": self.kappa_plane.to_json(),
            "generic": self.generic,
            "hessian": [[F.format(c) for c in row] for row in self.hessian],
        }


def point_data(f: MultiPoly, x: ProjPoint, generic_rank: int | None = None) -> GaussPointData:
    f, x = align(f, x)
    g = _checked_gradient(f, x)
    F = f.field
    d = _differential(f, x, g)
    return GaussPointData(
        x=x,
        gamma_x=ProjPoint.of(F, g),
        tangent=span(F, f.nvars - 1, nullspace([g], f.nvars, F)),
        hessian=tuple(tuple(r) for r in hessian_at(f, x)),
        rank_dgamma=d.rank,
        kappa_plane=d.kernel,
        image=d.image,
        generic=None if generic_rank is None else d.rank == generic_rank,
    )


@dataclass
class RankEstimate:
    rank: int
    samples: dict[int, int] = dc_field(default_factory=dict)
    max_by_level: dict[int, int] = dc_field(default_factory=dict)
    points: list[ProjPoint] = dc_field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "samples": {str(m): c for m, c in sorted(self.samples.items())},
            "max_rank_by_level": {str(m): r for m, r in sorted(self.max_by_level.items())},
        }


def generic_rank(
    f: MultiPoly,
    trials: int = 30,
    extension_bound: int = 3,
    seed: int = 0,
) -> RankEstimate:
    """Maximum of rk d_x gamma over seeded samples of smooth points.

    Samples come from X(GF(q^m)) for m = 1..extension_bound.  Rank is lower
    semicontinuous, so the maximum over a sample is the generic rank unless
    the sample misses a dense open set entirely.
    """
    rng = np.random.default_rng(seed)
    est = RankEstimate(rank=-1)
    for m in range(1, extension_bound + 1):
        big = f.field.extension(m)
        if big.q > TABLE_LIMIT:
            break
        pts = sample_smooth_points(f, m, trials, rng)
        est.samples[m] = len(pts)
        est.points.extend(pts)
        if not pts:
            continue
        fe = f.embed(big)
        best = max(gauss_differential(fe, x).rank for x in pts)
        est.max_by_level[m] = best
        est.rank = max(est.rank, best)
    if est.rank < 0:
        raise NoSmoothPointError(
            f"no smooth point found over extensions of degree <= {extension_bound}"
        )
    return est
