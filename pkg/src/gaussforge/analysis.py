"""Whole-hypersurface analyses built on point enumeration.

Strange loci and cone tests are exact polynomial identities.  The image
dimension, the generic rank and fiber structure are estimated from rational
points over a tower of extensions, with the evidence kept in the reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .enumeration import Budget, row_keys, sample_smooth_points, scan, smooth_split
from .errors import FieldError, GaussForgeError
from .gaussmap import RankEstimate, align, gauss_image, generic_rank, gradient_at, point_data
from .gf import GF
from .linproj import LinearSubspace, ProjPoint, nullspace, span
from .poly import MultiPoly, monomials_of_degree, parse_poly

QUINTIC_SURFACE = "Z0^5 + Z1^5 - Z2^3*Z3^2"


def field_json(F: GF) -> dict:
    return {"p": F.p, "k": F.k, "q": F.q, "modulus": list(F.modulus)}


# -- exact identities ---------------------------------------------------------

def strange_locus(f: MultiPoly) -> LinearSubspace:
    """Points v with sum_i v_i * df/dZ_i identically zero.

    For an integral hypersurface this is exactly the set of points lying on
    every embedded tangent space: the combination has degree d-1 < d, so it
    vanishes on X only if it vanishes identically.
    """
    d = f.degree
    if d < 2:
        raise ValueError("strange locus needs degree >= 2")
    mons = monomials_of_degree(f.nvars, d - 1)
    cols = [g.coefficient_vector(mons) for g in f.gradient]
    rows = [list(r) for r in zip(*cols)]
    return span(f.field, f.nvars - 1, nullspace(rows, f.nvars, f.field))


def cone_vertex_check(f: MultiPoly, v: ProjPoint) -> bool:
    """True iff f(Z + t v) == f(Z), i.e. X is a cone with vertex v."""
    f, v = align(f, v)
    if f.evaluate(v.coords):
        return False
    n = f.nvars
    matrix = [[int(i == j) for j in range(n)] + [v.coords[i]] for i in range(n)]
    shifted = f.substitute_linear(matrix)
    lifted = MultiPoly(f.field, n + 1, {e + (0,): c for e, c in f.terms.items()})
    return shifted == lifted


# -- image dimension ------------------------------------------------------------

@dataclass
class ImageDimEstimate:
    value: int
    raw: float
    counts: dict[int, int]
    q: int
    stable: bool
    step: int = 1

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "raw": round(self.raw, 6),
            "stable": self.stable,
            "level_step": self.step,
            "base_q": self.q,
            "counts": {str(m): c for m, c in sorted(self.counts.items())},
        }


def image_counts(f: MultiPoly, m: int, budget: Budget | None = None, threads: int = 1) -> int:
    """Number of distinct Gauss images of smooth points of X(GF(q^m))."""
    big = f.field.extension(m)
    fe = f.embed(big)

    def fn(Z):
        _, G, _ = smooth_split(fe, Z)
        return np.unique(row_keys(G, big.q))

    parts = scan(f, m, fn, budget, threads)
    return int(np.unique(np.concatenate(parts)).size) if parts else 0


def _slope(counts: dict[int, int], top: int, step: int, q: int) -> float:
    return math.log(counts[top] / counts[top - step]) / (step * math.log(q))


def image_dimension_estimate(
    f: MultiPoly, m_max: int, budget: Budget | None = None, threads: int = 1
) -> ImageDimEstimate:
    """Slope of log_q |gamma(X(F_{q^m}))| over the two top tower levels.

    Fiber sizes can oscillate with m (roots of unity present in one level
    and absent in the next).  If the adjacent-level slope is not within 0.25
    of an integer, levels m_max and m_max - 2 are compared instead; the
    ``step`` field records which pair produced the value.
    """
    if m_max < 2:
        raise ValueError("need at least two tower levels")
    budget = budget or Budget()
    counts = {m: image_counts(f, m, budget, threads) for m in range(1, m_max + 1)}
    if counts[m_max - 1] == 0 or counts[m_max] == 0:
        raise GaussForgeError(f"fewer than two usable tower levels: counts {counts}")
    q = f.field.q
    raw = _slope(counts, m_max, 1, q)
    step = 1
    if abs(raw - round(raw)) > 0.25 and m_max >= 3 and counts[m_max - 2]:
        alt = _slope(counts, m_max, 2, q)
        if abs(alt - round(alt)) <= 0.25:
            raw, step = alt, 2
    value = round(raw)
    return ImageDimEstimate(value, raw, counts, q, abs(raw - value) <= 0.25, step)


def default_levels(f: MultiPoly, cap: int = 50_000_000) -> int:
    """Largest tower level whose ambient enumeration stays under cap (at least 2)."""
    q, N = f.field.q, f.nvars - 1
    m = 2
    while q ** ((m + 1) * N) <= cap:
        m += 1
    return m


# -- separability -----------------------------------------------------------------

@dataclass
class AnalysisConfig:
    trials: int = 30
    extension_bound: int = 3
    levels: int | None = None
    fiber_ext: int = 2
    fiber_samples: int = 3
    cone_samples: int = 4
    seed: int = 0
    budget: int | None = None
    threads: int = 1


@dataclass
class ConeCheck:
    vertex: ProjPoint
    is_cone: bool

    def to_json(self) -> dict:
        return {"vertex": self.vertex.to_json(), "is_cone": self.is_cone}


@dataclass
class VarietyReport:
    f: MultiPoly
    n: int
    rank: RankEstimate
    image: ImageDimEstimate
    separability: str
    strange: LinearSubspace
    cone_checks: list[ConeCheck]
    consistency: dict[str, bool]
    evidence: dict = dc_field(default_factory=dict)

    @property
    def generic_rank(self) -> int:
        return self.rank.rank

    @property
    def image_dim(self) -> int:
        return self.image.value

    @property
    def consistent(self) -> bool:
        return all(self.consistency.values())

    def to_json(self) -> dict:
        return {
            "kind": "variety",
            "field": field_json(self.f.field),
            "f": str(self.f),
            "N": self.f.nvars - 1,
            "n": self.n,
            "generic_rank": self.rank.rank,
            "image_dim_estimate": self.image.value,
            "separability": self.separability,
            "strange_locus": self.strange.to_json(),
            "cone_vertices": [c.to_json() for c in self.cone_checks],
            "consistency": self.consistency,
            "evidence": {
                "rank": self.rank.to_json(),
                "image": self.image.to_json(),
                **self.evidence,
            },
        }


def strange_sample(S: LinearSubspace, count: int, rng: np.random.Generator) -> list[ProjPoint]:
    """Basis points of S plus a few seeded random points of S."""
    F = S.field
    pts = {ProjPoint.of(F, row): None for row in S.basis}
    if len(S.basis) > 1:
        for _ in range(count):
            coeffs = [int(c) for c in rng.integers(0, F.q, size=len(S.basis))]
            if not any(coeffs):
                continue
            v = [0] * (S.ambient_dim + 1)
            for c, row in zip(coeffs, S.basis):
                v = [F.add(a, F.mul(c, b)) for a, b in zip(v, row)]
            pts.setdefault(ProjPoint.of(F, v), None)
    return list(pts)


def separability_verdict(f: MultiPoly, config: AnalysisConfig | None = None) -> VarietyReport:
    cfg = config or AnalysisConfig()
    budget = Budget(cfg.budget)
    rank = generic_rank(f, cfg.trials, cfg.extension_bound, cfg.seed)
    levels = cfg.levels or default_levels(f)
    image = image_dimension_estimate(f, levels, budget, cfg.threads)
    S = strange_locus(f)
    rng = np.random.default_rng([cfg.seed, 1])
    cones = [ConeCheck(v, cone_vertex_check(f, v)) for v in strange_sample(S, cfg.cone_samples, rng)]

    if not image.stable or rank.rank > image.value:
        verdict = "inconclusive"
    elif rank.rank == image.value:
        verdict = "separable"
    else:
        verdict = "inseparable"
    consistency = {}
    if any(not c.is_cone for c in cones):
        consistency["strange_not_cone_implies_inseparable"] = verdict == "inseparable"
    return VarietyReport(
        f=f,
        n=f.nvars - 2,
        rank=rank,
        image=image,
        separability=verdict,
        strange=S,
        cone_checks=cones,
        consistency=consistency,
        evidence={"seed": cfg.seed, "levels": levels, "evaluations": budget.spent},
    )


# -- fibers -------------------------------------------------------------------------

@dataclass
class FiberGroup:
    plane: LinearSubspace
    points: list[ProjPoint]
    contains_all: bool
    dims_ok: bool
    image_constant: bool
    image: LinearSubspace

    def to_json(self) -> dict:
        return {
            "kappa_plane": self.plane.to_json(),
            "points": [p.to_json() for p in self.points],
            "contains_all": self.contains_all,
            "dimension_ok": self.dims_ok,
            "differential_image_constant": self.image_constant,
            "differential_image": self.image.to_json(),
        }


@dataclass
class FiberReport:
    base: ProjPoint
    gamma: ProjPoint
    field: GF
    fiber_points: list[ProjPoint]
    singular_points: list[ProjPoint]
    groups: list[FiberGroup]
    non_generic: list[ProjPoint]
    expected_dim: int | None

    @property
    def closure_points(self) -> list[ProjPoint]:
        return sorted(set(self.fiber_points) | set(self.singular_points), key=lambda p: p.coords)

    @property
    def ok(self) -> bool:
        return self.base in self.fiber_points and all(
            g.contains_all and g.dims_ok and g.image_constant for g in self.groups
        )

    def to_json(self) -> dict:
        return {
            "kind": "fiber",
            "field": field_json(self.field),
            "base_point": self.base.to_json(),
            "gamma_value": self.gamma.to_json(),
            "num_fiber_points": len(self.fiber_points),
            "num_singular_points": len(self.singular_points),
            "num_closure_points": len(self.closure_points),
            "fiber_points": [p.to_json() for p in self.fiber_points],
            "singular_points": [p.to_json() for p in self.singular_points],
            "non_generic_points": [p.to_json() for p in self.non_generic],
            "groups": [g.to_json() for g in self.groups],
            "grouping": "smooth fiber points keyed by equal kappa planes (not a component decomposition)",
            "ok": self.ok,
        }


def gauss_fibers(f: MultiPoly, m: int = 1, budget: Budget | None = None, threads: int = 1):
    """Group all smooth points of X(GF(q^m)) by Gauss image.

    Returns a dict from normalised gradient tuples to sorted point tuples.
    """
    big = f.field.extension(m)
    fe = f.embed(big)
    parts = scan(f, m, lambda Z: smooth_split(fe, Z)[:2], budget, threads)
    out: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for pts, G in parts:
        for x, g in zip(pts.tolist(), G.tolist()):
            out.setdefault(tuple(g), []).append(tuple(x))
    return out


def fiber(
    f: MultiPoly,
    x: ProjPoint,
    m: int = 1,
    budget: Budget | None = None,
    threads: int = 1,
    generic: int | None = None,
) -> FiberReport:
    """All rational points of X over GF(q^m) sharing the Gauss image of x.

    Smooth fiber points are grouped by their kappa planes.  Singular points
    of X lying on a group plane are reported separately: they are the
    candidates for the closure of the fiber.
    """
    f, x = align(f, x)
    big = f.field.extension(m)
    fe, xe = f.embed(big), x.embed(big)
    target = np.array(gauss_image(fe, xe).coords, dtype=np.int64)
    budget = budget or Budget()

    def fn(Z):
        pts, G, _ = smooth_split(fe, Z)
        return pts[(G == target).all(axis=1)]

    rows = np.concatenate(scan(f, m, fn, budget, threads))
    pts = [ProjPoint(big, tuple(int(c) for c in r)) for r in rows]

    by_plane: dict[LinearSubspace, list] = {}
    non_generic = []
    for p in pts:
        data = point_data(fe, p, generic)
        if data.generic is False:
            non_generic.append(p)
        by_plane.setdefault(data.kappa_plane, []).append(data)
    n = f.nvars - 2
    groups = []
    singular: set[ProjPoint] = set()
    for plane, datas in sorted(by_plane.items(), key=lambda kv: kv[0].basis):
        members = [d.x for d in datas]
        ranks = {d.rank_dgamma for d in datas}
        groups.append(
            FiberGroup(
                plane=plane,
                points=members,
                contains_all=all(plane.contains(p) for p in members),
                dims_ok=all(plane.dim == n - r for r in ranks),
                image_constant=len({d.image for d in datas}) == 1,
                image=datas[0].image,
            )
        )
        budget.charge(big.q ** (plane.dim + 1), "scanning kappa plane")
        for p in plane.points():
            if fe.evaluate(p.coords) == 0 and not any(g.evaluate(p.coords) for g in fe.gradient):
                singular.add(p)
    return FiberReport(
        base=xe,
        gamma=ProjPoint(big, tuple(int(c) for c in target)),
        field=big,
        fiber_points=pts,
        singular_points=sorted(singular, key=lambda p: p.coords),
        groups=groups,
        non_generic=non_generic,
        expected_dim=None if generic is None else n - generic,
    )


def closed_form_fiber_quintic(f: MultiPoly, x: ProjPoint) -> list[ProjPoint]:
    """The four Gauss-fiber points of Z0^5 + Z1^5 - Z2^3 Z3^2 over x = (1:a:b:c).

    For each fourth root of unity z the partner point is (1 : a z : b' : c')
    with c' = (z(b^3c^2 - 1) + 1) / (b^3 c) and b'^3 = b^6 c^2 / (z(b^3c^2 - 1) + 1),
    the cube root being unique in characteristic 3.
    """
    f, x = align(f, x)
    F = f.field
    if F.p != 3 or f != parse_poly(QUINTIC_SURFACE, F, 4):
        raise ValueError("closed form applies only to Z0^5 + Z1^5 - Z2^3*Z3^2 in characteristic 3")
    one, a, b, c = x.coords
    if one != 1 or not (a and b and c):
        raise ValueError(f"{x} is not a general point (need (1:a:b:c) with a, b, c nonzero)")
    zetas = F.roots_of_unity(4)
    if len(zetas) < 4:
        raise FieldError(f"{F} lacks the fourth roots of unity")
    b3 = F.pow(b, 3)
    b3c = F.mul(b3, c)
    shifted = F.sub(F.mul(b3, F.mul(c, c)), 1)
    out = []
    for z in zetas:
        den = F.add(F.mul(z, shifted), 1)
        if not den:
            raise ValueError(f"{x} is not a general point (zero denominator)")
        c2 = F.div(den, b3c)
        b2 = F.frobenius_inverse(F.div(F.mul(b3c, b3c), den))
        out.append(ProjPoint(F, (1, F.mul(a, z), b2, c2)))
    return out


# -- theorem suite ----------------------------------------------------------------------

@dataclass
class Check:
    name: str
    status: str
    detail: str
    witnesses: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail, "witnesses": self.witnesses}


@dataclass
class TheoremReport:
    variety: VarietyReport
    checks: list[Check]
    fibers: list[FiberReport]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_json(self) -> dict:
        return {
            "kind": "verify",
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "variety": self.variety.to_json(),
            "fibers": [
                {
                    "base_point": r.base.to_json(),
                    "field_q": r.field.q,
                    "num_fiber_points": len(r.fiber_points),
                    "num_singular_points": len(r.singular_points),
                    "num_groups": len(r.groups),
                    "kappa_planes": [g.plane.to_json() for g in r.groups],
                    "ok": r.ok,
                }
                for r in self.fibers
            ],
        }


def _status(ok: bool, vacuous: bool = False) -> str:
    return "vacuous" if vacuous else ("pass" if ok else "fail")


def verify_theorems(f: MultiPoly, config: AnalysisConfig | None = None) -> TheoremReport:
    """Run the invariant suite and collect witnesses for any failure."""
    cfg = config or AnalysisConfig()
    report = separability_verdict(f, cfg)
    r = report.generic_rank
    n = report.n
    S = report.strange
    checks: list[Check] = []

    samples = [point_data(f, x, r) for x in report.rank.points]
    bad = []
    for data in samples:
        F = data.x.field
        fe = f.embed(F)
        if not fe.euler_residual().is_zero():
            bad.append({"x": data.x.to_json(), "why": "euler residual"})
        d1 = F.from_int(f.degree - 1)
        g = gradient_at(fe, data.x)
        hx = [sum_field(F, [F.mul(h, c) for h, c in zip(row, data.x.coords)]) for row in data.hessian]
        if hx != [F.mul(d1, c) for c in g]:
            bad.append({"x": data.x.to_json(), "why": "H x not (d-1) grad"})
        if not (data.kappa_plane.contains(data.x) and data.tangent.contains_subspace(data.kappa_plane)):
            bad.append({"x": data.x.to_json(), "why": "x in kappa(x) in T_x fails"})
        if data.generic and data.kappa_plane.dim != n - data.rank_dgamma:
            bad.append({"x": data.x.to_json(), "why": "dim kappa != n - rank"})
    checks.append(Check("local_identities", _status(not bad), f"Euler, Hessian-Euler, containment and dimension at {len(samples)} sampled points", bad))

    bad = []
    for data in samples:
        Se = S.embed(data.x.field)
        if not (data.kappa_plane.contains_subspace(Se) and data.tangent.contains_subspace(Se)):
            bad.append(data.x.to_json())
    checks.append(Check(
        "strange_in_kappa",
        _status(not bad, S.is_empty()),
        f"strange locus (dim {S.dim}) inside T_x and kappa(x) at {len(samples)} sampled points",
        bad,
    ))

    non_cone = [c for c in report.cone_checks if not c.is_cone]
    checks.append(Check(
        "strange_non_vertex_inseparable",
        _status(report.separability == "inseparable", not non_cone),
        f"strange with non-vertex point(s): verdict is {report.separability}",
        [c.vertex.to_json() for c in non_cone],
    ))

    rng = np.random.default_rng([cfg.seed, 2])
    big = f.field.extension(cfg.fiber_ext)
    fe = f.embed(big)
    bases = [
        x for x in sample_smooth_points(f, cfg.fiber_ext, 4 * cfg.fiber_samples, rng)
        if point_data(fe, x).rank_dgamma == r
    ][: cfg.fiber_samples]
    budget = Budget(cfg.budget)
    fibers = [fiber(fe, x, 1, budget, cfg.threads, r) for x in bases]
    bad = [
        {"base": rep.base.to_json(), "groups": len(rep.groups)}
        for rep in fibers if not rep.ok
    ]
    checks.append(Check(
        "fiber_kappa_groups",
        _status(not bad, not fibers),
        f"{len(fibers)} fibers over GF({big.q}): kappa constant and containing each group, "
        f"group sizes {[[len(g.points) for g in rep.groups] for rep in fibers]}",
        bad,
    ))

    if report.separability == "separable":
        bad = []
        for rep in fibers:
            plane = point_data(fe, rep.base).kappa_plane
            if not all(plane.contains(p) for p in rep.fiber_points):
                bad.append(rep.base.to_json())
        checks.append(Check("separable_fiber_in_kappa", _status(not bad, not fibers), "separable: each fiber inside kappa of its base point", bad))
    else:
        checks.append(Check("separable_fiber_in_kappa", "vacuous", f"verdict is {report.separability}"))
    return TheoremReport(report, checks, fibers)


def sum_field(F: GF, values) -> int:
    acc = 0
    for v in values:
        acc = F.add(acc, v)
    return acc

