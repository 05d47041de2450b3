"""Exact linear algebra over GF(q) and linear subvarieties of P^N.

Subspaces are stored by the reduced row-echelon basis of their affine cone,
so two subspaces are equal exactly when their stored bases are equal.
Dimensions are projective: the empty subvariety has dimension -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, FieldError
from .gf import GF

Vector = tuple[int, ...]


def rref(rows: Iterable[Sequence[int]], F: GF) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                s = m[i][c]
                m[i] = [F.sub(a, F.mul(s, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Sequence[int]], F: GF) -> int:
    return len(rref(rows, F)[0])


def nullspace(rows: Sequence[Sequence[int]], ncols: int, F: GF) -> list[list[int]]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    red, pivots = rref(rows, F)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def mat_vec(M: Sequence[Sequence[int]], v: Sequence[int], F: GF) -> list[int]:
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], F: GF) -> list[list[int]]:
    cols = list(zip(*B))
    return [mat_vec(cols, row, F) for row in A]


def determinant(M: Sequence[Sequence[int]], F: GF) -> int:
    m = [list(r) for r in M]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = F.neg(det)
        det = F.mul(det, m[c][c])
        inv = F.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                s = F.mul(m[i][c], inv)
                m[i] = [F.sub(a, F.mul(s, b)) for a, b in zip(m[i], m[c])]
    return det


def normalize(coords: Sequence[int], F: GF) -> Vector:
    """Scale so the first nonzero coordinate is 1."""
    lead = next((c for c in coords if c), 0)
    if not lead:
        raise ValueError("the zero vector is not a projective point")
    if lead == 1:
        return tuple(coords)
    inv = F.inv(lead)
    return tuple(F.mul(inv, c) for c in coords)


@dataclass(frozen=True)
class ProjPoint:
    field: GF
    coords: Vector

    @classmethod
    def of(cls, F: GF, coords: Sequence[int]) -> ProjPoint:
        return cls(F, normalize(coords, F))

    @classmethod
    def parse(cls, text: str, F: GF) -> ProjPoint:
        from .gf import parse_scalars

        return cls.of(F, parse_scalars(text, F))

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    def embed(self, big: GF) -> ProjPoint:
        if big is self.field:
            return self
        table = self.field.embedding(big)
        return ProjPoint(big, tuple(table[c] for c in self.coords))

    def to_json(self) -> list[str]:
        return [self.field.format(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ":".join(self.field.format(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class LinearSubspace:
    field: GF
    ambient_dim: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def is_empty(self) -> bool:
        return not self.basis

    def _same(self, other: LinearSubspace) -> None:
        if other.field is not self.field or other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError("subspaces live in different projective spaces")

    def contains(self, x: ProjPoint | Sequence[int]) -> bool:
        coords = x.coords if isinstance(x, ProjPoint) else tuple(x)
        if isinstance(x, ProjPoint) and x.field is not self.field:
            raise DimensionMismatchError("point and subspace over different fields")
        if len(coords) != self.ambient_dim + 1:
            raise DimensionMismatchError("point has the wrong number of coordinates")
        return rank(list(self.basis) + [coords], self.field) == len(self.basis)

    def contains_subspace(self, other: LinearSubspace) -> bool:
        self._same(other)
        return all(self.contains(v) for v in other.basis)

    def join(self, other: LinearSubspace) -> LinearSubspace:
        self._same(other)
        return span(self.field, self.ambient_dim, list(self.basis) + list(other.basis))

    def equations(self) -> list[list[int]]:
        """Basis of linear forms vanishing on the subspace."""
        return nullspace(self.basis, self.ambient_dim + 1, self.field)

    def meet(self, other: LinearSubspace) -> LinearSubspace:
        self._same(other)
        return from_equations(self.field, self.ambient_dim, self.equations() + other.equations())

    def embed(self, big: GF) -> LinearSubspace:
        if big is self.field:
            return self
        table = self.field.embedding(big)
        return LinearSubspace(big, self.ambient_dim, tuple(tuple(table[c] for c in row) for row in self.basis))

    def points(self) -> list[ProjPoint]:
        """All rational points, for small subspaces."""
        F, r = self.field, len(self.basis)
        out = []
        for lead in range(r):
            for tail in product(range(F.q), repeat=r - 1 - lead):
                coeffs = [0] * lead + [1] + list(tail)
                v = [0] * (self.ambient_dim + 1)
                for c, row in zip(coeffs, self.basis):
                    if c:
                        v = [F.add(a, F.mul(c, b)) for a, b in zip(v, row)]
                out.append(ProjPoint(F, tuple(v)))
        return out

    def plucker(self) -> Vector:
        """Maximal minors in lexicographic column order, first nonzero scaled to 1."""
        if self.is_empty():
            raise ValueError("Plucker coordinates of the empty subvariety are undefined")
        r = len(self.basis)
        cols = list(zip(*self.basis))
        minors = [
            determinant([list(row) for row in zip(*(cols[c] for c in sub))], self.field)
            for sub in combinations(range(self.ambient_dim + 1), r)
        ]
        return normalize(minors, self.field)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": [[self.field.format(c) for c in row] for row in self.basis],
        }

    def __str__(self) -> str:
        if self.is_empty():
            return "<empty>"
        return "<" + ", ".join(
            "(" + ":".join(self.field.format(c) for c in row) + ")" for row in self.basis
        ) + ">"


def span(F: GF, ambient_dim: int, vectors: Iterable[Sequence[int] | ProjPoint]) -> LinearSubspace:
    rows = []
    for v in vectors:
        if isinstance(v, ProjPoint):
            if v.field is not F:
                raise FieldError("point over a different field")
            v = v.coords
        if len(v) != ambient_dim + 1:
            raise DimensionMismatchError(f"vector of length {len(v)} in P^{ambient_dim}")
        rows.append(v)
    red, _ = rref(rows, F)
    return LinearSubspace(F, ambient_dim, tuple(tuple(r) for r in red))


def from_equations(F: GF, ambient_dim: int, forms: Sequence[Sequence[int]]) -> LinearSubspace:
    """The subvariety cut out by the given linear forms."""
    return span(F, ambient_dim, nullspace(forms, ambient_dim + 1, F))


def whole_space(F: GF, ambient_dim: int) -> LinearSubspace:
    n = ambient_dim + 1
    return span(F, ambient_dim, [[int(i == j) for j in range(n)] for i in range(n)])


PLUCKER_ORDER_DOC = (
    "maximal minors of the row-echelon basis, column subsets in lexicographic order, "
    "first nonzero coordinate scaled to 1"
)
