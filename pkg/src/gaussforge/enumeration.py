"""Brute-force enumeration of X(GF(q^m)) in vectorised chunks.

Points of P^N are visited chart by chart (first nonzero coordinate equal to
1), lexicographically inside a chart.  The chart is cut into chunks of at
most ``CHUNK`` points by fixing leading free coordinates.  Chunks are
independent, and results are always merged in chunk order, so the worker
count never changes an answer.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from itertools import product
from typing import Callable, TypeVar

import numpy as np

from .errors import BudgetExceededError
from .gf import GF
from .linproj import ProjPoint
from .poly import MultiPoly, eval_many

T = TypeVar("T")

DEFAULT_BUDGET = 200_000_000
CHUNK = 1 << 20
SMALL_SPACE = 200_000


def default_budget() -> int:
    env = os.environ.get("GAUSSFORGE_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


class Budget:
    """Running tally of polynomial evaluations against a cap."""

    def __init__(self, limit: int | None = None):
        self.limit = default_budget() if limit is None else int(limit)
        self.spent = 0

    def charge(self, n: int, what: str = "enumeration") -> None:
        if self.spent + n > self.limit:
            raise BudgetExceededError(self.spent + n, self.limit, what)
        self.spent += n


def projective_count(q: int, N: int) -> int:
    return (q ** (N + 1) - 1) // (q - 1)


def chunk_specs(q: int, N: int, chunk: int = CHUNK) -> list[tuple[int, tuple[int, ...]]]:
    specs = []
    for j in range(N + 1):
        r = N - j
        s = 0
        while s < r and q ** (r - s) > chunk:
            s += 1
        for prefix in product(range(q), repeat=s):
            specs.append((j, prefix))
    return specs


@lru_cache(maxsize=16)
def _tail_grid(q: int, t: int) -> np.ndarray:
    if t == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(q**t, dtype=np.int64)
    cols = [(idx // q ** (t - 1 - i)) % q for i in range(t)]
    grid = np.stack(cols, axis=1)
    grid.setflags(write=False)
    return grid


def chunk_points(q: int, N: int, spec: tuple[int, tuple[int, ...]]) -> np.ndarray:
    j, prefix = spec
    tail = _tail_grid(q, N - j - len(prefix))
    Z = np.zeros((tail.shape[0], N + 1), dtype=np.int64)
    Z[:, j] = 1
    for i, v in enumerate(prefix):
        Z[:, j + 1 + i] = v
    Z[:, j + 1 + len(prefix):] = tail
    return Z


def scan(
    f: MultiPoly,
    m: int,
    fn: Callable[[np.ndarray], T],
    budget: Budget | None = None,
    threads: int = 1,
) -> list[T]:
    """Apply fn to the points of X(GF(q^m)) chunk by chunk, in order.

    ``f`` is evaluated over the extension; fn receives an int64 array whose
    rows are the normalised points of X found in one chunk.
    """
    big = f.field.extension(m)
    fe = f.embed(big)
    N = f.nvars - 1
    (budget or Budget()).charge(projective_count(big.q, N), f"enumerating P^{N}(GF({big.q}))")
    ev = fe.vectorized

    def work(spec):
        Z = chunk_points(big.q, N, spec)
        return fn(Z[ev(Z) == 0])

    specs = chunk_specs(big.q, N)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, specs))
    return [work(s) for s in specs]


def enumerate_points(
    f: MultiPoly, m: int = 1, budget: Budget | None = None, threads: int = 1
) -> np.ndarray:
    """All points of X(GF(q^m)) as rows, in deterministic order."""
    parts = scan(f, m, lambda Z: Z, budget, threads)
    return np.concatenate(parts) if parts else np.zeros((0, f.nvars), dtype=np.int64)


def count_points(f: MultiPoly, m: int = 1, budget: Budget | None = None, threads: int = 1) -> int:
    return sum(scan(f, m, len, budget, threads))


def gradient_rows(fe: MultiPoly, Z: np.ndarray) -> np.ndarray:
    if Z.shape[0] == 0:
        return np.zeros((0, fe.nvars), dtype=np.int64)
    return eval_many(fe.gradient, Z)


def normalize_rows(F: GF, G: np.ndarray) -> np.ndarray:
    """Scale each (nonzero) row so its first nonzero entry is 1."""
    if G.shape[0] == 0:
        return G
    lead_idx = np.argmax(G != 0, axis=1)
    lead = G[np.arange(G.shape[0]), lead_idx]
    inv = F.vinv(lead)
    return F.vmul(G, inv[:, None])


def row_keys(G: np.ndarray, q: int) -> np.ndarray:
    """Pack rows of field encodings into one integer each (or bytes rows)."""
    n = G.shape[1]
    if q**n < 1 << 62:
        weights = np.array([q ** (n - 1 - i) for i in range(n)], dtype=np.int64)
        return G @ weights
    return np.ascontiguousarray(G).view(np.dtype((np.void, G.dtype.itemsize * n))).ravel()


def smooth_split(fe: MultiPoly, Z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split points of X into (smooth points, their normalised gradients, singular points)."""
    G = gradient_rows(fe, Z)
    nz = G.any(axis=1)
    return Z[nz], normalize_rows(fe.field, G[nz]), Z[~nz]


def sample_smooth_points(
    f: MultiPoly, m: int, count: int, rng: np.random.Generator, max_rounds: int = 64
) -> list[ProjPoint]:
    """Seeded uniform sample of smooth points of X(GF(q^m)), without repeats."""
    big = f.field.extension(m)
    fe = f.embed(big)
    N = f.nvars - 1
    if projective_count(big.q, N) <= SMALL_SPACE:
        pts = enumerate_points(f, m, Budget(SMALL_SPACE))
        smooth, _, _ = smooth_split(fe, pts)
        if smooth.shape[0] == 0:
            return []
        pick = rng.choice(smooth.shape[0], size=min(count, smooth.shape[0]), replace=False)
        return [ProjPoint(big, tuple(int(c) for c in smooth[i])) for i in pick]
    found: dict[tuple[int, ...], None] = {}
    batch = 1 << 16
    for _ in range(max_rounds):
        Z = rng.integers(0, big.q, size=(batch, N + 1), dtype=np.int64)
        Z = Z[Z.any(axis=1)]
        Z = Z[fe.vectorized(Z) == 0]
        smooth, _, _ = smooth_split(fe, Z)
        for row in normalize_rows(big, smooth):
            found.setdefault(tuple(int(c) for c in row), None)
            if len(found) >= count:
                break
        if len(found) >= count:
            break
    return [ProjPoint(big, c) for c in found]
