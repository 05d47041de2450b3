"""Sparse multivariate polynomials over a finite field.

A :class:`MultiPoly` maps exponent tuples to nonzero field elements (integer
encodings from :mod:`gaussforge.gf`).  Values are immutable once built.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionMismatchError, NotHomogeneousError, PolySyntaxError
from .gf import GF

Exponent = tuple[int, ...]


class MultiPoly:
    def __init__(self, F: GF, nvars: int, terms: Mapping[Exponent, int] | None = None):
        self.field = F
        self.nvars = nvars
        clean: dict[Exponent, int] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise DimensionMismatchError(f"exponent {e} has wrong length for {nvars} variables")
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, F: GF, nvars: int) -> MultiPoly:
        return cls(F, nvars)

    @classmethod
    def constant(cls, F: GF, nvars: int, c: int) -> MultiPoly:
        return cls(F, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, F: GF, nvars: int, i: int) -> MultiPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(F, nvars, {tuple(e): 1})

    @classmethod
    def linear_form(cls, F: GF, coeffs: Sequence[int]) -> MultiPoly:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(F, n, terms)

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @cached_property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        d = self.degree
        return all(sum(e) == d for e in self.terms)

    def monomials(self) -> list[Exponent]:
        return sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)

    def _check(self, other: MultiPoly) -> None:
        if other.field is not self.field or other.nvars != self.nvars:
            raise DimensionMismatchError("polynomials over different rings")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, 0), c)
        return MultiPoly(F, self.nvars, out)

    def __neg__(self) -> MultiPoly:
        F = self.field
        return MultiPoly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def scale(self, c: int) -> MultiPoly:
        F = self.field
        return MultiPoly(F, self.nvars, {e: F.mul(c, v) for e, v in self.terms.items()})

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        F = self.field
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        return MultiPoly(F, self.nvars, out)

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field is other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- calculus and evaluation -----------------------------------------

    def partial(self, i: int) -> MultiPoly:
        """Formal derivative with respect to Z_i; exponents are reduced mod p."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        F = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i] % F.p:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = F.mul(F.from_int(e[i]), c)
        return MultiPoly(F, self.nvars, out)

    @cached_property
    def gradient(self) -> tuple[MultiPoly, ...]:
        return tuple(self.partial(i) for i in range(self.nvars))

    @cached_property
    def hessian(self) -> tuple[tuple[MultiPoly, ...], ...]:
        return tuple(tuple(g.partial(j) for j in range(self.nvars)) for g in self.gradient)

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.nvars:
            raise DimensionMismatchError(f"point has {len(point)} coordinates, expected {self.nvars}")
        F = self.field
        powers: dict[tuple[int, int], int] = {}
        total = 0
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    pw = powers.get(key)
                    if pw is None:
                        pw = powers[key] = F.pow(point[i], k)
                    v = F.mul(v, pw)
                    if not v:
                        break
            total = F.add(total, v)
        return total

    __call__ = evaluate

    def substitute_linear(self, matrix: Sequence[Sequence[int]]) -> MultiPoly:
        """Compose with Z_i = sum_j matrix[i][j] * W_j."""
        if len(matrix) != self.nvars:
            raise DimensionMismatchError(f"substitution needs {self.nvars} rows, got {len(matrix)}")
        widths = {len(row) for row in matrix}
        if len(widths) != 1:
            raise DimensionMismatchError("ragged substitution matrix")
        m = widths.pop()
        F = self.field
        forms = [MultiPoly.linear_form(F, row) for row in matrix]
        cache: dict[tuple[int, int], MultiPoly] = {}
        out = MultiPoly.zero(F, m)
        for e, c in self.terms.items():
            t = MultiPoly.constant(F, m, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = forms[i] ** k
                    t = t * cache[(i, k)]
            out = out + t
        return out

    def euler_residual(self) -> MultiPoly:
        """sum_i Z_i * df/dZ_i - d*f; zero for every homogeneous f."""
        if not self.is_homogeneous():
            raise NotHomogeneousError("Euler identity needs a homogeneous polynomial")
        F = self.field
        acc = -self.scale(F.from_int(self.degree))
        for i, g in enumerate(self.gradient):
            acc = acc + MultiPoly.variable(F, self.nvars, i) * g
        return acc

    def embed(self, big: GF) -> MultiPoly:
        """The same polynomial with coefficients mapped into an extension."""
        if big is self.field:
            return self
        table = self.field.embedding(big)
        return MultiPoly(big, self.nvars, {e: table[c] for e, c in self.terms.items()})

    def coefficient_vector(self, monomials: Sequence[Exponent]) -> list[int]:
        return [self.terms.get(m, 0) for m in monomials]

    @cached_property
    def vectorized(self) -> VectorEvaluator:
        return VectorEvaluator(self)

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for e in self.monomials():
            c = self.terms[e]
            mono = "*".join(
                f"Z{i}" if k == 1 else f"Z{i}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(F.format(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{F.format(c)}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self.field!r}, {self.nvars}, {str(self)!r})"


def monomials_of_degree(nvars: int, d: int) -> list[Exponent]:
    """All exponent vectors of total degree d, in descending lex order."""
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


_ZERO_LOG = 1 << 40


class VectorEvaluator:
    """Evaluate a polynomial at many points at once.

    Points are rows of an int64 array of field encodings.  Monomials are
    evaluated in the logarithm domain as one integer matrix product.
    """

    def __init__(self, f: MultiPoly):
        F = f.field
        self.field = F
        self.nvars = f.nvars
        mons = list(f.terms)
        self.exps = np.array(mons, dtype=np.int64).reshape(len(mons), f.nvars).T
        if F.k == 1:
            self.coeffs = np.array([f.terms[m] for m in mons], dtype=np.int64)
        else:
            log = F.log_table
            self.coeff_logs = np.array([log[f.terms[m]] for m in mons], dtype=np.int64)

    def __call__(self, Z: np.ndarray) -> np.ndarray:
        F = self.field
        rows = Z.shape[0]
        if self.exps.shape[1] == 0:
            return np.zeros(rows, dtype=np.int64)
        if F.k == 1:
            return self._prime(Z)
        tabs = F._np
        # log(0) is a sentinel far above q, so any monomial touching a zero
        # coordinate lands at or beyond it.
        L = tabs["log0"][Z] @ self.exps + self.coeff_logs
        vals = tabs["exp"][L % (F.q - 1)]
        vals[L >= _ZERO_LOG] = 0
        if "add" in tabs:
            add = tabs["add"]
            acc = vals[:, 0]
            for t in range(1, vals.shape[1]):
                acc = add[acc, vals[:, t]]
            return acc
        return _digit_sum(vals, F)

    def _prime(self, Z: np.ndarray) -> np.ndarray:
        p = self.field.p
        vals = np.broadcast_to(self.coeffs, (Z.shape[0], self.coeffs.size)).copy()
        for i in range(self.nvars):
            col = self.exps[i]
            if not col.any():
                continue
            z = Z[:, i]
            for e in np.unique(col[col > 0]):
                zp = _modpow(z, int(e), p)
                sel = col == e
                vals[:, sel] = vals[:, sel] * zp[:, None] % p
        return vals.sum(axis=1) % p


def _modpow(z: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(z)
    base = z % p
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def _digit_sum(vals: np.ndarray, F: GF) -> np.ndarray:
    """Field sum along the last axis for k > 1 (digitwise mod p)."""
    p = F.p
    out = np.zeros(vals.shape[:-1], dtype=np.int64)
    place = 1
    for _ in range(F.k):
        out += ((vals // place) % p).sum(axis=-1) % p * place
        place *= p
    return out


# -- parsing ----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, F: GF, nvars: int):
        self.text = text
        self.F = F
        self.nvars = nvars
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise PolySyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def parse(self) -> MultiPoly:
        if not self.text.strip():
            self.error("empty polynomial")
        result = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return result

    def expr(self) -> MultiPoly:
        sign = 1
        if self.peek() and self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() and self.peek() in "+-":
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> MultiPoly:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            base = base ** self.integer()
        return base

    def atom(self) -> MultiPoly:
        ch = self.peek()
        F, n = self.F, self.nvars
        if not ch:
            self.error("unexpected end of input")
        if ch == "-":
            self.pos += 1
            return -self.factor()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch.isdigit():
            return MultiPoly.constant(F, n, F.from_int(self.integer()))
        if ch == "[":
            start = self.pos
            end = self.text.find("]", start)
            if end < 0:
                self.error("unterminated '['")
            try:
                c = F.parse(self.text[start:end + 1])
            except ValueError as exc:
                self.error(str(exc), start)
            self.pos = end + 1
            return MultiPoly.constant(F, n, c)
        if ch in "Zz":
            start = self.pos
            self.pos += 1
            if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
                self.error("expected variable index after 'Z'")
            idx = self.integer()
            if idx >= n:
                self.error(f"variable Z{idx} out of range for {n} variables", start)
            return MultiPoly.variable(F, n, idx)
        self.error(f"unexpected {ch!r}")


def parse_poly(text: str, F: GF, nvars: int, homogeneous: bool = False) -> MultiPoly:
    """Parse text such as ``"Z1^6 + Z2^6 + Z3*Z4*Z0^4"``."""
    f = _Parser(text, F, nvars).parse()
    if homogeneous and not f.is_homogeneous():
        raise NotHomogeneousError(f"polynomial {text!r} is not homogeneous")
    return f


def eval_many(polys: Iterable[MultiPoly], Z: np.ndarray) -> np.ndarray:
    """Stack evaluations of several polynomials as columns."""
    return np.stack([g.vectorized(Z) for g in polys], axis=1)
