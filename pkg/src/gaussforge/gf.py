"""Finite fields GF(p^k) for small odd primes.

Elements are plain integers in ``range(q)``: the base-``p`` digits of an
element are its coordinates in the power basis of the field modulus, least
significant digit first.  Every field operation lives on the :class:`GF`
context; :class:`Scalar` is a thin operator-overloading wrapper for callers
who prefer ``a * b`` to ``F.mul(a, b)``.

Fields up to :data:`TABLE_LIMIT` elements carry exponential, logarithm and
Zech logarithm tables, which make multiplication, addition and root
extraction a handful of list lookups.  Larger fields fall back to polynomial
arithmetic modulo the defining polynomial.
"""

from __future__ import annotations

import math
import re
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldError, FieldMismatchError

TABLE_LIMIT = 1 << 20
ADD_TABLE_LIMIT = 1024
MAX_PRIME = 1 << 8
MAX_DEGREE = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient lists low -> high -------------------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _ptrim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _pmod([c % p for c in out], m, p)


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    m = _ptrim([c % p for c in modulus])
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**k, m, p) != _pmod(x, m, p):
        return False
    for r in prime_factors(k):
        h = _ppowmod(x, p ** (k // r), m, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(m, _ptrim(h), p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k with the smallest coefficient sequence.

    Candidates are ordered by ``(c_{k-1}, ..., c_0)`` lexicographically, i.e.
    by the integer ``sum c_i p^i``.
    """
    if k == 1:
        return (0, 1)
    for v in range(p**k):
        coeffs = [(v // p**i) % p for i in range(k)] + [1]
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


_SCALAR_RE = re.compile(r"\s*\[([^\]]*)\]\s*$|\s*([+-]?\d+)\s*$")


class GF:
    """The finite field GF(p^k) with a deterministic defining polynomial.

    Use :func:`field` rather than instantiating directly so equal ``(p, k)``
    share one cached context.
    """

    def __init__(self, p: int, k: int = 1):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"characteristic must be prime, got {p}")
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if p > MAX_PRIME:
            raise FieldError(f"characteristic {p} exceeds {MAX_PRIME}")
        if not isinstance(k, int) or k < 1:
            raise FieldError(f"extension degree must be >= 1, got {k}")
        if p**k >= 1 << 64:
            raise FieldError(f"field order {p}^{k} does not fit in 64 bits")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = smallest_irreducible(p, k)
        self._mod_list = list(self.modulus)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (field, (self.p, self.k))

    # -- encoding ---------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        return tuple((a // p**i) % p for i in range(self.k))

    def from_coeffs(self, cs: Sequence[int]) -> int:
        if len(cs) > self.k:
            cs = _pmod([c % self.p for c in cs], self._mod_list, self.p)
        v = 0
        for c in reversed(list(cs)):
            v = v * self.p + c % self.p
        return v

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def __call__(self, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.field is not self:
                raise FieldMismatchError(f"{value.field} element used in {self}")
            return value
        if isinstance(value, str):
            return Scalar(self, self.parse(value))
        if isinstance(value, (list, tuple)):
            return Scalar(self, self.from_coeffs(value))
        return Scalar(self, self.from_int(int(value)))

    def parse(self, text: str) -> int:
        m = _SCALAR_RE.match(text)
        if not m:
            raise FieldError(f"cannot parse field element {text!r}")
        if m.group(2) is not None:
            return self.from_int(int(m.group(2)))
        parts = [s.strip() for s in m.group(1).split(",") if s.strip()]
        if len(parts) > self.k:
            raise FieldError(f"{text!r} has more than {self.k} coordinates")
        return self.from_coeffs([int(s) for s in parts])

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return "[" + ",".join(str(c) for c in self.coeffs(a)) + "]"

    def elements(self) -> range:
        return range(self.q)

    # -- tables -----------------------------------------------------------

    @property
    def has_tables(self) -> bool:
        return self.q <= TABLE_LIMIT

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _pmulmod(list(self.coeffs(a)), list(self.coeffs(b)), self._mod_list, self.p)
        return self.from_coeffs(prod)

    def _slow_add(self, a: int, b: int, sign: int = 1) -> int:
        p, v, place = self.p, 0, 1
        while a or b:
            v += ((a % p + sign * (b % p)) % p) * place
            a //= p
            b //= p
            place *= p
        return v

    @cached_property
    def generator(self) -> int:
        """Smallest element (by encoding) generating the multiplicative group."""
        n = self.q - 1
        facs = prime_factors(n)
        for g in range(1, self.q):
            if all(self._slow_pow(g, n // r) != 1 for r in facs):
                return g
        raise FieldError("no generator found")  # pragma: no cover

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    @cached_property
    def _tables(self) -> tuple[list[int], list[int], list[int]]:
        # exp has length 2(q-1) so log a + log b needs no reduction.
        n = self.q - 1
        g = self.generator
        exp = [0] * (2 * n)
        log = [-1] * self.q
        v = 1
        for i in range(n):
            exp[i] = v
            log[v] = i
            v = self._slow_mul(v, g)
        exp[n:] = exp[:n]
        p = self.p
        zech = [-1] * n
        for d in range(n):
            e = exp[d]
            one_plus = e - e % p + (e % p + 1) % p
            zech[d] = log[one_plus] if one_plus else -1
        return exp, log, zech

    @property
    def exp_table(self) -> list[int]:
        return self._tables[0]

    @property
    def log_table(self) -> list[int]:
        return self._tables[1]

    @property
    def zech_table(self) -> list[int]:
        return self._tables[2]

    # -- scalar arithmetic ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if not a:
            return b
        if not b:
            return a
        if not self.has_tables:
            return self._slow_add(a, b)
        exp, log, zech = self._tables
        la = log[a]
        z = zech[(log[b] - la) % (self.q - 1)]
        return 0 if z < 0 else exp[la + z]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._slow_add(0, a, -1)

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        if not self.has_tables:
            return self._slow_mul(a, b)
        exp, log, _ = self._tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.k == 1:
            return pow(a, -1, self.p)
        if not self.has_tables:
            return self._slow_pow(a, self.q - 2)
        exp, log, _ = self._tables
        return exp[(-log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if not a:
            return 0
        if self.k == 1:
            return pow(a, e, self.p)
        if not self.has_tables:
            return self._slow_pow(a, e % (self.q - 1) or self.q - 1)
        exp, log, _ = self._tables
        return exp[log[a] * e % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def frobenius_inverse(self, a: int, j: int = 1) -> int:
        """The unique y with y^(p^j) = a."""
        return self.pow(a, self.p ** ((-j) % self.k)) if self.k > 1 else a

    def sqrt_minus_one(self) -> int:
        roots = self.nth_roots(self.neg(1), 2)
        if not roots:
            raise FieldError(f"-1 is not a square in {self}")
        return roots[0]

    def nth_roots(self, a: int, n: int) -> list[int]:
        """All x with x^n = a, sorted by encoding."""
        if n < 1:
            raise ValueError("n must be positive")
        if not a:
            return [0]
        while n % self.p == 0:
            a = self.frobenius_inverse(a)
            n //= self.p
        order = self.q - 1
        g = math.gcd(n, order)
        if g == 1:
            return [self.pow(a, pow(n, -1, order))]
        if not self.has_tables:
            raise NotImplementedError(
                f"{n}-th roots in {self} need discrete-log tables (q > {TABLE_LIMIT})"
            )
        exp, log, _ = self._tables
        la = log[a]
        if la % g:
            return []
        sub = order // g
        t0 = (la // g) * pow(n // g, -1, sub) % sub if sub > 1 else 0
        return sorted(exp[t0 + j * sub] for j in range(g))

    def roots_of_unity(self, n: int) -> list[int]:
        return self.nth_roots(1, n)

    # -- vectorised arithmetic on numpy int64 arrays ----------------------

    @cached_property
    def _np(self) -> dict[str, np.ndarray]:
        if not self.has_tables:
            raise FieldError(f"vectorised arithmetic needs tables; {self} is too large")
        exp, log, zech = self._tables
        tabs = {
            "exp": np.asarray(exp, dtype=np.int64),
            "log": np.asarray([max(v, 0) for v in log], dtype=np.int64),
            "zech": np.asarray(zech, dtype=np.int64),
            "log0": np.asarray([v if v >= 0 else 1 << 40 for v in log], dtype=np.int64),
        }
        if self.q <= ADD_TABLE_LIMIT:
            el = np.arange(self.q, dtype=np.int64)
            tabs["add"] = self.vadd_digits(el[:, None], el[None, :])
        return tabs

    def vadd_digits(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        for _ in range(self.k):
            out += ((a // place + b // place) % p) * place
            place *= p
        return out

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (a + b) % self.p
        tabs = self._np
        if "add" in tabs:
            return tabs["add"][a, b]
        return self.vadd_digits(a, b)

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (-a) % self.p
        return self.vmul(a, np.full_like(a, self.neg(1)))

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return a * b % self.p
        tabs = self._np
        out = tabs["exp"][tabs["log"][a] + tabs["log"][b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a: np.ndarray) -> np.ndarray:
        """Elementwise inverse; zero maps to zero."""
        tabs = self._np
        out = tabs["exp"][(-tabs["log"][a]) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    # -- towers -----------------------------------------------------------

    def extension(self, m: int) -> GF:
        return field(self.p, self.k * m)

    def embedding(self, big: GF) -> list[int]:
        """Lookup table sending each element of self to its image in ``big``.

        The power-basis generator is sent to the smallest root (by encoding)
        of this field's modulus in ``big``.
        """
        return list(_embedding(self, big))


def field(p: int, k: int = 1) -> GF:
    """Return the (cached) field GF(p^k)."""
    if not isinstance(k, int) or k < 1 or k > MAX_DEGREE * 8:
        raise FieldError(f"unsupported extension degree {k}")
    return _cached_field(p, k)


@lru_cache(maxsize=None)
def _cached_field(p: int, k: int) -> GF:
    # positional-only key, so field(7) and field(7, 1) share one object
    return GF(p, k)


def create_field(p: int, k: int = 1) -> GF:
    """Public constructor enforcing the supported parameter range."""
    if isinstance(k, int) and k > MAX_DEGREE:
        raise FieldError(f"extension degree {k} exceeds {MAX_DEGREE}")
    return field(p, k)


@lru_cache(maxsize=None)
def _embedding(small: GF, big: GF) -> tuple[int, ...]:
    if small.p != big.p or big.k % small.k:
        raise FieldMismatchError(f"{small} does not embed in {big}")
    if small is big:
        return tuple(range(small.q))
    if small.k == 1:
        return tuple(range(small.p))
    theta = None
    for t in big.elements():
        acc = 0
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, t), big.from_int(c))
        if acc == 0:
            theta = t
            break
    assert theta is not None
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], theta))
    table = []
    for a in small.elements():
        v = 0
        for c, pw in zip(small.coeffs(a), powers):
            if c:
                v = big.add(v, big.mul(big.from_int(c), pw))
        table.append(v)
    return tuple(table)


class Scalar:
    """A field element bound to its :class:`GF` context."""

    __slots__ = ("field", "value")

    def __init__(self, F: GF, value: int):
        self.field = F
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatchError(f"{other.field} element mixed with {self.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.pow(self.value, e))

    def inverse(self) -> Scalar:
        return Scalar(self.field, self.field.inv(self.value))

    def frobenius(self) -> Scalar:
        return Scalar(self.field, self.field.frobenius(self.value))

    def nth_roots(self, n: int) -> list[Scalar]:
        return [Scalar(self.field, r) for r in self.field.nth_roots(self.value, n)]

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field!r}({self.field.format(self.value)})"

    def __str__(self):
        return self.field.format(self.value)


def parse_scalars(text: str, F: GF) -> list[int]:
    """Parse a comma-separated list of scalars, brackets allowed."""
    items, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    items.append("".join(cur))
    return [F.parse(s) for s in items]


def format_scalars(values: Iterable[int], F: GF) -> list[str]:
    return [F.format(v) for v in values]
