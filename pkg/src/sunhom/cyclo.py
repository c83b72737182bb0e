"""Exact arithmetic in Q[w]/(w^N - 1), with zero tests modulo the N-th cyclotomic polynomial.

Elements are stored as length-N coefficient vectors: ``coeffs[p]`` multiplies
``w**p``.  Arithmetic happens in the quotient by ``w^N - 1``, which is cheap
(exponents simply wrap).  Whether an element vanishes at ``w = exp(2*pi*i/N)``
is decided by reducing modulo ``Phi_N``, the minimal polynomial of the
primitive root, with exact rationals.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Optional, Sequence, Union

from .errors import InvalidOrderError, OrderMismatchError

Scalar = Union[int, Fraction]


def _check_order(N) -> int:
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise InvalidOrderError(f"order must be a positive integer, got {N!r}")
    return N


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class CyclotomicPolynomial:
    """Phi_N as ascending integer coefficients (``coeffs[k]`` multiplies ``x**k``)."""

    order: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        return _format_terms([Fraction(c) for c in self.coeffs], "x")


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact division of ascending integer polynomials; raises if a remainder is left."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[k - dn] = q
        for t, d in enumerate(den):
            num[k - dn + t] -= q * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def _phi(N: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact(poly, _phi(d))
    return tuple(poly)


def cyclotomic_polynomial(N: int) -> CyclotomicPolynomial:
    """Phi_N from x^N - 1 = prod_{d | N} Phi_d, by exact integer division."""
    _check_order(N)
    return CyclotomicPolynomial(N, _phi(N))


def euler_phi(N: int) -> int:
    return cyclotomic_polynomial(N).degree


class CycloPoly:
    """Immutable element of Q[w]/(w^N - 1).

    ``==`` compares representations in the quotient by ``w^N - 1``; use
    :meth:`equals` (or ``is_zero(a - b)``) for equality as complex numbers.
    """

    __slots__ = ("_order", "_coeffs")

    def __init__(self, order: int, coeffs: Iterable[Scalar]):
        _check_order(order)
        cs = tuple(_as_fraction(c) for c in coeffs)
        if len(cs) != order:
            raise ValueError(f"expected {order} coefficients, got {len(cs)}")
        self._order = order
        self._coeffs = cs

    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> "CycloPoly":
        obj = object.__new__(cls)
        obj._order = order
        obj._coeffs = coeffs
        return obj

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, N: int) -> "CycloPoly":
        _check_order(N)
        return cls._raw(N, (Fraction(0),) * N)

    @classmethod
    def constant(cls, N: int, c: Scalar) -> "CycloPoly":
        _check_order(N)
        return cls._raw(N, (_as_fraction(c),) + (Fraction(0),) * (N - 1))

    @classmethod
    def from_power(cls, N: int, p: int) -> "CycloPoly":
        _check_order(N)
        cs = [Fraction(0)] * N
        cs[p % N] = Fraction(1)
        return cls._raw(N, tuple(cs))

    @classmethod
    def from_counts(cls, N: int, counts: Sequence[int], scale: Scalar = 1) -> "CycloPoly":
        """``scale * sum_p counts[p] * w^p``."""
        _check_order(N)
        if len(counts) != N:
            raise ValueError(f"expected {N} counts, got {len(counts)}")
        s = _as_fraction(scale)
        return cls._raw(N, tuple(s * c for c in counts))

    # accessors --------------------------------------------------------
    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, p: int) -> Fraction:
        return self._coeffs[p % self._order]

    def __iter__(self):
        return iter(self._coeffs)

    def __len__(self) -> int:
        return self._order

    # ring operations --------------------------------------------------
    def _coerce(self, other) -> Optional["CycloPoly"]:
        if isinstance(other, CycloPoly):
            if other._order != self._order:
                raise OrderMismatchError(f"orders differ: {self._order} vs {other._order}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycloPoly.constant(self._order, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloPoly._raw(self._order, tuple(a + b for a, b in zip(self._coeffs, o._coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloPoly._raw(self._order, tuple(-a for a in self._coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloPoly._raw(self._order, tuple(a - b for a, b in zip(self._coeffs, o._coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        N = self._order
        out = [Fraction(0)] * N
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(o._coeffs):
                if b:
                    out[(i + j) % N] += a * b
        return CycloPoly._raw(N, tuple(out))

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "CycloPoly":
        c = _as_fraction(c)
        return CycloPoly._raw(self._order, tuple(c * a for a in self._coeffs))

    def rotate(self, k: int) -> "CycloPoly":
        """Multiply by ``w**k``."""
        N = self._order
        k %= N
        if k == 0:
            return self
        return CycloPoly._raw(N, self._coeffs[-k:] + self._coeffs[:-k])

    # canonical form and zero test ------------------------------------
    def reduce(self) -> "CycloPoly":
        """Canonical representative modulo Phi_N (degree < phi(N)), padded to length N."""
        N = self._order
        phi = _phi(N)
        deg = len(phi) - 1
        c = list(self._coeffs)
        # Phi_N is monic
        for d in range(N - 1, deg - 1, -1):
            q = c[d]
            if q:
                base = d - deg
                for t in range(deg + 1):
                    if phi[t]:
                        c[base + t] -= q * phi[t]
        return CycloPoly._raw(N, tuple(c[:deg]) + (Fraction(0),) * (N - deg))

    def is_zero(self) -> bool:
        return not any(self.reduce()._coeffs)

    def equals(self, other) -> bool:
        """Equality of the values at the primitive root."""
        return (self - other).is_zero()

    def eval_numeric(self) -> complex:
        N = self._order
        z = 0j
        for p, c in enumerate(self._coeffs):
            if c:
                z += float(c) * cmath.exp(2j * math.pi * p / N)
        return z

    def as_rational(self) -> Optional[Fraction]:
        r = self.reduce()._coeffs
        if any(r[1:]):
            return None
        return r[0]

    def is_monomial_multiple(self) -> bool:
        return sum(1 for c in self._coeffs if c) <= 1

    # equality & hashing (representation level) -----------------------
    def __eq__(self, other):
        if isinstance(other, CycloPoly):
            return self._order == other._order and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == CycloPoly.constant(self._order, other)
        return NotImplemented

    def __hash__(self):
        return hash((self._order, self._coeffs))

    # serialisation ----------------------------------------------------
    def to_text(self) -> str:
        return _format_terms(self._coeffs, "w")

    def to_json(self) -> dict:
        return {"order": self._order, "coeffs": [str(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CycloPoly":
        return cls(int(obj["order"]), [Fraction(c) for c in obj["coeffs"]])

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"CycloPoly({self._order}, {self.to_text()!r})"


def _format_terms(coeffs: Sequence[Fraction], var: str) -> str:
    parts = []
    for p, c in enumerate(coeffs):
        if not c:
            continue
        if p == 0:
            mono = ""
        elif p == 1:
            mono = var
        else:
            mono = f"{var}^{p}"
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{c}*{mono}")
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


# functional aliases mirroring the operation names -------------------------

def from_power(N: int, p: int) -> CycloPoly:
    return CycloPoly.from_power(N, p)


def add(a: CycloPoly, b) -> CycloPoly:
    return a + b


def mul(a: CycloPoly, b) -> CycloPoly:
    return a * b


def scale(a: CycloPoly, c: Scalar) -> CycloPoly:
    return a.scale(c)


def reduce(a: CycloPoly) -> CycloPoly:
    return a.reduce()


def is_zero(a: CycloPoly) -> bool:
    return a.is_zero()


def eval_numeric(a: CycloPoly) -> complex:
    return a.eval_numeric()


def as_rational_integer(a: CycloPoly) -> Optional[Fraction]:
    """The exact value if ``a`` reduces to a constant, else ``None``."""
    return a.as_rational()
