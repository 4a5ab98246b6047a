"""Integer homology vectors of curves on the once-punctured torus.

Curves are unoriented: (p, q) and (-p, -q) are the same class. Matrices act
on column vectors by left multiplication.
"""

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import List, Optional, Tuple

import structlog

from core.errors import NonPrimitiveInput, NormalFormError, NotDetTwo, ZeroDeterminant


logger = structlog.get_logger()

RawVector = Tuple[int, int]


@dataclass(frozen=True, order=True)
class CurveVector:
    """Canonical representative: p > 0, or p == 0 and q >= 0"""
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or (self.p == 0 and self.q < 0):
            raise ValueError(f"({self.p},{self.q}) is not in canonical sign form")

    @property
    def thread(self) -> int:
        return gcd(self.p, self.q)

    def is_primitive(self) -> bool:
        return self.thread == 1

    def scaled(self, k: int) -> RawVector:
        return (k * self.p, k * self.q)

    def as_tuple(self) -> RawVector:
        return (self.p, self.q)

    def to_json(self) -> List[int]:
        return [self.p, self.q]

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


ORIGIN = CurveVector(0, 0)


def canonical_sign(p: int, q: int) -> RawVector:
    if p < 0 or (p == 0 and q < 0):
        return (-p, -q)
    return (p, q)


def canonicalize(v: RawVector) -> Tuple[CurveVector, int]:
    """Split an integer vector into (primitive canonical curve, thread degree).

    (0, 0) maps to ((0, 0), 0).
    """
    p, q = int(v[0]), int(v[1])
    thread = gcd(p, q)
    if thread == 0:
        return ORIGIN, 0
    return CurveVector(*canonical_sign(p // thread, q // thread)), thread


def det_pair(u, v) -> int:
    """p*s - q*r for u = (p, q), v = (r, s)"""
    p, q = _coords(u)
    r, s = _coords(v)
    return p * s - q * r


def _coords(v) -> RawVector:
    if isinstance(v, CurveVector):
        return v.p, v.q
    return int(v[0]), int(v[1])


def _require_primitive(v) -> None:
    p, q = _coords(v)
    thread = gcd(p, q)
    if thread != 1:
        raise NonPrimitiveInput((p, q), thread)


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b) >= 0"""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_x, x = x, old_x - quotient * x
        old_y, y = y, old_y - quotient * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


@dataclass(frozen=True)
class SL2Matrix:
    """Row-major [[a, b], [c, d]] with ad - bc == 1"""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"{self.to_json()} does not have determinant 1")

    @classmethod
    def identity(cls) -> "SL2Matrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def shear(cls, k: int) -> "SL2Matrix":
        """[[1, k], [0, 1]]: fixes (1, 0)"""
        return cls(1, k, 0, 1)

    @classmethod
    def lower_shear(cls, k: int) -> "SL2Matrix":
        return cls(1, 0, k, 1)

    @classmethod
    def rotation(cls) -> "SL2Matrix":
        return cls(0, -1, 1, 0)

    @classmethod
    def from_json(cls, rows) -> "SL2Matrix":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def apply(self, v) -> RawVector:
        """Linear action on a column vector, no canonicalization"""
        p, q = _coords(v)
        return (self.a * p + self.b * q, self.c * p + self.d * q)

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def to_json(self) -> List[List[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def sl2_apply_curve(m: SL2Matrix, v) -> CurveVector:
    """Act on v and canonicalize; keeps the thread degree of v"""
    image = m.apply(v)
    return CurveVector(*canonical_sign(*image))


def to_first_basis_vector(u) -> SL2Matrix:
    """Some M in SL2(Z) with M u = (1, 0), by extended Euclid"""
    _require_primitive(u)
    p, q = _coords(u)
    _, x, y = extended_gcd(p, q)
    return SL2Matrix(x, y, -q, p)


class MaximalSummand(str, Enum):
    PLUS = "plus"
    MINUS = "minus"
    NONE = "none"


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


@dataclass(frozen=True)
class CurvePair:
    alpha: CurveVector
    beta: CurveVector
    n: int
    c_plus: CurveVector
    c_minus: CurveVector
    d_plus: int
    d_minus: int
    eps: int
    maximal_summand: MaximalSummand
    alpha_raw: RawVector
    beta_raw: RawVector

    @property
    def c_plus_raw(self) -> RawVector:
        return (self.alpha_raw[0] + self.beta_raw[0], self.alpha_raw[1] + self.beta_raw[1])

    @property
    def c_minus_raw(self) -> RawVector:
        return (self.alpha_raw[0] - self.beta_raw[0], self.alpha_raw[1] - self.beta_raw[1])

    @property
    def is_maximal_thread(self) -> bool:
        return self.maximal_summand is not MaximalSummand.NONE

    @property
    def maximal_direction(self) -> Optional[CurveVector]:
        """Primitive direction mu_* of the maximally threaded summand"""
        if self.maximal_summand is MaximalSummand.PLUS:
            return self.c_plus
        if self.maximal_summand is MaximalSummand.MINUS:
            return self.c_minus
        return None

    @property
    def cascade_sign(self) -> int:
        """Sign of the correction exponents after replacing beta by -beta when C- is maximal"""
        if self.maximal_summand is MaximalSummand.MINUS:
            return -self.eps
        return self.eps

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "n": self.n,
            "c_plus": list(self.c_plus_raw),
            "c_minus": list(self.c_minus_raw),
            "d_plus": self.d_plus,
            "d_minus": self.d_minus,
            "eps": self.eps,
            "maximal_summand": self.maximal_summand.value,
        }


def analyze_pair(alpha, beta) -> CurvePair:
    """Fill in n, C+-, d+- and the maximal-thread flag for a primitive pair.

    The order and signs of the inputs are kept for C+-; the stored curves are
    canonical.
    """
    _require_primitive(alpha)
    _require_primitive(beta)
    a_raw, b_raw = _coords(alpha), _coords(beta)
    n = det_pair(a_raw, b_raw)
    if n == 0:
        raise ZeroDeterminant(a_raw, b_raw)

    plus = (a_raw[0] + b_raw[0], a_raw[1] + b_raw[1])
    minus = (a_raw[0] - b_raw[0], a_raw[1] - b_raw[1])
    c_plus, d_plus = canonicalize(plus)
    c_minus, d_minus = canonicalize(minus)

    size = abs(n)
    if all(x % size == 0 for x in plus):
        maximal = MaximalSummand.PLUS
    elif all(x % size == 0 for x in minus):
        maximal = MaximalSummand.MINUS
    else:
        maximal = MaximalSummand.NONE

    return CurvePair(
        alpha=canonicalize(a_raw)[0],
        beta=canonicalize(b_raw)[0],
        n=n,
        c_plus=c_plus,
        c_minus=c_minus,
        d_plus=d_plus,
        d_minus=d_minus,
        eps=_sign(n),
        maximal_summand=maximal,
        alpha_raw=a_raw,
        beta_raw=b_raw,
    )


def sl2_normal_form(u, v) -> Tuple[SL2Matrix, int]:
    """M with M u = (1, 0) and M v = (a, n), 0 <= a < n, for det(u, v) = n >= 2"""
    _require_primitive(u)
    _require_primitive(v)
    n = det_pair(u, v)
    if n == 0:
        raise ZeroDeterminant(_coords(u), _coords(v))
    if n < 2:
        raise NormalFormError(f"Normal form needs det >= 2, got {n}")
    m = to_first_basis_vector(u)
    a, second = m.apply(v)
    assert second == n
    # shears [[1, k], [0, 1]] are the stabiliser of (1, 0)
    k = -(a // n)
    m = SL2Matrix.shear(k) @ m
    return m, a + k * n


def det2_standardize(c1, c2) -> SL2Matrix:
    """M sending (c1, c2) to ((1, 0), (1, 2)) up to the sign of each image"""
    _require_primitive(c1)
    _require_primitive(c2)
    det = det_pair(c1, c2)
    if abs(det) != 2:
        raise NotDetTwo(_coords(c1), _coords(c2), det)
    m = to_first_basis_vector(c1)
    a, b = m.apply(c2)
    if b < 0:
        a, b = -a, -b
    # a is odd because c2 is primitive; shear a to 1
    m = SL2Matrix.shear((1 - a) // 2) @ m
    logger.debug(f"Standardized {_coords(c1)}, {_coords(c2)} with {m}")
    return m


def maximal_thread_pair(u, n: int, sign: int = 1, shift: int = 0) -> RawVector:
    """v = sign*u + n*w with det(u, w) = 1; the pair (u, v) is maximal-thread.

    `shift` picks a different w among the solutions w + shift*u.
    """
    m = to_first_basis_vector(u)
    w = m.inverse().apply((shift, 1))
    p, q = _coords(u)
    return (sign * p + n * w[0], sign * q + n * w[1])
