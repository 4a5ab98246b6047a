"""Chebyshev T and S polynomials, the L sums and the S coefficient dictionary.

T uses the T0 = 2 normalization throughout; T' (T'0 = 1) exists only for
display and for reading outputs written in that convention.
"""

import threading
from typing import Callable, Dict, Iterable, List, Sequence, Tuple, Union

from algebra.laurent import LaurentPoly, t_power


class IntPoly:
    """Integer polynomial in an abstract variable x, coefficients by degree"""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        values = [int(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self._coeffs: Tuple[int, ...] = tuple(values)

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, value: int) -> "IntPoly":
        return cls((value,))

    @property
    def coefficients(self) -> Tuple[int, ...]:
        """Power-basis coefficients, index = degree"""
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, degree: int) -> int:
        return self._coeffs[degree] if 0 <= degree < len(self._coeffs) else 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPoly.constant(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: Union["IntPoly", int]) -> "IntPoly":
        other = other if isinstance(other, IntPoly) else IntPoly.constant(other)
        size = max(len(self._coeffs), len(other._coeffs))
        return IntPoly(self.coefficient(i) + other.coefficient(i) for i in range(size))

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self._coeffs)

    def __sub__(self, other: Union["IntPoly", int]) -> "IntPoly":
        other = other if isinstance(other, IntPoly) else IntPoly.constant(other)
        return self + (-other)

    def __mul__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self._coeffs)
        if not self._coeffs or not other._coeffs:
            return IntPoly()
        result = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(other._coeffs):
                result[i + j] += a * b
        return IntPoly(result)

    __rmul__ = __mul__

    def times_x(self) -> "IntPoly":
        return IntPoly((0,) + self._coeffs) if self._coeffs else IntPoly()

    def evaluate(self, value: LaurentPoly) -> LaurentPoly:
        """Horner evaluation with x replaced by a Laurent polynomial"""
        result = LaurentPoly.zero()
        for coeff in reversed(self._coeffs):
            result = result * value + coeff
        return result

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for degree in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[degree]
            if not c:
                continue
            power = "" if degree == 0 else ("x" if degree == 1 else f"x^{degree}")
            magnitude = abs(c)
            body = str(magnitude) if not power else (power if magnitude == 1 else f"{magnitude}*{power}")
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"IntPoly({str(self)!r})"


class _Sequence:
    """Lazily extended two-term recurrence, shared between threads"""

    def __init__(self, seeds: Sequence, step: Callable):
        self._values: List = list(seeds)
        self._step = step
        self._lock = threading.Lock()

    def __getitem__(self, index: int):
        if index < 0:
            raise ValueError(f"Index must be nonnegative, got {index}")
        if index >= len(self._values):
            with self._lock:
                while len(self._values) <= index:
                    self._values.append(self._step(self._values[-1], self._values[-2]))
        return self._values[index]


#: x = t^2 + t^-2, the Laurent image of the variable of IntPoly
X_LAURENT = LaurentPoly({2: 1, -2: 1})

_T = _Sequence([IntPoly.constant(2), IntPoly.x()], lambda prev, prev2: prev.times_x() - prev2)
_S = _Sequence([IntPoly.constant(1), IntPoly.x()], lambda prev, prev2: prev.times_x() - prev2)
_S_LAURENT = _Sequence(
    [LaurentPoly.one(), X_LAURENT], lambda prev, prev2: prev * X_LAURENT - prev2
)


def cheb_T(k: int) -> IntPoly:
    """T_0 = 2, T_1 = x, T_k = x*T_{k-1} - T_{k-2}"""
    return _T[k]


def cheb_T_prime(k: int) -> IntPoly:
    """T'_0 = 1 and T'_k = T_k otherwise"""
    return IntPoly.constant(1) if k == 0 else _T[k]


def cheb_S(j: int) -> IntPoly:
    """S_0 = 1, S_1 = x, S_{j+1} = x*S_j - S_{j-1}"""
    return _S[j]


def cheb_S_laurent(j: int) -> LaurentPoly:
    """S_j(t^2 + t^-2), equal to (t^(2j+2) - t^-(2j+2)) / (t^2 - t^-2)"""
    return _S_LAURENT[j]


def cheb_S_quotient(j: int) -> LaurentPoly:
    """S_j through the exact division form of the coefficient dictionary"""
    numerator = LaurentPoly({2 * (j + 1): 1, -2 * (j + 1): -1})
    return numerator.divide_by_t2_minus_tm2()


def big_L(k: int) -> LaurentPoly:
    """sum of t^(4l) for -k <= l <= k"""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return LaurentPoly({4 * l: 1 for l in range(-k, k + 1)})


def big_L_via_S(k: int) -> LaurentPoly:
    """L_k as the telescoping sum of S_{2l} - S_{2l-2} over 0 <= l <= k (S_{-2} = 0), i.e. S_{2k}"""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    total = LaurentPoly.zero()
    for l in range(k + 1):
        step = cheb_S_laurent(2 * l)
        if l:
            step = step - cheb_S_laurent(2 * l - 2)
        total = total + step
    return total


def power_basis(k: int) -> Dict[int, int]:
    """Nonzero coefficients of T_k as {power of x: coefficient}"""
    return {d: c for d, c in enumerate(cheb_T(k).coefficients) if c}


def dictionary_numerator(j: int) -> LaurentPoly:
    """t^(2j+2) - t^-(2j+2), i.e. S_j times (t^2 - t^-2)"""
    return t_power(2 * (j + 1)) - t_power(-2 * (j + 1))
