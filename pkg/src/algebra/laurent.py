"""Exact sparse Laurent polynomials in t with integer coefficients.

Values are immutable; every operation returns a new polynomial in canonical
form (no zero coefficient is ever stored, zero is the empty map).
"""

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from core.errors import LaurentDivisionError


class LaurentPoly:
    """Finite sum of c * t^e with integer c and any integer e"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        canonical: Dict[int, int] = {}
        for exp, coeff in items:
            total = canonical.get(int(exp), 0) + int(coeff)
            if total:
                canonical[int(exp)] = total
            else:
                canonical.pop(int(exp), None)
        self._terms = canonical
        self._hash = None

    @classmethod
    def _from_canonical(cls, terms: Dict[int, int]) -> "LaurentPoly":
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._from_canonical({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._from_canonical({0: 1})

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls._from_canonical({int(exp): int(coeff)} if coeff else {})

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls.monomial(value, 0)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, int]]:
        """(exponent, coefficient) pairs in descending exponent order"""
        for exp in sorted(self._terms, reverse=True):
            yield exp, self._terms[exp]

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def max_exponent(self) -> int:
        return max(self._terms) if self._terms else 0

    @property
    def min_exponent(self) -> int:
        return min(self._terms) if self._terms else 0

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            # constants hash like the ints they compare equal to
            if not self._terms or set(self._terms) == {0}:
                self._hash = hash(self._terms.get(0, 0))
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- ring operations --------------------------------------------------

    def __add__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result = dict(self._terms)
        for exp, coeff in other._terms.items():
            total = result.get(exp, 0) + coeff
            if total:
                result[exp] = total
            else:
                del result[exp]
        return LaurentPoly._from_canonical(result)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._from_canonical({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentPoly.zero()
        result: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = e1 + e2
                result[exp] = result.get(exp, 0) + c1 * c2
        return LaurentPoly._from_canonical({e: c for e, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentPoly":
        if power < 0:
            if not self.is_monomial() or abs(self.coefficient(self.max_exponent)) != 1:
                raise LaurentDivisionError("Only unit monomials have Laurent inverses")
            (exp, coeff), = self._terms.items()
            return LaurentPoly.monomial(coeff ** (-power), exp * power)
        result = LaurentPoly.one()
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k"""
        return LaurentPoly._from_canonical({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The involution t -> t^-1"""
        return LaurentPoly._from_canonical({-e: c for e, c in self._terms.items()})

    def divide_by_t2_minus_tm2(self) -> "LaurentPoly":
        """Exact quotient by t^2 - t^-2.

        Long division from the top exponent; a nonzero remainder raises
        LaurentDivisionError.
        """
        remainder = dict(self._terms)
        floor = self.min_exponent
        quotient: Dict[int, int] = {}
        while remainder:
            top = max(remainder)
            if top - 4 < floor:
                raise LaurentDivisionError(f"{self} is not divisible by t^2 - t^-2")
            coeff = remainder.pop(top)
            quotient[top - 2] = coeff
            low = top - 4
            total = remainder.get(low, 0) + coeff
            if total:
                remainder[low] = total
            else:
                remainder.pop(low, None)
        return LaurentPoly._from_canonical(quotient)

    def evaluate(self, value: Union[int, Fraction]) -> Fraction:
        """Exact rational evaluation at t = value"""
        value = Fraction(value)
        return sum((Fraction(c) * value ** e for e, c in self._terms.items()), Fraction(0))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> Dict[str, str]:
        return {str(e): str(c) for e, c in self.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, Union[str, int]]) -> "LaurentPoly":
        return cls((int(e), int(c)) for e, c in data.items())

    def to_text(self) -> str:
        """Plain text, descending exponents, e.g. 't^4 + 1 + t^-4'"""
        if not self._terms:
            return "0"
        pieces = []
        for exp, coeff in self.items():
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            if exp == 0:
                body = str(magnitude)
            else:
                power = "t" if exp == 1 else f"t^{exp}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def to_latex(self) -> str:
        """LaTeX, descending exponents, e.g. 't^{4}+1+t^{-4}'"""
        if not self._terms:
            return "0"
        text = ""
        for index, (exp, coeff) in enumerate(self.items()):
            magnitude = abs(coeff)
            if coeff < 0:
                text += "-"
            elif index:
                text += "+"
            if exp == 0:
                text += str(magnitude)
            else:
                text += ("" if magnitude == 1 else str(magnitude)) + f"t^{{{exp}}}"
        return text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


def _coerce(value: Union[LaurentPoly, int]) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    return NotImplemented




def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_monomial(coeff: int, exp: int) -> LaurentPoly:
    return LaurentPoly.monomial(coeff, exp)


def t_power(exp: int) -> LaurentPoly:
    return LaurentPoly.monomial(1, exp)
