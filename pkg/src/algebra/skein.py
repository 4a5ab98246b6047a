"""Elements of the skein algebra in the threaded T-basis.

An element is a finite map (eta degree, basis key) -> Laurent coefficient.
The peripheral loop eta is central, so it is carried as a grading.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple, Union

from algebra.curves import CurveVector, SL2Matrix, canonicalize, sl2_apply_curve
from algebra.laurent import LaurentPoly
from core.errors import CurveError


Scalar = Union[LaurentPoly, int]


@dataclass(frozen=True)
class BasisKey:
    """Either the unit (mu is None) or T_k(mu) for a primitive canonical mu"""
    mu: Optional[CurveVector] = None
    k: int = 0

    def __post_init__(self):
        if self.mu is None:
            if self.k != 0:
                raise CurveError(f"Unit key cannot carry thread degree {self.k}")
            return
        if self.k < 1:
            raise CurveError(f"Threaded key needs k >= 1, got {self.k}")
        if not self.mu.is_primitive():
            raise CurveError(f"Threaded key needs a primitive curve, got {self.mu}")

    @classmethod
    def threaded(cls, mu, k: int) -> "BasisKey":
        curve, thread = canonicalize(mu.as_tuple() if isinstance(mu, CurveVector) else mu)
        if thread != 1:
            raise CurveError(f"Threaded key needs a primitive curve, got {mu}")
        return cls(curve, k)

    @property
    def is_unit(self) -> bool:
        return self.mu is None

    @property
    def vector(self) -> Tuple[int, int]:
        """Full labelled vector k*mu; (0, 0) for the unit"""
        if self.mu is None:
            return (0, 0)
        return self.mu.scaled(self.k)

    def sort_key(self) -> Tuple:
        """Unit first, then by slope q/p (vertical last), then thread degree"""
        if self.mu is None:
            return (0,)
        p, q = self.mu.p, self.mu.q
        if p == 0:
            return (2, 0, self.k)
        return (1, Fraction(q, p), self.k)

    def to_json(self) -> Dict[str, Any]:
        if self.mu is None:
            return {"unit": True}
        return {"mu": self.mu.to_json(), "k": self.k}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "BasisKey":
        if data.get("unit"):
            return UNIT
        return cls.threaded(tuple(data["mu"]), int(data["k"]))

    def __str__(self) -> str:
        if self.mu is None:
            return "1"
        p, q = self.vector
        return f"({p},{q})"


UNIT = BasisKey()

TermKey = Tuple[int, BasisKey]


def _scalar(value: Scalar) -> LaurentPoly:
    return value if isinstance(value, LaurentPoly) else LaurentPoly.constant(value)


class SkeinElement:
    """Immutable eta-graded combination of T-basis keys over Z[t, t^-1]"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[TermKey, Scalar], None] = None):
        canonical: Dict[TermKey, LaurentPoly] = {}
        for (degree, key), coeff in (terms or {}).items():
            if degree < 0:
                raise ValueError(f"Eta degree must be nonnegative, got {degree}")
            _accumulate(canonical, (degree, key), _scalar(coeff))
        self._terms = canonical
        self._hash = None

    @classmethod
    def _from_canonical(cls, terms: Dict[TermKey, LaurentPoly]) -> "SkeinElement":
        element = cls.__new__(cls)
        element._terms = terms
        element._hash = None
        return element

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "SkeinElement":
        return cls._from_canonical({})

    @classmethod
    def scalar(cls, coeff: Scalar, eta_degree: int = 0) -> "SkeinElement":
        return cls({(eta_degree, UNIT): coeff})

    @classmethod
    def eta(cls, degree: int = 1) -> "SkeinElement":
        return cls.scalar(1, degree)

    @classmethod
    def basis(cls, key: BasisKey, coeff: Scalar = 1, eta_degree: int = 0) -> "SkeinElement":
        return cls({(eta_degree, key): coeff})

    @classmethod
    def from_raw(cls, v) -> "SkeinElement":
        """The curve (p, q)_T; (0, 0) is T_0 = 2"""
        curve, thread = canonicalize(v)
        if thread == 0:
            return cls.scalar(2)
        return cls.basis(BasisKey(curve, thread))

    @classmethod
    def threaded_minus_delta(cls, mu: CurveVector, k: int) -> "SkeinElement":
        """T_k(mu) - delta_{k,0}: the unit when k == 0"""
        if k == 0:
            return cls.scalar(1)
        return cls.basis(BasisKey(mu, k))

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[TermKey, LaurentPoly]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, BasisKey, LaurentPoly]]:
        """(eta degree, key, coefficient) in display order"""
        for degree, key in sorted(self._terms, key=lambda dk: (dk[0], dk[1].sort_key())):
            yield degree, key, self._terms[(degree, key)]

    def coefficient(self, key: BasisKey, eta_degree: int = 0) -> LaurentPoly:
        return self._terms.get((eta_degree, key), LaurentPoly.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def eta_degrees(self) -> List[int]:
        return sorted({degree for degree, _ in self._terms})

    @property
    def max_eta_degree(self) -> int:
        """Highest eta power present, -1 for zero"""
        return max((degree for degree, _ in self._terms), default=-1)

    def eta_component(self, degree: int) -> "SkeinElement":
        """Coefficient of eta^degree, returned at degree 0"""
        return SkeinElement._from_canonical(
            {(0, key): c for (d, key), c in self._terms.items() if d == degree}
        )

    def main_part(self) -> "SkeinElement":
        return SkeinElement._from_canonical({k: c for k, c in self._terms.items() if k[0] == 0})

    def correction(self) -> "SkeinElement":
        """The part lying in the ideal generated by eta"""
        return SkeinElement._from_canonical({k: c for k, c in self._terms.items() if k[0] > 0})

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkeinElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- module operations ------------------------------------------------

    def __add__(self, other: "SkeinElement") -> "SkeinElement":
        if not isinstance(other, SkeinElement):
            return NotImplemented
        result = dict(self._terms)
        for term_key, coeff in other._terms.items():
            _accumulate(result, term_key, coeff)
        return SkeinElement._from_canonical(result)

    def __neg__(self) -> "SkeinElement":
        return SkeinElement._from_canonical({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "SkeinElement") -> "SkeinElement":
        if not isinstance(other, SkeinElement):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff: Scalar) -> "SkeinElement":
        coeff = _scalar(coeff)
        if coeff.is_zero():
            return SkeinElement.zero()
        return SkeinElement._from_canonical({k: c * coeff for k, c in self._terms.items()})

    def __mul__(self, other: Scalar) -> "SkeinElement":
        """Scalar action only; element products live in the engine"""
        if isinstance(other, (LaurentPoly, int)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def eta_shift(self, degree: int) -> "SkeinElement":
        """Multiply by eta^degree"""
        if degree < 0:
            raise ValueError(f"Eta shift must be nonnegative, got {degree}")
        return SkeinElement._from_canonical(
            {(d + degree, key): c for (d, key), c in self._terms.items()}
        )

    def sl2_apply(self, m: SL2Matrix) -> "SkeinElement":
        result: Dict[TermKey, LaurentPoly] = {}
        for (degree, key), coeff in self._terms.items():
            if not key.is_unit:
                key = BasisKey(sl2_apply_curve(m, key.mu), key.k)
            _accumulate(result, (degree, key), coeff)
        return SkeinElement._from_canonical(result)

    def bar(self) -> "SkeinElement":
        """t -> t^-1 on every coefficient; curves and eta are fixed"""
        return SkeinElement._from_canonical({k: c.bar() for k, c in self._terms.items()})

    # -- serialization ----------------------------------------------------

    def to_json(self) -> Dict[str, Any]:
        return {
            "terms": [
                {"eta": degree, "key": key.to_json(), "coeff": coeff.to_json()}
                for degree, key, coeff in self.items()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "SkeinElement":
        terms: Dict[TermKey, LaurentPoly] = {}
        for entry in data.get("terms", []):
            term_key = (int(entry.get("eta", 0)), BasisKey.from_json(entry["key"]))
            _accumulate(terms, term_key, LaurentPoly.from_json(entry["coeff"]))
        return cls._from_canonical(terms)

    def __repr__(self) -> str:
        body = ", ".join(f"eta^{d}*{k}: {c}" for d, k, c in self.items())
        return f"SkeinElement({{{body}}})"


def _accumulate(terms: Dict[TermKey, LaurentPoly], term_key: TermKey, coeff: LaurentPoly) -> None:
    total = terms.get(term_key, LaurentPoly.zero()) + coeff
    if total.is_zero():
        terms.pop(term_key, None)
    else:
        terms[term_key] = total


def se_from_raw(v) -> SkeinElement:
    return SkeinElement.from_raw(v)


def se_add(a: SkeinElement, b: SkeinElement) -> SkeinElement:
    return a + b


def se_scale(e: SkeinElement, c: Scalar) -> SkeinElement:
    return e.scale(c)


def se_eta_shift(e: SkeinElement, d: int) -> SkeinElement:
    return e.eta_shift(d)


def se_sl2_apply(m: SL2Matrix, e: SkeinElement) -> SkeinElement:
    return e.sl2_apply(m)


def se_equal(a: SkeinElement, b: SkeinElement) -> bool:
    return a == b
