"""Text, LaTeX and JSON renderings of skein elements.

Order is fixed: eta degree ascending, then unit, then threaded keys by
slope and thread degree, coefficients by descending exponent.
"""

import json
from itertools import groupby
from typing import List, Tuple

from algebra.laurent import LaurentPoly
from algebra.skein import BasisKey, SkeinElement
from core.models import Normalization, RenderFormat


UNIT_TPRIME = "T'(0,0)"


def _key_text(key: BasisKey, normalization: Normalization) -> str:
    if key.is_unit:
        return UNIT_TPRIME if normalization == Normalization.TPRIME else ""
    p, q = key.vector
    return f"({p},{q})"


def _key_latex(key: BasisKey, normalization: Normalization) -> str:
    if key.is_unit:
        return UNIT_TPRIME if normalization == Normalization.TPRIME else ""
    p, q = key.vector
    return f"({p},{q})_T"


def _term_text(key: BasisKey, coeff: LaurentPoly, normalization: Normalization) -> Tuple[str, bool]:
    """Rendered term and whether it is a single product (safe to append '*eta')"""
    label = _key_text(key, normalization)
    if not label:
        return coeff.to_text(), coeff.is_monomial()
    if coeff == 1:
        return label, True
    if coeff == -1:
        return f"-{label}", True
    if coeff.is_monomial():
        return f"{coeff.to_text()}*{label}", True
    return f"({coeff.to_text()})*{label}", True


def _term_latex(key: BasisKey, coeff: LaurentPoly, normalization: Normalization) -> Tuple[str, bool]:
    label = _key_latex(key, normalization)
    if not label:
        return coeff.to_latex(), coeff.is_monomial()
    if coeff == 1:
        return label, True
    if coeff == -1:
        return f"-{label}", True
    if coeff.is_monomial():
        return f"{coeff.to_latex()}{label}", True
    return f"({coeff.to_latex()}){label}", True


def _join(pieces: List[str], separator: str) -> str:
    """Sum of rendered terms; a leading minus becomes a subtraction"""
    text = ""
    plus, minus = separator
    for index, piece in enumerate(pieces):
        if index == 0:
            text = piece
        elif piece.startswith("-"):
            text += minus + piece[1:]
        else:
            text += plus + piece
    return text


def render_text(element: SkeinElement, normalization: Normalization = Normalization.T0) -> str:
    if element.is_zero():
        return "0"
    groups = []
    for degree, terms in groupby(element.items(), key=lambda item: item[0]):
        rendered = [_term_text(key, coeff, normalization) for _, key, coeff in terms]
        if degree == 0:
            groups.append(_join([text for text, _ in rendered], (" + ", " - ")))
            continue
        eta = "eta" if degree == 1 else f"eta^{degree}"
        if len(rendered) == 1 and rendered[0][1]:
            text = rendered[0][0]
            groups.append(eta if text == "1" else (f"-{eta}" if text == "-1" else f"{text}*{eta}"))
        else:
            inner = _join([text for text, _ in rendered], (" + ", " - "))
            groups.append(f"({inner})*{eta}")
    return _join(groups, (" + ", " - "))


def render_latex(element: SkeinElement, normalization: Normalization = Normalization.T0) -> str:
    if element.is_zero():
        return "0"
    groups = []
    for degree, terms in groupby(element.items(), key=lambda item: item[0]):
        rendered = [_term_latex(key, coeff, normalization) for _, key, coeff in terms]
        if degree == 0:
            groups.append(_join([text for text, _ in rendered], (" + ", " - ")))
            continue
        eta = r"\eta" if degree == 1 else rf"\eta^{{{degree}}}"
        if len(rendered) == 1 and rendered[0][1]:
            text = rendered[0][0]
            groups.append(eta if text == "1" else (f"-{eta}" if text == "-1" else f"{text}{eta}"))
        else:
            inner = _join([text for text, _ in rendered], ("+", "-"))
            groups.append(f"({inner}){eta}")
    return _join(groups, (" + ", " - "))


def render_json(element: SkeinElement, normalization: Normalization = Normalization.T0) -> str:
    payload = element.to_json()
    if normalization == Normalization.TPRIME:
        payload["normalization"] = normalization.value
    return json.dumps(payload, indent=2)


def render(
    element: SkeinElement,
    format: RenderFormat = RenderFormat.TEXT,
    normalization: Normalization = Normalization.T0,
) -> str:
    """Render in the requested format"""
    if format == RenderFormat.LATEX:
        return render_latex(element, normalization)
    if format == RenderFormat.JSON:
        return render_json(element, normalization)
    return render_text(element, normalization)
