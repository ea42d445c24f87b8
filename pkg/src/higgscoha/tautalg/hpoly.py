"""Elements of the tautological algebra as one-factor tensors.

An HPoly is a :class:`Tensor` over the single ring ``(FreeRing(g),)``.
The text syntax is a signed sum of terms such as ``3/2*c[2,w]*c[1,p1]``;
factors multiply left to right, so the order of odd generators matters.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..ktheory import CurveModel
from .rings import FreeRing, Tensor, parse_pi

HPoly = Tensor


def hring(model: CurveModel) -> tuple:
    return (FreeRing(model.genus),)


def hone(model: CurveModel, coeff=1) -> Tensor:
    return Tensor.one(hring(model), coeff)


def hgen(model: CurveModel, i: int, p: int) -> Tensor:
    ring = FreeRing(model.genus)
    if not ring.is_generator((i, p)):
        raise ValueError(f"c[{i},{p}] is not a generator for genus {model.genus}")
    return Tensor.basis((ring,), (((i, p),),))


def hpoly_mul(a: Tensor, b: Tensor) -> Tensor:
    return a.mul(b)


def hpoly_degree(p: Tensor) -> int:
    """Largest degree occurring in ``p`` (0 for the zero polynomial)."""
    return p.max_degree()


def is_homogeneous(p: Tensor) -> bool:
    return len(p.degrees()) <= 1


_GEN = re.compile(r"c\[\s*(\d+)\s*,\s*([^\]\s]+)\s*\]")
_NUM = re.compile(r"\d+(?:/\d+)?")


def parse_hpoly(text: str, model: CurveModel) -> Tensor:
    """Parse ``"3/2*c[2,w]*c[1,p1] + c[1,1] - 2"``."""
    body = text.replace(" ", "")
    if not body:
        raise ValueError("empty polynomial literal")
    terms = re.findall(r"[+-]?[^+-]+", body)
    if "".join(terms) != body:
        raise ValueError(f"malformed polynomial literal {text!r}")
    total = Tensor.zero(hring(model))
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("+-")
        value = hone(model, sign)
        for factor in term.split("*"):
            if _NUM.fullmatch(factor):
                value = value.scale(Fraction(factor))
                continue
            m = _GEN.fullmatch(factor)
            if not m:
                raise ValueError(f"malformed factor {factor!r} in polynomial literal {text!r}")
            value = value.mul(hgen(model, int(m.group(1)), parse_pi(model.genus, m.group(2))))
        total = total + value
    return total
