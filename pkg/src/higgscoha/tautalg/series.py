"""Truncated Poincare series in ``q`` with exact coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..ktheory import CurveModel
from .rings import fraction_str


@dataclass(frozen=True)
class QSeries:
    """``sum_{k <= order} coeffs[k] q^k``; terms above ``order`` are unknown."""

    coeffs: tuple
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be >= 0")
        cs = tuple(Fraction(c) for c in self.coeffs[: self.order + 1])
        cs = cs + (Fraction(0),) * (self.order + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def one(cls, order: int) -> QSeries:
        return cls((1,), order)

    @classmethod
    def zero(cls, order: int) -> QSeries:
        return cls((), order)

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise IndexError(f"coefficient q^{k} lies above the truncation order {self.order}")
        return self.coeffs[k]

    def __add__(self, other: QSeries) -> QSeries:
        n = min(self.order, other.order)
        return QSeries(tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)), n)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries(tuple(other * c for c in self.coeffs), self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return QSeries(tuple(out), n)

    __rmul__ = __mul__

    def __str__(self):
        out = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            var = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not var:
                text = fraction_str(mag)
            elif mag == 1:
                text = var
            elif mag.denominator == 1:
                text = f"{mag}{var}"
            else:
                text = f"({fraction_str(mag)}){var}"
            sep = ("-" if c < 0 else "") if not out else (" - " if c < 0 else " + ")
            out.append(sep + text)
        return "".join(out) or "0"

    def evaluate(self, x) -> Fraction:
        return sum((c * Fraction(x) ** k for k, c in enumerate(self.coeffs)), Fraction(0))

    def to_json(self) -> list:
        return [int(c) if c.denominator == 1 else fraction_str(c) for c in self.coeffs]


def free_series(even_degrees: Sequence[int], odd_degrees: Sequence[int], order: int) -> QSeries:
    """Series of the free supercommutative algebra on the given generators."""
    c = [0] * (order + 1)
    c[0] = 1
    for e in even_degrees:
        if e <= 0:
            raise ValueError("even generators need positive degree")
        for k in range(e, order + 1):
            c[k] += c[k - e]
    for e in odd_degrees:
        for k in range(order, e - 1, -1):
            c[k] += c[k - e]
    return QSeries(tuple(c), order)


def _hgenerator_degrees(model: CurveModel, order: int) -> tuple[list[int], list[int]]:
    g = model.genus
    even, odd = [], []
    for i in range(1, order // 2 + 2):
        if 2 * i <= order:
            even.append(2 * i)  # c_{i,1}
        odd.extend([2 * i - 1] * (2 * g) if 2 * i - 1 <= order else [])
        if i >= 2 and 2 * i - 2 <= order:
            even.append(2 * i - 2)  # c_{i,w}
    return even, odd


def poincare_coh_positive_rank(model: CurveModel, order: int) -> QSeries:
    """Poincare series of ``H*(Coh_alpha)`` for ``rk alpha > 0``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    even, odd = _hgenerator_degrees(model, order)
    return free_series(even, odd, order)


def poincare_coh_torsion(model: CurveModel, d: int, order: int) -> QSeries:
    """Poincare series of ``S^d(H*(X)[z])``: the ``u^d`` coefficient of

        prod_k (1 + u q^(2k+1))^(2g) / ((1 - u q^(2k)) (1 - u q^(2k+2))).
    """
    if d < 0 or order < 0:
        raise ValueError("d and order must be >= 0")
    g = model.genus
    # table[j][k]: coefficient of u^j q^k
    table = [[0] * (order + 1) for _ in range(d + 1)]
    table[0][0] = 1
    for k in range(order // 2 + 1):
        for e in (2 * k, 2 * k + 2):
            if e > order:
                continue
            for j in range(1, d + 1):
                row, prev = table[j], table[j - 1]
                for n in range(e, order + 1):
                    row[n] += prev[n - e]
        e = 2 * k + 1
        if e <= order:
            for _ in range(2 * g):
                for j in range(d, 0, -1):
                    row, prev = table[j], table[j - 1]
                    for n in range(order, e - 1, -1):
                        row[n] += prev[n - e]
    return QSeries(tuple(table[d]), order)
