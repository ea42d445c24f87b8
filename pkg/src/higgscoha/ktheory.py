"""Numerical K-theory of a smooth projective curve.

Classes live in the numerical Grothendieck group ``Z^2`` as pairs
``(rank, degree)``.  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class CurveModel:
    """A curve of genus ``genus``; only the genus enters any formula."""

    genus: int

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 0:
            raise ValueError(f"genus must be a non-negative integer, got {self.genus!r}")

    @property
    def canonical_degree(self) -> int:
        """Degree of the canonical bundle, ``2g - 2``."""
        return 2 * self.genus - 2


@dataclass(frozen=True, order=True)
class NumClass:
    rank: int
    degree: int

    def __add__(self, other: NumClass) -> NumClass:
        return NumClass(self.rank + other.rank, self.degree + other.degree)

    def __sub__(self, other: NumClass) -> NumClass:
        return NumClass(self.rank - other.rank, self.degree - other.degree)

    def __neg__(self) -> NumClass:
        return NumClass(-self.rank, -self.degree)

    def __mul__(self, n: int) -> NumClass:
        return NumClass(n * self.rank, n * self.degree)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.rank == 0 and self.degree == 0

    def __str__(self):
        return f"({self.rank},{self.degree})"

    @classmethod
    def parse(cls, text: str) -> NumClass:
        """Parse an ``"r,d"`` literal (optional parentheses and signs)."""
        body = text.strip().strip("()").replace(" ", "")
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"malformed class literal {text!r}; expected 'r,d'")
        try:
            return cls(int(parts[0]), int(parts[1]))
        except ValueError:
            raise ValueError(f"malformed class literal {text!r}; expected 'r,d'") from None


ZERO = NumClass(0, 0)


class _Infinity:
    """The slope of a nonzero torsion class."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"


INFINITY = _Infinity()


class UndefinedSlopeError(ValueError):
    pass


def is_positive(alpha: NumClass) -> bool:
    """Membership in the positive cone: ``r > 0``, or ``r = 0`` and ``d >= 0``."""
    return alpha.rank > 0 or (alpha.rank == 0 and alpha.degree >= 0)


def euler_coh(alpha: NumClass, beta: NumClass, model: CurveModel) -> int:
    """Euler form ``<alpha, beta>`` of coherent sheaves on the curve."""
    g = model.genus
    return (1 - g) * alpha.rank * beta.rank + (alpha.rank * beta.degree - beta.rank * alpha.degree)


def euler_higgs(alpha: NumClass, beta: NumClass, model: CurveModel) -> int:
    """Euler form of the 2-Calabi-Yau category of Higgs sheaves."""
    return 2 * (1 - model.genus) * alpha.rank * beta.rank


def slope(alpha: NumClass) -> Fraction | _Infinity:
    if alpha.rank != 0:
        return Fraction(alpha.degree, alpha.rank)
    if alpha.degree > 0:
        return INFINITY
    raise UndefinedSlopeError(f"slope undefined for the class {alpha}")


def twist(alpha: NumClass, n: int) -> NumClass:
    """Class of ``F (x) L`` for a line bundle ``L`` of degree ``n``."""
    return NumClass(alpha.rank, alpha.degree + n * alpha.rank)


def leq_standard(beta: NumClass, alpha: NumClass) -> bool:
    """``beta <= alpha`` iff ``alpha - beta`` is a positive class."""
    return is_positive(alpha - beta)


def dim_coh(alpha: NumClass, model: CurveModel) -> int:
    return -euler_coh(alpha, alpha, model)


def dim_higgs(alpha: NumClass, model: CurveModel) -> int:
    return -2 * euler_coh(alpha, alpha, model)


def dim_ext_stack(alpha: NumClass, beta: NumClass, model: CurveModel) -> int:
    """Dimension of the stack of inclusions ``G c F`` with ``[F/G] = alpha``, ``[G] = beta``."""
    return -euler_coh(alpha, alpha, model) - euler_coh(beta, beta, model) - euler_coh(alpha, beta, model)


def rank_q_fibration(line_degree: int, alpha: NumClass, beta: NumClass, model: CurveModel) -> int:
    """Rank of the affine fibration over the product of Quot-scheme charts.

    ``<L,beta><L,alpha> - <beta,alpha>`` where ``L`` is a line bundle of
    degree ``line_degree``.
    """
    line = NumClass(1, line_degree)
    return euler_coh(line, beta, model) * euler_coh(line, alpha, model) - euler_coh(beta, alpha, model)
