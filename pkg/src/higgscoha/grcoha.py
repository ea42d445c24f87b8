"""Associated-graded model of the nilpotent Hall algebra.

The stratum of Jordan type ``t = (a_1, ..., a_s)`` is an iterated vector
bundle stack over ``prod_j Coh_{a_j}``, so its cohomology is the tensor
product of the ``H*(Coh_{a_j})``:

* positive rank: one free tautological factor;
* ``(0, d)`` with ``d > 0``: ``d`` copies of ``H*(X)[z]``, of which only the
  super-symmetric tensors (``S^d``) occur;
* ``(0, 0)``: nothing.

Chern data of the universal entry sheaves live in that ring tensored with
``H*(X)``.  The row sheaves ``E_i = ker theta^i / ker theta^(i-1)`` satisfy
``[E_i] = sum_{j >= i} [E_{a_j} (x) omega^(i-j)]``, and ``rho_i`` sends
``c_{k,p}`` to the Kunneth component of ``c(E_i)``.  Products of capped
fundamental classes are computed only up to classes supported on smaller
strata.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

from .jordan import (
    JordanType,
    downset,
    enumerate_rank0,
    row_classes,
    rows_to_type,
    total_class,
    vb_stack_rank,
)
from .ktheory import CurveModel, NumClass, dim_coh, is_positive
from .tautalg.chern import (
    KunnethClass,
    chchar_to_chern,
    kmul,
    kunneth_component,
    twist_class,
    universal_chern,
)
from .tautalg.hopf import DegreeOverflowError, iterated_coproduct
from .tautalg.hpoly import hone
from .tautalg.rings import CurveZRing, FreeRing, RingHom, Tensor, XCohRing, linear_combination
from .tautalg.series import QSeries, poincare_coh_positive_rank, poincare_coh_torsion

LEADING_TAG = "leading term modulo lower strata"


@dataclass(frozen=True)
class GenClass:
    """``poly`` capped with the fundamental class of the zero section over ``alpha``."""

    alpha: NumClass
    poly: Tensor


def fundamental_class(alpha: NumClass, model: CurveModel) -> GenClass:
    if not is_positive(alpha) or alpha.is_zero():
        raise ValueError(f"class {alpha} is not a nonzero positive class")
    return GenClass(alpha, hone(model))


def diagonal_class(model: CurveModel) -> dict:
    """Class of the diagonal of ``X x X`` as ``{(p, q): coeff}`` for ``p (x) q``."""
    g = model.genus
    top = 2 * g + 1
    out = {(top, 0): 1, (0, top): 1}
    for a in range(1, g + 1):
        out[(a, a + g)] = -1
        out[(a + g, a)] = 1
    return out


def _torsion_chchar(model: CurveModel, n_points: int, first: int, rings: tuple, max_degree: int) -> Tensor:
    """``sum_m e^{z_m} ([Delta_m] - (1-g) w_m (x) w)`` over ``n_points`` curve factors.

    This is the Chern character of a direct sum of skyscraper sheaves moving
    along the curve.  Factor ``first + m`` of ``rings`` carries point ``m``;
    the last factor is the curve.
    """
    g = model.genus
    top = 2 * g + 1
    unit = tuple(r.unit for r in rings[:-1])
    pieces = list(diagonal_class(model).items()) + [((top, top), -(1 - g))]
    terms: dict = {}
    for m in range(n_points):
        for k in range(max_degree // 2 + 1):
            for (p, q), c in pieces:
                key = list(unit) + [q]
                key[first + m] = (p, k)
                key = tuple(key)
                terms[key] = terms.get(key, 0) + Fraction(c, factorial(k))
    return Tensor(rings, terms).truncate(max_degree, len(rings) - 1)


class Stratum:
    """Cohomology ring of the stratum of a Jordan type, with its Chern data."""

    def __init__(self, t: JordanType, model: CurveModel, max_degree: int):
        if max_degree < 0:
            raise ValueError("truncation order N must be >= 0")
        self.type = t
        self.model = model
        self.max_degree = max_degree
        g = model.genus
        rings: list = []
        self.entry_slots: list[tuple[int, int]] = []
        for a in t:
            start = len(rings)
            if a.rank > 0:
                rings.append(FreeRing(g))
            elif a.degree > 0:
                rings.extend([CurveZRing(g)] * a.degree)
            self.entry_slots.append((start, len(rings)))
        self.rings = tuple(rings)
        self.krings = self.rings + (XCohRing(g),)
        self.rows = row_classes(t, model)
        self._entry_chern: list[KunnethClass] | None = None
        self._row_chern: list[KunnethClass] | None = None
        self._row_maps: dict = {}

    # -- Chern data ----------------------------------------------------
    def entry_chern(self) -> list[KunnethClass]:
        """Total Chern classes of the universal sheaves of the entries ``a_j``."""
        if self._entry_chern is None:
            out = []
            n = self.max_degree
            for a, (start, stop) in zip(self.type, self.entry_slots):
                if a.rank > 0:
                    c = universal_chern(self.model, a.degree, 0, 1, n)
                    out.append(KunnethClass(_embed(c, start, self.krings), a.rank))
                elif a.degree > 0:
                    ch = _torsion_chchar(self.model, a.degree, start, self.krings, n)
                    out.append(chchar_to_chern(ch, n))
                else:
                    out.append(KunnethClass(Tensor.one(self.krings), 0))
            self._entry_chern = out
        return self._entry_chern

    def row_chern(self) -> list[KunnethClass]:
        """Total Chern classes of the row sheaves ``E_1, ..., E_s``."""
        if self._row_chern is None:
            ell = self.model.canonical_degree
            entries = self.entry_chern()
            n = self.max_degree
            s = len(self.type)
            out = []
            for i in range(1, s + 1):
                chern = Tensor.one(self.krings)
                rank = 0
                for j in range(i, s + 1):
                    part = twist_class(entries[j - 1], (i - j) * ell, n)
                    chern = kmul(chern, part.chern, n)
                    rank += part.rank
                out.append(KunnethClass(chern, rank))
            self._row_chern = out
        return self._row_chern

    def row_map(self, i: int) -> RingHom:
        """``rho_i``: the tautological algebra acting through the ``i``-th row sheaf (1-based)."""
        hom = self._row_maps.get(i)
        if hom is None:
            hom = _component_hom(lambda: self.row_chern()[i - 1], self.model, self.rings, self.max_degree)
            self._row_maps[i] = hom
        return hom

    def total_map(self) -> RingHom:
        """The tautological algebra acting through the whole universal sheaf."""
        hom = self._row_maps.get(0)
        if hom is None:
            memo = []

            def whole():
                if not memo:
                    chern = Tensor.one(self.krings)
                    for row in self.row_chern():
                        chern = kmul(chern, row.chern, self.max_degree)
                    memo.append(KunnethClass(chern, 0))
                return memo[0]

            hom = _component_hom(whole, self.model, self.rings, self.max_degree)
            self._row_maps[0] = hom
        return hom

    # -- products ------------------------------------------------------
    def leading_product_tensor(self, t: Tensor) -> Tensor:
        """Image of ``sum m_1 (x) ... (x) m_s`` under ``rho_1(m_1) ... rho_s(m_s)``."""
        s = len(self.type)
        if len(t.rings) != s:
            raise ValueError(f"expected {s} tensor factors, got {len(t.rings)}")
        maps = [self.row_map(i) for i in range(1, s + 1)]
        parts = []
        for key, c in t.terms.items():
            value = Tensor.one(self.rings)
            for hom, mono in zip(maps, key):
                value = value.mul(hom.monomial(mono), self.max_degree)
                if value.is_zero():
                    break
            parts.append((value, c))
        return linear_combination(self.rings, parts)

    def payload_of(self, polys: Sequence[Tensor]) -> Tensor:
        """``rho_1(P_1) ... rho_s(P_s)`` for polynomials listed bottom row first."""
        value = Tensor.one(self.rings)
        for i, p in enumerate(polys, start=1):
            deg = p.max_degree()
            if deg > self.max_degree:
                raise DegreeOverflowError(deg, self.max_degree)
            value = value.mul(self.row_map(i)(p), self.max_degree)
        return value

    def series(self) -> QSeries:
        return stratum_series(self.type, self.model, self.max_degree)


def _embed(c: Tensor, start: int, krings: tuple) -> Tensor:
    """Place a one-slot Kunneth class into factor ``start`` of ``krings``."""
    out = {}
    units = [r.unit for r in krings[:-1]]
    for (mono, q), v in c.terms.items():
        k = list(units) + [q]
        k[start] = mono
        out[tuple(k)] = v
    return Tensor(krings, out)


def _component_hom(total: Callable[[], KunnethClass], model: CurveModel, rings: tuple, max_degree: int) -> RingHom:
    """``c_{i,p} -> (2i, p)`` Kunneth component; the class is computed on first use."""
    ring = FreeRing(model.genus)

    def on_generator(gen):
        i, p = gen
        return kunneth_component(total().chern, 2 * i, p)

    return RingHom(ring, rings, on_generator, max_degree)


@lru_cache(maxsize=128)
def stratum(t: JordanType, model: CurveModel, max_degree: int) -> Stratum:
    return Stratum(t, model, max_degree)


@dataclass(frozen=True)
class StratumClass:
    """A class on the stratum of ``jordan_type``, known modulo smaller strata.

    ``payload`` lies in the stratum's cohomology; its Borel-Moore degree is
    ``bm_top - deg``.
    """

    jordan_type: JordanType
    payload: Tensor
    model: CurveModel
    max_degree: int
    tag: str = LEADING_TAG

    @property
    def bm_top(self) -> int:
        return 2 * dim_coh(total_class(self.jordan_type, self.model), self.model)

    @property
    def bm_offset(self) -> int:
        """Real codimension of the zero section inside the stratum's bundle."""
        return 2 * vb_stack_rank(self.jordan_type, self.model)

    def coefficient_of_fundamental(self) -> Fraction:
        return self.payload.constant()

    def to_json(self) -> dict:
        return {
            "jordan_type": str(self.jordan_type),
            "rows": [str(r) for r in row_classes(self.jordan_type, self.model)],
            "payload": self.payload.to_json(),
            "bm_top": self.bm_top,
            "tag": self.tag,
        }

    def __str__(self):
        return f"[{self.jordan_type}] {self.payload}  ({self.tag})"


def leading_product(factors: Sequence[GenClass], model: CurveModel, max_degree: int) -> StratumClass:
    """Leading term of ``P_s [g_s] * ... * P_1 [g_1]`` (top row first).

    Raises :class:`~higgscoha.jordan.InvalidRows` if the row classes
    ``(g_1, ..., g_s)`` decode to no Jordan type.
    """
    if not factors:
        raise ValueError("at least one factor is required")
    bottom_first = list(reversed(factors))
    t = rows_to_type([f.alpha for f in bottom_first], model)
    st = stratum(t, model, max_degree)
    payload = st.payload_of([f.poly for f in bottom_first])
    return StratumClass(t, payload, model, max_degree)


def leading_product_tensor(rows: Sequence[NumClass], t: Tensor, model: CurveModel, max_degree: int) -> StratumClass:
    """Leading term for a tensor ``sum P_1 (x) ... (x) P_s`` (bottom row first)."""
    jt = rows_to_type(list(rows), model)
    st = stratum(jt, model, max_degree)
    return StratumClass(jt, st.leading_product_tensor(t), model, max_degree)


def strata_sheaf_classes(t: JordanType, model: CurveModel, max_degree: int) -> list[KunnethClass]:
    """Total Chern classes of ``E_1, ..., E_s`` with their numerical classes."""
    return list(stratum(t, model, max_degree).row_chern())


def entry_sheaf_classes(t: JordanType, model: CurveModel, max_degree: int) -> list[KunnethClass]:
    return list(stratum(t, model, max_degree).entry_chern())


def hmodule_act(h: Tensor, x: StratumClass, model: CurveModel, max_degree: int) -> StratumClass:
    """``h . x``: split ``h`` over the rows by the iterated coproduct, then multiply."""
    if max_degree != x.max_degree:
        raise ValueError(f"truncation mismatch: N={max_degree} but the class was built with N={x.max_degree}")
    rows = row_classes(x.jordan_type, model)
    split = iterated_coproduct(h, rows, model, max_degree)
    st = stratum(x.jordan_type, model, max_degree)
    acted = st.leading_product_tensor(split).mul(x.payload, max_degree)
    return StratumClass(x.jordan_type, acted, model, max_degree, x.tag)


def hmodule_act_direct(h: Tensor, x: StratumClass, model: CurveModel, max_degree: int) -> StratumClass:
    """Same action through the Chern classes of the whole universal sheaf."""
    st = stratum(x.jordan_type, model, max_degree)
    acted = st.total_map()(h).mul(x.payload, max_degree)
    return StratumClass(x.jordan_type, acted, model, max_degree, x.tag)


def coh_series(alpha: NumClass, model: CurveModel, order: int) -> QSeries:
    if alpha.rank > 0:
        return poincare_coh_positive_rank(model, order)
    if alpha.rank == 0 and alpha.degree >= 0:
        return poincare_coh_torsion(model, alpha.degree, order)
    raise ValueError(f"class {alpha} is not positive")


def stratum_series(t: JordanType, model: CurveModel, order: int) -> QSeries:
    """Poincare series of the stratum: product of the entries' ``Coh`` series."""
    result = QSeries.one(order)
    for a in t:
        result = result * coh_series(a, model, order)
    return result


def downset_series(a: JordanType, degree_window: int, model: CurveModel, order: int) -> tuple[QSeries, dict, bool]:
    """Sum of stratum series over ``{b <= a}`` within the window.

    Returns ``(series, bounds, exact)``; exact for rank-0 input.
    """
    found = downset(a, degree_window, model)
    total = QSeries.zero(order)
    for b in found:
        total = total + stratum_series(b, model, order)
    return total, dict(found.bounds), found.exact


# -- generation at the associated-graded level -------------------------------


def _canonical_projection(st: Stratum, t: Tensor) -> dict:
    """Coefficients on super-symmetric representatives (sorted within each torsion entry)."""
    out = {}
    groups = [(a, start, stop) for a, (start, stop) in zip(st.type, st.entry_slots) if a.rank == 0 and stop > start]
    for key, c in t.terms.items():
        if all(list(key[s:e]) == sorted(key[s:e]) for _, s, e in groups):
            out[key] = c
    return out


def _monomials_by_degree(model: CurveModel, max_degree: int) -> dict[int, list]:
    ring = FreeRing(model.genus)
    gens = ring.generators(max_degree)
    by_degree: dict[int, list] = {0: [()]}
    frontier = [()]
    while frontier:
        nxt = []
        for mono in frontier:
            start = mono[-1] if mono else None
            for gen in gens:
                if start is not None and gen < start:
                    continue
                if start == gen and ring.parity((gen,)):
                    continue
                new = mono + (gen,)
                deg = ring.degree(new)
                if deg <= max_degree:
                    by_degree.setdefault(deg, []).append(new)
                    nxt.append(new)
        frontier = nxt
    return by_degree


def generated_dimensions(t: JordanType, model: CurveModel, max_degree: int) -> list[int]:
    """Dimension, per degree ``<= max_degree``, of the span of all leading
    products of acted fundamental classes on the stratum of ``t``."""
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    st = stratum(t, model, max_degree)
    s = len(t)
    monos = _monomials_by_degree(model, max_degree)
    vectors: dict[int, list[dict]] = {k: [] for k in range(max_degree + 1)}
    ring = FreeRing(model.genus)
    for degs in itertools.product(range(max_degree + 1), repeat=s):
        if sum(degs) > max_degree:
            continue
        for choice in itertools.product(*(monos.get(d, []) for d in degs)):
            value = st.leading_product_tensor(Tensor.basis((ring,) * s, choice))
            if value.is_zero():
                continue
            for k in range(max_degree + 1):
                part = _canonical_projection(st, value.part(k))
                if part:
                    vectors[k].append(part)
    dims = []
    for k in range(max_degree + 1):
        rows = vectors[k]
        if not rows:
            dims.append(0)
            continue
        columns = sorted({key for row in rows for key in row}, key=repr)
        index = {key: n for n, key in enumerate(columns)}
        dense = [[QQ(0)] * len(columns) for _ in rows]
        for r, row in enumerate(rows):
            for key, c in row.items():
                dense[r][index[key]] = QQ(c.numerator, c.denominator)
        dims.append(DomainMatrix(dense, (len(rows), len(columns)), QQ).rank())
    return dims


def generation_report(d: int, model: CurveModel, max_degree: int) -> list[dict]:
    """Compare generated and expected dimensions on every rank-0 stratum of class ``(0, d)``."""
    report = []
    for t in enumerate_rank0(d):
        expected = [int(c) for c in stratum_series(t, model, max_degree).coeffs]
        got = generated_dimensions(t, model, max_degree)
        report.append({"type": str(t), "expected": expected, "generated": got, "ok": expected == got})
    return report
