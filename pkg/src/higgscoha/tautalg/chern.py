"""Kunneth Chern calculus in ``A (x) H*(X)``.

A class here is a :class:`Tensor` whose last factor is :class:`XCohRing`;
``a (x) p`` is the Kunneth term ``a`` along the basis element ``p``.  Total
Chern classes are inhomogeneous with ``c_k`` in total degree ``2k``.  The
truncation bound ``max_degree`` always refers to the degree of ``a``: it is
additive under products, so every kept term is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from ..ktheory import CurveModel, NumClass
from .rings import FreeRing, Tensor, XCohRing


@dataclass(frozen=True)
class KunnethClass:
    """Total Chern class of a sheaf on ``S x X`` together with its rank."""

    chern: Tensor
    rank: int

    @property
    def rings(self):
        return self.chern.rings

    def degree(self) -> Fraction:
        """The scalar ``c_{1,w}``: the fibrewise degree."""
        rings = self.chern.rings
        key = tuple(r.unit for r in rings[:-1]) + (rings[-1].top,)
        return self.chern.terms.get(key, Fraction(0))

    def numerical_class(self) -> NumClass:
        d = self.degree()
        if d.denominator != 1:
            raise ValueError(f"non-integral degree {d}")
        return NumClass(self.rank, int(d))

    def component(self, i: int, p: int) -> Tensor:
        return kunneth_component(self.chern, 2 * i, p)


def kunneth_component(t: Tensor, total_degree: int, p: int) -> Tensor:
    """Coefficient of ``(x) p`` in the total-degree ``total_degree`` part of ``t``."""
    rings = t.rings[:-1]
    out = {}
    for key, c in t.terms.items():
        if key[-1] == p and t.key_degree(key) == total_degree:
            out[key[:-1]] = c
    return Tensor(rings, out)


def a_degree(t: Tensor, key) -> int:
    return t.key_degree(key, len(t.rings) - 1)


def kmul(a: Tensor, b: Tensor, max_degree: int) -> Tensor:
    """Product in ``A (x) H*(X)`` truncated in the ``A``-degree."""
    return a.mul(b, max_degree, len(a.rings) - 1)


def ktruncate(t: Tensor, max_degree: int) -> Tensor:
    return t.truncate(max_degree, len(t.rings) - 1)


def xcoh_class(rings: tuple, p: int, coeff=1) -> Tensor:
    """``1 (x) ... (x) 1 (x) p``."""
    return Tensor.basis(rings, tuple(r.unit for r in rings[:-1]) + (p,), coeff)


def universal_chern(model: CurveModel, degree: int, slot: int, n_slots: int, max_degree: int) -> Tensor:
    """Total Chern class ``1 + sum c_{i,p} (x) p`` with free generators in ``slot``.

    ``c_{1,w}`` is the scalar ``degree``.
    """
    g = model.genus
    ring = FreeRing(g)
    rings = (ring,) * n_slots + (XCohRing(g),)
    top = 2 * g + 1
    unit = ((),) * n_slots
    terms = {unit + (0,): Fraction(1)}
    terms[unit + (top,)] = Fraction(degree)
    for i in range(1, max_degree // 2 + 2):
        for p in range(2 * g + 2):
            if (i == 1 and p == top) or ring.gen_degree((i, p)) > max_degree:
                continue
            key = list(unit)
            key[slot] = ((i, p),)
            terms[tuple(key) + (p,)] = Fraction(1)
    return Tensor(rings, terms)


def kunneth_total_chern(
    contexts: Sequence[NumClass],
    model: CurveModel,
    max_degree: int,
    families: Sequence[int] | None = None,
) -> KunnethClass:
    """Whitney product of universal total Chern classes, one per context.

    Context ``j`` uses the generator family of tensor slot ``families[j]``
    (default: slot ``j``).  With no contexts the result is the unit class.
    """
    if families is None:
        families = list(range(len(contexts)))
    if len(families) != len(contexts):
        raise ValueError("one generator family per context is required")
    n_slots = max(families, default=-1) + 1
    rings = (FreeRing(model.genus),) * n_slots + (XCohRing(model.genus),)
    total = Tensor.one(rings)
    for ctx, slot in zip(contexts, families):
        total = kmul(total, universal_chern(model, ctx.degree, slot, n_slots, max_degree), max_degree)
    return KunnethClass(total, sum(c.rank for c in contexts))


def _graded_parts(t: Tensor, max_degree: int) -> list[Tensor]:
    """Total-degree pieces ``t_0, t_1, ...`` (``t_k`` in degree ``2k``)."""
    parts = [Tensor.zero(t.rings) for _ in range(max_degree // 2 + 2)]
    by_degree: dict[int, dict] = {}
    for key, c in t.terms.items():
        if a_degree(t, key) > max_degree:
            continue
        d = t.key_degree(key)
        if d % 2:
            raise ValueError("Chern data must live in even total degree")
        by_degree.setdefault(d // 2, {})[key] = c
    for k, terms in by_degree.items():
        parts[k] = Tensor(t.rings, terms)
    return parts


def chern_to_chchar(total: KunnethClass, max_degree: int) -> Tensor:
    """Chern character ``rank + ch_1 + ch_2 + ...`` by Newton's identities."""
    c = _graded_parts(total.chern, max_degree)
    if c[0] != Tensor.one(total.rings):
        raise ValueError("total Chern class must have constant term 1")
    n = len(c) - 1
    power = [Tensor.zero(total.rings)] * (n + 1)
    for k in range(1, n + 1):
        acc = c[k].scale((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + kmul(c[i], power[k - i], max_degree).scale((-1) ** (i - 1))
        power[k] = acc
    ch = Tensor.one(total.rings, total.rank)
    for k in range(1, n + 1):
        ch = ch + power[k].scale(Fraction(1, factorial(k)))
    return ch


def chchar_to_chern(ch: Tensor, max_degree: int) -> KunnethClass:
    """Inverse of :func:`chern_to_chchar`."""
    parts = _graded_parts(ch, max_degree)
    rank = parts[0].constant()
    if parts[0] != Tensor.one(ch.rings, rank) and not (rank == 0 and parts[0].is_zero()):
        raise ValueError("degree-0 part of a Chern character must be a scalar")
    if rank.denominator != 1:
        raise ValueError(f"non-integral rank {rank}")
    n = len(parts) - 1
    power = [None] + [parts[k].scale(factorial(k)) for k in range(1, n + 1)]
    e = [Tensor.one(ch.rings)] + [None] * n
    for k in range(1, n + 1):
        acc = Tensor.zero(ch.rings)
        for i in range(1, k + 1):
            acc = acc + kmul(e[k - i], power[i], max_degree).scale((-1) ** (i - 1))
        e[k] = acc.scale(Fraction(1, k))
    total = Tensor.zero(ch.rings)
    for part in e:
        total = total + part
    return KunnethClass(total, int(rank))


def twist_class(total: KunnethClass, by_degree: int, max_degree: int) -> KunnethClass:
    """Chern data of ``E (x) L`` for a line bundle ``L`` of degree ``by_degree``.

    With ``x = c_1(L)`` and ``x^2 = 0`` the splitting principle gives
    ``c(E (x) L) = sum_k c_k(E) (1 + (r - k) x)``.
    """
    chern = ktruncate(total.chern, max_degree)
    if by_degree == 0:
        return KunnethClass(chern, total.rank)
    rings = total.rings
    x = xcoh_class(rings, rings[-1].top, by_degree)
    parts = _graded_parts(chern, max_degree)
    result = chern
    for k, part in enumerate(parts):
        if total.rank != k and not part.is_zero():
            result = result + kmul(part, x, max_degree).scale(total.rank - k)
    return KunnethClass(result, total.rank)


def twist_class_via_chchar(total: KunnethClass, by_degree: int, max_degree: int) -> KunnethClass:
    """Same as :func:`twist_class`, through ``ch(E (x) L) = ch(E) (1 + by_degree * w)``."""
    rings = total.rings
    line = Tensor.one(rings) + xcoh_class(rings, rings[-1].top, by_degree)
    ch = kmul(chern_to_chchar(total, max_degree), line, max_degree)
    return chchar_to_chern(ch, max_degree)


def inverse_total(total: Tensor, max_degree: int) -> Tensor:
    """Formal inverse of a class with constant term 1."""
    one = Tensor.one(total.rings)
    if total.constant() != 1:
        raise ValueError("only classes with constant term 1 are inverted")
    x = ktruncate(total - one, max_degree)
    result = one
    power = one
    for _ in range(max_degree + 3):
        power = kmul(power, -x, max_degree)
        if power.is_zero():
            break
        result = result + power
    return result


def k_difference(a: KunnethClass, b: KunnethClass, max_degree: int) -> KunnethClass:
    """Total Chern class of the K-theory difference ``A - B``."""
    chern = kmul(a.chern, inverse_total(b.chern, max_degree), max_degree)
    return KunnethClass(chern, a.rank - b.rank)


def direct_sum(a: KunnethClass, b: KunnethClass, max_degree: int) -> KunnethClass:
    return KunnethClass(kmul(a.chern, b.chern, max_degree), a.rank + b.rank)
