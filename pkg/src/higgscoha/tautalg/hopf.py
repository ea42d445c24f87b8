"""The Whitney coproduct on the tautological algebra.

``Delta_{d_1, ..., d_s}`` sends ``c_{i,p}`` to the ``(2i, p)`` Kunneth
component of the Whitney product of ``s`` universal total Chern classes,
the ``m``-th built from the ``m``-th tensor copy of the generators and the
scalar ``c_{1,w} = d_m``.  It depends on the slot classes only through
their degrees.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ..ktheory import CurveModel, NumClass
from .chern import kunneth_total_chern
from .rings import FreeRing, RingHom, Tensor, swap


class DegreeOverflowError(ValueError):
    def __init__(self, degree: int, max_degree: int, what: str = "polynomial"):
        self.degree = degree
        self.max_degree = max_degree
        super().__init__(f"{what} has degree {degree}, above the truncation order N={max_degree}")


def _degree(d) -> int:
    return d.degree if isinstance(d, NumClass) else int(d)


@lru_cache(maxsize=256)
def _whitney_hom(genus: int, degrees: tuple, max_degree: int) -> RingHom:
    model = CurveModel(genus)
    contexts = [NumClass(0, d) for d in degrees]
    total = kunneth_total_chern(contexts, model, max_degree).chern
    target = total.rings[:-1]
    images: dict = {}
    for key, c in total.terms.items():
        deg = total.key_degree(key)
        if deg % 2 == 0:
            images.setdefault((deg // 2, key[-1]), {})[key[:-1]] = c

    def on_generator(gen):
        return Tensor(target, images.get(gen, {}))

    return RingHom(FreeRing(genus), target, on_generator, max_degree)


def whitney_map(degrees: Sequence, model: CurveModel, max_degree: int) -> RingHom:
    """Algebra map ``H -> H^{(x) s}`` for slot degrees ``degrees``."""
    if not degrees:
        raise ValueError("at least one slot is required")
    return _whitney_hom(model.genus, tuple(_degree(d) for d in degrees), max_degree)


def _check_degree(p: Tensor, max_degree: int):
    deg = p.max_degree()
    if deg > max_degree:
        raise DegreeOverflowError(deg, max_degree)


def iterated_coproduct(p: Tensor, degrees: Sequence, model: CurveModel, max_degree: int) -> Tensor:
    """``Delta^{(s-1)}(p)`` with slot degrees ``degrees``."""
    _check_degree(p, max_degree)
    return whitney_map(degrees, model, max_degree)(p)


def coproduct(p: Tensor, alpha1, alpha2, model: CurveModel, max_degree: int) -> Tensor:
    """``Delta_{alpha1, alpha2}(p)`` in ``H (x) H``; classes or bare degrees accepted."""
    return iterated_coproduct(p, (alpha1, alpha2), model, max_degree)


def counit(p: Tensor) -> Tensor:
    """Projection to the degree-0 part of every factor."""
    return Tensor(p.rings, {k: c for k, c in p.terms.items() if p.key_degree(k) == 0})


def apply_in_slot(t: Tensor, slot: int, hom: RingHom, target_rings: tuple) -> Tensor:
    """Apply an even algebra map out of factor ``slot``; even maps need no Koszul sign."""
    out: dict = {}
    for key, c in t.terms.items():
        image = hom.monomial(key[slot])
        head, tail = key[:slot], key[slot + 1 :]
        for k, v in image.terms.items():
            new = head + k + tail
            out[new] = out.get(new, 0) + c * v
    return Tensor(target_rings, {k: v for k, v in out.items() if v})


def coassociativity_sides(p: Tensor, d1: int, d2: int, d3: int, model: CurveModel, max_degree: int):
    """``((Delta_{d1,d2} (x) id) Delta_{d1+d2,d3}(p), (id (x) Delta_{d2,d3}) Delta_{d1,d2+d3}(p))``."""
    ring = FreeRing(model.genus)
    rings3 = (ring,) * 3
    left = apply_in_slot(
        coproduct(p, d1 + d2, d3, model, max_degree), 0, whitney_map((d1, d2), model, max_degree), rings3
    )
    right = apply_in_slot(
        coproduct(p, d1, d2 + d3, model, max_degree), 1, whitney_map((d2, d3), model, max_degree), rings3
    )
    return left, right


def is_coassociative_on(p: Tensor, d1: int, d2: int, d3: int, model: CurveModel, max_degree: int) -> bool:
    left, right = coassociativity_sides(p, d1, d2, d3, model, max_degree)
    return left == right


def is_cocommutative_on(p: Tensor, d1: int, d2: int, model: CurveModel, max_degree: int) -> bool:
    """``tau Delta_{d1,d2}(p) = Delta_{d2,d1}(p)`` with the signed flip ``tau``."""
    return swap(coproduct(p, d1, d2, model, max_degree), 0, 1) == coproduct(p, d2, d1, model, max_degree)


def counit_sides(p: Tensor, d: int, model: CurveModel, max_degree: int):
    """Both counit contractions of ``p``; the counit slot has degree 0."""
    ring = FreeRing(model.genus)
    left = coproduct(p, 0, d, model, max_degree)
    right = coproduct(p, d, 0, model, max_degree)
    drop_left = {}
    for (a, b), c in left.terms.items():
        if a == ():
            drop_left[(b,)] = drop_left.get((b,), 0) + c
    drop_right = {}
    for (a, b), c in right.terms.items():
        if b == ():
            drop_right[(a,)] = drop_right.get((a,), 0) + c
    return Tensor((ring,), drop_left), Tensor((ring,), drop_right)


def verify(model: CurveModel, max_degree: int, degrees: Sequence[int], max_index: int | None = None) -> dict:
    """Check coassociativity and cocommutativity on every generator of degree ``<= max_degree``.

    ``max_index`` further restricts to ``c_{i,p}`` with ``i <= max_index``.
    ``degrees`` is the pool of slot degrees; every triple is used.
    Returns counts and the first failures, if any.
    """
    ring = FreeRing(model.genus)
    gens = [gen for gen in ring.generators(max_degree) if max_index is None or gen[0] <= max_index]
    checked = 0
    failures = []
    for gen in gens:
        p = Tensor.basis((ring,), ((gen,),))
        for d1 in degrees:
            for d2 in degrees:
                if not is_cocommutative_on(p, d1, d2, model, max_degree):
                    failures.append({"generator": ring.name((gen,)), "law": "cocommutativity", "degrees": [d1, d2]})
                for d3 in degrees:
                    checked += 1
                    if not is_coassociative_on(p, d1, d2, d3, model, max_degree):
                        failures.append(
                            {"generator": ring.name((gen,)), "law": "coassociativity", "degrees": [d1, d2, d3]}
                        )
    return {"generators": len(gens), "checks": checked, "ok": not failures, "failures": failures[:5]}
