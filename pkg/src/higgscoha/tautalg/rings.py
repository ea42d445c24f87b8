"""Graded supercommutative rings with signed monomial bases.

Every ring here has a basis closed under multiplication up to sign, so an
element is a sparse ``{key: Fraction}`` map and a product of two basis keys
is either zero or ``(sign, key)``.  Tensor products of such rings are again
of this kind; :class:`Tensor` implements them with the Koszul sign rule

    (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd.

Three atomic rings are provided:

* :class:`XCohRing` -- ``H*(X)`` of a genus-g curve with basis
  ``1, pi_1..pi_2g, w`` (keys ``0..2g+1``) and ``pi_a pi_{a+g} = w``.
* :class:`CurveZRing` -- ``H*(X)[z]`` with ``deg z = 2``; keys ``(p, k)``
  stand for ``p z^k``.
* :class:`FreeRing` -- the tautological algebra: free supercommutative on
  generators ``c_{i,p}`` of degree ``2i - deg p`` (``c_{1,w}`` excluded).
  Keys are sorted tuples of generators ``(i, p)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping


@dataclass(frozen=True)
class XCohRing:
    genus: int

    @property
    def top(self) -> int:
        return 2 * self.genus + 1

    @property
    def basis(self) -> range:
        return range(2 * self.genus + 2)

    unit = 0

    def degree(self, p: int) -> int:
        return _pi_degree(self.genus, p)

    def parity(self, p: int) -> int:
        return _pi_degree(self.genus, p) & 1

    def mul(self, p: int, q: int):
        return _pi_mul(self.genus, p, q)

    def name(self, p: int) -> str:
        return pi_name(self.genus, p)


@dataclass(frozen=True)
class CurveZRing:
    genus: int

    unit = (0, 0)

    def degree(self, key) -> int:
        return _pi_degree(self.genus, key[0]) + 2 * key[1]

    def parity(self, key) -> int:
        return _pi_degree(self.genus, key[0]) & 1

    def mul(self, a, b):
        r = _pi_mul(self.genus, a[0], b[0])
        if r is None:
            return None
        return r[0], (r[1], a[1] + b[1])

    def name(self, key) -> str:
        p, k = key
        zs = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if p == 0:
            return zs or "1"
        return pi_name(self.genus, p) + (f"*{zs}" if zs else "")


@dataclass(frozen=True)
class FreeRing:
    genus: int

    unit = ()

    def degree(self, mono) -> int:
        return _mono_degree(self.genus, mono)

    def parity(self, mono) -> int:
        return _mono_parity(self.genus, mono)

    def mul(self, a, b):
        return _mono_mul(self.genus, a, b)

    def name(self, mono) -> str:
        if not mono:
            return "1"
        return "*".join(generator_name(self.genus, gen) for gen in mono)

    def is_generator(self, gen) -> bool:
        i, p = gen
        return i >= 1 and 0 <= p <= 2 * self.genus + 1 and not (i == 1 and p == 2 * self.genus + 1)

    def generators(self, max_degree: int) -> list[tuple[int, int]]:
        """All generators of degree ``<= max_degree`` in normal order."""
        out = []
        for i in range(1, max_degree // 2 + 2):
            for p in range(2 * self.genus + 2):
                gen = (i, p)
                if self.is_generator(gen) and 2 * i - _pi_degree(self.genus, p) <= max_degree:
                    out.append(gen)
        return out

    def gen_degree(self, gen) -> int:
        return 2 * gen[0] - _pi_degree(self.genus, gen[1])


@lru_cache(maxsize=None)
def _pi_degree(g: int, p: int) -> int:
    if p == 0:
        return 0
    if p == 2 * g + 1:
        return 2
    return 1


@lru_cache(maxsize=None)
def _pi_mul(g: int, p: int, q: int):
    if p == 0:
        return 1, q
    if q == 0:
        return 1, p
    top = 2 * g + 1
    if p == top or q == top:
        return None
    # both in H^1
    if q == p + g and p <= g:
        return 1, top
    if p == q + g and q <= g:
        return -1, top
    return None


def pi_name(g: int, p: int) -> str:
    if p == 0:
        return "1"
    if p == 2 * g + 1:
        return "w"
    return f"p{p}"


def parse_pi(g: int, text: str) -> int:
    text = text.strip()
    if text == "1":
        return 0
    if text == "w":
        return 2 * g + 1
    m = re.fullmatch(r"p(\d+)", text)
    if m and 1 <= int(m.group(1)) <= 2 * g:
        return int(m.group(1))
    raise ValueError(f"unknown basis element {text!r} of H*(X) for genus {g}")


def generator_name(g: int, gen) -> str:
    return f"c[{gen[0]},{pi_name(g, gen[1])}]"


@lru_cache(maxsize=None)
def _mono_degree(g: int, mono) -> int:
    return sum(2 * i - _pi_degree(g, p) for i, p in mono)


@lru_cache(maxsize=None)
def _mono_parity(g: int, mono) -> int:
    return sum(_pi_degree(g, p) for _, p in mono) & 1


@lru_cache(maxsize=1 << 18)
def _mono_mul(g: int, a, b):
    if not a:
        return 1, b
    if not b:
        return 1, a
    sign = 1
    odd_a = [x for x in a if _pi_degree(g, x[1]) == 1]
    if odd_a:
        for y in b:
            if _pi_degree(g, y[1]) == 1:
                passes = 0
                for x in odd_a:
                    if x == y:
                        return None
                    if y < x:
                        passes += 1
                if passes & 1:
                    sign = -sign
    return sign, tuple(sorted(a + b))


def _as_fraction(c) -> int | Fraction:
    """Exact coefficient; integral values are kept as ``int`` for speed."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class Tensor:
    """An element of a tensor product of signed-basis rings.

    ``rings`` is a tuple of ring objects; ``terms`` maps tuples of keys (one
    per ring) to nonzero rational coefficients.
    """

    __slots__ = ("rings", "terms")

    def __init__(self, rings: tuple, terms: Mapping | None = None):
        self.rings = tuple(rings)
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[k] = _as_fraction(c)
        self.terms = clean

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, rings) -> Tensor:
        return cls(rings)

    @classmethod
    def one(cls, rings, coeff=1) -> Tensor:
        rings = tuple(rings)
        return cls(rings, {tuple(r.unit for r in rings): coeff})

    @classmethod
    def basis(cls, rings, key, coeff=1) -> Tensor:
        return cls(rings, {tuple(key): coeff})

    # -- structure -----------------------------------------------------
    def key_degree(self, key, through: int | None = None) -> int:
        """Degree of a key counted over the first ``through`` factors (default all)."""
        rings = self.rings if through is None else self.rings[:through]
        return sum(r.degree(k) for r, k in zip(rings, key))

    def key_parity(self, key) -> int:
        return sum(r.parity(k) for r, k in zip(self.rings, key)) & 1

    def degrees(self) -> set[int]:
        return {self.key_degree(k) for k in self.terms}

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def part(self, degree: int) -> Tensor:
        return Tensor(self.rings, {k: c for k, c in self.terms.items() if self.key_degree(k) == degree})

    def truncate(self, max_degree: int, through: int | None = None) -> Tensor:
        return Tensor(
            self.rings, {k: c for k, c in self.terms.items() if self.key_degree(k, through) <= max_degree}
        )

    def constant(self) -> Fraction:
        return self.terms.get(tuple(r.unit for r in self.rings), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def copy(self) -> Tensor:
        return Tensor(self.rings, self.terms)

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: Tensor):
        if self.rings != other.rings:
            raise ValueError(f"incompatible tensor factors {self.rings} and {other.rings}")

    def __add__(self, other):
        if not isinstance(other, Tensor):
            other = Tensor.one(self.rings, other)
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return Tensor(self.rings, terms)

    __radd__ = __add__

    def __neg__(self):
        return Tensor(self.rings, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Tensor:
        c = _as_fraction(c)
        return Tensor(self.rings, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Tensor):
            return self.scale(other)
        return self.mul(other)

    def __rmul__(self, other):
        return self.scale(other)

    def mul(self, other: Tensor, max_degree: int | None = None, through: int | None = None) -> Tensor:
        """Product, dropping terms whose degree over the first ``through``
        factors exceeds ``max_degree``."""
        self._check(other)
        rings = self.rings
        n = len(rings)
        out: dict = {}
        left = [
            (k, c, [r.parity(x) for r, x in zip(rings, k)], self.key_degree(k, through))
            for k, c in self.terms.items()
        ]
        right = [
            (k, c, [r.parity(x) for r, x in zip(rings, k)], other.key_degree(k, through))
            for k, c in other.terms.items()
        ]
        for ka, ca, pa, da in left:
            # suffix sums of parities of a: sign exponent sum_m |b_m| * sum_{m'>m} |a_m'|
            suffix = [0] * (n + 1)
            for m in range(n - 1, -1, -1):
                suffix[m] = suffix[m + 1] + pa[m]
            for kb, cb, pb, db in right:
                if max_degree is not None and da + db > max_degree:
                    continue
                sign = 1
                expo = 0
                for m in range(n):
                    if pb[m]:
                        expo += suffix[m + 1]
                if expo & 1:
                    sign = -1
                key = []
                for r, x, y in zip(rings, ka, kb):
                    res = r.mul(x, y)
                    if res is None:
                        break
                    sign *= res[0]
                    key.append(res[1])
                else:
                    key = tuple(key)
                    out[key] = out.get(key, 0) + sign * ca * cb
        return Tensor(rings, out)

    def pow(self, n: int, max_degree: int | None = None) -> Tensor:
        result = Tensor.one(self.rings)
        for _ in range(n):
            result = result.mul(self, max_degree)
        return result

    def outer(self, other: Tensor) -> Tensor:
        """``self (x) other`` with the factors of ``other`` appended."""
        terms = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                terms[ka + kb] = ca * cb
        return Tensor(self.rings + other.rings, terms)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            if other == 0:
                return self.is_zero()
            return NotImplemented
        return self.rings == other.rings and self.terms == other.terms

    def __hash__(self):
        return hash((self.rings, frozenset(self.terms.items())))

    # -- output --------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (self.key_degree(kv[0]), repr(kv[0])))

    def term_names(self, key) -> list[str]:
        return [r.name(k) for r, k in zip(self.rings, key)]

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for key, c in self.sorted_terms():
            names = self.term_names(key)
            body = " (x) ".join(names)
            if all(r.unit == k for r, k in zip(self.rings, key)):
                pieces.append((c, None))
            else:
                pieces.append((c, body))
        return format_linear(pieces)

    __repr__ = __str__

    def to_json(self):
        return [
            {"coeff": fraction_str(c), "factors": self.term_names(key)}
            for key, c in self.sorted_terms()
        ]


def fraction_str(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_linear(pieces: Iterable[tuple[Fraction, str | None]]) -> str:
    """Render ``sum c * body`` as ``a + b*x - c*y``."""
    out = []
    for idx, (c, body) in enumerate(pieces):
        neg = c < 0
        mag = -c if neg else c
        if body is None:
            text = fraction_str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{fraction_str(mag)}*{body}"
        if idx == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out) if out else "0"


def substitute(t: Tensor, maps: list[Callable], target_rings: tuple | None = None) -> Tensor:
    """Apply even linear maps factor-wise: ``f_1 (x) ... (x) f_n``.

    ``maps[m]`` sends a key of factor ``m`` to a :class:`Tensor`; images
    are concatenated with :meth:`Tensor.outer`.  No sign arises because the
    maps preserve degree.
    """
    rings = target_rings
    acc: dict = {}
    for key, c in t.terms.items():
        image = None
        for f, k in zip(maps, key):
            part = f(k)
            image = part if image is None else image.outer(part)
        rings = image.rings
        accumulate(acc, image, c)
    if rings is None:
        raise ValueError("cannot infer target rings of an empty substitution")
    return Tensor(rings, acc)


def accumulate(acc: dict, t: Tensor, coeff=1) -> None:
    """Add ``coeff * t`` into the raw term map ``acc``."""
    for k, c in t.terms.items():
        acc[k] = acc.get(k, 0) + coeff * c


def linear_combination(rings, parts: Iterable[tuple[Tensor, object]]) -> Tensor:
    acc: dict = {}
    for t, c in parts:
        accumulate(acc, t, c)
    return Tensor(rings, acc)


def identity_map(ring) -> Callable:
    return lambda k: Tensor.basis((ring,), (k,))


def swap(t: Tensor, i: int, j: int) -> Tensor:
    """Exchange adjacent tensor factors ``i`` and ``j = i + 1`` with the Koszul sign."""
    if j != i + 1:
        raise ValueError("only adjacent factors can be swapped")
    rings = list(t.rings)
    rings[i], rings[j] = rings[j], rings[i]
    terms = {}
    for key, c in t.terms.items():
        pi = t.rings[i].parity(key[i])
        pj = t.rings[j].parity(key[j])
        new = list(key)
        new[i], new[j] = new[j], new[i]
        terms[tuple(new)] = -c if (pi and pj) else c
    return Tensor(tuple(rings), terms)


class RingHom:
    """An even algebra map out of a :class:`FreeRing`, fixed on generators."""

    def __init__(self, source: FreeRing, target_rings: tuple, on_generator: Callable, max_degree: int):
        self.source = source
        self.target_rings = tuple(target_rings)
        self._on_generator = on_generator
        self.max_degree = max_degree
        self._gen_cache: dict = {}
        self._mono_cache: dict = {(): Tensor.one(self.target_rings)}

    def generator(self, gen) -> Tensor:
        img = self._gen_cache.get(gen)
        if img is None:
            img = self._on_generator(gen)
            self._gen_cache[gen] = img
        return img

    def monomial(self, mono) -> Tensor:
        img = self._mono_cache.get(mono)
        if img is None:
            img = self.monomial(mono[:-1]).mul(self.generator(mono[-1]), self.max_degree)
            self._mono_cache[mono] = img
        return img

    def __call__(self, p: Tensor) -> Tensor:
        """Image of a one-factor element of the source ring."""
        return linear_combination(self.target_rings, ((self.monomial(mono), c) for (mono,), c in p.terms.items()))
