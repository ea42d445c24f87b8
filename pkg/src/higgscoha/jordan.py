"""Jordan types of nilpotent Higgs sheaves and the order on them.

A Jordan type ``(a_1, ..., a_s)`` records a nilpotent Higgs field through
its colored Young diagram: row ``i`` (counted from the bottom) holds the
boxes ``a_j((i - j) * l)`` for ``j >= i``, where ``l = 2g - 2``.  Rows are
the successive quotients ``ker theta^i / ker theta^(i-1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .ktheory import (
    ZERO,
    CurveModel,
    NumClass,
    euler_coh,
    is_positive,
    leq_standard,
    twist,
)


class InvalidJordanType(ValueError):
    pass


class InvalidRows(ValueError):
    """Row classes that decode to no Jordan type; ``index`` is 1-based."""

    def __init__(self, index: int, entry: NumClass):
        self.index = index
        self.entry = entry
        super().__init__(f"rows decode to the non-admissible entry {entry} at index {index}")


@dataclass(frozen=True)
class JordanType:
    """Entries ``a_1, ..., a_s``; the empty type is the zero sheaf, written ``()``."""

    entries: tuple[NumClass, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        for i, a in enumerate(entries, start=1):
            if not is_positive(a):
                raise InvalidJordanType(f"entry {i} = {a} is not a positive class")
        if entries and entries[-1].is_zero():
            raise InvalidJordanType("the top entry of a Jordan type must be nonzero")

    @classmethod
    def of(cls, *pairs) -> JordanType:
        return cls(tuple(NumClass(*p) for p in pairs))

    @classmethod
    def parse(cls, text: str) -> JordanType:
        """Parse ``"r1,d1;r2,d2;..."``, or ``"()"`` for the empty type."""
        if text.strip() == "()":
            return cls(())
        parts = text.split(";")
        if not text.strip() or any(not part.strip() for part in parts):
            raise InvalidJordanType(f"malformed Jordan type {text!r}")
        return cls(tuple(NumClass.parse(part) for part in parts))

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[NumClass]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def sort_key(self):
        return (len(self.entries), tuple((a.rank, a.degree) for a in self.entries))

    def __str__(self):
        if not self.entries:
            return "()"
        return ";".join(f"{a.rank},{a.degree}" for a in self.entries)


def total_class(t: JordanType, model: CurveModel) -> NumClass:
    ell = model.canonical_degree
    total = ZERO
    for i, a in enumerate(t.entries, start=1):
        for k in range(i):
            total = total + twist(a, -k * ell)
    return total


def row_classes(t: JordanType, model: CurveModel) -> tuple[NumClass, ...]:
    """Total classes of the rows of the Young diagram, bottom row first."""
    ell = model.canonical_degree
    s = len(t)
    rows = []
    for i in range(1, s + 1):
        row = ZERO
        for j in range(i, s + 1):
            row = row + twist(t.entries[j - 1], (i - j) * ell)
        rows.append(row)
    return tuple(rows)


def rows_to_type(rows: Sequence[NumClass], model: CurveModel) -> JordanType:
    """Inverse of :func:`row_classes`; raises :class:`InvalidRows`."""
    ell = model.canonical_degree
    s = len(rows)
    entries: list[NumClass] = [ZERO] * s
    for i in range(s, 0, -1):
        a = rows[i - 1]
        for j in range(i + 1, s + 1):
            a = a - twist(entries[j - 1], (i - j) * ell)
        entries[i - 1] = a
    for i, a in enumerate(entries, start=1):
        if not is_positive(a):
            raise InvalidRows(i, a)
    if entries and entries[-1].is_zero():
        raise InvalidRows(s, entries[-1])
    return JordanType(tuple(entries))


def kernel_class(t: JordanType, k: int, model: CurveModel) -> NumClass:
    """Class of ``ker theta^k``: the bottom ``k`` rows of the diagram."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    total = ZERO
    for row in row_classes(t, model)[:k]:
        total = total + row
    return total


def preceq(b: JordanType, a: JordanType, model: CurveModel) -> bool:
    """``b <= a``: every kernel class of ``a`` is below the one of ``b``.

    Types of different total class are incomparable.
    """
    if total_class(b, model) != total_class(a, model):
        return False
    rows_a, rows_b = row_classes(a, model), row_classes(b, model)
    ker_a = ker_b = ZERO
    for k in range(max(len(a), len(b))):
        if k < len(rows_a):
            ker_a = ker_a + rows_a[k]
        if k < len(rows_b):
            ker_b = ker_b + rows_b[k]
        if not leq_standard(ker_a, ker_b):
            return False
    return True


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def partition_to_type(parts: Sequence[int]) -> JordanType:
    """Rank-0 type whose ``i``-th entry counts the blocks of size ``i``."""
    s = max(parts, default=0)
    return JordanType(tuple(NumClass(0, sum(1 for p in parts if p == i)) for i in range(1, s + 1)))


def type_to_partition(t: JordanType) -> tuple[int, ...]:
    if any(a.rank != 0 for a in t):
        raise ValueError("only rank-0 Jordan types correspond to partitions")
    parts = []
    for i in range(len(t), 0, -1):
        parts.extend([i] * t.entries[i - 1].degree)
    return tuple(parts)


def enumerate_rank0(d: int) -> list[JordanType]:
    """All Jordan types of class ``(0, d)``, one per partition of ``d``."""
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    return sorted((partition_to_type(p) for p in _partitions(d)), key=JordanType.sort_key)


@dataclass(frozen=True)
class Enumeration:
    """A canonically ordered list of Jordan types with the bounds it honours.

    ``exact`` is true when the bounds cut nothing off (rank-0 classes).
    """

    types: tuple[JordanType, ...]
    bounds: dict = field(default_factory=dict)
    exact: bool = False

    def __iter__(self):
        return iter(self.types)

    def __len__(self):
        return len(self.types)

    def __contains__(self, t):
        return t in self.types


def _weighted(a: NumClass, i: int, ell: int) -> NumClass:
    # contribution of entry a_i to the total class
    return NumClass(i * a.rank, i * a.degree - ell * a.rank * i * (i - 1) // 2)


def enumerate_bounded(alpha: NumClass, max_len: int, degree_window: int, model: CurveModel) -> Enumeration:
    """Jordan types of class ``alpha`` of length ``<= max_len``.

    The entries ``a_2, ..., a_s`` have degrees in ``[-degree_window,
    degree_window]``; ``a_1`` is then forced by the total class.  For a
    rank-0 class the set is finite and returned in full.
    """
    if not is_positive(alpha):
        raise ValueError(f"class {alpha} is not positive")
    if max_len < 1 or degree_window < 0:
        raise ValueError("max_len must be >= 1 and degree_window >= 0")
    bounds = {"max_len": max_len, "degree_window": degree_window}
    if alpha.rank == 0:
        found = [t for t in enumerate_rank0(alpha.degree) if len(t) <= max_len]
        return Enumeration(tuple(found), bounds, exact=True)

    ell = model.canonical_degree
    w = degree_window
    found = []
    for s in range(1, max_len + 1):
        # choose ranks r_2..r_s with sum_i i*r_i <= rank
        for upper_ranks in _rank_vectors(alpha.rank, s):
            choices = []
            for i, r in enumerate(upper_ranks, start=2):
                lo = 0 if r == 0 else -w
                choices.append([NumClass(r, d) for d in range(lo, w + 1)])
            for upper in itertools.product(*choices):
                if s > 1 and upper[-1].is_zero():
                    continue
                rest = alpha
                for i, a in enumerate(upper, start=2):
                    rest = rest - _weighted(a, i, ell)
                if not is_positive(rest):
                    continue
                if s == 1 and rest.is_zero():
                    continue
                found.append(JordanType((rest,) + tuple(upper)))
    found.sort(key=JordanType.sort_key)
    return Enumeration(tuple(found), bounds, exact=False)


def _rank_vectors(rank: int, s: int) -> Iterator[tuple[int, ...]]:
    """Ranks ``(r_2, ..., r_s)`` with ``sum i * r_i <= rank``."""

    def rec(i, budget):
        if i > s:
            yield ()
            return
        for r in range(budget // i + 1):
            for tail in rec(i + 1, budget - i * r):
                yield (r,) + tail

    yield from rec(2, rank)


def downset(a: JordanType, degree_window: int, model: CurveModel) -> Enumeration:
    """All ``b <= a`` found within the degree window.

    Exact (window-independent) when ``a`` has rank 0.  For positive rank the
    true down-set is generally infinite.
    """
    alpha = total_class(a, model)
    pool = enumerate_bounded(alpha, max(len(a), 1), degree_window, model)
    found = tuple(b for b in pool if preceq(b, a, model))
    return Enumeration(found, dict(pool.bounds), pool.exact)


def _symbolic_label(j: int, m: int, tex: bool) -> str:
    base = f"\\alpha_{{{j}}}" if tex else f"a{j}"
    if m == 0:
        return base
    ell = "\\ell" if tex else "l"
    coeff = "-" if m == 1 else f"-{m}"
    return f"{base}({coeff}{ell})"


def render_young(t: JordanType | int, model: CurveModel | None = None, fmt: str = "text") -> str:
    """Colored Young diagram, top row first.

    Passing an integer ``s`` instead of a type renders the symbolic diagram
    of length ``s`` with labels ``a_j(-m l)``.
    """
    if fmt not in ("text", "tex"):
        raise ValueError(f"unknown format {fmt!r}")
    tex = fmt == "tex"
    if isinstance(t, int):
        s = t
        if s < 1:
            raise ValueError("length must be >= 1")

        def label(i, j):
            return _symbolic_label(j, j - i, tex)
    else:
        if model is None:
            raise ValueError("a curve model is needed to render a concrete type")
        s = len(t)
        ell = model.canonical_degree

        def label(i, j):
            a = twist(t.entries[j - 1], (i - j) * ell)
            return f"({a.rank},{a.degree})"

    rows = [[label(i, j) for j in range(s, i - 1, -1)] for i in range(s, 0, -1)]
    if tex:
        body = " \\\\\n".join(" & ".join(row) for row in rows)
        return "\\begin{ytableau}\n" + body + "\n\\end{ytableau}"
    widths = [max(len(row[c]) for row in rows if c < len(row)) for c in range(s)]
    return "\n".join(" ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)).rstrip() for row in rows)


def vb_stack_rank(t: JordanType, model: CurveModel) -> int:
    """Relative dimension of the stratum over the product of the ``Coh_{a_i}``."""
    alpha = total_class(t, model)
    return -euler_coh(alpha, alpha, model) + sum(euler_coh(a, a, model) for a in t)


def dim_q_correspondence(rows: Sequence[NumClass], model: CurveModel) -> int:
    """``-2 * sum_{i != j} <g_i, g_j>`` for the iterated extension diagram."""
    total = 0
    for i, gi in enumerate(rows):
        for j, gj in enumerate(rows):
            if i != j:
                total += euler_coh(gi, gj, model)
    return -2 * total
