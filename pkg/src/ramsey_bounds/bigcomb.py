"""Exact combinatorial primitives on Python integers.

Everything here is integer arithmetic; nothing is ever rounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import InvalidPartList

__all__ = [
    "PartList",
    "factorial",
    "binomial",
    "multinomial",
    "multinomial_recursive",
    "e0_scaled",
    "e1_scaled",
]


@dataclass(frozen=True)
class PartList:
    """Ordered parts ``(k_1, ..., k_r)`` of a total ``n``."""

    parts: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        if len(self.parts) < 1:
            raise InvalidPartList("a part list needs at least one part")
        if any(p < 0 for p in self.parts):
            raise InvalidPartList(f"negative part in {self.parts}")
        if sum(self.parts) != self.n:
            raise InvalidPartList(f"parts {self.parts} do not sum to {self.n}")

    @classmethod
    def of(cls, parts: Iterable[int], n: int | None = None) -> "PartList":
        parts = tuple(int(p) for p in parts)
        return cls(parts, sum(parts) if n is None else n)


PartsLike = Union[PartList, Sequence[int]]


def _parts(p: PartsLike) -> tuple[int, ...]:
    if isinstance(p, PartList):
        return p.parts
    return PartList.of(p).parts


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative number")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """``C(n, k)``, zero when ``k`` is outside ``[0, n]``."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(p: PartsLike) -> int:
    """``n! / (k_1! ... k_r!)`` by exact division.

    Each division is checked to leave no remainder.
    """
    parts = _parts(p)
    value = factorial(sum(parts))
    for k in parts:
        value, rem = divmod(value, factorial(k))
        if rem:
            raise ArithmeticError(f"inexact multinomial division for {parts}")
    return value


_MULTINOMIAL_MEMO: dict[tuple[int, ...], int] = {(): 1}


def _decrements(parts: tuple[int, ...]):
    """Yield ``(multiplicity, child)`` for each distinct decremented part."""
    for i, k in enumerate(parts):
        if i and parts[i - 1] == k:
            continue
        child = parts[:i] + (k - 1,) + parts[i + 1:]
        yield parts.count(k), tuple(sorted(c for c in child if c))


def multinomial_recursive(p: PartsLike) -> int:
    """Multinomial coefficient through the Pascal-type recurrence.

    The memo is keyed on the sorted nonzero parts, so permutations share
    entries and zero parts drop out (``0! = 1``). Evaluation uses an
    explicit stack; entries are written once and never change.
    """
    memo = _MULTINOMIAL_MEMO
    root = tuple(sorted(k for k in _parts(p) if k))
    stack = [root]
    while stack:
        key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        missing = [c for _, c in _decrements(key) if c not in memo]
        if missing:
            stack.extend(missing)
            continue
        memo.setdefault(key, sum(m * memo[c] for m, c in _decrements(key)))
        stack.pop()
    return memo[root]


def e0_scaled(r: int) -> int:
    """``e_r * r!`` where ``e_r = sum_{n=0}^{r} 1/n!``."""
    if r < 1:
        raise ValueError("r must be positive")
    # sum_{n=0}^{r} r!/n!, accumulated as the falling product r(r-1)...(n+1)
    total, term = 0, 1
    for n in range(r, -1, -1):
        total += term
        term *= n
    return total


def e1_scaled(r: int) -> int:
    """``(e_r - 1) * r!``, i.e. ``sum_{n=1}^{r} r!/n!``."""
    return e0_scaled(r) - factorial(r)
