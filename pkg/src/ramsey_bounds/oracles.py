"""Brute-force checks that share no code paths with the memoized engine.

Includes an unmemoized main-term/waste recursion, a pigeonhole property
checker and an exhaustive edge-coloring search over small complete graphs.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import EntryBelowTwo, LengthMismatch

DEFAULT_BUDGET = 2**25


def php_check(sizes: Sequence[int], quotas: Sequence[int]) -> bool:
    """True iff ``sum(sizes) > sum(quotas) - r`` forces some ``sizes[i] >= quotas[i]``."""
    if len(sizes) != len(quotas):
        raise LengthMismatch(f"{len(sizes)} sizes vs {len(quotas)} quotas")
    if sum(sizes) <= sum(quotas) - len(quotas):
        return True
    return any(s >= q for s, q in zip(sizes, quotas))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All weak compositions of ``total`` into ``parts`` nonnegative parts."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


# -- unmemoized main term and waste -----------------------------------------

def naive_M_w(ks: Sequence[int]) -> tuple[int, int]:
    """Recompute ``(M, w)`` straight from the defining recursion.

    Only 2's are stripped; coordinates are never sorted and nothing is
    cached, so this runs in exponential time.  Keep ``sum(k - 2)`` small.
    """
    ks = [k for k in ks if k != 2]
    if not ks:
        return 2, 0
    if len(ks) == 1:
        return ks[0], 0
    if len(ks) == 2:
        return math.comb(ks[0] + ks[1] - 2, ks[0] - 1), 0
    m_total, w_total = 0, len(ks) - 2
    for i in range(len(ks)):
        child = list(ks)
        child[i] -= 1
        m, w = naive_M_w(child)
        m_total += m
        w_total += w
    return m_total, w_total


# -- edge colorings ----------------------------------------------------------

def edge_list(n: int) -> list[tuple[int, int]]:
    """Edges of ``K_n`` in lexicographic pair order."""
    return list(itertools.combinations(range(n), 2))


@dataclass(frozen=True)
class EdgeColoring:
    n: int
    r: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.colors) != self.n * (self.n - 1) // 2:
            raise ValueError(f"K_{self.n} has {self.n * (self.n - 1) // 2} edges, got {len(self.colors)}")
        if any(not 0 <= c < self.r for c in self.colors):
            raise ValueError(f"color index out of range [0, {self.r})")

    def adjacency(self) -> list[list[int]]:
        """Per-color neighbour bitmasks: ``adj[c][v]``."""
        adj = [[0] * self.n for _ in range(self.r)]
        for (u, v), c in zip(edge_list(self.n), self.colors):
            adj[c][u] |= 1 << v
            adj[c][v] |= 1 << u
        return adj

    def serialize(self) -> str:
        if self.r > 10:
            raise ValueError("digit serialization supports at most 10 colors")
        return f"{self.n} {self.r} " + "".join(map(str, self.colors))

    @classmethod
    def parse(cls, line: str) -> "EdgeColoring":
        fields = line.split()
        n, r = int(fields[0]), int(fields[1])
        digits = fields[2] if len(fields) > 2 else ""
        return cls(n, r, tuple(int(ch) for ch in digits))


def _has_clique(adj: Sequence[int], candidates: int, size: int) -> bool:
    # is there a clique of `size` vertices inside the bitmask `candidates`?
    if size <= 0:
        return True
    if candidates.bit_count() < size:
        return False
    while candidates:
        v = candidates.bit_length() - 1
        candidates &= ~(1 << v)
        if _has_clique(adj, candidates & adj[v], size - 1):
            return True
        if candidates.bit_count() < size:
            return False
    return False


def mono_clique_exists(c: EdgeColoring, color: int, size: int) -> bool:
    adj = c.adjacency()[color]
    return _has_clique(adj, (1 << c.n) - 1, size)


def avoids_all(c: EdgeColoring, targets: Sequence[int]) -> bool:
    return not any(mono_clique_exists(c, i, k) for i, k in enumerate(targets))


# -- exhaustive search -------------------------------------------------------

class Outcome(enum.Enum):
    FORCED = "Forced"
    WITNESS = "Witness"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass(frozen=True)
class SearchOutcome:
    kind: Outcome
    witness: Optional[EdgeColoring]
    colorings_examined: int
    targets: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if (self.kind is Outcome.WITNESS) != (self.witness is not None):
            raise ValueError("a witness is stored exactly when kind is Witness")
        if self.witness is not None and not avoids_all(self.witness, self.targets):
            raise AssertionError("stored witness contains a forbidden monochromatic clique")


def search_space_size(n: int, targets: Sequence[int]) -> int:
    r = len(targets)
    size = r ** (n * (n - 1) // 2)
    if _diagonal(targets) and n >= 2:
        size //= r
    return size


def _diagonal(targets: Sequence[int]) -> bool:
    return len(set(targets)) == 1


def ramsey_witness_search(
    n: int, targets: Sequence[int], budget: Optional[int] = DEFAULT_BUDGET
) -> SearchOutcome:
    """Depth-first search for a coloring of ``K_n`` avoiding every target.

    Edges are colored in lexicographic order with colors tried in increasing
    order, so the first witness returned is the smallest one when colorings
    are read as base-r numbers with the first edge most significant.  For
    diagonal targets edge (0, 1) is fixed to color 0; that loses no witness
    the enumeration would have returned first.  A branch is cut as soon as
    the last placed edge closes a forbidden clique.

    ``colorings_examined`` counts partial colorings visited; the search gives
    up with ``BudgetExceeded`` once it would exceed ``budget`` (``None``
    means unbounded).
    """
    targets = tuple(int(k) for k in targets)
    if n < 2 or not targets:
        raise ValueError("need n >= 2 and at least one target")
    if min(targets) < 2:
        raise EntryBelowTwo(f"clique targets must be >= 2: {targets}")
    r = len(targets)
    edges = edge_list(n)
    adj = [[0] * n for _ in range(r)]
    colors = [0] * len(edges)
    examined = 0
    first_free = 1 if _diagonal(targets) and edges else 0

    def closes_clique(u: int, v: int, c: int) -> bool:
        common = adj[c][u] & adj[c][v]
        return _has_clique(adj[c], common, targets[c] - 2)

    class _OutOfBudget(Exception):
        pass

    def place(idx: int, c: int) -> bool:
        nonlocal examined
        examined += 1
        if budget is not None and examined > budget:
            raise _OutOfBudget
        u, v = edges[idx]
        if closes_clique(u, v, c):
            return False
        colors[idx] = c
        adj[c][u] |= 1 << v
        adj[c][v] |= 1 << u
        return True

    def unplace(idx: int, c: int) -> None:
        u, v = edges[idx]
        adj[c][u] &= ~(1 << v)
        adj[c][v] &= ~(1 << u)

    def extend(idx: int) -> bool:
        if idx == len(edges):
            return True
        for c in range(r):
            if place(idx, c):
                if extend(idx + 1):
                    return True
                unplace(idx, c)
        return False

    try:
        if first_free:
            found = place(0, 0) and extend(1)
        else:
            found = extend(0)
    except _OutOfBudget:
        return SearchOutcome(Outcome.BUDGET_EXCEEDED, None, budget, targets)
    if found:
        return SearchOutcome(Outcome.WITNESS, EdgeColoring(n, r, tuple(colors)), examined, targets)
    return SearchOutcome(Outcome.FORCED, None, examined, targets)


def least_forced_n(targets: Sequence[int], n_max: int, budget: Optional[int] = DEFAULT_BUDGET):
    """Scan ``n = 2 .. n_max`` and return ``(least forced n or None, outcomes)``."""
    outcomes = {}
    for n in range(2, n_max + 1):
        out = ramsey_witness_search(n, targets, budget)
        outcomes[n] = out
        if out.kind is Outcome.FORCED:
            return n, outcomes
    return None, outcomes
