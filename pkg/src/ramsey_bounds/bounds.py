"""Main term / waste function machinery and the closed-form bounds.

``M`` and ``w`` are defined on canonical color signatures: entries of 2 are
dropped and the rest sorted non-increasing.  Every pigeonhole quantity here
is an exact Python integer; coefficients that are not integers are
``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Iterator, NamedTuple, Sequence, Union

from .bigcomb import binomial, e0_scaled, e1_scaled, factorial, multinomial
from .errors import (
    EmptyInput,
    EntryBelowThree,
    EntryBelowTwo,
    FewerThanTwoEntries,
    KTooSmall,
    RTooSmall,
    SignatureTooShort,
)

__all__ = [
    "ColorSignature",
    "BoundReport",
    "AsymptoticConstants",
    "canonicalize",
    "diag",
    "M",
    "w",
    "M_and_w",
    "php_bound",
    "M_formula",
    "M_upper",
    "M_lower",
    "w3_exact",
    "w_lower_diag",
    "classical_bound",
    "teravainen_bound",
    "lemma_f",
    "asympt_ratio",
    "ratio_bracket",
    "asympt_constants",
    "bound_report",
    "clear_caches",
]


@dataclass(frozen=True)
class ColorSignature:
    """Canonical multiset of clique targets.

    ``targets`` holds the entries >= 3 in non-increasing order.  The flag
    records that the raw input was nonempty and made only of 2's, which is
    the one way to reach the empty signature.
    """

    targets: tuple[int, ...]
    originally_all_twos: bool = False

    def __post_init__(self) -> None:
        if any(k < 3 for k in self.targets):
            raise EntryBelowThree(f"signature entries must be >= 3: {self.targets}")
        if list(self.targets) != sorted(self.targets, reverse=True):
            raise ValueError(f"signature not sorted non-increasing: {self.targets}")

    def __len__(self) -> int:
        return len(self.targets)

    def __iter__(self) -> Iterator[int]:
        return iter(self.targets)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.targets)) + ")"


SignatureLike = Union[ColorSignature, Sequence[int]]


def canonicalize(ks: Sequence[int]) -> ColorSignature:
    ks = [int(k) for k in ks]
    if not ks:
        raise EmptyInput("at least one clique target is required")
    low = [k for k in ks if k < 2]
    if low:
        raise EntryBelowTwo(f"clique targets must be >= 2, got {low[0]}")
    targets = tuple(sorted((k for k in ks if k > 2), reverse=True))
    return ColorSignature(targets, originally_all_twos=not targets)


def _signature(sig: SignatureLike) -> ColorSignature:
    if isinstance(sig, ColorSignature):
        return sig
    return canonicalize(sig)


def _strict_targets(sig: SignatureLike) -> tuple[int, ...]:
    """Targets for the closed forms: length >= 2, every entry >= 3, no stripping."""
    if isinstance(sig, ColorSignature):
        ks = sig.targets
    else:
        ks = tuple(sorted((int(k) for k in sig), reverse=True))
    if len(ks) < 2:
        raise SignatureTooShort(f"need at least two entries, got {len(ks)}")
    if ks[-1] < 3:
        raise EntryBelowThree(f"entries must be >= 3, got {ks[-1]}")
    return ks


def diag(r: int, k: int) -> ColorSignature:
    return canonicalize([k] * r)


# -- memoized recursions -----------------------------------------------------

Key = tuple[int, ...]


def _children(key: Key) -> Iterator[tuple[int, Key]]:
    """Distinct children of ``key`` with their multiplicity.

    One child per coordinate, so equal entries give the same child several
    times; that multiplicity is returned rather than repeated.
    """
    for i, k in enumerate(key):
        if i and key[i - 1] == k:
            continue
        mult = key.count(k)
        child = key[:i] + (k - 1,) + key[i + mult:] + (k,) * (mult - 1)
        yield mult, tuple(sorted((c for c in child if c > 2), reverse=True))


def _fill(root: Key, memo: dict, base: Callable, combine: Callable):
    # iterative post-order over the signature lattice
    stack = [root]
    while stack:
        key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        value = base(key)
        if value is None:
            kids = list(_children(key))
            missing = [c for _, c in kids if c not in memo]
            if missing:
                stack.extend(missing)
                continue
            value = combine(key, [(m, memo[c]) for m, c in kids])
        memo.setdefault(key, value)
        stack.pop()
    return memo[root]


_MW_MEMO: dict[Key, tuple[int, int]] = {}
_PHP_MEMO: dict[Key, int] = {}


def _mw_base(key: Key):
    if not key:
        return 2, 0
    if len(key) == 1:
        return key[0], 0
    if len(key) == 2:
        return binomial(key[0] + key[1] - 2, key[0] - 1), 0
    return None


def _mw_combine(key: Key, kids):
    m = sum(mult * mw[0] for mult, mw in kids)
    waste = sum(mult * mw[1] for mult, mw in kids) + len(key) - 2
    return m, waste


def _php_base(key: Key):
    if not key:
        return 2
    if len(key) == 1:
        return key[0]
    return None


def _php_combine(key: Key, kids):
    return sum(mult * v for mult, v in kids) - (len(key) - 2)


def M_and_w(sig: SignatureLike) -> tuple[int, int]:
    return _fill(_signature(sig).targets, _MW_MEMO, _mw_base, _mw_combine)


def M(sig: SignatureLike) -> int:
    """Main term of the pigeonhole recursion."""
    return M_and_w(sig)[0]


def w(sig: SignatureLike) -> int:
    """Waste function: the accumulated ``(r - 2)`` corrections."""
    return M_and_w(sig)[1]


def php_bound(sig: SignatureLike) -> int:
    """Fully expanded pigeonhole bound, recursing down to ``R_1(k) = k``.

    Computed independently of ``M`` and ``w``; it always equals ``M - w``.
    """
    return _fill(_signature(sig).targets, _PHP_MEMO, _php_base, _php_combine)


def clear_caches() -> None:
    _MW_MEMO.clear()
    _PHP_MEMO.clear()


# -- closed forms ------------------------------------------------------------

def M_formula(sig: SignatureLike) -> int:
    """Exact main term as a sum over terminating states ``(3 at i, m at j)``."""
    ks = _strict_targets(sig)
    r = len(ks)
    base = [k - 2 for k in ks]
    total = 0
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            for m in range(3, ks[j] + 1):
                parts = list(base)
                parts[i] = ks[i] - 3
                parts[j] = ks[j] - m
                total += m * multinomial(parts)
    return total


def lemma_f(x: Fraction, y: Fraction) -> Fraction:
    x, y = Fraction(x), Fraction(y)
    return (x + y) * (x + y - 1) / (x * y)


def M_upper(sig: SignatureLike) -> Fraction:
    """Upper bound ``b_{k1,k2} * C_r`` on the main term.

    ``k1 >= k2`` are the two largest entries.  Kept as a fraction: nothing
    guarantees integrality once there are three or more colors.
    """
    ks = _strict_targets(sig)
    b = lemma_f(ks[0] - 1, ks[1] - 1)
    return b * multinomial([k - 2 for k in ks])


def M_lower(sig: SignatureLike) -> int:
    ks = _strict_targets(sig)
    return 3 * multinomial([k - 2 for k in ks])


def w3_exact(r: int) -> int:
    if r < 2:
        raise RTooSmall(f"r must be >= 2, got {r}")
    return 3 * factorial(r) - e0_scaled(r) - 1


def w_lower_diag(r: int, k: int) -> int:
    """Lower bound on the diagonal waste ``w_r(k)``.

    For ``k = 3`` this is the exact value.  For larger ``k`` the geometric
    factor ``(r!^{k-3} - 1)/(r! - 1)`` is kept as the integer sum
    ``sum_{i<k-3} r!^i`` so the whole expression stays integral.
    """
    if r < 2:
        raise RTooSmall(f"r must be >= 2, got {r}")
    if k < 3:
        raise KTooSmall(f"k must be >= 3, got {k}")
    if k == 3:
        return w3_exact(r)
    rf = factorial(r)
    geometric = sum(rf**i for i in range(k - 3))
    total = (r - 2) * (e1_scaled(r) * geometric - rf ** (k - 3))
    for j in range(r - 2):
        parts = [k - 2] * j + [k - 3] * (r - j - 1) + [k - 4]
        total += (
            binomial(r, j)
            * multinomial(parts)
            * (r - j)
            * (r - j - 2 + w3_exact(r - j))
        )
    return total


def _raw_targets(ks: Sequence[int]) -> list[int]:
    ks = [int(k) for k in ks]
    if not ks:
        raise EmptyInput("at least one clique target is required")
    if any(k < 2 for k in ks):
        raise EntryBelowTwo(f"clique targets must be >= 2: {ks}")
    return ks


def classical_bound(ks: Sequence[int]) -> int:
    """Multinomial bound on the raw input (2's are not stripped)."""
    ks = _raw_targets(ks)
    return multinomial([k - 1 for k in ks])


def teravainen_bound(ks: Sequence[int]) -> int:
    ks = sorted(_raw_targets(ks), reverse=True)
    if len(ks) < 2:
        raise FewerThanTwoEntries("need at least two clique targets")
    return multinomial([ks[0] - 1, ks[1] - 1] + [k - 2 for k in ks[2:]])


# -- asymptotics -------------------------------------------------------------

def asympt_ratio(r: int, k: int) -> Fraction:
    """``M_r(k)`` divided by ``(r(k-2))! / ((k-2)!)^r``."""
    if r < 2:
        raise RTooSmall(f"r must be >= 2, got {r}")
    if k < 3:
        raise KTooSmall(f"k must be >= 3, got {k}")
    return Fraction(M(diag(r, k)), multinomial([k - 2] * r))


def ratio_bracket(r: int) -> Fraction:
    """Tail bound ``3 + 3/(r-1) + (r-1)/(r-2)^2`` on the asymptotic ratio."""
    if r < 3:
        raise RTooSmall(f"r must be >= 3, got {r}")
    return 3 + Fraction(3, r - 1) + Fraction(r - 1, (r - 2) ** 2)


class AsymptoticConstants(NamedTuple):
    main: Decimal  # (3 + e) / 2
    waste: Decimal  # (3 - e) / 2
    improved: Decimal  # (3 + e) / 2 - d / 48


_PLACES = Decimal("1e-12")


def asympt_constants(d: int = 4) -> AsymptoticConstants:
    """Report-only decimal constants, rounded to 12 places."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    with localcontext() as ctx:
        ctx.prec = 60
        e = sum(Decimal(1) / Decimal(factorial(n)) for n in range(60))
        main = (3 + e) / 2
        waste = (3 - e) / 2
        improved = main - Decimal(d) / 48
        return AsymptoticConstants(
            main.quantize(_PLACES), waste.quantize(_PLACES), improved.quantize(_PLACES)
        )


# -- reports -----------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """One row of bounds for a target tuple.

    ``k`` is an int for diagonal input, otherwise the raw tuple.  Columns that
    are undefined for the input are ``None``.
    """

    r: int
    k: Union[int, tuple[int, ...]]
    M_upper: Fraction | None
    M: int
    w_lower: int | None
    w: int
    T: int | None
    C: int
    php: int
    M_formula: int | None = None

    def __post_init__(self) -> None:
        if self.php != self.M - self.w:
            raise AssertionError(f"php {self.php} != M - w for {self.k}")


def bound_report(ks: Sequence[int]) -> BoundReport:
    raw = _raw_targets(ks)
    sig = canonicalize(raw)
    r = len(raw)
    diagonal = len(set(raw)) == 1
    m, waste = M_and_w(sig)
    closed_form_ok = len(sig) >= 2
    return BoundReport(
        r=r,
        k=raw[0] if diagonal else tuple(raw),
        M_upper=M_upper(sig) if closed_form_ok else None,
        M=m,
        w_lower=w_lower_diag(r, raw[0]) if diagonal and r >= 2 and raw[0] >= 3 else None,
        w=waste,
        T=teravainen_bound(raw) if r >= 2 else None,
        C=classical_bound(raw),
        php=php_bound(sig),
        M_formula=M_formula(sig) if closed_form_ok else None,
    )
