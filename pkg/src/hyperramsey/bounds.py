"""Closed-form bounds and recursions for R(T_m^(r), K_n^(r); r), folded into best intervals.

Every bound is a (guard, formula) entry in a registry. ``best_interval``
evaluates all entries for a cell, keeps the largest lower and smallest upper
bound, and reports each inapplicable entry together with the guard that failed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil
from typing import Callable

from .coloring import chi_w_complete, t_complete
from .trees import is_tree_order
from .witness import is_prime

LOWER = "lower"
UPPER = "upper"

TREE = "tree"
PATH = "path"
FAMILIES = (TREE, PATH)

PROVEN_GOOD = "proven-good"
OPEN = "open"
NOT_GOOD = "not-good"


class InapplicableBound(ValueError):
    """A bound whose hypothesis fails for the requested instance."""

    def __init__(self, source: str, guard: str) -> None:
        super().__init__(f"{source}: {guard}")
        self.source = source
        self.guard = guard


class InconsistentBounds(RuntimeError):
    """A lower bound exceeded an upper bound; always an implementation bug."""


@dataclass(frozen=True)
class BoundRecord:
    source: str
    direction: str
    value: int
    conditions: str = ""

    def __str__(self) -> str:
        return f"{self.direction} {self.value} [{self.source}]"


@dataclass(frozen=True)
class RamseyInterval:
    """Best known [lower, upper]; ``upper`` is None when no upper bound applies."""

    lower: int
    upper: int | None
    lower_src: BoundRecord
    upper_src: BoundRecord | None
    skipped: tuple[InapplicableBound, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.upper is not None and self.lower > self.upper:
            raise InconsistentBounds(f"lower {self.lower_src} exceeds upper {self.upper_src}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def text(self) -> str:
        if self.exact:
            return str(self.lower)
        upper = "?" if self.upper is None else str(self.upper)
        return f"[{self.lower}, {upper}]"


@dataclass(frozen=True)
class GoodnessTarget:
    """(ceil(n/(r-1)) - 1)(m - 1) + t(K_n^(r)): the value an n-good H of order m attains."""

    m: int
    n: int
    r: int

    @property
    def target(self) -> int:
        return (chi_w_complete(self.n, self.r) - 1) * (self.m - 1) + t_complete(self.n, self.r)


def goodness_target(m: int, n: int, r: int) -> int:
    return GoodnessTarget(m, n, r).target


# --- individual bounds ------------------------------------------------------------


def _require_tree_order(source: str, m: int, r: int) -> None:
    if not is_tree_order(m, r):
        raise InapplicableBound(source, f"m={m} is not r + k(r-1) for r={r}")


def burr_lower(h1_stats: tuple[int, int], h2_c: int) -> BoundRecord:
    """(chi_w(H1) - 1)(c(H2) - 1) + t(H1), valid when c(H2) >= t(H1)."""
    chi, t = h1_stats
    if h2_c < t:
        raise InapplicableBound("burr-lower", f"c(H2)={h2_c} < t(H1)={t}")
    return BoundRecord("burr-lower", LOWER, (chi - 1) * (h2_c - 1) + t, f"c(H2)={h2_c} >= t(H1)={t}")


def chvatal_harary_interval(m: int, n: int, r: int) -> tuple[BoundRecord, BoundRecord]:
    _require_tree_order("chvatal-harary", m, r)
    if n < r:
        raise InapplicableBound("chvatal-harary", f"n={n} < r={r}")
    cond = f"tree order m={m}, n={n} >= r={r}"
    lo = BoundRecord("chvatal-harary-lower", LOWER, (m - 1) * (ceil(n / (r - 1)) - 1) + 1, cond)
    hi = BoundRecord("chvatal-harary-upper", UPPER, (m - 1) * (n - 1) + 1, cond)
    return lo, hi


def loh_upper(m: int, n: int, r: int) -> BoundRecord:
    """(m-1)(n-1)/(r-1) + 1 for every tree of order m."""
    _require_tree_order("loh-upper", m, r)
    if n < r:
        raise InapplicableBound("loh-upper", f"n={n} < r={r}")
    return BoundRecord("loh-upper", UPPER, (m - 1) * (n - 1) // (r - 1) + 1, f"(r-1) | (m-1), n={n} >= r={r}")


def matching_upper_t2rm1(r: int, n: int) -> BoundRecord:
    """Upper bound for the order-(2r-1) tree from a maximal red matching, r odd."""
    if r < 3 or r % 2 == 0:
        raise InapplicableBound("odd-matching-upper", f"r={r} must be odd and >= 3")
    if n < r + 1:
        raise InapplicableBound("odd-matching-upper", f"n={n} < r+1={r + 1}")
    half = (r + 1) // 2
    value = half * n - (r - 1) if n % 2 == 0 else half * n - (r - 1) // 2
    return BoundRecord("odd-matching-upper", UPPER, value, f"m=2r-1={2 * r - 1}, r odd, n={n} >= r+1")


def small_tree_upper(r: int) -> BoundRecord:
    """R(T_{2r-1}, K_{r+1}) <= 2r + 1 for r >= 3."""
    if r < 3:
        raise InapplicableBound("order-2r-1-upper", f"r={r} < 3")
    return BoundRecord("order-2r-1-upper", UPPER, 2 * r + 1, f"m=2r-1={2 * r - 1}, n=r+1={r + 1}")


def step_lower_verygood(prev: int, m: int) -> BoundRecord:
    """R(H, K_n) >= R(H, K_{n-r+1}) + m - 1 for connected H of order m."""
    return BoundRecord("step-lower", LOWER, prev + m - 1, f"R(H, K_(n-r+1)) >= {prev}, m={m}")


def recursion_upper_free_edge(n1: int, n2: int, m: int, r: int, n: int, variant: str) -> BoundRecord:
    """Upper bound for H = H' + free edge from bounds n1 on R(H', K_n) and n2 on R(H, K_{n-1}).

    Variant 'A' gives n2 + m - r + 1 provided n1 <= n2 + m - r + 1; variant
    'B' gives n1 + n - 1 provided n2 <= n1 + n - 1.
    """
    if m - r + 1 < r:
        raise InapplicableBound(f"recursion-{variant}", f"H' order m-r+1={m - r + 1} < r={r}")
    if n < r + 1:
        raise InapplicableBound(f"recursion-{variant}", f"n={n} < r+1={r + 1}")
    if variant == "A":
        value = n2 + m - r + 1
        if n1 > value:
            raise InapplicableBound("recursion-A", f"n1={n1} > n2+m-r+1={value}")
        return BoundRecord("recursion-A", UPPER, value, f"n1={n1}, n2={n2}, n={n}")
    if variant == "B":
        value = n1 + n - 1
        if n2 > value:
            raise InapplicableBound("recursion-B", f"n2={n2} > n1+n-1={value}")
        return BoundRecord("recursion-B", UPPER, value, f"n1={n1}, n2={n2}, n={n}")
    raise ValueError(f"variant must be 'A' or 'B', got {variant!r}")


def treebounds_3(j: int, n: int) -> RamseyInterval:
    """3-uniform trees with j edges: exact j(n-1)+1 for odd n, [j(n-2)+2, j(n-1)] for even n."""
    if j < 2 or n < 3:
        raise InapplicableBound("tree-3-uniform", f"need j >= 2 and n >= 3, got j={j}, n={n}")
    if n % 2:
        rec = BoundRecord("tree-3-uniform", LOWER, j * (n - 1) + 1, f"j={j}, n={n} odd")
        return RamseyInterval(rec.value, rec.value, rec, BoundRecord(rec.source, UPPER, rec.value, rec.conditions))
    lo = BoundRecord("tree-3-uniform", LOWER, j * (n - 2) + 2, f"j={j}, n={n} even")
    hi = BoundRecord("tree-3-uniform", UPPER, j * (n - 1), f"j={j}, n={n} even")
    return RamseyInterval(lo.value, hi.value, lo, hi)


def disjoint_copies_eq8(a: int, m: int, n: int, r: int) -> BoundRecord:
    """R(aH, K_n) <= (m-1)(ceil(n/(r-1)) - 1) + (a-1)m + t(K_n) for n-good H of order m."""
    value = (m - 1) * (chi_w_complete(n, r) - 1) + (a - 1) * m + t_complete(n, r)
    return BoundRecord("disjoint-copies-sum", UPPER, value, f"H n-good, a={a}, m={m}, n={n}")


def disjoint_copies_bounds(a: int, m: int, n: int, r: int, single_good: bool) -> BoundRecord:
    """Bound on R(aH, K_n^(r)) for a disjoint copies of an n-good H of order m.

    With n >= 2r-1 this is (am - 1)(ceil(n/(r-1)) - 1) + t(K_n^(r)), the
    goodness target computed from the order am; below that threshold only the
    summed bound is available. Both need H itself to be n-good.
    """
    if a < 1:
        raise InapplicableBound("disjoint-copies", f"a={a} < 1")
    if not single_good:
        raise InapplicableBound("disjoint-copies", "H is not known to be n-good")
    if n >= 2 * r - 1:
        value = (a * m - 1) * (chi_w_complete(n, r) - 1) + t_complete(n, r)
        return BoundRecord("disjoint-copies-good", UPPER, value, f"H n-good, n={n} >= 2r-1={2 * r - 1}, a={a}")
    return disjoint_copies_eq8(a, m, n, r)


# --- registry ----------------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    family: str
    m: int
    n: int
    r: int

    @property
    def j(self) -> int:
        return (self.m - 1) // (self.r - 1)


@dataclass(frozen=True)
class BoundRule:
    """``guard`` returns the failed condition, or None when the rule applies."""

    source: str
    direction: str
    guard: Callable[[Cell], str | None]
    formula: Callable[[Cell], int]
    families: tuple[str, ...] = FAMILIES


def _r3(c: Cell) -> str | None:
    return None if c.r == 3 else f"r={c.r} != 3"


def _all(*checks: Callable[[Cell], str | None]) -> Callable[[Cell], str | None]:
    def guard(c: Cell) -> str | None:
        for check in checks:
            failed = check(c)
            if failed:
                return failed
        return None

    return guard


def _need(pred: Callable[[Cell], bool], text: str) -> Callable[[Cell], str | None]:
    return lambda c: None if pred(c) else text


RULES: list[BoundRule] = [
    BoundRule("burr-lower", LOWER, _need(lambda c: c.m >= t_complete(c.n, c.r), "c(T) < t(K_n)"),
              lambda c: goodness_target(c.m, c.n, c.r)),
    BoundRule("chvatal-harary-lower", LOWER, lambda c: None,
              lambda c: chvatal_harary_interval(c.m, c.n, c.r)[0].value),
    BoundRule("chvatal-harary-upper", UPPER, lambda c: None,
              lambda c: chvatal_harary_interval(c.m, c.n, c.r)[1].value),
    BoundRule("loh-upper", UPPER, lambda c: None, lambda c: loh_upper(c.m, c.n, c.r).value),
    BoundRule("single-edge", LOWER, _need(lambda c: c.m == c.r, "m != r"), lambda c: c.n),
    BoundRule("single-edge", UPPER, _need(lambda c: c.m == c.r, "m != r"), lambda c: c.n),
    BoundRule("single-blue-edge", LOWER, _need(lambda c: c.n == c.r, "n != r"), lambda c: c.m),
    BoundRule("single-blue-edge", UPPER, _need(lambda c: c.n == c.r, "n != r"), lambda c: c.m),
    BoundRule("odd-matching-upper", UPPER,
              _all(_need(lambda c: c.m == 2 * c.r - 1, "m != 2r-1"),
                   _need(lambda c: c.r % 2 == 1 and c.r >= 3, "r even or < 3"),
                   _need(lambda c: c.n >= c.r + 1, "n < r+1")),
              lambda c: matching_upper_t2rm1(c.r, c.n).value),
    BoundRule("order-2r-1-upper", UPPER,
              _all(_need(lambda c: c.m == 2 * c.r - 1, "m != 2r-1"),
                   _need(lambda c: c.n == c.r + 1, "n != r+1"),
                   _need(lambda c: c.r >= 3, "r < 3")),
              lambda c: small_tree_upper(c.r).value),
    BoundRule("tree-3-uniform", LOWER, _all(_r3, _need(lambda c: c.j >= 2, "j < 2")),
              lambda c: treebounds_3(c.j, c.n).lower),
    BoundRule("tree-3-uniform", UPPER, _all(_r3, _need(lambda c: c.j >= 2, "j < 2")),
              lambda c: treebounds_3(c.j, c.n).upper),
    BoundRule("path-4-good", LOWER, _all(_r3, _need(lambda c: c.n == 4, "n != 4")),
              lambda c: 2 * c.j + 2, (PATH,)),
    BoundRule("path-4-good", UPPER, _all(_r3, _need(lambda c: c.n == 4, "n != 4")),
              lambda c: 2 * c.j + 2, (PATH,)),
    BoundRule("path-7-vs-8", UPPER, _all(_r3, _need(lambda c: (c.m, c.n) == (7, 8), "not (m, n) = (7, 8)")),
              lambda c: 20, (PATH,)),
    BoundRule("path-vs-8", UPPER, _all(_r3, _need(lambda c: c.n == 8 and c.j >= 3, "n != 8 or j < 3")),
              lambda c: 7 * c.j - 1, (PATH,)),
    BoundRule("path-7-vs-6", UPPER, _all(_r3, _need(lambda c: (c.m, c.n) == (7, 6), "not (m, n) = (7, 6)")),
              lambda c: 14, (PATH,)),
    BoundRule("path-vs-6", UPPER, _all(_r3, _need(lambda c: c.n == 6 and c.j >= 3, "n != 6 or j < 3")),
              lambda c: 5 * c.j - 1, (PATH,)),
]


def _validate(family: str, m: int, n: int, r: int) -> None:
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")
    if r < 2:
        raise ValueError("r must be >= 2")
    if not is_tree_order(m, r):
        raise ValueError(f"m={m} is not a tree order for r={r}")
    if n < r:
        raise ValueError(f"n={n} must be >= r={r}")


def closed_form_records(family: str, m: int, n: int, r: int) -> tuple[list[BoundRecord], list[InapplicableBound]]:
    """Evaluate every registry rule on one cell."""
    cell = Cell(family, m, n, r)
    records, skipped = [], []
    for rule in RULES:
        if family not in rule.families:
            continue
        failed = rule.guard(cell)
        if failed:
            if not any(s.source == rule.source and s.guard == failed for s in skipped):
                skipped.append(InapplicableBound(rule.source, failed))
            continue
        records.append(BoundRecord(rule.source, rule.direction, rule.formula(cell), f"{family} m={m} n={n} r={r}"))
    return records, skipped


@lru_cache(maxsize=None)
def _fold(family: str, m: int, n: int, r: int) -> RamseyInterval:
    records, skipped = closed_form_records(family, m, n, r)
    # one free edge fewer: H' has order m - r + 1 (a path stays a path)
    if m - r + 1 >= r and n >= r + 1:
        sub = _fold(family, m - r + 1, n, r)
        prev_n = _fold(family, m, n - 1, r)
        if sub.upper is not None and prev_n.upper is not None:
            n1, n2 = sub.upper, prev_n.upper
            records.append(BoundRecord("recursion-A", UPPER, max(n1, n2 + m - r + 1), f"n1={n1}, n2={n2}"))
            records.append(BoundRecord("recursion-B", UPPER, max(n1 + n - 1, n2), f"n1={n1}, n2={n2}"))
    else:
        skipped.append(InapplicableBound("recursion", "needs m-r+1 >= r and n >= r+1"))
    if n - r + 1 >= r:
        prev = _fold(family, m, n - r + 1, r)
        records.append(step_lower_verygood(prev.lower, m))
    else:
        skipped.append(InapplicableBound("step-lower", "needs n-r+1 >= r"))
    lowers = [b for b in records if b.direction == LOWER]
    uppers = [b for b in records if b.direction == UPPER]
    # first-listed record wins ties so provenance is stable
    lo = max(lowers, key=lambda b: b.value)
    lo = next(b for b in lowers if b.value == lo.value)
    hi = None
    if uppers:
        best = min(b.value for b in uppers)
        hi = next(b for b in uppers if b.value == best)
    for b in lowers:
        for u in uppers:
            if b.value > u.value:
                raise InconsistentBounds(f"{family} m={m} n={n} r={r}: {b} exceeds {u}")
    return RamseyInterval(lo.value, hi.value if hi else None, lo, hi, tuple(skipped))


def all_records(family: str, m: int, n: int, r: int) -> list[BoundRecord]:
    """Every applicable record for a cell, recursions included."""
    _validate(family, m, n, r)
    _fold(family, m, n, r)
    records, _ = closed_form_records(family, m, n, r)
    return records


def best_interval(family: str, m: int, n: int, r: int = 3) -> RamseyInterval:
    _validate(family, m, n, r)
    return _fold(family, m, n, r)


def n_good_status(family: str, m: int, n: int, r: int = 3) -> str:
    iv = best_interval(family, m, n, r)
    target = goodness_target(m, n, r)
    if iv.lower == iv.upper == target:
        return PROVEN_GOOD
    if iv.lower > target:
        return NOT_GOOD
    return OPEN


def loose_path_bounds_3(j: int, n: int) -> RamseyInterval:
    if j < 1:
        raise InapplicableBound("loose-path", f"j={j} < 1")
    return best_interval(PATH, 2 * j + 1, n, 3)


# --- the loose cycle C_4^(3) ---------------------------------------------------------


C4_ORDER = 4


def c4_records(n: int) -> list[BoundRecord]:
    """Known bounds on R(C_4^(3), K_n^(3); 3)."""
    if n < 3:
        raise ValueError("n must be >= 3")
    out = [burr_lower((chi_w_complete(n, 3), t_complete(n, 3)), C4_ORDER)]
    if n == 3:
        out += [BoundRecord("single-blue-edge", LOWER, 4), BoundRecord("single-blue-edge", UPPER, 4)]
    if n == 4:
        out.append(BoundRecord("c4-4-good", UPPER, 5, "n=4"))
    if n % 2 == 1:
        j = (n - 1) // 2
        if is_prime(3 * j + 1):
            out.append(BoundRecord("c4-cubic-residue", LOWER, 3 * j + 2, f"3j+1={3 * j + 1} prime"))
    return out


def c4_interval(n: int) -> RamseyInterval:
    recs = c4_records(n)
    lowers = [b for b in recs if b.direction == LOWER]
    uppers = [b for b in recs if b.direction == UPPER]
    lo = max(lowers, key=lambda b: b.value)
    hi = min(uppers, key=lambda b: b.value) if uppers else None
    return RamseyInterval(lo.value, hi.value if hi else None, lo, hi)


def c4_status(n: int) -> str:
    iv = c4_interval(n)
    target = goodness_target(C4_ORDER, n, 3)
    if iv.lower == iv.upper == target:
        return PROVEN_GOOD
    if iv.lower > target:
        return NOT_GOOD
    return OPEN
