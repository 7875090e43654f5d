"""Turn one OA with a resolvable column projection into a full large set.

A projection onto columns i1..il is resolvable when its level product equals
N and the N rows restricted to it are pairwise distinct (a bijection between
rows and tuples).  Adding a constant shift vector to the complementary columns
then yields pairwise row-disjoint translates whose union is the full
factorial: the shifted arrays are per-column symbol translations (strength
preserved), and two translates sharing a row would force equal shifts via the
bijective projection.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .arrays import LargeSet, SymbolMatrix, verify_strength
from .errors import BudgetExceededError, VerificationError

SUBSET_SEARCH_CAP = 10**6
MAX_MEMBER_CELLS = 1 << 27  # cap on total cells materialized by an expansion


@dataclass(frozen=True)
class ResolvableProjection:
    columns: tuple[int, ...]
    level_product: int


def check_resolvable_projection(a: SymbolMatrix, columns) -> tuple[bool, str | None]:
    """True iff the level product equals N and the projection is a bijection
    between rows and tuples; otherwise a human-readable counterexample."""
    columns = tuple(int(c) for c in columns)
    if len(set(columns)) != len(columns):
        raise ValueError("projection columns must be distinct")
    for c in columns:
        if not 0 <= c < a.k:
            raise ValueError(f"column {c} out of range [0, {a.k})")
    level_product = prod(a.profile.levels[c] for c in columns)
    if level_product != a.n:
        return False, f"level product {level_product} != N={a.n}"
    sub = a.cells[:, columns]
    order = np.lexsort(sub.T[::-1])
    srt = sub[order]
    dup = np.nonzero((srt[1:] == srt[:-1]).all(axis=1))[0]
    if dup.size:
        tup = tuple(int(x) for x in srt[dup[0]])
        return False, f"tuple {tup} occurs more than once on columns {columns}"
    return True, None


def _product_subsets(levels, top_limit: int, target: int, counter: list[int]):
    """Subsets of columns < top_limit with level product == target, yielded in
    colexicographic order (largest element varied last)."""
    if target == 1:
        counter[0] += 1
        if counter[0] > SUBSET_SEARCH_CAP:
            raise BudgetExceededError(
                f"resolvable-projection search exceeded {SUBSET_SEARCH_CAP} candidates"
            )
        yield ()
        return
    for top in range(top_limit):
        if target % levels[top] == 0:
            for rest in _product_subsets(levels, top, target // levels[top], counter):
                yield rest + (top,)


def find_resolvable_projection(a: SymbolMatrix) -> ResolvableProjection | None:
    """Colexicographically first column subset whose level product equals N
    and which projects bijectively; None when no subset qualifies."""
    counter = [0]
    for cand in _product_subsets(a.profile.levels, a.k, a.n, counter):
        ok, _ = check_resolvable_projection(a, cand)
        if ok:
            return ResolvableProjection(cand, a.n)
    return None


def expand_shift(a: SymbolMatrix, proj: ResolvableProjection) -> LargeSet:
    """One member per shift vector over the complementary columns, in
    mixed-radix order of the shift (first complementary column most
    significant).  Member 0 is the seed array itself."""
    ok, why = check_resolvable_projection(a, proj.columns)
    if not ok:
        raise VerificationError(f"projection {proj.columns} is not resolvable: {why}")
    complement = [j for j in range(a.k) if j not in set(proj.columns)]
    comp_levels = [a.profile.levels[j] for j in complement]
    total_cells = prod(comp_levels) * a.n * a.k
    if total_cells > MAX_MEMBER_CELLS:
        raise ValueError(
            f"expansion would materialize {total_cells} cells"
            f" (cap {MAX_MEMBER_CELLS}); project to fewer columns first"
        )
    members = []
    if complement:
        deltas = np.indices(comp_levels).reshape(len(complement), -1).T
    else:
        deltas = np.zeros((1, 0), dtype=np.int64)
    lv = np.asarray(comp_levels, dtype=np.int32)
    for delta in deltas:
        cells = a.cells.copy()
        if complement:
            cells[:, complement] = (cells[:, complement] + delta.astype(np.int32)) % lv
        members.append(SymbolMatrix(a.profile, cells, a.t))
    return LargeSet(a.profile, members, a.t)


def expand_full_strength(a: SymbolMatrix) -> LargeSet:
    """Expansion for an index-1 array: any t columns of an OA(v^t, k, v, t)
    with lambda = 1 form a resolvable projection; the first t are used."""
    levels = set(a.profile.levels)
    if len(levels) != 1:
        raise VerificationError("index-1 expansion needs a single-level profile")
    v = levels.pop()
    t = 0
    n = a.n
    while n > 1 and n % v == 0:
        n //= v
        t += 1
    if n != 1 or t > a.k:
        raise VerificationError(f"N={a.n} is not v^t for v={v} with t <= k={a.k}")
    report = verify_strength(a, t)
    if not report.ok:
        raise VerificationError(
            f"array is not an OA of strength {t} at index 1", report
        )
    seed = a if a.t == t else a.with_t(t)
    return expand_shift(seed, ResolvableProjection(tuple(range(t)), a.n))
