"""Ranking-difference metrics: normalized Kendall distances over rankings.

Two variants:

* ``kendall_full`` — classic normalized Kendall tau distance for two
  orderings of the same element set: discordant pairs / C(n, 2).
* ``kendall_topk`` — top-k comparison for lists that may only partially
  overlap, after Fagin's penalty formulation. Every unordered element pair
  drawn from the union contributes:
    1. both elements in both lists: 1 if the lists disagree on the pair;
    2. both in one list, exactly one in the other: 1 if the list containing
       both puts the absent-elsewhere element first (the other list, which
       ranks only its present element, implies the opposite);
    3. one element exclusive to each list: 1 (each list implies its own
       element is ranked, the other not);
    4. both elements missing from one list: the penalty parameter p, since
       neither order can be confirmed.
  The sum is normalized by its maximum n^2 + p*n*(n-1), attained exactly by
  disjoint lists, so the distance is 0 for identical lists and 1 for
  disjoint ones.

Rankings may be given as lists of RankEntry (compared by (type, label), so
rankings from different graphs are comparable) or of any hashable elements.
Only the order matters; scores are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import mean, median
from typing import Sequence

from .exceptions import LengthMismatch, MismatchedGroundSets
from .similarity import RankEntry
from .validation import check_in_range


@dataclass(frozen=True)
class KendallParams:
    """Comparison mode and the missing-pair penalty for top-k mode."""

    mode: str = "topk"
    p: float = 0.5

    def validate(self) -> "KendallParams":
        if self.mode not in ("topk", "full"):
            raise ValueError(f"mode must be 'topk' or 'full', got {self.mode!r}")
        check_in_range("p", self.p, 0.0, 1.0)
        return self


def _keys(ranking: Sequence) -> list:
    out = []
    for item in ranking:
        out.append(item.key if isinstance(item, RankEntry) else item)
    if len(set(out)) != len(out):
        raise ValueError("ranking contains duplicate elements")
    return out


def _inversions(seq: list[int]) -> int:
    """Count inversions by merge sort, O(n log n)."""
    if len(seq) < 2:
        return 0
    mid = len(seq) // 2
    left, right = seq[:mid], seq[mid:]
    count = _inversions(left) + _inversions(right)
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
            count += len(left) - i
    seq[:] = merged + left[i:] + right[j:]
    return count


def kendall_full(r1: Sequence, r2: Sequence) -> float:
    """Discordant pairs / C(n,2) for two orderings of one element set.

    0 when the orderings are identical, 1 when one is the reverse of the
    other.

    Raises:
        MismatchedGroundSets: the lists do not contain the same elements.
        ValueError: fewer than 2 elements, or duplicates within a list.
    """
    keys1, keys2 = _keys(r1), _keys(r2)
    if set(keys1) != set(keys2) or len(keys1) != len(keys2):
        raise MismatchedGroundSets(
            "full-list comparison requires identical element sets"
        )
    n = len(keys1)
    if n < 2:
        raise ValueError("full-list comparison needs at least 2 elements")
    pos2 = {k: i for i, k in enumerate(keys2)}
    discordant = _inversions([pos2[k] for k in keys1])
    return discordant / (n * (n - 1) / 2)


def kendall_topk(r1: Sequence, r2: Sequence,
                 params: KendallParams | None = None) -> float:
    """Normalized top-k Kendall distance with penalty p for unknowable pairs.

    The lists must have equal length (k, or both shorter when the candidate
    pool ran out). 0 iff the lists are identical; 1 for disjoint lists.

    Raises:
        LengthMismatch: lists of different lengths.
    """
    p = (params or KendallParams()).validate().p
    keys1, keys2 = _keys(r1), _keys(r2)
    if len(keys1) != len(keys2):
        raise LengthMismatch(
            f"top-k lists must have equal length, got {len(keys1)} and {len(keys2)}"
        )
    n = len(keys1)
    if n == 0:
        return 0.0
    set1, set2 = set(keys1), set(keys2)
    common = set1 & set2
    n_only = n - len(common)

    # Case 1: pairs present in both lists; count order disagreements.
    pos2 = {k: i for i, k in enumerate(keys2)}
    penalty = float(_inversions([pos2[k] for k in keys1 if k in common]))

    # Case 2: one element shared, the other present in only this list and
    # ranked above the shared one there (the other list implies the reverse).
    for keys in (keys1, keys2):
        exclusive_seen = 0
        for k in keys:
            if k in common:
                penalty += exclusive_seen
            else:
                exclusive_seen += 1

    # Case 3: one element exclusive to each list; always contradictory.
    penalty += n_only * n_only

    # Case 4: both elements confined to the same single list; unknowable.
    penalty += p * n_only * (n_only - 1)

    return penalty / (n * n + p * n * (n - 1))


def ranking_difference(r1: Sequence, r2: Sequence,
                       params: KendallParams | None = None) -> float:
    """Dispatch on params.mode: full-list or top-k distance."""
    params = (params or KendallParams()).validate()
    if params.mode == "full":
        return kendall_full(r1, r2)
    return kendall_topk(r1, r2, params)


def avg_ranking_difference(queries: Sequence, rankings1: Sequence[Sequence],
                           rankings2: Sequence[Sequence],
                           params: KendallParams | None = None) -> float:
    """Mean per-query top-k distance over aligned ranking lists.

    Raises:
        LengthMismatch: queries and ranking lists not aligned.
    """
    if not (len(queries) == len(rankings1) == len(rankings2)):
        raise LengthMismatch(
            f"{len(queries)} queries but {len(rankings1)} and "
            f"{len(rankings2)} rankings"
        )
    if not queries:
        return 0.0
    return mean(
        ranking_difference(a, b, params) for a, b in zip(rankings1, rankings2)
    )


def difference_summary(values: Sequence[float]) -> dict[str, float]:
    """Mean/min/median/max of a non-empty list of per-query differences."""
    vals = list(values)
    return {
        "mean": mean(vals),
        "min": min(vals),
        "median": median(vals),
        "max": max(vals),
    }
