"""Exact and log-space evaluation of the conflict-tree budget recurrence.

T(r, s) counts worst-case high-level nodes given budgets of r negative and s
positive constraints:

    T(r, s) = 1                                 if r = 0 or s = 0
    T(r, s) = 3                                 if r = 1 and s > 0
    T(r, s) = T(r-1, s) + T(r-2, s-1) + 1       otherwise

All steps are evaluated tight (with equality). Two backends are provided: an
arbitrary-precision table for exact values, and a log2-space backend whose
additions are log-sum-exp, for budgets where the exact value has millions of
digits. The induction closed form 3 * r**s dominates the recurrence.
"""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from .logspace import LN2, LOG2_3, Log2Value

DEFAULT_EXACT_CELL_LIMIT = 10**6


def _check_args(r: int, s: int) -> None:
    if r < 0 or s < 0:
        raise ValueError("budgets must be nonnegative")


def _exact_rows(r_max: int, s_max: int) -> Iterator[list[int]]:
    """Yield rows T(i, 0..s_max) for i = 0..r_max.

    Row i depends on row i-1 at the same s and row i-2 shifted by one in s, so
    two rolling rows suffice.
    """
    row0 = [1] * (s_max + 1)
    yield row0
    if r_max == 0:
        return
    row1 = [1] + [3] * s_max
    yield row1
    prev2, prev1 = row0, row1
    for _ in range(2, r_max + 1):
        cur = [1] * (s_max + 1)
        for j in range(1, s_max + 1):
            cur[j] = prev1[j] + prev2[j - 1] + 1
        yield cur
        prev2, prev1 = prev1, cur


def eval_exact(r: int, s: int, *, max_cells: int = DEFAULT_EXACT_CELL_LIMIT) -> int:
    """Exact T(r, s) by dynamic programming.

    Refuses tables larger than ``max_cells`` (r * s cells); use
    :func:`eval_log` for budgets past the ceiling.
    """
    _check_args(r, s)
    if r * s > max_cells:
        raise ValueError(
            f"exact table of {r * s} cells exceeds the {max_cells}-cell ceiling; "
            "use eval_log"
        )
    last: list[int] = []
    for row in _exact_rows(r, s):
        last = row
    return last[s]


def eval_exact_table(
    r_max: int, s_max: int, *, max_cells: int = DEFAULT_EXACT_CELL_LIMIT
) -> list[list[int]]:
    """The full table T[0..r_max][0..s_max]; same ceiling as eval_exact."""
    _check_args(r_max, s_max)
    if (r_max + 1) * (s_max + 1) > max_cells:
        raise ValueError(
            f"exact table of {(r_max + 1) * (s_max + 1)} cells exceeds the "
            f"{max_cells}-cell ceiling; use eval_log"
        )
    return list(_exact_rows(r_max, s_max))


def _log2_add_arrays(a: np.ndarray, b) -> np.ndarray:
    m = np.maximum(a, b)
    return m + np.log1p(np.exp2(-np.abs(a - b))) / LN2


def eval_log(r: int, s: int) -> Log2Value:
    """log2 of T(r, s) via log-sum-exp accumulation.

    Rows run over the positive budget, so memory is O(s); each step is a
    vectorized three-way log-sum-exp.
    """
    _check_args(r, s)
    if r == 0 or s == 0:
        return Log2Value(0.0)
    if r == 1:
        return Log2Value(LOG2_3)
    prev2 = np.zeros(s + 1)  # log2 T(0, .)
    prev1 = np.full(s + 1, LOG2_3)
    prev1[0] = 0.0  # log2 T(1, .)
    for _ in range(2, r + 1):
        cur = np.empty(s + 1)
        cur[0] = 0.0
        cur[1:] = _log2_add_arrays(
            _log2_add_arrays(prev1[1:], prev2[:-1]), 0.0
        )
        prev2, prev1 = prev1, cur
    return Log2Value(float(prev1[s]))


def induction_bound(r: int, s: int) -> Log2Value:
    """log2 of the closed-form dominating bound 3 * r**s (stated for
    r >= 1, s >= 1 only)."""
    if r < 1 or s < 1:
        raise ValueError("induction bound requires r >= 1 and s >= 1")
    return Log2Value(LOG2_3 + s * math.log2(r))
