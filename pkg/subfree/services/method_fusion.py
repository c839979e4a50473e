"""Side-by-side fusion of moment columns computed by independent methods.

Each method contributes one column of values indexed by k. Columns are
grouped by the quantity they estimate; within a group the largest
pairwise relative deviation is reported per row and rows beyond the
tolerance are flagged.
"""
import logging
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from subfree.config import CONSISTENCY_RTOL, DEFAULT_SERIES_ORDER, DEFAULT_WORD_CAP, MAX_SERIES_ORDER
from subfree.errors import MethodDisagreement, ParameterOutOfRange
from subfree.services.free_prob import CONVOLUTION, STRANSFORM, ChainWeights, jw_law, jw_trace_moments
from subfree.services.pairing_oracle import jw_moment_oracle

logger = logging.getLogger(__name__)

ORACLE = "oracle"
ALL_METHODS = (STRANSFORM, CONVOLUTION, ORACLE)
JW_TOLERANCE = 1e-8


def parse_methods(methods: Optional[str]) -> List[str]:
    """`all` or a comma-separated subset of stransform,convolution,oracle."""
    if not methods or methods.strip() == "all":
        return list(ALL_METHODS)
    requested = {m.strip() for m in methods.split(",") if m.strip()}
    unknown = requested - set(ALL_METHODS)
    if unknown:
        raise ParameterOutOfRange(f"unknown methods {sorted(unknown)}; choose from {', '.join(ALL_METHODS)} or all")
    return [m for m in ALL_METHODS if m in requested]


def relative_deviation(values: Iterable) -> Optional[float]:
    present = [float(v) for v in values if v is not None]
    if len(present) < 2:
        return None
    return max(abs(a - b) / max(1.0, abs(a), abs(b)) for a, b in combinations(present, 2))


def fuse_columns(
    columns: Mapping[str, Sequence[Optional[object]]],
    groups: Mapping[str, Sequence[str]],
    tolerance: float = CONSISTENCY_RTOL,
    index_name: str = "k",
) -> List[Dict[str, object]]:
    """One row per index with every column, `<group>_max_dev` and `agree`."""
    length = max((len(c) for c in columns.values()), default=0)
    rows = []
    for k in range(length):
        row: Dict[str, object] = {index_name: k}
        for name, col in columns.items():
            row[name] = col[k] if k < len(col) else None
        agree = True
        for group, members in groups.items():
            dev = relative_deviation(row[m] for m in members if m in row)
            if len(members) > 1:
                row[f"{group}_max_dev"] = dev
            if dev is not None and dev > tolerance:
                agree = False
        row["agree"] = agree
        rows.append(row)
    return rows


def jw_table(
    w: ChainWeights,
    n: int,
    order: int = DEFAULT_SERIES_ORDER,
    methods: Sequence[str] = ALL_METHODS,
    max_word: int = DEFAULT_WORD_CAP,
    tolerance: float = JW_TOLERANCE,
    strict: bool = False,
) -> List[Dict[str, object]]:
    """Moments k = 0..order of the corner law nu_n and of J_n, per method.

    The oracle column is left empty for k with 2 n k letters beyond
    `max_word`.
    """
    w.require(n)
    if order < 1 or order > MAX_SERIES_ORDER:
        raise ParameterOutOfRange(f"order must be in 1..{MAX_SERIES_ORDER}, got {order}")
    columns: Dict[str, List] = {}
    corner, trace = [], []
    for method in (STRANSFORM, CONVOLUTION):
        if method in methods:
            columns[f"corner_{method}"] = list(jw_law(w, n, order, method).moments)
            corner.append(f"corner_{method}")
    for method in (STRANSFORM, CONVOLUTION):
        if method in methods:
            columns[f"trace_{method}"] = list(jw_trace_moments(w, n, order, method).moments)
            trace.append(f"trace_{method}")
    if ORACLE in methods:
        reach = max_word // (2 * n)
        if reach < order:
            logger.info(f"oracle column stops at k={reach}: (Q_{n} Q_{n}^*)^k exceeds {max_word} letters beyond that")
        columns[ORACLE] = [
            jw_moment_oracle(w, n, k, max_word) if k <= reach else None for k in range(order + 1)
        ]
        trace.append(ORACLE)

    groups = {name: members for name, members in (("corner", corner), ("trace", trace)) if members}
    rows = fuse_columns(columns, groups, tolerance)
    bad = [row["k"] for row in rows if not row["agree"]]
    if bad:
        worst = max(
            (row.get(f"{g}_max_dev") or 0.0) for row in rows for g in groups
        )
        logger.warning(f"jw methods disagree at k={bad} (max relative deviation {worst:.3e})")
        if strict:
            raise MethodDisagreement(
                f"jw methods disagree at k={bad} beyond tolerance {tolerance}", max_deviation=worst
            )
    return rows
