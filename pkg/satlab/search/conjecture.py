"""
Tables comparing exhaustive-search values with closed forms.
"""

import csv
import io
import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterable, List, Optional

from ..formulas import conjectured_strong_sat_number, directed_strong_sat_number
from ..hypergraph import Mode, Pattern
from .oracle import formula_for, min_strong_saturation, min_weak_saturation

logger = logging.getLogger(__name__)

CONJECTURE_HEADER = [
    "n", "p", "q", "status", "oracle", "lower_bound", "upper_bound",
    "directed", "conjectured", "agree",
]

CONJECTURE_CAVEAT = (
    "# The conjectured value is only claimed for n at least some unspecified n0; "
    "disagreement at small n does not refute it."
)

GRID_HEADER = ["d", "n", "p", "mode", "status", "oracle", "formula", "agree"]


@dataclass(frozen=True)
class ConjectureRow:
    n: int
    p: int
    q: int
    conclusive: bool
    oracle: Optional[int]
    lower_bound: int
    upper_bound: Optional[int]
    directed: int
    conjectured: int

    @property
    def agree(self) -> Optional[bool]:
        """None when the search did not settle the value."""
        if not self.conclusive or self.oracle is None:
            return None
        return self.oracle == self.conjectured


@dataclass(frozen=True)
class GridRow:
    d: int
    n: int
    p: tuple
    mode: Mode
    conclusive: bool
    oracle: Optional[int]
    formula: int

    @property
    def agree(self) -> Optional[bool]:
        if not self.conclusive:
            return None
        return self.oracle == self.formula


def conjecture_table(
    p: int,
    q: int,
    n_values: Iterable[int],
    require_h_free: bool = False,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
    symmetry: Optional[bool] = None
) -> List[ConjectureRow]:
    """
    Strong K_{p,q} saturation: exhaustive minimum against the directed and the
    conjectured closed forms, one row per n.
    """
    rows = []
    for n in n_values:
        pattern = Pattern(n=n, p=(p, q))
        cert = min_strong_saturation(
            pattern, require_h_free=require_h_free, budget=budget,
            workers=workers, symmetry=symmetry,
        )
        rows.append(ConjectureRow(
            n=n, p=p, q=q,
            conclusive=cert.conclusive,
            oracle=cert.minimum,
            lower_bound=cert.lower_bound,
            upper_bound=cert.upper_bound,
            directed=directed_strong_sat_number(n, p, q).value,
            conjectured=conjectured_strong_sat_number(n, p, q).value,
        ))
        logger.debug(f"Conjecture row n={n}: {rows[-1]}")
    return rows


def _patterns(d: int, n: int, mode: Mode):
    if mode is Mode.DIRECTED:
        return product(range(1, n + 1), repeat=d)
    return combinations_with_replacement(range(1, n + 1), d)


def weak_grid_table(
    d: int,
    n_values: Iterable[int],
    mode: Mode = Mode.UNDIRECTED,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
    symmetry: Optional[bool] = None
) -> List[GridRow]:
    """
    Exhaustive weak saturation numbers against the closed form for every p with
    entries in 1..n (sorted for undirected patterns, every order for directed ones).
    """
    mode = Mode(mode)
    rows = []
    for n in n_values:
        for p in _patterns(d, n, mode):
            pattern = Pattern(n=n, p=p, mode=mode)
            cert = min_weak_saturation(pattern, budget=budget, workers=workers, symmetry=symmetry)
            rows.append(GridRow(
                d=d, n=n, p=tuple(p), mode=mode,
                conclusive=cert.conclusive,
                oracle=cert.minimum,
                formula=formula_for(pattern),
            ))
    return rows


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _status(conclusive: bool) -> str:
    return "conclusive" if conclusive else "inconclusive"


def conjecture_csv(rows: Iterable[ConjectureRow]) -> str:
    """CSV text with the caveat line first; agree is empty for inconclusive rows."""
    out = io.StringIO()
    out.write(CONJECTURE_CAVEAT + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CONJECTURE_HEADER)
    for r in rows:
        writer.writerow([
            r.n, r.p, r.q, _status(r.conclusive), _cell(r.oracle), r.lower_bound,
            _cell(r.upper_bound), r.directed, r.conjectured, _cell(r.agree),
        ])
    return out.getvalue()


def grid_csv(rows: Iterable[GridRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(GRID_HEADER)
    for r in rows:
        writer.writerow([
            r.d, r.n, " ".join(str(x) for x in r.p), r.mode.value, _status(r.conclusive),
            _cell(r.oracle), r.formula, _cell(r.agree),
        ])
    return out.getvalue()
