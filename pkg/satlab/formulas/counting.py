"""
Exact counting for saturation numbers and set-pair bounds.

Every evaluator returns an arbitrary-precision integer tagged with how it was
obtained: by scanning the objects it counts, or from a closed form.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations, product
from math import comb, factorial, prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..config import MAX_CELLS, Q_FORMULA_MAX_D
from ..errors import FormulaError

logger = logging.getLogger(__name__)


class Method(str, Enum):
    ENUMERATED = "enumerated"
    CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class CountResult:
    """An exact count and the method that produced it."""
    value: int
    method: Method

    def __int__(self) -> int:
        return self.value

    def to_dict(self) -> dict:
        return {"value": self.value, "method": self.method.value}


def _enumerated(value: int) -> CountResult:
    return CountResult(value, Method.ENUMERATED)


def _closed(value: int) -> CountResult:
    return CountResult(value, Method.CLOSED_FORM)


def multinomial(parts: Sequence[int]) -> int:
    """(sum parts)! / prod(part!)"""
    if any(k < 0 for k in parts):
        return 0
    result = factorial(sum(parts))
    for k in parts:
        result //= factorial(k)
    return result


def _check_p(n: int, p: Sequence[int], sorted_required: bool = True) -> Tuple[int, ...]:
    p = tuple(p)
    if n < 1:
        raise FormulaError(f"n must be positive, got {n}")
    if not p:
        raise FormulaError("p must have at least one entry")
    if any(not 1 <= x <= n for x in p):
        raise FormulaError(f"entries of p must lie in 1..{n}, got {p}")
    if sorted_required and list(p) != sorted(p):
        raise FormulaError(f"p must be sorted ascending, got {p}")
    return p


def _check_caps(a: Sequence[int], b: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    a, b = tuple(a), tuple(b)
    if not a or len(a) != len(b):
        raise FormulaError(f"a and b must be nonempty and of equal length, got {a} and {b}")
    if any(x < 0 for x in a + b):
        raise FormulaError("caps must be nonnegative")
    return a, b


def qn_enumerate(n: int, p: Sequence[int]) -> CountResult:
    """
    Count x in [n]^d whose i-th smallest coordinate is at least p_i, by lattice scan.

    Raises:
        FormulaError: if p is unsorted or out of range, or n^d exceeds the lattice cap
    """
    p = _check_p(n, p)
    d = len(p)
    if n ** d > MAX_CELLS:
        raise FormulaError(f"n^d = {n ** d} exceeds the lattice cap; use qn_formula")
    count = sum(
        1 for x in product(range(1, n + 1), repeat=d)
        if all(u >= v for u, v in zip(sorted(x), p))
    )
    return _enumerated(count)


def _distinct_values(p: Sequence[int]) -> Tuple[List[int], List[int]]:
    counts = Counter(p)
    values = sorted(counts)
    return values, [counts[v] for v in values]


def qn_formula_summands(p: Sequence[int]) -> List[Tuple[int, ...]]:
    """
    Index tuples (i_1, .., i_m) of the multinomial sum for q_n.

    With distinct values v_1 < .. < v_{m+1} of p occurring r_1, .., r_{m+1} times,
    i_j counts coordinates in [v_j, v_{j+1}) and the partial sums must satisfy
    i_1 + .. + i_j <= r_1 + .. + r_j. For p with d distinct entries there are
    Catalan(d) summands.
    """
    p = tuple(p)
    if list(p) != sorted(p):
        raise FormulaError(f"p must be sorted ascending, got {p}")
    _, r = _distinct_values(p)
    m = len(r) - 1
    caps = [sum(r[:j + 1]) for j in range(m)]

    summands: List[Tuple[int, ...]] = []

    def extend(prefix: List[int], total: int) -> None:
        j = len(prefix)
        if j == m:
            summands.append(tuple(prefix))
            return
        for i in range(caps[j] - total + 1):
            extend(prefix + [i], total + i)

    extend([], 0)
    return summands


def qn_formula(n: int, p: Sequence[int]) -> CountResult:
    """q_n(p) from the multinomial sum over qn_formula_summands(p); no lattice cap."""
    p = _check_p(n, p)
    d = len(p)
    v, _ = _distinct_values(p)
    top = n - v[-1] + 1
    total = 0
    for idx in qn_formula_summands(p):
        rest = d - sum(idx)
        term = multinomial(list(idx) + [rest]) * top ** rest
        for j, i in enumerate(idx):
            term *= (v[j + 1] - v[j]) ** i
        total += term
    return _closed(total)


def weak_sat_number(n: int, p: Sequence[int]) -> CountResult:
    """Minimum edge count of a weakly K^d_{p}-saturated d-partite graph: n^d - q_n(p)."""
    p = _check_p(n, p)
    return _closed(n ** len(p) - qn_formula(n, p).value)


def weak_sat_symmetric(n: int, d: int, p: int) -> CountResult:
    """Weak saturation number when all d class sizes equal p."""
    if d < 1:
        raise FormulaError(f"d must be positive, got {d}")
    _check_p(n, [p])
    return _closed(n ** d - (n - p + 1) ** d)


def directed_weak_sat_number(n: int, p: Sequence[int]) -> CountResult:
    """Directed weak saturation number n^d - prod(n - p_i + 1); p in any order."""
    p = _check_p(n, p, sorted_required=False)
    return _closed(n ** len(p) - prod(n - x + 1 for x in p))


def l_set_size(n: int, d: int, i: int, t: int) -> CountResult:
    """Number of tuples in [n]^d with exactly i coordinates below t."""
    if d < 1 or not 0 <= i <= d:
        raise FormulaError(f"need 0 <= i <= d, got i={i}, d={d}")
    if not 1 <= t <= n:
        raise FormulaError(f"need 1 <= t <= n, got t={t}, n={n}")
    return _closed(comb(d, i) * (t - 1) ** i * (n - t + 1) ** (d - i))


def _intersection_size(n: int, p: Tuple[int, ...], index_set: Sequence[int]) -> int:
    """Tuples with exactly i coordinates below p_i for every i in the (ascending, 1-based) index set."""
    d = len(p)
    parts = []
    term = 1
    prev_i, prev_t = 0, 1
    for i in index_set:
        t = p[i - 1]
        parts.append(i - prev_i)
        term *= (t - prev_t) ** (i - prev_i)
        prev_i, prev_t = i, t
    parts.append(d - prev_i)
    term *= (n - prev_t + 1) ** (d - prev_i)
    return multinomial(parts) * term


def w_inclusion_exclusion(n: int, p: Sequence[int]) -> CountResult:
    """Weak saturation number as the size of the union of L_1(p_1), .., L_d(p_d)."""
    p = _check_p(n, p)
    d = len(p)
    total = 0
    for size in range(1, d + 1):
        sign = 1 if size % 2 else -1
        for index_set in combinations(range(1, d + 1), size):
            total += sign * _intersection_size(n, p, index_set)
    return _closed(total)


def w_crude_bounds(n: int, p: Sequence[int]) -> Tuple[int, int]:
    """
    Sandwich d(p_1-1)(n-p_1+1)^(d-1) <= W <= sum_i |L_i(p_i)|.

    Returns:
        (lower, upper)
    """
    p = _check_p(n, p)
    d = len(p)
    lower = l_set_size(n, d, 1, p[0]).value
    upper = sum(l_set_size(n, d, i, p[i - 1]).value for i in range(1, d + 1))
    return lower, upper


def threshold_matching(m: Sequence[int], a: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """
    Find pi with m_j <= a_{pi(j)} for every j, or None.

    Classes sorted by (m_j, j) are matched in order to cap indices sorted by
    (a_k, k); a permutation exists iff this sorted matching works.

    Returns:
        0-based permutation as a tuple (pi[j] = matched cap index)
    """
    if len(m) != len(a):
        raise FormulaError("threshold vector and caps differ in length")
    classes = sorted(range(len(m)), key=lambda j: (m[j], j))
    caps = sorted(range(len(a)), key=lambda k: (a[k], k))
    pi = [0] * len(m)
    for j, k in zip(classes, caps):
        if m[j] > a[k]:
            return None
        pi[j] = k
    return tuple(pi)


def _dominated(m: Sequence[int], a: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(sorted(m), sorted(a)))


def q_enumerate(a: Sequence[int], b: Sequence[int]) -> CountResult:
    """
    Q(a, b) by enumerating excess profiles, not individual sets.

    With a* = max a and U_i = [a* + b_i], a b_i-subset of U_i with maximum b_i + m_i
    exists in C(b_i + m_i - 1, b_i - 1) ways; an empty part has profile 0. A set
    qualifies iff its profile m is dominated by a after sorting both, so the count is
    a sum over the finitely many profiles m in [0, a*]^d. The sets themselves come
    from q_sets. The result is tagged enumerated because no closed form is used.
    """
    a, b = _check_caps(a, b)
    top = max(a)
    ranges = [range(top + 1) if bi else range(1) for bi in b]
    total = 0
    for m in product(*ranges):
        if not _dominated(m, a):
            continue
        total += prod(comb(bi + mi - 1, bi - 1) if bi else 1 for bi, mi in zip(b, m))
    return _enumerated(total)


def q_sets(a: Sequence[int], b: Sequence[int]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """
    Yield the sets counted by Q(a, b), as one sorted label tuple per part.

    Parts are enumerated independently in lexicographic order and combined in
    product order.
    """
    a, b = _check_caps(a, b)
    top = max(a)
    per_part = [list(combinations(range(1, top + bi + 1), bi)) for bi in b]
    for s in product(*per_part):
        m = [part[-1] - bi if bi else 0 for part, bi in zip(s, b)]
        if _dominated(m, a):
            yield s


def q_formula(a: Sequence[int], b: Sequence[int]) -> CountResult:
    """
    Q(a, b) by inclusion-exclusion over nonempty sets I of permutations.

    The sets fitting under one permutation pi number prod C(a_pi(i) + b_i, b_i);
    an intersection over I uses the pointwise minimum of the permuted caps. Subsets
    are folded in by their minimum vector, so the work stays polynomial in the number
    of distinct minima.

    Raises:
        FormulaError: for d above the supported range
    """
    a, b = _check_caps(a, b)
    d = len(a)
    if d > Q_FORMULA_MAX_D:
        raise FormulaError(
            f"q_formula supports d <= {Q_FORMULA_MAX_D}; use q_enumerate for d={d}"
        )
    signed: Dict[Tuple[int, ...], int] = {}
    for pi in permutations(range(d)):
        v = tuple(a[pi[i]] for i in range(d))
        update: Dict[Tuple[int, ...], int] = {v: 1}
        for u, c in signed.items():
            w = tuple(min(x, y) for x, y in zip(u, v))
            update[w] = update.get(w, 0) - c
        for w, c in update.items():
            signed[w] = signed.get(w, 0) + c
    total = sum(
        c * prod(comb(ui + bi, bi) for ui, bi in zip(u, b))
        for u, c in signed.items() if c
    )
    return _closed(total)


def alon_bound(a: Sequence[int], b: Sequence[int]) -> CountResult:
    """prod C(a_i + b_i, b_i), the bound when caps are matched class by class."""
    a, b = _check_caps(a, b)
    return _closed(prod(comb(x + y, y) for x, y in zip(a, b)))


def two_families_bound(a: Sequence[int], b: Sequence[int]) -> CountResult:
    """Bound on the length of a skew set-pair sequence with permutable caps."""
    return q_enumerate(a, b)


def identity_check(n: int, p: Sequence[int]) -> bool:
    """Whether Q(n - p reversed, 1..1) equals q_n(p)."""
    p = _check_p(n, p)
    caps = tuple(n - x for x in reversed(p))
    lhs = q_enumerate(caps, (1,) * len(p)).value
    rhs = qn_enumerate(n, p).value
    if lhs != rhs:
        logger.warning(f"Identity fails for n={n}, p={p}: Q={lhs}, q_n={rhs}")
    return lhs == rhs


def _check_pq(n: int, p: int, q: int) -> None:
    if not 1 <= p <= q <= n:
        raise FormulaError(f"need 1 <= p <= q <= n, got p={p}, q={q}, n={n}")


def directed_strong_sat_number(n: int, p: int, q: int) -> CountResult:
    """(p+q-2)n - (p-1)(q-1)"""
    _check_pq(n, p, q)
    return _closed((p + q - 2) * n - (p - 1) * (q - 1))


def conjectured_strong_sat_number(n: int, p: int, q: int) -> CountResult:
    """Directed value minus floor((q-p)^2 / 4)."""
    return _closed(directed_strong_sat_number(n, p, q).value - (q - p) ** 2 // 4)


def gk_edge_count(n: int, p: int, q: int, k: int) -> CountResult:
    _check_pq(n, p, q)
    if not 0 <= k <= q - p:
        raise FormulaError(f"need 0 <= k <= q-p, got k={k}")
    return _closed(directed_strong_sat_number(n, p, q).value - k * (q - p - k))


def strong_sat_p1_lower_bound(n: int, q: int) -> CountResult:
    """Exact strong K_{1,q} saturation number (q-1)n - floor((q-1)^2 / 4)."""
    _check_pq(n, 1, q)
    return _closed((q - 1) * n - (q - 1) ** 2 // 4)
