"""Graph spread: bound panel, join formulas, extremal families, and the
exhaustive maximum-spread search at desk scale.

The spread of a graph is the difference between its largest and smallest
adjacency eigenvalues.  Everything here reports bound *values* together with
honest satisfied flags; strict inequalities are decided with a 1e-9 margin
and flagged when the margin falls under 1e-6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CapacityError, ConsistencyError, InputError
from .eig import MATCH_TOL, graph_eigenvalues, multiset_equal
from .enumeration import adjacency_batch, circulant_regular, num_pairs, popcount
from .graphs import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    is_connected,
    null_graph,
    path_graph,
)
from .join import join2
from .quotient import RegularFamily, build_quotient

STRICT_MARGIN = 1e-9
MARGIN_WARN = 1e-6


@dataclass(frozen=True)
class BoundCheck:
    """One bound evaluation; ``gap`` is oriented so satisfied means gap >= -1e-9."""

    name: str
    value: float
    satisfied: bool
    gap: float
    applicable: bool = True
    note: str = ""


@dataclass(frozen=True, eq=False)
class SpreadReport:
    n: int
    num_edges: int
    lambda_max: float
    lambda_min: float
    s: float
    average_degree: float
    bounds: tuple[BoundCheck, ...]
    regular: bool
    complement_connected: Optional[bool] = None
    equality_at_order: Optional[bool] = None
    regular_biconditional_ok: Optional[bool] = None

    def bound(self, name: str) -> BoundCheck:
        for b in self.bounds:
            if b.name == name:
                return b
        raise InputError(f"no bound named {name!r}")

    @property
    def all_satisfied(self) -> bool:
        return all(b.satisfied for b in self.bounds if b.applicable)


def spread(g: Graph) -> SpreadReport:
    """Spread of a graph with the full upper-bound panel."""
    if g.n == 0:
        raise InputError("spread of the empty graph is undefined")
    w = np.linalg.eigvalsh(g.adjacency())
    lam_max, lam_min = float(w[-1]), float(w[0])
    s = lam_max - lam_min
    e = g.num_edges
    n = g.n
    avg = g.average_degree()

    def upper(name, value, applicable=True, note=""):
        return BoundCheck(name, value, s <= value + STRICT_MARGIN, value - s, applicable, note)

    gregory = lam_max + math.sqrt(max(0.0, 2.0 * e - lam_max * lam_max))
    bounds = [
        upper("edge_count", math.sqrt(4.0 * e)),
        upper("average_degree", math.sqrt(2.0 * n * avg)),
        upper("order_if_sparse", float(n), applicable=avg <= n / 2.0,
              note="applies when the average degree is at most n/2"),
        upper("gregory", gregory),
        BoundCheck("gregory_cap", 2.0 * math.sqrt(e),
                   gregory <= 2.0 * math.sqrt(e) + STRICT_MARGIN,
                   2.0 * math.sqrt(e) - gregory,
                   note="caps the gregory bound itself"),
    ]
    regular = g.is_regular()
    comp_connected = equality = consistent = None
    if regular:
        bounds.append(upper("regular_order", float(n), note="regular graphs only"))
        comp_connected = is_connected(complement(g))
        equality = abs(s - n) <= STRICT_MARGIN
        consistent = equality == (not comp_connected)
    return SpreadReport(
        n=n,
        num_edges=e,
        lambda_max=lam_max,
        lambda_min=lam_min,
        s=s,
        average_degree=avg,
        bounds=tuple(bounds),
        regular=regular,
        complement_connected=comp_connected,
        equality_at_order=equality,
        regular_biconditional_ok=consistent,
    )


# ---------------------------------------------------------------------------
# joins of two regular graphs


@dataclass(frozen=True, eq=False)
class Join2Spread:
    n1: int
    d1: int
    n2: int
    d2: int
    radius: float                      # sqrt((d1-d2)^2 + 4 n1 n2)
    candidates: dict
    formula: float
    eigensolve: float
    agrees: bool
    lambda_min_join: float
    lambda_min_cases: tuple[str, ...]  # which bottom-eigenvalue cases matched


def join2_spread(g1: Graph, g2: Graph, *, match_tol: float = 1e-8) -> Join2Spread:
    """Spread of the join of two regular graphs via the closed formula,
    cross-checked against the eigensolved join."""
    for g in (g1, g2):
        if g.n == 0 or not g.is_regular():
            raise InputError("both graphs must be regular and non-empty")
    n1, n2 = g1.n, g2.n
    d1, d2 = g1.degrees[0], g2.degrees[0]
    w1 = graph_eigenvalues(g1)
    w2 = graph_eigenvalues(g2)
    s1 = w1[0] - w1[-1]
    s2 = w2[0] - w2[-1]
    radius = math.sqrt((d1 - d2) ** 2 + 4.0 * n1 * n2)
    candidates = {
        "quotient": radius,
        "part1": (d2 - d1 + radius) / 2.0 + s1,
        "part2": (d1 - d2 + radius) / 2.0 + s2,
    }
    formula = max(candidates.values())
    jw = np.linalg.eigvalsh(join2(g1, g2).adjacency())
    brute = float(jw[-1] - jw[0])
    lam_min = float(jw[0])
    beta2 = (d1 + d2 - radius) / 2.0
    case_values = {"quotient": beta2, "part1": d1 - s1, "part2": d2 - s2}
    cases = tuple(name for name, v in case_values.items() if abs(v - lam_min) <= 1e-8)
    return Join2Spread(
        n1=n1, d1=d1, n2=n2, d2=d2,
        radius=radius,
        candidates=candidates,
        formula=formula,
        eigensolve=brute,
        agrees=abs(formula - brute) <= match_tol,
        lambda_min_join=lam_min,
        lambda_min_cases=cases,
    )


@dataclass(frozen=True)
class GapCheck:
    triggered: bool
    radius: float
    order_sum: int
    radius_exceeds_order: Optional[bool] = None
    witness_spread: Optional[float] = None
    witness_exceeds_order: Optional[bool] = None

    @property
    def holds(self) -> bool:
        if not self.triggered:
            return True
        return bool(self.radius_exceeds_order and self.witness_exceeds_order)


def degree_gap_spread_check(n1: int, d1: int, n2: int, d2: int) -> GapCheck:
    """When the degree gap beats the order gap, the join's spread beats its order.

    Verifies the radius inequality arithmetically and on concrete circulant
    witnesses.  Untriggered parameters make no claim.
    """
    for n_i, d_i in ((n1, d1), (n2, d2)):
        if not 0 <= d_i <= n_i - 1 or (n_i * d_i) % 2:
            raise InputError(f"no {d_i}-regular graph on {n_i} vertices")
    n = n1 + n2
    radius = math.sqrt((d1 - d2) ** 2 + 4.0 * n1 * n2)
    if abs(d1 - d2) <= abs(n1 - n2):
        return GapCheck(False, radius, n)
    g = join2(circulant_regular(n1, d1), circulant_regular(n2, d2))
    w = np.linalg.eigvalsh(g.adjacency())
    s = float(w[-1] - w[0])
    return GapCheck(
        True,
        radius,
        n,
        radius_exceeds_order=radius > n + STRICT_MARGIN,
        witness_spread=s,
        witness_exceeds_order=s > n + STRICT_MARGIN,
    )


# ---------------------------------------------------------------------------
# the clique-plus-independent-set family


def gnk_graph(n: int, k: int) -> Graph:
    """Join of a k-clique with n-k isolated vertices."""
    if not 1 <= k <= n - 1:
        raise InputError("need 1 <= k <= n-1")
    return join2(complete_graph(k), null_graph(n - k))


def gnk_spread_closed_form(n: int, k: int) -> float:
    return math.sqrt((k - 1) ** 2 + 4.0 * k * (n - k))


def gnk_family(n: int, k: int) -> tuple[Graph, SpreadReport]:
    """Build the family member and its spread report; the eigensolved spread
    must agree with the closed form to 1e-8."""
    g = gnk_graph(n, k)
    report = spread(g)
    closed = gnk_spread_closed_form(n, k)
    if abs(report.s - closed) > 1e-8:
        raise ConsistencyError(
            f"spread {report.s} disagrees with the closed form {closed}"
        )
    return g, report


def gnk_argmax(n: int) -> int:
    """The k maximising the closed-form spread over 1..n-1 (pure arithmetic)."""
    if n < 2:
        raise InputError("need n >= 2")
    return max(range(1, n), key=lambda k: ((k - 1) ** 2 + 4 * k * (n - k), -k))


def conjectured_max_spread(n: int) -> float:
    """floor((4/3)(n^2 - n + 1)) under a square root."""
    return math.sqrt((4 * (n * n - n + 1)) // 3)


def conjecture_bracket(n: int) -> tuple[float, float]:
    lo = (2.0 * n - 1.0) / math.sqrt(3.0)
    return lo, lo + math.sqrt(3.0) / (4.0 * n - 2.0)


@dataclass(frozen=True, eq=False)
class MaxSpreadReport:
    n: int
    max_spread: float
    conjectured: float
    matches_conjecture: bool
    maximizer_masks: tuple[int, ...]
    spectra_match: bool            # every maximizer spectrum equals the reference
    reference_spectrum: np.ndarray  # ascending
    bracket: tuple[float, float]
    bracket_ok: bool
    scanned: int
    eigensolved: int


def max_spread_search(
    n: int,
    *,
    allow_long: bool = False,
    slack: float = 1e-9,
    match_tol: float = MATCH_TOL,
    chunk_bits: int = 18,
) -> MaxSpreadReport:
    """Exhaustive maximum spread over all labeled graphs of order n.

    Order 8 and 9 sit behind ``allow_long`` (hours at order 9).  Graphs whose
    edge count cannot beat the best spread seen so far are skipped via the
    ``s <= sqrt(4|E|)`` prefilter; the running best is seeded with the spread
    of the clique-plus-independent-set candidate, which the enumeration
    itself also visits.
    """
    if n < 2:
        raise InputError("need n >= 2")
    if n > 9:
        raise CapacityError("exhaustive search supported only up to order 9")
    if n > 7 and not allow_long:
        raise CapacityError("orders 8 and 9 require the long-run flag")
    m = num_pairs(n)
    ref = gnk_graph(n, gnk_argmax(n))
    ref_w = np.linalg.eigvalsh(ref.adjacency())
    best = float(ref_w[-1] - ref_w[0])
    found: list[tuple[int, float, np.ndarray]] = []
    total = 1 << m
    chunk = 1 << min(chunk_bits, m)
    scanned = 0
    eigensolved = 0
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        masks = np.arange(start, stop, dtype=np.uint64)
        scanned += len(masks)
        edge_counts = popcount(masks).astype(float)
        keep = 4.0 * edge_counts >= (best - slack) ** 2
        if not keep.any():
            continue
        masks = masks[keep]
        w = np.linalg.eigvalsh(adjacency_batch(n, masks))
        eigensolved += len(masks)
        s = w[:, -1] - w[:, 0]
        top = float(s.max())
        if top > best:
            best = top
        sel = np.nonzero(s >= best - slack)[0]
        for i in sel:
            found.append((int(masks[i]), float(s[i]), w[i].copy()))
    maximizers = [(mask, sp, w) for mask, sp, w in found if sp >= best - slack]
    spectra_ok = all(multiset_equal(w, ref_w, match_tol) for _, _, w in maximizers)
    lo, hi = conjecture_bracket(n)
    conj = conjectured_max_spread(n)
    return MaxSpreadReport(
        n=n,
        max_spread=best,
        conjectured=conj,
        matches_conjecture=abs(best - conj) <= match_tol,
        maximizer_masks=tuple(mask for mask, _, _ in maximizers),
        spectra_match=spectra_ok,
        reference_spectrum=ref_w,
        bracket=(lo, hi),
        bracket_ok=lo < best - STRICT_MARGIN and best < hi - STRICT_MARGIN,
        scanned=scanned,
        eigensolved=eigensolved,
    )


# ---------------------------------------------------------------------------
# spread of the H-join of a regular family


@dataclass(frozen=True, eq=False)
class FamilySpread:
    family: RegularFamily
    s_quotient: float
    lambda_min_quotient: float
    adjustment: float
    formula: float
    eigensolve: float
    agrees: bool
    lower_bounds: tuple[BoundCheck, ...]
    chain_ok: Optional[bool]


def quotient_spread(fam: RegularFamily, *, match_tol: float = 1e-8) -> FamilySpread:
    """Spread of the full H-join from the quotient spectrum plus the worst
    component correction, cross-checked against the eigensolved join, with
    the lower-bound panel."""
    graphs = fam.require_graphs()
    q = build_quotient(fam)
    s_m = float(q.eigenvalues[0] - q.eigenvalues[-1])
    lam_p = float(q.eigenvalues[-1])
    corrections = []
    for g, d in zip(graphs, fam.degrees):
        w = graph_eigenvalues(g)
        corrections.append(lam_p + (w[0] - w[-1]) - d)
    adjustment = max(0.0, max(corrections))
    formula = s_m + adjustment
    jw = np.linalg.eigvalsh(fam.join_graph().adjacency())
    brute = float(jw[-1] - jw[0])

    hw = np.linalg.eigvalsh(fam.h.adjacency())
    s_h = float(hw[-1] - hw[0])
    lam_p_h = float(hw[0])
    du, dl = fam.degree_ratio_max, fam.degree_ratio_min
    nu, nl = fam.order_max, fam.order_min
    refined = nl * (s_h - (du - dl)) - (nu - nl) * (lam_p_h + du)
    base = nl * (s_h - (du - dl))
    weak = nl * (s_h - 1.0)
    h_has_edge = fam.h.num_edges > 0

    def lower(name, value, applicable=True, note=""):
        return BoundCheck(name, value, brute >= value - STRICT_MARGIN, brute - value,
                          applicable, note)

    bounds = (
        lower("refined_lower", refined,
              note="not a theorem: can exceed the spread when part orders differ"),
        lower("base_lower", base, applicable=h_has_edge,
              note="needs the host graph to have an edge"),
        lower("weak_lower", weak, applicable=h_has_edge,
              note="needs the host graph to have an edge"),
    )
    chain_ok = None
    if h_has_edge:
        chain_ok = refined >= base - STRICT_MARGIN and base >= weak - STRICT_MARGIN
    return FamilySpread(
        family=fam,
        s_quotient=s_m,
        lambda_min_quotient=lam_p,
        adjustment=adjustment,
        formula=formula,
        eigensolve=brute,
        agrees=abs(formula - brute) <= match_tol,
        lower_bounds=bounds,
        chain_ok=chain_ok,
    )


def part_order_matrix(orders) -> np.ndarray:
    """Symmetric matrix with sqrt(n_i n_j) off the diagonal and zero on it."""
    k = np.sqrt(np.asarray(orders, dtype=float))
    p = np.outer(k, k)
    np.fill_diagonal(p, 0.0)
    return p


@dataclass(frozen=True)
class PartOrderBound:
    bound: float
    spread: float
    satisfied: bool


def part_order_upper_bound(fam: RegularFamily) -> PartOrderBound:
    """Upper bound on the join spread from the host and part-order spectra."""
    graphs = fam.require_graphs()
    lam1_p = float(np.linalg.eigvalsh(part_order_matrix(fam.orders))[-1])
    lam1_h = float(np.linalg.eigvalsh(fam.h.adjacency())[-1])
    q = build_quotient(fam)
    lam_p_m = float(q.eigenvalues[-1])
    worst = min(
        d - (graph_eigenvalues(g)[0] - graph_eigenvalues(g)[-1])
        for g, d in zip(graphs, fam.degrees)
    )
    bound = max(fam.degrees) + lam1_h * lam1_p - min(worst, lam_p_m)
    jw = np.linalg.eigvalsh(fam.join_graph().adjacency())
    s = float(jw[-1] - jw[0])
    return PartOrderBound(bound=bound, spread=s, satisfied=s <= bound + STRICT_MARGIN)


@dataclass(frozen=True)
class SandwichReport:
    s_quotient: float
    s_join: float
    max_degree: int
    left_ok: bool
    strict_right_ok: Optional[bool]   # None in the degenerate all-null case
    degenerate: bool
    lambda_min_quotient: float
    witness_pair_second_eig: float
    aux_negative_ok: bool
    margin_warning: bool

    @property
    def holds(self) -> bool:
        right = True if self.strict_right_ok is None else self.strict_right_ok
        return self.left_ok and right and self.aux_negative_ok


def quotient_sandwich_check(fam: RegularFamily) -> SandwichReport:
    """The join spread is pinched between the quotient spread and the quotient
    spread plus the largest component degree (strictly, when that degree is
    positive).  Requires the host graph to have an edge."""
    if fam.h.num_edges == 0:
        raise InputError("the sandwich bounds need a host graph with an edge")
    fam.require_graphs()
    q = build_quotient(fam)
    s_m = float(q.eigenvalues[0] - q.eigenvalues[-1])
    lam_p = float(q.eigenvalues[-1])
    jw = np.linalg.eigvalsh(fam.join_graph().adjacency())
    s_g = float(jw[-1] - jw[0])
    maxd = max(fam.degrees)
    degenerate = maxd == 0
    right_margin = s_m + maxd - s_g
    i, j = fam.h.edges()[0]
    n_i, n_j = fam.orders[i], fam.orders[j]
    d_i, d_j = fam.degrees[i], fam.degrees[j]
    lam2_b = ((d_i + d_j) - math.sqrt((d_i - d_j) ** 2 + 4.0 * n_i * n_j)) / 2.0
    return SandwichReport(
        s_quotient=s_m,
        s_join=s_g,
        max_degree=maxd,
        left_ok=s_g >= s_m - STRICT_MARGIN,
        strict_right_ok=None if degenerate else right_margin > STRICT_MARGIN,
        degenerate=degenerate,
        lambda_min_quotient=lam_p,
        witness_pair_second_eig=lam2_b,
        aux_negative_ok=lam_p <= lam2_b + STRICT_MARGIN and lam2_b < -STRICT_MARGIN,
        margin_warning=(not degenerate) and abs(right_margin) < MARGIN_WARN,
    )


# ---------------------------------------------------------------------------
# the non-regular family whose spread equals its order


@dataclass(frozen=True, eq=False)
class ChainSpreadReport:
    n: int
    p: int
    q: int
    spread: float
    closed_form: float           # 2 sqrt(q (n - q))
    matches_order: bool          # |spread - n| <= 1e-8
    non_regular: bool
    quotient_eigenvalues: np.ndarray
    lambda_min: float
    lambda_min_below_minus2: bool


def three_cycle_chain(n: int, p: int, q: int) -> RegularFamily:
    """Path-of-three-parts family: cycles of orders p, q and n-p-q, with the
    middle cycle joined to both outer ones."""
    r = n - p - q
    if min(p, q, r) < 3:
        raise InputError("each of the three cycles needs at least 3 vertices")
    return RegularFamily.from_graphs(
        path_graph(3), (cycle_graph(p), cycle_graph(q), cycle_graph(r))
    )


def chain_spread(n: int, p: int, q: int) -> tuple[Graph, ChainSpreadReport]:
    fam = three_cycle_chain(n, p, q)
    g = fam.join_graph()
    w = np.linalg.eigvalsh(g.adjacency())
    s = float(w[-1] - w[0])
    closed = 2.0 * math.sqrt(q * (n - q))
    quo = build_quotient(fam).eigenvalues
    report = ChainSpreadReport(
        n=n,
        p=p,
        q=q,
        spread=s,
        closed_form=closed,
        matches_order=abs(s - n) <= 1e-8,
        non_regular=not g.is_regular(),
        quotient_eigenvalues=quo,
        lambda_min=float(w[0]),
        lambda_min_below_minus2=float(w[0]) < -2.0 - STRICT_MARGIN,
    )
    return g, report


def full_spread_family(n: int, p: int) -> tuple[Graph, ChainSpreadReport]:
    """Member of the non-regular family with spread exactly equal to its order:
    even n >= 12, middle cycle of order n/2, and 3 <= p <= (n-6)/2."""
    if n % 2 or n < 12:
        raise InputError("need an even order n >= 12")
    if not 3 <= p <= (n - 6) // 2:
        raise InputError("need 3 <= p <= (n-6)/2")
    return chain_spread(n, p, n // 2)
