"""(k,tau)-regular vertex sets: certificates, enumeration, and applications.

A subset S is (k,tau)-regular when every vertex inside S has exactly k
neighbours in S and every vertex outside has exactly tau.  The full vertex
set of a k-regular graph carries the conventional certificate (k, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CapacityError, InputError
from .graphs import Graph, VertexSet, induced_subgraph, is_connected, line_graph
from .eig import Spectrum, spectrum

ENUMERATION_CAP = 24


@dataclass(frozen=True)
class KTauCertificate:
    """A validated (k,tau)-regular set.

    ``complement_mode`` records that ``set`` is the complement of the subset
    it was derived from (the join verifier accepts either side).
    """

    set: VertexSet
    k: int
    tau: int
    complement_mode: bool = False


def check_ktau(g: Graph, s: VertexSet) -> Optional[KTauCertificate]:
    """Certificate with the unique (k,tau) if ``s`` qualifies, else None."""
    if s.n != g.n:
        raise InputError("vertex set does not match the graph order")
    if g.n == 0 or s.mask == 0:
        raise InputError("empty vertex sets are rejected as degenerate")
    mask = s.mask
    if s.is_full:
        degs = set(g.degrees)
        if len(degs) == 1:
            return KTauCertificate(s, degs.pop(), 0)
        return None
    k = -1
    tau = -1
    for v in range(g.n):
        inside = (g.rows[v] & mask).bit_count()
        if mask >> v & 1:
            if k < 0:
                k = inside
            elif inside != k:
                return None
        else:
            if tau < 0:
                tau = inside
            elif inside != tau:
                return None
    return KTauCertificate(s, k, tau)


def enumerate_ktau(g: Graph, max_n: int = ENUMERATION_CAP) -> list[KTauCertificate]:
    """All proper non-empty certificates, plus (k,0) for the full set when regular.

    Deterministic order: subsets ascending as binary numbers (bit v = vertex v).
    """
    if g.n > max_n:
        raise CapacityError(f"enumeration over 2^{g.n} subsets exceeds the cap {max_n}")
    out = []
    rows = g.rows
    n = g.n
    for mask in range(1, 1 << n):
        if mask == (1 << n) - 1:
            cert = check_ktau(g, VertexSet.full(n))
            if cert is not None:
                out.append(cert)
            continue
        k = -1
        tau = -1
        ok = True
        for v in range(n):
            inside = (rows[v] & mask).bit_count()
            if mask >> v & 1:
                if k < 0:
                    k = inside
                elif inside != k:
                    ok = False
                    break
            else:
                if tau < 0:
                    tau = inside
                elif inside != tau:
                    ok = False
                    break
        if ok:
            out.append(KTauCertificate(VertexSet(n, mask), k, tau))
    return out


def find_ktau_set(
    g: Graph,
    k: int,
    tau: int,
    *,
    required_size: Optional[int] = None,
    require_connected: bool = False,
) -> Optional[VertexSet]:
    """Smallest-mask subset that is (k,tau)-regular by the plain definition.

    Unlike :func:`check_ktau`, the full vertex set qualifies for *any* tau
    when the graph is k-regular (the outside condition is vacuous); the
    matching and Hamiltonicity searches rely on that reading.
    """
    n = g.n
    rows = g.rows
    status = [0] * n  # 0 undecided, 1 in, -1 out
    in_count = [0] * n
    und_count = list(g.degrees)
    selected = 0

    def feasible(v: int) -> bool:
        if status[v] == 1:
            target = k
        elif status[v] == -1:
            target = tau
        else:
            return in_count[v] <= max(k, tau) and in_count[v] + und_count[v] >= min(k, tau)
        return in_count[v] <= target <= in_count[v] + und_count[v]

    def decide(v: int, into: bool) -> bool:
        # Always applies the full update so that undo() can reverse it blindly.
        nonlocal selected
        status[v] = 1 if into else -1
        if into:
            selected += 1
        ok = True
        row = rows[v]
        while row:
            low = row & -row
            row ^= low
            u = low.bit_length() - 1
            und_count[u] -= 1
            if into:
                in_count[u] += 1
            if ok and not feasible(u):
                ok = False
        return ok and feasible(v)

    def undo(v: int, into: bool) -> None:
        nonlocal selected
        status[v] = 0
        if into:
            selected -= 1
        row = rows[v]
        while row:
            low = row & -row
            row ^= low
            u = low.bit_length() - 1
            und_count[u] += 1
            if into:
                in_count[u] -= 1

    def search(pos: int) -> Optional[int]:
        # pos runs from n-1 down to -1 so masks are produced in ascending order.
        if required_size is not None:
            undecided = pos + 1
            if selected > required_size or selected + undecided < required_size:
                return None
        if pos < 0:
            mask = sum(1 << v for v in range(n) if status[v] == 1)
            if require_connected:
                members = [v for v in range(n) if status[v] == 1]
                if not is_connected(induced_subgraph(g, members)):
                    return None
            return mask
        for into in (False, True):
            ok = decide(pos, into)
            if ok:
                found = search(pos - 1)
                if found is not None:
                    undo(pos, into)
                    return found
            undo(pos, into)
        return None

    mask = search(n - 1)
    return None if mask is None else VertexSet(n, mask)


# ---------------------------------------------------------------------------
# non-main eigenvalue criterion


@dataclass(frozen=True)
class CriterionEntry:
    value: float
    is_nonmain: bool
    equals_k_minus_tau: bool
    set_orthogonal: bool
    projection: float

    @property
    def consistent(self) -> bool:
        return self.is_nonmain == (self.equals_k_minus_tau or self.set_orthogonal)


@dataclass(frozen=True)
class CriterionReport:
    certificate: KTauCertificate
    entries: tuple[CriterionEntry, ...]

    @property
    def holds(self) -> bool:
        return all(e.consistent for e in self.entries)


def nonmain_criterion_check(
    g: Graph,
    cert: KTauCertificate,
    spec: Optional[Spectrum] = None,
    *,
    value_tol: float = 1e-8,
    proj_tol: float = 1e-6,
) -> CriterionReport:
    """Check, per eigenvalue group, that non-mainness matches the disjunction
    "value equals k - tau, or the set's indicator is orthogonal to the
    eigenspace".  Requires tau > 0.
    """
    if cert.tau <= 0:
        raise InputError("the non-main criterion requires tau > 0")
    if cert.set.n != g.n:
        raise InputError("certificate does not match the graph order")
    if spec is None:
        spec = spectrum(g)
    x = cert.set.char_vector()
    scale = max(1.0, float(np.linalg.norm(x)))
    target = cert.k - cert.tau
    entries = []
    for grp in spec.groups:
        proj = float(np.linalg.norm(grp.basis.T @ x))
        entries.append(
            CriterionEntry(
                value=grp.value,
                is_nonmain=not grp.is_main,
                equals_k_minus_tau=abs(grp.value - target) <= value_tol,
                set_orthogonal=proj <= proj_tol * scale,
                projection=proj,
            )
        )
    return CriterionReport(certificate=cert, entries=tuple(entries))


# ---------------------------------------------------------------------------
# structural applications of the searches


@dataclass(frozen=True)
class LineGraphWitness:
    verdict: bool
    edge_set: tuple[tuple[int, int], ...]  # edges of g named by the witness set


def _isolated_free(g: Graph) -> bool:
    return all(row != 0 for row in g.rows) if g.n else True


def perfect_matching_via_line_graph(g: Graph) -> LineGraphWitness:
    """Perfect-matching test through a (0,2)-regular set of the line graph.

    The line graph does not see isolated vertices, so those are ruled out
    combinatorially first; otherwise a (0,2)-regular set is exactly the edge
    set of a perfect matching.
    """
    if not _isolated_free(g):
        return LineGraphWitness(False, ())
    lg = line_graph(g)
    found = find_ktau_set(lg, 0, 2)
    if found is None:
        return LineGraphWitness(False, ())
    edges = g.edges()
    return LineGraphWitness(True, tuple(edges[v] for v in found.members))


def hamiltonian_via_line_graph(g: Graph, max_n: int = 12) -> LineGraphWitness:
    """Hamiltonicity test through a connected (2,4)-regular set of the line graph.

    The witness set must have exactly n members (the cycle's edges); that and
    the isolated-vertex guard exclude the degenerate full-set cases where the
    outside condition is vacuous.
    """
    if g.n > max_n:
        raise CapacityError(f"Hamiltonicity search capped at n={max_n}")
    if g.n < 3 or not _isolated_free(g):
        return LineGraphWitness(False, ())
    lg = line_graph(g)
    found = find_ktau_set(lg, 2, 4, required_size=g.n, require_connected=True)
    if found is None:
        return LineGraphWitness(False, ())
    edges = g.edges()
    return LineGraphWitness(True, tuple(edges[v] for v in found.members))


def strongly_regular_check(g: Graph) -> Optional[tuple[int, int, int, int]]:
    """Parameters (n, d, a, b) when every open neighbourhood N(v) is an
    (a,b)-regular set of G - v with one common (a, b); None otherwise.

    Regular connected non-complete graphs with at least one edge are the
    meaningful inputs; anything else returns None.
    """
    if g.n < 2 or not g.is_regular() or g.num_edges == 0:
        return None
    if not is_connected(g):
        return None
    if g.num_edges == g.n * (g.n - 1) // 2:
        return None
    d = g.degrees[0]
    common: Optional[tuple[int, int]] = None
    for v in range(g.n):
        keep = [u for u in range(g.n) if u != v]
        h = induced_subgraph(g, keep)
        members = [i for i, u in enumerate(keep) if g.has_edge(v, u)]
        cert = check_ktau(h, VertexSet.from_members(h.n, members))
        if cert is None:
            return None
        if common is None:
            common = (cert.k, cert.tau)
        elif (cert.k, cert.tau) != common:
            return None
    assert common is not None
    return (g.n, d, common[0], common[1])
