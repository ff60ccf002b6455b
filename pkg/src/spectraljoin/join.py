"""Join operations: the two-graph join, the H-join, and the subset-constrained
H-generalized join, plus the eigenvalue-inheritance verifier.

The joined graph is numbered contiguously by part, in spec order, so its
adjacency matrix is visibly block structured: diagonal blocks are the part
adjacencies and the (i, j) off-diagonal block is the rank-one 0/1 pattern
``x_i x_j^T`` of the constraint subsets whenever ij is an edge of the host.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InputError
from .eig import MATCH_TOL, Spectrum, multiset_contains, spectrum
from .graphs import Graph, VertexSet
from .regular_sets import KTauCertificate, check_ktau


@dataclass(frozen=True)
class JoinPart:
    graph: Graph
    subset: VertexSet

    def __post_init__(self) -> None:
        if self.subset.n != self.graph.n:
            raise InputError("constraint subset does not match its component order")


@dataclass(frozen=True)
class JoinSpec:
    """Host graph plus one (component, constraint subset) pair per host vertex."""

    h: Graph
    parts: tuple[JoinPart, ...]

    def __post_init__(self) -> None:
        if len(self.parts) != self.h.n:
            raise InputError("need exactly one part per host vertex")

    @classmethod
    def full(cls, h: Graph, graphs) -> "JoinSpec":
        """Spec with every constraint subset equal to the full vertex set."""
        return cls(h, tuple(JoinPart(g, VertexSet.full(g.n)) for g in graphs))

    @property
    def offsets(self) -> tuple[int, ...]:
        out = []
        total = 0
        for part in self.parts:
            out.append(total)
            total += part.graph.n
        return tuple(out)

    @property
    def total_order(self) -> int:
        return sum(part.graph.n for part in self.parts)


def generalized_join(spec: JoinSpec) -> Graph:
    """Union of the components plus all edges between constrained subsets of
    host-adjacent parts."""
    total = spec.total_order
    a = np.zeros((total, total), dtype=bool)
    offsets = spec.offsets
    for offset, part in zip(offsets, spec.parts):
        n_i = part.graph.n
        if n_i:
            a[offset : offset + n_i, offset : offset + n_i] = part.graph._adjacency_bool
    members = [
        np.array(part.subset.members, dtype=np.intp) + offset
        for offset, part in zip(offsets, spec.parts)
    ]
    for i, j in spec.h.edges():
        if len(members[i]) and len(members[j]):
            a[np.ix_(members[i], members[j])] = True
            a[np.ix_(members[j], members[i])] = True
    return Graph.from_adjacency(a)


def h_join(h: Graph, graphs) -> Graph:
    """Classic H-join: every constraint subset is the full vertex set."""
    return generalized_join(JoinSpec.full(h, tuple(graphs)))


def join2(g1: Graph, g2: Graph) -> Graph:
    """Join of two graphs: all cross edges present."""
    return h_join(Graph.from_edges(2, [(0, 1)]), (g1, g2))


# ---------------------------------------------------------------------------
# inheritance verification


@dataclass(frozen=True)
class InheritedValue:
    value: float
    multiplicity: int
    found: bool


@dataclass(frozen=True)
class PartInheritance:
    index: int
    status: str  # "full-set" | "certified" | "hypothesis-unmet"
    certificates: tuple[KTauCertificate, ...]
    guaranteed: tuple[InheritedValue, ...]
    excluded: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class InheritanceReport:
    parts: tuple[PartInheritance, ...]
    join_eigenvalues: np.ndarray
    unmatched: tuple[float, ...]
    passed: bool  # every guaranteed value found (unmet parts claim nothing)


def _usable_certificates(part: JoinPart) -> list[KTauCertificate]:
    """Certificates with tau > 0 for the subset or its complement."""
    certs = []
    subset = part.subset
    options = []
    if subset.mask != 0:
        options.append((subset, False))
    comp = subset.complement()
    if comp.mask != 0:
        options.append((comp, True))
    for candidate, flipped in options:
        cert = check_ktau(part.graph, candidate)
        if cert is not None and cert.tau > 0:
            certs.append(KTauCertificate(candidate, cert.k, cert.tau, complement_mode=flipped))
    return certs


def verify_inherited_eigenvalues(
    spec: JoinSpec,
    *,
    match_tol: float = MATCH_TOL,
    value_tol: float = 1e-8,
    part_spectra: Optional[list[Spectrum]] = None,
) -> InheritanceReport:
    """Check that non-main component eigenvalues survive into the join.

    A part with the full vertex set contributes every non-main eigenvalue.
    A proper subset needs a (k,tau)-certificate with tau > 0 on itself or its
    complement; values equal to k - tau for every available certificate are
    flagged "excluded" (no conclusion).  Parts with no usable certificate are
    reported "hypothesis-unmet" and claim nothing.
    """
    g = generalized_join(spec)
    join_w = np.linalg.eigvalsh(g.adjacency())
    parts = []
    pool: list[tuple[float, int]] = []
    for idx, part in enumerate(spec.parts):
        spec_i = part_spectra[idx] if part_spectra is not None else spectrum(part.graph)
        nonmain = [(grp.value, grp.multiplicity) for grp in spec_i.groups if not grp.is_main]
        if part.subset.is_full and part.graph.n > 0:
            guaranteed = nonmain
            parts.append((idx, "full-set", (), guaranteed, ()))
            pool.extend(guaranteed)
            continue
        certs = _usable_certificates(part)
        if not certs:
            parts.append((idx, "hypothesis-unmet", (), [], ()))
            continue
        guaranteed = []
        excluded = []
        for value, mult in nonmain:
            if any(abs(value - (c.k - c.tau)) > value_tol for c in certs):
                guaranteed.append((value, mult))
            else:
                excluded.append(value)
        parts.append((idx, "certified", tuple(certs), guaranteed, tuple(excluded)))
        pool.extend(guaranteed)

    flat = [v for v, mult in pool for _ in range(mult)]
    ok, unmatched = multiset_contains(join_w, flat, match_tol)
    unmatched_set = list(unmatched)

    def consume(value: float) -> bool:
        for i, u in enumerate(unmatched_set):
            if abs(u - value) <= match_tol:
                del unmatched_set[i]
                return False  # this copy was left unmatched
        return True

    report_parts = []
    for idx, status, certs, guaranteed, excluded in parts:
        values = tuple(
            InheritedValue(value, mult, all(consume(value) for _ in range(mult)))
            for value, mult in guaranteed
        )
        report_parts.append(
            PartInheritance(
                index=idx,
                status=status,
                certificates=tuple(certs),
                guaranteed=values,
                excluded=excluded,
            )
        )
    return InheritanceReport(
        parts=tuple(report_parts),
        join_eigenvalues=join_w[::-1].copy(),
        unmatched=tuple(unmatched),
        passed=ok,
    )
