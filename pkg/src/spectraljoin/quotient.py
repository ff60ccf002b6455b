"""Quotient matrices of H-joins of regular graphs and spectrum assembly.

For a host H on p vertices and d_i-regular components of orders n_i, the
part-level eigenvalue equation of the full H-join is carried by
``M = A(H) N + D`` with ``N = diag(n_i)`` and ``D = diag(d_i)``.  M is similar
to the symmetric ``M' = D + K A(H) K`` with ``K = diag(sqrt(n_i))``, so both
share one spectrum.  The full join spectrum is the component spectra, each
with one copy of its degree removed, together with the spectrum of M'.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InputError
from .eig import (
    MATCH_TOL,
    eig_sym,
    graph_eigenvalues,
    multiset_without,
)
from .graphs import Graph
from .join import InheritanceReport, JoinSpec, verify_inherited_eigenvalues


@dataclass(frozen=True)
class RegularFamily:
    """Host graph plus the orders/degrees of its regular components."""

    h: Graph
    orders: tuple[int, ...]
    degrees: tuple[int, ...]
    graphs: Optional[tuple[Graph, ...]] = None

    def __post_init__(self) -> None:
        p = self.h.n
        if p < 1:
            raise InputError("the host graph needs at least one vertex")
        if len(self.orders) != p or len(self.degrees) != p:
            raise InputError("need one order and one degree per host vertex")
        for n_i, d_i in zip(self.orders, self.degrees):
            if n_i < 1:
                raise InputError("component orders must be positive")
            if not 0 <= d_i <= n_i - 1:
                raise InputError(f"degree {d_i} unrealizable on {n_i} vertices")
        if self.graphs is not None:
            if len(self.graphs) != p:
                raise InputError("need one component graph per host vertex")
            for g, n_i, d_i in zip(self.graphs, self.orders, self.degrees):
                if g.n != n_i:
                    raise InputError("component order mismatch")
                if set(g.degrees) != {d_i}:
                    raise InputError(f"component is not {d_i}-regular")

    @classmethod
    def from_graphs(cls, h: Graph, graphs) -> "RegularFamily":
        graphs = tuple(graphs)
        degrees = []
        for g in graphs:
            degs = set(g.degrees)
            if len(degs) != 1:
                raise InputError("every component must be regular")
            degrees.append(degs.pop())
        return cls(h, tuple(g.n for g in graphs), tuple(degrees), graphs)

    @property
    def p(self) -> int:
        return self.h.n

    @property
    def total_order(self) -> int:
        return sum(self.orders)

    @property
    def order_max(self) -> int:
        return max(self.orders)

    @property
    def order_min(self) -> int:
        return min(self.orders)

    @property
    def degree_ratio_max(self) -> float:
        return max(d / n for d, n in zip(self.degrees, self.orders))

    @property
    def degree_ratio_min(self) -> float:
        return min(d / n for d, n in zip(self.degrees, self.orders))

    def require_graphs(self) -> tuple[Graph, ...]:
        if self.graphs is None:
            raise InputError("this operation needs the component graphs")
        return self.graphs

    def join_graph(self) -> Graph:
        from .join import h_join

        return h_join(self.h, self.require_graphs())


def quotient_matrix(fam: RegularFamily) -> np.ndarray:
    """M = A(H) N + D; row i sums to d_i plus the orders of adjacent parts."""
    n_diag = np.diag(np.asarray(fam.orders, dtype=float))
    d_diag = np.diag(np.asarray(fam.degrees, dtype=float))
    return fam.h.adjacency() @ n_diag + d_diag


def symmetric_quotient(fam: RegularFamily) -> np.ndarray:
    """M' = D + K A(H) K with K = diag(sqrt(n_i)); similar to M."""
    k = np.sqrt(np.asarray(fam.orders, dtype=float))
    return np.diag(np.asarray(fam.degrees, dtype=float)) + fam.h.adjacency() * np.outer(k, k)


@dataclass(frozen=True, eq=False)
class QuotientPair:
    m: np.ndarray
    m_sym: np.ndarray
    eigenvalues: np.ndarray  # descending, computed from the symmetric form


def build_quotient(fam: RegularFamily) -> QuotientPair:
    m_sym = symmetric_quotient(fam)
    w, _ = eig_sym(m_sym)
    return QuotientPair(m=quotient_matrix(fam), m_sym=m_sym, eigenvalues=w)


def regular_join_spectrum(fam: RegularFamily, *, match_tol: float = MATCH_TOL) -> np.ndarray:
    """Full spectrum of the H-join assembled without eigensolving the join.

    Each component contributes its spectrum minus one copy of its degree; the
    quotient supplies the rest.  Descending eigenvalue array of length
    ``sum(orders)``.
    """
    graphs = fam.require_graphs()
    pieces = [build_quotient(fam).eigenvalues]
    for g, d_i in zip(graphs, fam.degrees):
        w = np.asarray(graph_eigenvalues(g))
        pieces.append(multiset_without(w, float(d_i), match_tol))
    values = np.concatenate(pieces)
    return np.sort(values)[::-1]


def inclusion_check(spec: JoinSpec, *, match_tol: float = MATCH_TOL) -> InheritanceReport:
    """Constrained-subset branch: the surviving component eigenvalues embed.

    Components must be regular; subsets are certified through the same
    machinery as the general inheritance verifier (the degree d_i is main for
    a regular component, so it is never claimed, and k_i - tau_i is excluded
    per certificate).
    """
    for part in spec.parts:
        if not part.graph.is_regular():
            raise InputError("inclusion check needs regular components")
    return verify_inherited_eigenvalues(spec, match_tol=match_tol)
