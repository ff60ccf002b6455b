"""Dense symmetric eigensolver wrapper, grouped spectra, and main-eigenvalue flags.

Eigenvalues are always reported in descending order.  Grouping into numeric
multiplicities is tolerance based: adjacent eigenvalues within
``tol * max(1, |value|)`` merge transitively.  An eigenvalue group is *main*
when the all-ones vector has a non-negligible projection onto its eigenspace,
and *non-main* otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError, InputError
from .graphs import Graph

GROUPING_TOL = 1e-7     # relative gap below which eigenvalues merge
MAIN_TOL = 1e-6         # all-ones projection threshold, scaled by sqrt(n)
SYMMETRY_TOL = 1e-12    # max allowed |A - A^T| entry
MATCH_TOL = 1e-6        # default tolerance for multiset matching


def eig_sym(a, *, symmetry_tol: float = SYMMETRY_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decompose a real symmetric matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` descending and orthonormal
    eigenvectors in the columns of ``v``.  Asymmetry beyond ``symmetry_tol``
    is an input error.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError("matrix must be square")
    if a.size and np.max(np.abs(a - a.T)) > symmetry_tol:
        raise InputError("matrix is not symmetric")
    w, v = np.linalg.eigh((a + a.T) / 2.0)
    return w[::-1].copy(), v[:, ::-1].copy()


@dataclass(frozen=True, eq=False)
class EigenGroup:
    value: float
    multiplicity: int
    basis: np.ndarray          # (n, multiplicity), orthonormal columns
    is_main: bool
    ones_projection: float     # norm of the all-ones projection onto the eigenspace


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Grouped spectrum of a symmetric matrix, descending by eigenvalue."""

    n: int
    groups: tuple[EigenGroup, ...]
    close_pairs: tuple[tuple[float, float], ...]  # adjacent groups separated by <10x tol

    def eigenvalues(self) -> np.ndarray:
        """Flat descending eigenvalue array with multiplicities expanded."""
        if not self.groups:
            return np.zeros(0)
        return np.concatenate([np.full(g.multiplicity, g.value) for g in self.groups])

    @property
    def lambda_max(self) -> float:
        if not self.groups:
            raise InputError("empty spectrum has no extreme eigenvalues")
        return self.groups[0].value

    @property
    def lambda_min(self) -> float:
        if not self.groups:
            raise InputError("empty spectrum has no extreme eigenvalues")
        return self.groups[-1].value

    def main_values(self) -> tuple[float, ...]:
        return tuple(g.value for g in self.groups if g.is_main)

    def nonmain_values(self) -> tuple[float, ...]:
        return tuple(g.value for g in self.groups if not g.is_main)

    def group_for(self, value: float, tol: float = MATCH_TOL) -> EigenGroup:
        for g in self.groups:
            if abs(g.value - value) <= tol * max(1.0, abs(value)):
                return g
        raise InputError(f"no eigenvalue group within tolerance of {value}")


def group_eigenvalues(w: np.ndarray, tol: float = GROUPING_TOL) -> list[tuple[int, int]]:
    """Half-open index ranges of tolerance-merged groups of a sorted array."""
    ranges = []
    start = 0
    for i in range(1, len(w)):
        if abs(w[i - 1] - w[i]) > tol * max(1.0, abs(w[i - 1])):
            ranges.append((start, i))
            start = i
    if len(w):
        ranges.append((start, len(w)))
    return ranges


def spectrum_of_matrix(a, tol: float = GROUPING_TOL) -> Spectrum:
    """Grouped spectrum with main flags for an arbitrary symmetric matrix."""
    w, v = eig_sym(a)
    n = len(w)
    ones = np.ones(n)
    groups = []
    ranges = group_eigenvalues(w, tol)
    for start, stop in ranges:
        basis = v[:, start:stop]
        proj = float(np.linalg.norm(basis.T @ ones))
        groups.append(
            EigenGroup(
                value=float(np.mean(w[start:stop])),
                multiplicity=stop - start,
                basis=basis,
                is_main=proj > MAIN_TOL * np.sqrt(n),
                ones_projection=proj,
            )
        )
    close = []
    for a_grp, b_grp in zip(groups, groups[1:]):
        gap = abs(a_grp.value - b_grp.value)
        if gap <= 10.0 * tol * max(1.0, abs(a_grp.value)):
            close.append((a_grp.value, b_grp.value))
    return Spectrum(n=n, groups=tuple(groups), close_pairs=tuple(close))


def spectrum(g: Graph, tol: float = GROUPING_TOL) -> Spectrum:
    """Grouped adjacency spectrum of a graph."""
    return spectrum_of_matrix(g.adjacency(), tol)


def is_nonmain(spec: Spectrum, value: float, tol: float = MATCH_TOL) -> bool:
    """True iff the eigenvalue group containing ``value`` is non-main."""
    return not spec.group_for(value, tol).is_main


def spread_of_matrix(a) -> float:
    """Difference between the largest and smallest eigenvalue."""
    w, _ = eig_sym(a)
    if len(w) == 0:
        raise InputError("spread of an order-0 matrix is undefined")
    return float(w[0] - w[-1])


@lru_cache(maxsize=16384)
def graph_eigenvalues(g: Graph) -> tuple[float, ...]:
    """Descending adjacency eigenvalues, memoised on the (hashable) graph."""
    w = np.linalg.eigvalsh(g.adjacency())
    return tuple(float(x) for x in w[::-1])


# ---------------------------------------------------------------------------
# multiset helpers (eigenvalues under a matching tolerance)


def multiset_equal(a, b, tol: float = MATCH_TOL) -> bool:
    """True iff two eigenvalue multisets agree elementwise after sorting."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.shape != b.shape:
        return False
    return bool(a.size == 0 or np.max(np.abs(a - b)) <= tol)


def multiset_without(values, remove: float, tol: float = MATCH_TOL) -> np.ndarray:
    """Remove one copy of ``remove`` from the multiset, failing loudly if absent."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ConsistencyError(f"cannot remove {remove} from an empty multiset")
    idx = int(np.argmin(np.abs(values - remove)))
    if abs(values[idx] - remove) > tol:
        raise ConsistencyError(
            f"value {remove} not present within tolerance {tol} (closest {values[idx]})"
        )
    return np.delete(values, idx)


def multiset_contains(container, items, tol: float = MATCH_TOL):
    """Greedy check that ``items`` embeds into ``container`` within tolerance.

    Returns ``(ok, unmatched)`` where ``unmatched`` lists item values that
    could not be paired with a distinct element of the container.
    """
    container = np.sort(np.asarray(container, dtype=float))
    items = np.sort(np.asarray(items, dtype=float))
    unmatched = []
    j = 0
    for x in items:
        while j < len(container) and container[j] < x - tol:
            j += 1
        if j < len(container) and container[j] <= x + tol:
            j += 1
        else:
            unmatched.append(float(x))
    return (not unmatched), unmatched
