"""Dense Laplacian spectra with explicit eigenspace grouping.

The eigensolver itself is LAPACK's symmetric solver reached through
numpy; this module adds the contracts the verification layer depends on:
ascending eigenvalues, clustering into eigenspace groups at a relative gap
tolerance, a residual check on every basis vector, and sign-canonicalized
bases so repeated runs produce identical output.

Grouping matters because several checks quantify over the *whole*
eigenspace of the algebraic connectivity: a single computed eigenvector is
not enough when that eigenvalue is degenerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph, GraphError

DEFAULT_RESID_TOL = 1e-9
DEFAULT_GROUP_TOL = 1e-8


class NumericalError(RuntimeError):
    """Eigensolver failed to converge or violated a residual bound."""


def laplacian(g: Graph) -> np.ndarray:
    """Degree diagonal minus adjacency, as an exact integer matrix."""
    L = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        L[u, u] += 1
        L[v, v] += 1
        L[u, v] -= 1
        L[v, u] -= 1
    return L


def principal_submatrix(m: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Rows and columns restricted to keep, ordered by ascending index."""
    m = np.asarray(m)
    order = m.shape[0]
    idx = sorted(set(keep))
    for v in idx:
        if not (0 <= v < order):
            raise GraphError(f"index {v} out of range [0, {order})")
    return m[np.ix_(idx, idx)].copy()


@dataclass(frozen=True)
class EigenGroup:
    """One eigenspace: the member eigenvalues and an orthonormal basis."""

    value: float  # representative (mean of members)
    members: tuple[float, ...]
    basis: np.ndarray  # (order, mult), orthonormal columns

    @property
    def mult(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray  # ascending
    groups: tuple[EigenGroup, ...]
    resid_tol: float
    group_tol: float

    @property
    def order(self) -> int:
        return len(self.values)

    def group_of(self, index: int) -> EigenGroup:
        """The group containing the index-th smallest eigenvalue."""
        i = 0
        for grp in self.groups:
            i += grp.mult
            if index < i:
                return grp
        raise IndexError(index)

    def distinct_values(self) -> list[float]:
        return [grp.value for grp in self.groups]

    def to_json_dict(self) -> dict:
        return {
            "values": [float(v) for v in self.values],
            "groups": [{"value": g.value, "mult": g.mult} for g in self.groups],
            "tolerances": {"resid_tol": self.resid_tol, "group_tol": self.group_tol},
        }


def _canonical_signs(basis: np.ndarray) -> np.ndarray:
    # first coordinate of magnitude > 1e-8 (basis columns are unit vectors)
    out = basis.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        nz = np.nonzero(np.abs(col) > 1e-8)[0]
        if nz.size and col[nz[0]] < 0:
            out[:, j] = -col
    return out


def eig_sym(
    m: np.ndarray,
    resid_tol: float = DEFAULT_RESID_TOL,
    group_tol: float = DEFAULT_GROUP_TOL,
) -> Spectrum:
    """Full symmetric eigendecomposition with eigenvalue grouping.

    Eigenvalues whose consecutive gap is at most group_tol * max(1, |m|)
    land in one group; every returned basis vector must satisfy
    ||m q - lambda q|| <= resid_tol * max(1, lambda_max) or the call fails.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise GraphError(f"matrix shape {a.shape} is not square")
    if not np.isfinite(a).all():
        raise GraphError("matrix has non-finite entries")
    if not np.array_equal(a, a.T):
        raise GraphError("matrix is not symmetric")
    n = a.shape[0]
    if n == 0:
        return Spectrum(np.empty(0), (), resid_tol, group_tol)
    try:
        w, q = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver did not converge: {exc}") from exc

    scale = max(1.0, float(np.abs(w).max()))
    resid_bound = resid_tol * scale
    resid = np.linalg.norm(a @ q - q * w, axis=0)
    if resid.max() > resid_bound:
        raise NumericalError(
            f"residual {resid.max():.3e} exceeds bound {resid_bound:.3e}"
        )

    gap_bound = group_tol * scale
    groups = []
    start = 0
    for i in range(1, n + 1):
        if i == n or w[i] - w[i - 1] > gap_bound:
            members = tuple(float(x) for x in w[start:i])
            basis = _canonical_signs(q[:, start:i])
            groups.append(
                EigenGroup(value=float(np.mean(w[start:i])), members=members, basis=basis)
            )
            start = i
    return Spectrum(values=w, groups=tuple(groups), resid_tol=resid_tol, group_tol=group_tol)


def algebraic_connectivity(
    g: Graph,
    resid_tol: float = DEFAULT_RESID_TOL,
    group_tol: float = DEFAULT_GROUP_TOL,
) -> tuple[float, np.ndarray]:
    """Second-smallest Laplacian eigenvalue and an orthonormal basis of its eigenspace.

    For a disconnected graph the value is exactly 0. A single vertex has no
    second eigenvalue, so n >= 2 is required.
    """
    if g.n < 2:
        raise GraphError("algebraic connectivity needs n >= 2")
    spec = eig_sym(laplacian(g), resid_tol=resid_tol, group_tol=group_tol)
    value = float(spec.values[1])
    scale = max(1.0, float(np.abs(spec.values).max()))
    if abs(value) <= resid_tol * scale:
        value = 0.0
    return value, spec.group_of(1).basis


def rayleigh(m: np.ndarray, x: Sequence[float], edges: Iterable[tuple[int, int]] | None = None) -> float:
    """Quadratic form ratio x'Mx / x'x.

    When edges are passed (Laplacian case) the value is recomputed as the
    edge sum of squared differences and the two routes are cross-checked.
    """
    a = np.asarray(m, dtype=float)
    v = np.asarray(x, dtype=float)
    if v.shape != (a.shape[0],):
        raise GraphError(f"vector length {v.shape} does not match order {a.shape[0]}")
    den = float(v @ v)
    if den == 0.0:
        raise GraphError("Rayleigh quotient of the zero vector")
    val = float(v @ (a @ v)) / den
    if edges is not None:
        edge_val = sum((v[u] - v[w]) ** 2 for u, w in edges) / den
        if abs(val - edge_val) > 1e-9 * max(1.0, abs(val)):
            raise NumericalError(
                f"Rayleigh routes disagree: {val!r} vs {edge_val!r}"
            )
    return val


def theta(r: int, k: int) -> float:
    """Eigenvalue 2 + 2cos(2k pi / (2r+1)) of the pendant-path principal submatrix.

    Decreasing in k; k = r gives the smallest one.
    """
    if not 1 <= k <= r:
        raise GraphError(f"need 1 <= k <= r, got k={k} r={r}")
    return 2.0 + 2.0 * math.cos(2.0 * k * math.pi / (2 * r + 1))


def eigenspace_has_equal_pair(
    basis: np.ndarray,
    pairs: Sequence[tuple[int, int]] | tuple[int, int],
    tol: float = 1e-7,
) -> tuple[bool, np.ndarray | None]:
    """Does some nonzero vector in span(basis) take equal values on every pair?

    Decided by the rank of the constraint matrix restricted to the basis:
    a solution exists iff the rank is below the basis dimension. Returns a
    unit witness vector when one exists.
    """
    basis = np.asarray(basis, dtype=float)
    if basis.ndim != 2:
        raise GraphError("basis must be a 2-d array of column vectors")
    d = basis.shape[1]
    if d == 0:
        return False, None
    if pairs and isinstance(pairs[0], (int, np.integer)):
        pairs = [tuple(pairs)]  # single pair given bare
    rows = np.array([basis[u, :] - basis[v, :] for u, v in pairs], dtype=float)
    if rows.size == 0:
        witness = basis[:, 0]
        return True, witness / np.linalg.norm(witness)
    _, sing, vh = np.linalg.svd(rows)
    smax = float(sing[0]) if sing.size else 0.0
    rank = int((sing > tol * max(1.0, smax)).sum())
    if rank >= d:
        return False, None
    coef = vh[-1]
    witness = basis @ coef
    witness = witness / np.linalg.norm(witness)
    nz = np.nonzero(np.abs(witness) > 1e-8)[0]
    if nz.size and witness[nz[0]] < 0:
        witness = -witness
    return True, witness
