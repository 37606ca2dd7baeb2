"""Core numerical routines: deterministic complex SVD, water-filling power
allocation, digamma evaluation, Wishart eigenvalue moments, and log-det
capacity.

Everything here is a pure function of its inputs.  Tolerances follow the
conventions used throughout the package: 1e-9 for orthonormality and
reconstruction checks, 1e-10 for power-budget conservation, rank cutoff at
1e-10 relative to the largest singular value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SvdTriple",
    "WaterfillResult",
    "WishartParams",
    "svd",
    "waterfill",
    "digamma",
    "wishart_eig_moment",
    "logdet_capacity",
]

# Entries below this magnitude are treated as zero when picking the anchor
# entry for the SVD phase convention.  Columns are unit-norm, so the largest
# entry is at least 1/sqrt(n) and an anchor always exists.
_PHASE_ANCHOR_TOL = 1e-12


@dataclass(frozen=True)
class SvdTriple:
    """Full SVD A = U @ diag(S) @ V^H with square unitary U and V.

    U is m x m, V is n x n, S holds the min(m, n) singular values in
    descending order.  Phases are pinned (see ``svd``) so repeated calls on
    identical input yield identical factors.
    """

    U: np.ndarray
    S: np.ndarray
    V: np.ndarray

    def reconstruct(self) -> np.ndarray:
        k = self.S.size
        return (self.U[:, :k] * self.S) @ self.V[:, :k].conj().T


@dataclass(frozen=True)
class WaterfillResult:
    """Water-filling allocation over parallel streams.

    powers sums to the budget; inactive streams hold exactly 0; every active
    stream r satisfies powers[r] + noise_var/eigs[r] == water_level.
    """

    powers: np.ndarray
    water_level: float
    active_streams: int


@dataclass(frozen=True)
class WishartParams:
    """Shape parameters of W = H H^H for an iid unit-variance complex
    Gaussian H.

    dim is the number of nonzero eigenvalues (min channel dimension), dof the
    degrees of freedom (max channel dimension).  scale_logdet is log2 of the
    scale-matrix determinant, zero for identity scale.
    """

    dim: int
    dof: int
    scale_logdet: float = 0.0

    def __post_init__(self):
        if self.dim < 1 or self.dof < self.dim:
            raise ValueError(
                f"need dof >= dim >= 1, got dim={self.dim}, dof={self.dof}"
            )


def _validate_matrix(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.size == 0:
        raise ValueError(f"{name} must be a nonempty 2-D array")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return a.astype(complex, copy=False)


def svd(a: np.ndarray) -> SvdTriple:
    """Deterministic full SVD with a fixed phase convention.

    LAPACK leaves a per-column phase free; we rotate each column of U so its
    first non-negligible entry is real nonnegative, applying the matching
    rotation to the paired column of V so the product is unchanged.  Columns
    of V beyond min(m, n) have no partner in U and get the same convention
    applied to themselves.

    Parameters
    ----------
    a : (m, n) array_like
        Complex or real matrix, finite entries.

    Returns
    -------
    SvdTriple
        U (m, m), S (min(m, n),) descending, V (n, n).
    """
    a = _validate_matrix(a, "svd input")
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    v = vh.conj().T
    k = s.size

    u = np.ascontiguousarray(u)
    v = np.ascontiguousarray(v)
    for j in range(u.shape[1]):
        col = u[:, j]
        idx = np.flatnonzero(np.abs(col) > _PHASE_ANCHOR_TOL)
        i = idx[0] if idx.size else int(np.argmax(np.abs(col)))
        anchor = col[i]
        if anchor != 0:
            rot = np.conj(anchor) / abs(anchor)
            u[:, j] *= rot
            if j < k:
                v[:, j] *= rot
    for j in range(k, v.shape[1]):
        col = v[:, j]
        idx = np.flatnonzero(np.abs(col) > _PHASE_ANCHOR_TOL)
        i = idx[0] if idx.size else int(np.argmax(np.abs(col)))
        anchor = col[i]
        if anchor != 0:
            col *= np.conj(anchor) / abs(anchor)
    return SvdTriple(U=u, S=s, V=v)


def waterfill(eigs, noise_var: float, p_t: float) -> WaterfillResult:
    """Water-filling power allocation over parallel Gaussian streams.

    Maximizes sum log2(1 + eigs[r] * p[r] / noise_var) subject to
    sum(p) == p_t, p >= 0.  Solved exactly by sorted active-set elimination:
    starting from all streams active, drop the weakest while the candidate
    water level cannot cover its inverse gain.  No iterative tolerance is
    involved.

    Parameters
    ----------
    eigs : sequence of positive floats
        Effective channel gains (squared singular values) per stream.
    noise_var, p_t : positive floats
        Noise variance and total power budget.

    Returns
    -------
    WaterfillResult
        Powers in the input stream order.
    """
    eigs = np.asarray(eigs, dtype=float)
    if eigs.size == 0:
        raise ValueError("need at least one stream")
    if np.any(eigs <= 0) or not np.all(np.isfinite(eigs)):
        raise ValueError("stream gains must be positive and finite")
    if noise_var <= 0 or p_t <= 0:
        raise ValueError("noise_var and p_t must be positive")

    inv_gain = noise_var / eigs
    order = np.argsort(inv_gain, kind="stable")
    inv_sorted = inv_gain[order]

    m = eigs.size
    while m > 1:
        level = (p_t + inv_sorted[:m].sum()) / m
        if level > inv_sorted[m - 1]:
            break
        m -= 1
    level = (p_t + inv_sorted[:m].sum()) / m

    powers = np.zeros(eigs.size)
    powers[order[:m]] = level - inv_sorted[:m]
    return WaterfillResult(powers=powers, water_level=float(level), active_streams=m)


# Asymptotic series coefficients for psi(x) ~ ln x - 1/(2x) - sum c_j / x^(2j),
# with the Bernoulli-number terms through x^-12.  With the recurrence shift to
# x >= 10 the truncation error is below 1e-14.
_DIGAMMA_SHIFT = 10.0
_DIGAMMA_SERIES = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
)


def digamma(x: float) -> float:
    """Digamma function psi(x) for x > 0, accurate to 1e-10 absolute.

    Uses the recurrence psi(x) = psi(x+1) - 1/x to shift the argument to at
    least 10, then the asymptotic series in inverse even powers.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise ValueError(f"digamma requires x > 0, got {x}")
    acc = 0.0
    while x < _DIGAMMA_SHIFT:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for c in _DIGAMMA_SERIES:
        series += c * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - series


def wishart_eig_moment(n: int, params: WishartParams) -> float:
    """Moment E[lambda^n] of a uniformly chosen nonzero eigenvalue of
    W = H H^H, H of size dim x dof with iid CN(0, 1) entries.

    Exact trace identities: E[lambda] = dof and E[lambda^2] = dof*(dim+dof).
    Only n in {1, 2} is supported; higher moments are out of scope.
    """
    if params.scale_logdet != 0.0:
        raise ValueError("moments are implemented for identity scale only")
    if n == 1:
        return float(params.dof)
    if n == 2:
        return float(params.dof * (params.dim + params.dof))
    raise ValueError(f"moment order {n} unsupported (only n=1, 2)")


def logdet_capacity(h: np.ndarray, q: np.ndarray, noise_var: float = 1.0) -> float:
    """Exact MIMO capacity log2 det(I + H Q H^H / noise_var) in bits.

    Q must be Hermitian PSD (eigenvalues above -1e-9; small negative roundoff
    is clipped).  Computed through the Hermitian eigendecomposition of
    H Q H^H, which keeps the determinant evaluation well conditioned.
    """
    h = _validate_matrix(h, "channel")
    q = _validate_matrix(q, "covariance")
    if q.shape[0] != q.shape[1]:
        raise ValueError(f"covariance must be square, got {q.shape}")
    if h.shape[1] != q.shape[0]:
        raise ValueError(
            f"channel columns ({h.shape[1]}) must match covariance size ({q.shape[0]})"
        )
    if noise_var <= 0:
        raise ValueError("noise_var must be positive")

    q_h = (q + q.conj().T) / 2.0
    q_eigs = np.linalg.eigvalsh(q_h)
    if q_eigs.size and q_eigs[0] < -1e-9:
        raise ValueError(f"covariance is not PSD (min eigenvalue {q_eigs[0]:.3e})")

    gram = h @ q_h @ h.conj().T / noise_var
    eigs = np.linalg.eigvalsh((gram + gram.conj().T) / 2.0)
    eigs = np.clip(eigs, 0.0, None)
    return float(np.sum(np.log2(1.0 + eigs)))
