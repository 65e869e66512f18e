"""Dense complex linear algebra kernel.

Everything operates on square ``numpy`` arrays of ``complex128``. Hermitian
inputs are symmetrized on ingest: a matrix whose asymmetry ``||M - M*||_F``
exceeds ``SYMMETRY_RTOL * ||M||_F`` is rejected rather than silently fixed,
so file round-trip noise is absorbed but genuinely non-Hermitian data is not.

The eigensolver is a cyclic Jacobi iteration with complex 2x2 rotations; it
is accurate to a small multiple of machine precision at the dense sizes this
package targets (n up to a few hundred) and reports the eigenvector basis,
which the moment machinery needs explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, ShapeError

#: Relative tolerance below which asymmetry is treated as round-off.
SYMMETRY_RTOL = 1e-8

#: Default relative tolerance for positive semidefiniteness verdicts.
DEFAULT_PSD_TOL = 1e-9

#: Off-diagonal mass target of the Jacobi sweep, relative to ||A||_F.
_JACOBI_RTOL = 1e-14

_MAX_SWEEPS = 50

#: Default cap on any dimension of a Kronecker product output.
DEFAULT_KRON_CAP = 4096


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting NaN/Inf entries."""
    m = np.array(a, dtype=np.complex128, copy=True)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix contains non-finite entries")
    return m


def _require_square(m: np.ndarray) -> None:
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def hermitian_part(a: np.ndarray) -> np.ndarray:
    """``(M + M*)/2`` with no asymmetry check.

    For quantities that are Hermitian by construction and asymmetric only
    through rounding; user-facing ingestion should go through
    :func:`symmetrize` instead, which rejects genuinely non-Hermitian data.
    """
    return (a + a.conj().T) / 2.0


def symmetrize(a, rtol: float = SYMMETRY_RTOL) -> np.ndarray:
    """Return ``(M + M*)/2`` if ``M`` is Hermitian up to ``rtol``, else raise.

    The comparison scale is ``max(||M||_F, tiny)`` so the zero matrix passes.
    """
    m = as_matrix(a)
    _require_square(m)
    scale = max(frobenius(m), np.finfo(float).tiny)
    asym = frobenius(m - m.conj().T)
    if asym > rtol * scale:
        raise DomainError(
            f"matrix is not Hermitian: asymmetry {asym:.3e} exceeds "
            f"{rtol:.1e} * ||M||_F = {rtol * scale:.3e}"
        )
    return (m + m.conj().T) / 2.0


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigenvalues (ascending, real) and an orthonormal eigenvector basis.

    ``eigenvectors[:, k]`` is the unit eigenvector for ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Assemble ``V diag(lambda) V*`` back into a matrix."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def max(self) -> float:
        return float(self.eigenvalues[-1])


def _jacobi(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a Hermitian matrix in place by cyclic Jacobi sweeps."""
    n = h.shape[0]
    v = np.eye(n, dtype=np.complex128)
    norm = frobenius(h)
    if n == 1 or norm == 0.0:
        return h.diagonal().real.copy(), v
    target = _JACOBI_RTOL * norm
    # Pivots below this floor cannot push the off-diagonal mass above target.
    floor = target / (10.0 * n)

    def offdiag() -> float:
        # Summed directly; the norm-minus-diagonal shortcut cancels badly.
        off = h.copy()
        np.fill_diagonal(off, 0.0)
        return frobenius(off)

    for _ in range(_MAX_SWEEPS):
        if offdiag() <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = h[p, q]
                ab = abs(beta)
                if ab <= floor:
                    continue
                alpha = h[p, p].real
                delta = h[q, q].real
                tau = (delta - alpha) / (2.0 * ab)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = (t * c) * (beta / ab)
                sc = s.conjugate()
                # Unitary U = [[c, s], [-conj(s), c]] on coordinates (p, q):
                # h <- U* h U, v <- v U.
                hp = h[:, p].copy()
                hq = h[:, q]
                h[:, p] = c * hp - sc * hq
                h[:, q] = s * hp + c * hq
                hp = h[p, :].copy()
                hq = h[q, :]
                h[p, :] = c * hp - s * hq
                h[q, :] = sc * hp + c * hq
                h[p, q] = 0.0
                h[q, p] = 0.0
                h[p, p] = h[p, p].real
                h[q, q] = h[q, q].real
                vp = v[:, p].copy()
                v[:, p] = c * vp - sc * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    else:
        if offdiag() > target:
            raise ConvergenceError(
                f"Jacobi sweep did not reach off-diagonal mass {target:.3e} "
                f"in {_MAX_SWEEPS} sweeps (n={n})"
            )
    return h.diagonal().real.copy(), v


def hermitian_eig(a) -> HermitianSpectrum:
    """Full eigendecomposition of a Hermitian matrix.

    Returns the spectrum sorted ascending with matching orthonormal
    eigenvector columns; reconstruction error is a few ulps of ``||A||_F``.
    """
    h = symmetrize(a)
    lam, v = _jacobi(h)
    order = np.argsort(lam, kind="stable")
    return HermitianSpectrum(eigenvalues=lam[order], eigenvectors=v[:, order])


@dataclass(frozen=True)
class PsdVerdict:
    """Outcome of a positive-semidefiniteness test with its margin.

    ``passed`` is equivalent to ``min_eigenvalue >= -tolerance_used * scale``
    where ``scale`` is the Frobenius norm of the tested matrix floored at 1.
    """

    min_eigenvalue: float
    scale: float
    passed: bool
    tolerance_used: float


def is_psd(m, tol: float = DEFAULT_PSD_TOL) -> PsdVerdict:
    """Test a Hermitian matrix for positive semidefiniteness.

    The verdict reports the minimum eigenvalue so callers can see the margin,
    not just the boolean. Non-Hermitian input (beyond the symmetrization
    tolerance) is rejected with :class:`DomainError`.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    h = symmetrize(m)
    scale = max(1.0, frobenius(h))
    lam_min = hermitian_eig(h).min
    return PsdVerdict(
        min_eigenvalue=lam_min,
        scale=scale,
        passed=lam_min >= -tol * scale,
        tolerance_used=tol,
    )


def kron(a, b, dim_cap: int = DEFAULT_KRON_CAP) -> np.ndarray:
    """Kronecker (tensor) product with a configurable output-size cap."""
    ma, mb = as_matrix(a), as_matrix(b)
    rows = ma.shape[0] * mb.shape[0]
    cols = ma.shape[1] * mb.shape[1]
    if max(rows, cols) > dim_cap:
        raise ShapeError(
            f"Kronecker product dimension {rows}x{cols} exceeds cap {dim_cap}"
        )
    return np.kron(ma, mb)


def hadamard(a, b) -> np.ndarray:
    """Schur (entrywise) product of two equally shaped matrices."""
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise ShapeError(f"shape mismatch {ma.shape} vs {mb.shape}")
    return ma * mb


def matrix_power(a, p: int) -> np.ndarray:
    """Integer power of a Hermitian matrix, by repeated multiplication.

    Negative powers require a positive definite argument; the guard is a
    Cholesky factorization so this route stays independent of the
    eigensolver.
    """
    h = symmetrize(a)
    p = int(p)
    if p < 0:
        try:
            np.linalg.cholesky(h)
        except np.linalg.LinAlgError:
            raise DomainError(
                "negative power requires a positive definite matrix"
            ) from None
    out = np.linalg.matrix_power(h, p)
    return (out + out.conj().T) / 2.0


def matrix_function(a, f, *, positive_only: bool = False) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix via its spectrum.

    ``f`` maps an array of eigenvalues to an array of real values; the result
    is ``V diag(f(lambda)) V*``. With ``positive_only`` the spectrum must be
    strictly positive (for logarithms and inverse powers).
    """
    spec = hermitian_eig(a)
    if positive_only and spec.min <= 0.0:
        raise DomainError(
            f"matrix must be positive definite (min eigenvalue {spec.min:.3e})"
        )
    with np.errstate(invalid="ignore", divide="ignore"):
        values = np.asarray(f(spec.eigenvalues), dtype=np.float64)
    if values.shape != spec.eigenvalues.shape or not np.all(np.isfinite(values)):
        raise DomainError("scalar function produced non-finite or misshaped values")
    v = spec.eigenvectors
    out = (v * values) @ v.conj().T
    return (out + out.conj().T) / 2.0


def matrix_log(a) -> np.ndarray:
    """Principal logarithm of a positive definite Hermitian matrix."""
    return matrix_function(a, np.log, positive_only=True)


def random_unitary(n: int, seed: int) -> np.ndarray:
    """Haar-ish random unitary: QR of a seeded complex Gaussian matrix.

    Deterministic for a fixed ``(n, seed)``; ``U* U = I`` to machine
    precision.
    """
    if n < 1:
        raise ShapeError("unitary dimension must be at least 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g / math.sqrt(2.0))
    d = np.diagonal(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d)).conj()


def random_hermitian(n: int, seed: int, scale: float = 1.0) -> np.ndarray:
    """Seeded random Hermitian matrix with entries of size ~``scale``."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (g + g.conj().T) / 2.0


def random_psd(n: int, seed: int) -> np.ndarray:
    """Seeded random positive semidefinite matrix ``C* C``."""
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return c.conj().T @ c


def random_normal_matrix(n: int, seed: int, radius: float = 2.0) -> np.ndarray:
    """Seeded random normal matrix ``U diag(z) U*`` with complex ``z``."""
    rng = np.random.default_rng(seed)
    z = radius * (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n))
    u = random_unitary(n, seed + 1)
    return (u * z) @ u.conj().T


def hermitian_with_spectrum(eigenvalues, seed: int) -> np.ndarray:
    """Hermitian matrix with a prescribed real spectrum and a seeded basis."""
    lam = np.asarray(eigenvalues, dtype=np.float64)
    u = random_unitary(lam.size, seed)
    m = (u * lam) @ u.conj().T
    return (m + m.conj().T) / 2.0
