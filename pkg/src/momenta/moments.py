"""Moment tables of positive unital linear maps and their PSD block matrices.

A :class:`MomentTable` holds the images ``Phi(A^k)`` of the powers of a
Hermitian matrix over a contiguous range of exponents (possibly starting at
-1 for positive definite ``A``), together with an interval ``[m, M]``
containing the spectrum. From such a table, :func:`build_block` assembles
the family of block matrices whose positive semidefiniteness this package
verifies:

==================  block (i, j), indices 1-based over 1..r+1
hankel              Phi(A^{i+j-2})
hankel_shift1       Phi(A^{i+j-1})                        (A >= 0)
lower_shift         Phi(A^{i+j-1}) - m Phi(A^{i+j-2})
upper_shift         M Phi(A^{i+j-2}) - Phi(A^{i+j-1})
lower_shift_inv     Phi(A^{i+j-2}) - m Phi(A^{i+j-3})     (A > 0)
upper_shift_inv     M Phi(A^{i+j-3}) - Phi(A^{i+j-2})     (A > 0)
range_product       Phi(A^{i+j-2} (A - mI)(MI - A))
gap_product         Phi(A^{i+j-2} (A - s I)(A - t I)),    (s, t) adjacent
                    distinct eigenvalues
range_product_inv   Phi(A^{i+j-3} (A - mI)(MI - A))       (A > 0)
==================

Product kinds are assembled from the expanded moment combination (linearity
makes this equal to applying the map to the product matrix; the equality is
itself tested). The scalar Hankel oracles at the bottom of the module supply
independently computable positive matrices used to cross-check the tensor
decomposition of these blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError
from .linalg import (
    DEFAULT_PSD_TOL,
    as_matrix,
    frobenius,
    hermitian_eig,
    hermitian_part,
    is_psd,
    matrix_log,
    symmetrize,
)
from .maps import PositiveUnitalMap

#: Relative gap below which two eigenvalues are treated as one atom.
GAP_RTOL = 1e-8

#: Relative asymmetry tolerance of the normality test ||A*A - AA*||.
NORMALITY_RTOL = 1e-8

#: Kinds accepted by :func:`build_block`, in assembly order.
BLOCK_KINDS = (
    "hankel",
    "hankel_shift1",
    "lower_shift",
    "upper_shift",
    "lower_shift_inv",
    "upper_shift_inv",
    "range_product",
    "gap_product",
    "range_product_inv",
)

#: Kinds whose validity needs a positive definite argument (and k_min = -1).
PD_BLOCK_KINDS = ("lower_shift_inv", "upper_shift_inv", "range_product_inv")


@dataclass(frozen=True)
class MomentTable:
    """Images ``Phi(A^k)`` for ``k = k_min..k_max`` plus spectrum interval.

    ``m`` and ``M`` bracket the spectrum of ``A``; by default they are its
    exact extreme eigenvalues, the tightest admissible choice.
    """

    k_min: int
    k_max: int
    blocks: tuple
    m: float
    M: float
    block_dim: int

    def power(self, k: int) -> np.ndarray:
        """The block ``Phi(A^k)``; raises if ``k`` is outside the table."""
        if not self.k_min <= k <= self.k_max:
            raise ShapeError(
                f"moment table covers powers {self.k_min}..{self.k_max}, "
                f"power {k} requested"
            )
        return self.blocks[k - self.k_min]


def moment_table(pulm: PositiveUnitalMap, a, k_min: int = 0, k_max: int = 4,
                 route: str = "spectral", m: float | None = None,
                 M: float | None = None) -> MomentTable:
    """Tabulate ``Phi(A^k)`` for ``k = k_min..k_max``.

    ``route="spectral"`` sums ``lambda_j^k Phi(v_j v_j*)`` over the
    eigenpairs of ``A``; ``route="direct"`` applies the map to explicitly
    multiplied matrix powers. The two agree to rounding and their agreement
    is one of the package's standing cross-checks.

    ``k_min`` may be -1 only for positive definite ``A``. Passing ``m``
    and/or ``M`` widens the spectrum interval; values inside the spectrum are
    rejected because every downstream inequality assumes containment.
    """
    if k_min not in (-1, 0):
        raise DomainError(f"k_min must be -1 or 0, got {k_min}")
    if k_max < k_min:
        raise DomainError(f"k_max {k_max} below k_min {k_min}")
    h = symmetrize(a)
    spectrum = hermitian_eig(h)
    lam = spectrum.eigenvalues
    lo, hi = spectrum.min, spectrum.max
    if k_min == -1 and lo <= 0.0:
        raise DomainError(
            f"inverse moments need a positive definite matrix "
            f"(min eigenvalue {lo:.3e})"
        )
    grace = 1e-12 * max(1.0, abs(lo), abs(hi))
    m = lo if m is None else float(m)
    M = hi if M is None else float(M)
    if m > lo + grace or M < hi - grace:
        raise DomainError(
            f"[m, M] = [{m}, {M}] does not contain the spectrum "
            f"[{lo}, {hi}]"
        )
    powers = range(k_min, k_max + 1)
    if route == "spectral":
        images = [pulm.apply(np.outer(v, v.conj()))
                  for v in spectrum.eigenvectors.T]
        blocks = [
            hermitian_part(sum((l ** k) * w for l, w in zip(lam, images)))
            for k in powers
        ]
    elif route == "direct":
        k = pulm.codomain_dim
        blocks = []
        acc = {0: np.eye(h.shape[0], dtype=np.complex128)}
        maxpow = max(k_max, 1)
        for p in range(1, maxpow + 1):
            acc[p] = acc[p - 1] @ h
        if k_min == -1:
            acc[-1] = np.linalg.inv(h)
        for k_ in powers:
            blocks.append(hermitian_part(pulm.apply(hermitian_part(acc[k_]))))
    else:
        raise ValueError(f"unknown route {route!r}; expected spectral or direct")
    return MomentTable(
        k_min=k_min,
        k_max=k_max,
        blocks=tuple(blocks),
        m=m,
        M=M,
        block_dim=pulm.codomain_dim,
    )


@dataclass(frozen=True)
class BlockMatrixSpec:
    """An assembled block matrix together with its construction tag."""

    kind: str
    r: int
    block_dim: int
    assembled: np.ndarray


def distinct_eigenvalues(values, rtol: float = GAP_RTOL) -> np.ndarray:
    """Cluster an ascending spectrum into distinct atoms.

    Adjacent values closer than ``rtol`` times the spectral width are merged
    (represented by their mean).
    """
    vals = np.sort(np.asarray(values, dtype=np.float64))
    if vals.size == 0:
        return vals
    width = max(vals[-1] - vals[0], np.finfo(float).tiny)
    groups = [[vals[0]]]
    for v in vals[1:]:
        if v - groups[-1][-1] <= rtol * width:
            groups[-1].append(v)
        else:
            groups.append([v])
    return np.array([np.mean(g) for g in groups])


def build_block(kind: str, table: MomentTable, r: int, *,
                eigenvalues=None, gap_index: int | None = None) -> BlockMatrixSpec:
    """Assemble one of the PSD block matrices from a moment table.

    ``r`` is the block order: the result has ``r + 1`` block rows and
    columns. ``gap_product`` additionally needs the (distinct, ascending)
    ``eigenvalues`` of the underlying matrix and a 1-based ``gap_index`` g
    selecting the open interval between eigenvalues g-1 and g.
    """
    if kind not in BLOCK_KINDS:
        raise ValueError(f"unknown block kind {kind!r}; expected one of {BLOCK_KINDS}")
    if r < 0:
        raise DomainError("block order r must be non-negative")
    m, M = table.m, table.M
    T = table.power

    if kind == "gap_product":
        if eigenvalues is None or gap_index is None:
            raise DomainError("gap_product needs eigenvalues and gap_index")
        lam = np.asarray(eigenvalues, dtype=np.float64)
        g = int(gap_index)
        if not 2 <= g <= lam.size:
            raise DomainError(
                f"gap index must lie in 2..{lam.size}, got {g}"
            )
        s, t = float(lam[g - 2]), float(lam[g - 1])
        if t - s <= GAP_RTOL * max(M - m, np.finfo(float).tiny):
            raise DomainError(f"eigenvalue gap ({s}, {t}) is too narrow")

    def entry(i: int, j: int) -> np.ndarray:
        e = i + j  # 0-based; the 1-based exponent i+j-2
        if kind == "hankel":
            return T(e)
        if kind == "hankel_shift1":
            return T(e + 1)
        if kind == "lower_shift":
            return T(e + 1) - m * T(e)
        if kind == "upper_shift":
            return M * T(e) - T(e + 1)
        if kind == "lower_shift_inv":
            return T(e) - m * T(e - 1)
        if kind == "upper_shift_inv":
            return M * T(e - 1) - T(e)
        if kind == "range_product":
            return (m + M) * T(e + 1) - T(e + 2) - m * M * T(e)
        if kind == "range_product_inv":
            return (m + M) * T(e) - T(e + 1) - m * M * T(e - 1)
        # gap_product
        return T(e + 2) - (s + t) * T(e + 1) + s * t * T(e)

    grid = [[entry(i, j) for j in range(r + 1)] for i in range(r + 1)]
    return BlockMatrixSpec(
        kind=kind, r=r, block_dim=table.block_dim, assembled=np.block(grid)
    )


def build_refinement_chain(table: MomentTable,
                           m: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Two-block refinement of the even-moment Hankel for ``A >= m > 0``.

    Returns ``(outer, inner)`` where
    ``outer = [[Phi(A^2), Phi(A^3)], [Phi(A^3), Phi(A^4)]]`` and
    ``inner = 2m [[Phi(A), Phi(A^2)], [Phi(A^2), Phi(A^3)]]
    - m^2 [[I, Phi(A)], [Phi(A), Phi(A^2)]]``; both ``outer - inner`` and
    ``inner`` are positive semidefinite whenever the spectrum lies in
    ``[m, inf)`` with ``m > 0``.
    """
    m = table.m if m is None else float(m)
    if m <= 0.0:
        raise DomainError(f"refinement chain needs m > 0, got {m}")
    if m > table.m + 1e-12 * max(1.0, abs(table.m)):
        raise DomainError(
            f"m = {m} exceeds the least admissible spectrum point {table.m}"
        )
    T = table.power
    outer = np.block([[T(2), T(3)], [T(3), T(4)]])
    inner = 2.0 * m * np.block([[T(1), T(2)], [T(2), T(3)]]) \
        - m * m * np.block([[T(0), T(1)], [T(1), T(2)]])
    return outer, inner


def build_log_deficit_block(pulm: PositiveUnitalMap, a) -> np.ndarray:
    """``[[Phi(A^2), Phi(A)], [Phi(A), Phi(A - log A)]]`` for ``A > 0``.

    Positive semidefinite because ``x - log x >= 1`` on the positive axis.
    """
    h = symmetrize(a)
    la = matrix_log(h)
    one = pulm.apply(h)
    two = pulm.apply(hermitian_part(h @ h))
    deficit = pulm.apply(h - la)
    return np.block([[two, one], [one, deficit]])


def build_log_endpoint_blocks(pulm: PositiveUnitalMap, a,
                              m: float | None = None,
                              M: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Logarithmic endpoint blocks for ``0 < m <= spectrum(A) <= M``.

    Returns ``(upper, lower)``:

    - upper: ``[[Phi((log M) I - log A), Phi((log M) A - A log A)],
      [..., Phi((log M) A^2 - A^2 log A)]]``
    - lower: the mirrored block with ``log m`` subtracted instead.
    """
    h = symmetrize(a)
    spectrum = hermitian_eig(h)
    lo, hi = spectrum.min, spectrum.max
    m = lo if m is None else float(m)
    M = hi if M is None else float(M)
    if m <= 0.0:
        raise DomainError(f"log endpoint blocks need m > 0, got {m}")
    grace = 1e-12 * max(1.0, abs(lo), abs(hi))
    if m > lo + grace or M < hi - grace:
        raise DomainError(
            f"[m, M] = [{m}, {M}] does not contain the spectrum [{lo}, {hi}]"
        )
    v = spectrum.eigenvectors
    la = hermitian_part((v * np.log(spectrum.eigenvalues)) @ v.conj().T)
    h2 = hermitian_part(h @ h)
    hla = hermitian_part(h @ la)
    h2la = hermitian_part(h2 @ la)
    lm, lM = np.log(m), np.log(M)
    eye = np.eye(h.shape[0])
    upper = np.block([
        [pulm.apply(lM * eye - la), pulm.apply(lM * h - hla)],
        [pulm.apply(lM * h - hla), pulm.apply(lM * h2 - h2la)],
    ])
    lower = np.block([
        [pulm.apply(la - lm * eye), pulm.apply(hla - lm * h)],
        [pulm.apply(hla - lm * h), pulm.apply(h2la - lm * h2)],
    ])
    return upper, lower


def build_normal_block(pulm: PositiveUnitalMap, a) -> np.ndarray:
    """Three-by-three moment block of a normal (possibly non-Hermitian) matrix.

    ``[[I, Phi(A), Phi(A*A)], [Phi(A*), Phi(AA*), Phi(A*^2 A)],
    [Phi(A*A), Phi(A* A^2), Phi(A*^2 A^2)]]``, assembled from direct matrix
    products; no eigendecomposition is involved.
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got {m.shape}")
    ms = m.conj().T
    comm = frobenius(ms @ m - m @ ms)
    scale = max(frobenius(m) ** 2, np.finfo(float).tiny)
    if comm > NORMALITY_RTOL * scale:
        raise DomainError(
            f"matrix is not normal: ||A*A - AA*||_F = {comm:.3e} "
            f"exceeds {NORMALITY_RTOL:.1e} * ||A||_F^2"
        )
    eye = np.eye(pulm.codomain_dim)
    return np.block([
        [eye, pulm.apply(m), pulm.apply(ms @ m)],
        [pulm.apply(ms), pulm.apply(m @ ms), pulm.apply(ms @ ms @ m)],
        [pulm.apply(ms @ m), pulm.apply(ms @ m @ m), pulm.apply(ms @ ms @ m @ m)],
    ])


@dataclass(frozen=True, eq=False)
class CheckResult:
    """One scalar/block inequality check: outcome, margin, and evidence.

    ``passed`` is None when the check's hypotheses do not hold for the given
    input ("not applicable"); that is never counted as a failure. ``margin``
    is the minimum eigenvalue of the tested difference (or the scalar slack),
    so slightly negative values within tolerance still pass. ``difference``
    holds the tested matrix itself (1x1 for scalar slacks) when applicable.
    """

    check: str
    description: str
    applicable: bool
    passed: bool | None
    margin: float
    difference: np.ndarray | None = None
    detail: str = ""


def _psd_result(check: str, description: str, difference: np.ndarray,
                tol: float) -> CheckResult:
    # Differences are Hermitian by construction; drop rounding asymmetry.
    tested = hermitian_part(difference)
    verdict = is_psd(tested, tol)
    return CheckResult(
        check=check,
        description=description,
        applicable=True,
        passed=verdict.passed,
        margin=verdict.min_eigenvalue,
        difference=tested,
    )


def _skip(check: str, description: str, reason: str) -> CheckResult:
    return CheckResult(
        check=check,
        description=description,
        applicable=False,
        passed=None,
        margin=0.0,
        detail=reason,
    )


def _is_hermitian(m: np.ndarray) -> bool:
    scale = max(frobenius(m), np.finfo(float).tiny)
    return frobenius(m - m.conj().T) <= 1e-8 * scale


def centered_fourth_moment_slack(functional: PositiveUnitalMap, a) -> float:
    """Slack of the centered fourth-moment bound for a normal matrix.

    With ``B = A - phi(A) I`` and ``|B|^2 = B* B``, returns
    ``phi(|B|^4) - |phi(B |B|^2)|^2 / phi(|B|^2) - phi(|B|^2)^2``. The middle
    term is taken as 0 when ``phi(|B|^2)`` vanishes (the numerator then
    vanishes too, by Cauchy-Schwarz).
    """
    if not functional.is_functional:
        raise ShapeError("centered fourth moment needs a functional (1x1 codomain)")
    m = as_matrix(a)
    mean = complex(functional.apply(m)[0, 0])
    b = m - mean * np.eye(m.shape[0])
    bsq = b.conj().T @ b
    second = float(functional.apply(bsq)[0, 0].real)
    fourth = float(functional.apply(bsq @ bsq)[0, 0].real)
    mixed = complex(functional.apply(b @ bsq)[0, 0])
    if second <= 1e-15 * max(1.0, frobenius(b) ** 2):
        ratio = 0.0
    else:
        ratio = abs(mixed) ** 2 / second
    return fourth - ratio - second * second


def scalar_checks(pulm: PositiveUnitalMap, a, m: float | None = None,
                  M: float | None = None,
                  tol: float = DEFAULT_PSD_TOL) -> list[CheckResult]:
    """Run the non-block inequality checks on one matrix under one map.

    For Hermitian input this covers the square-moment bound, the two
    variance bounds against the spectrum interval ``[m, M]``, the inverse
    moment bound (positive definite input), and the two Schur-complement
    bounds on the third moment (which need ``Phi(A) - mI`` respectively
    ``MI - Phi(A)`` to be safely invertible). For a functional it adds the
    centered fourth-moment bound, which also covers normal non-Hermitian
    input; all other checks are then reported as not applicable.
    """
    mat = as_matrix(a)
    if mat.shape[0] != mat.shape[1]:
        raise ShapeError(f"expected a square matrix, got {mat.shape}")
    results: list[CheckResult] = []
    hermitian = _is_hermitian(mat)

    d_kadison = "square moment dominates the squared moment"
    d_range = "variance at most the squared half-width of the spectrum interval"
    d_ends = "variance at most the product of distances to the interval endpoints"
    d_inv = "moment of the inverse dominates the inverse of the moment"
    d_lower3 = "third moment above its Schur-complement lower bound"
    d_upper3 = "third moment below its Schur-complement upper bound"
    d_fourth = "centered fourth moment dominates its two-term lower bound"

    if hermitian:
        h = symmetrize(mat)
        spectrum = hermitian_eig(h)
        lo, hi = spectrum.min, spectrum.max
        m = lo if m is None else float(m)
        M = hi if M is None else float(M)
        grace = 1e-12 * max(1.0, abs(lo), abs(hi))
        if m > lo + grace or M < hi - grace:
            raise DomainError(
                f"[m, M] = [{m}, {M}] does not contain the spectrum [{lo}, {hi}]"
            )
        eye = np.eye(pulm.codomain_dim)
        p1 = hermitian_part(pulm.apply(h))
        p2 = hermitian_part(pulm.apply(hermitian_part(h @ h)))
        p3 = hermitian_part(pulm.apply(hermitian_part(h @ h @ h)))
        variance = p2 - p1 @ p1

        results.append(_psd_result("kadison", d_kadison, variance, tol))
        half = (M - m) / 2.0
        results.append(_psd_result(
            "variance_range", d_range, half * half * eye - variance, tol))
        results.append(_psd_result(
            "variance_endpoints", d_ends,
            hermitian_part((p1 - m * eye) @ (M * eye - p1)) - variance, tol))

        if lo > 0.0:
            pinv = hermitian_part(pulm.apply(np.linalg.inv(h)))
            results.append(_psd_result(
                "inverse_moment", d_inv, pinv - np.linalg.inv(p1), tol))
        else:
            results.append(_skip(
                "inverse_moment", d_inv, "matrix is not positive definite"))

        strict = 1e-6
        low_gap = p1 - m * eye
        gap_min = hermitian_eig(low_gap).min
        if gap_min > strict * max(1.0, frobenius(low_gap)):
            x = p2 - m * p1
            bound = m * p2 + hermitian_part(x @ np.linalg.inv(low_gap) @ x)
            results.append(_psd_result("third_moment_lower", d_lower3, p3 - bound, tol))
        else:
            results.append(_skip(
                "third_moment_lower", d_lower3,
                "Phi(A) - mI is not safely invertible"))

        high_gap = M * eye - p1
        gap_min = hermitian_eig(high_gap).min
        if gap_min > strict * max(1.0, frobenius(high_gap)):
            y = M * p1 - p2
            bound = M * p2 - hermitian_part(y @ np.linalg.inv(high_gap) @ y)
            results.append(_psd_result("third_moment_upper", d_upper3, bound - p3, tol))
        else:
            results.append(_skip(
                "third_moment_upper", d_upper3,
                "MI - Phi(A) is not safely invertible"))
    else:
        for check, desc in (
            ("kadison", d_kadison),
            ("variance_range", d_range),
            ("variance_endpoints", d_ends),
            ("inverse_moment", d_inv),
            ("third_moment_lower", d_lower3),
            ("third_moment_upper", d_upper3),
        ):
            results.append(_skip(check, desc, "matrix is not Hermitian"))

    if pulm.is_functional:
        ms = mat.conj().T
        comm = frobenius(ms @ mat - mat @ ms)
        if comm <= NORMALITY_RTOL * max(frobenius(mat) ** 2, np.finfo(float).tiny):
            slack = centered_fourth_moment_slack(pulm, mat)
            fourth_scale = max(1.0, frobenius(mat) ** 4)
            results.append(CheckResult(
                check="centered_fourth_moment",
                description=d_fourth,
                applicable=True,
                passed=slack >= -tol * fourth_scale,
                margin=slack,
                difference=np.array([[slack]], dtype=np.complex128),
            ))
        else:
            results.append(_skip(
                "centered_fourth_moment", d_fourth, "matrix is not normal"))
    else:
        results.append(_skip(
            "centered_fourth_moment", d_fourth,
            "check needs a functional (1x1 codomain)"))
    return results


def scalar_shift_hankel(x: float, y: float, r: int) -> np.ndarray:
    """The (r+1)x(r+1) matrix ``[x^{i+j-1} - y x^{i+j-2}]`` for ``x >= y``.

    Rank one and positive semidefinite: it factors as the power vector outer
    product scaled by ``x - y``. Used as an independent oracle for the
    tensor-sum structure of the shifted moment blocks.
    """
    if x < y:
        raise DomainError(f"scalar shift Hankel needs x >= y, got x={x}, y={y}")
    v = np.array([float(x) ** k for k in range(r + 1)])
    return (x - y) * np.outer(v, v)


def scalar_bracket_hankel(x: float, y: float, z: float, r: int) -> np.ndarray:
    """The (r+1)x(r+1) matrix ``[y^{i+j-2} (x-y)(y-z)]`` for ``x >= y >= z``."""
    if not (x >= y >= z):
        raise DomainError(
            f"scalar bracket Hankel needs x >= y >= z, got {x}, {y}, {z}"
        )
    v = np.array([float(y) ** k for k in range(r + 1)])
    return (x - y) * (y - z) * np.outer(v, v)
