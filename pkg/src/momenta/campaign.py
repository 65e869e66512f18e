"""Seeded verification campaigns over random instances.

An instance couples a Hermitian test matrix (plus a shifted positive
definite variant), a map variant, and a block order. The suites below run
every inequality the package implements against such instances and emit
flat records that the command line interface serializes; the acceptance
tests drive the same functions directly.

Records carry the seed of their instance so any outcome can be reproduced
in isolation. A record whose hypotheses fail reports ``passed=None``
("skipped"), never a failure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import eigenbounds, moments
from .errors import DomainError
from .linalg import (
    frobenius,
    hermitian_eig,
    hermitian_part,
    hermitian_with_spectrum,
    is_psd,
    random_normal_matrix,
)
from .maps import MAP_KINDS, NormalizedTrace, PositiveUnitalMap, random_map

#: Minimum eigenvalue of the shifted positive definite variant.
PD_FLOOR = 0.1

#: Map kinds cycled by the normal-matrix suite (block and functional cases).
NORMAL_MAP_KINDS = ("compression", "vector_state")

_ALWAYS_KINDS = ("hankel", "lower_shift", "upper_shift", "range_product")
_PD_KINDS = ("hankel_shift1",) + moments.PD_BLOCK_KINDS
_PD_EXTRA_CHECKS = ("refinement_chain_outer", "refinement_chain_inner",
                    "log_deficit", "log_endpoint_upper", "log_endpoint_lower")

_DESCRIPTIONS = {
    "hankel": "moment Hankel block matrix is PSD",
    "hankel_shift1": "odd-shifted moment Hankel is PSD for nonnegative matrices",
    "lower_shift": "moment Hankel weighted by the distance above m is PSD",
    "upper_shift": "moment Hankel weighted by the distance below M is PSD",
    "lower_shift_inv": "inverse-shifted lower-weighted Hankel is PSD",
    "upper_shift_inv": "inverse-shifted upper-weighted Hankel is PSD",
    "range_product": "Hankel weighted by (x - m)(M - x) is PSD",
    "gap_product": "Hankel weighted by an eigenvalue-gap quadratic is PSD",
    "range_product_inv": "inverse-shifted range-weighted Hankel is PSD",
    "centered_lower_shift": "centered-moment Hankel weighted above the lower endpoint is PSD",
    "centered_upper_shift": "centered-moment Hankel weighted below the upper endpoint is PSD",
    "refinement_chain_outer": "even-moment Hankel dominates its refinement",
    "refinement_chain_inner": "refinement of the even-moment Hankel is PSD",
    "log_deficit": "block matrix of x - log x moments is PSD",
    "log_endpoint_upper": "log-distance block at the upper endpoint is PSD",
    "log_endpoint_lower": "log-distance block at the lower endpoint is PSD",
    "normal_block": "three-by-three moment block of a normal matrix is PSD",
    "route_agreement": "spectral and direct moment routes agree",
    "shift_sum_identity": "lower plus upper shifted blocks equal (M - m) times the Hankel",
    "determinant_identity": "shifted-Hankel determinant matches the cubic expansion",
    "tensor_reconstruction": "moment Hankel equals its weighted scalar-Hankel sum",
    "bound_min_upper": "smallest eigenvalue respects its cubic upper bound",
    "bound_max_lower": "largest eigenvalue respects its cubic lower bound",
    "cubic_sign_min": "cubic is non-positive at the smallest centered eigenvalue",
    "cubic_sign_max": "cubic is non-negative at the largest centered eigenvalue",
}


@dataclass(frozen=True)
class CheckRecord:
    """One verified statement: identifier, outcome, margin, instance seed."""

    check: str
    citation: str
    passed: bool | None
    margin: float
    seed: int


@dataclass(frozen=True)
class Instance:
    """One corpus element: matrices, map, and block order."""

    index: int
    seed: int
    n: int
    r: int
    kind: str
    matrix: np.ndarray
    matrix_pd: np.ndarray
    pulm: PositiveUnitalMap


def _describe(check: str) -> str:
    base = check[4:] if check.startswith("psd_") else check
    base = base[:-3] if base.endswith("_pd") else base
    return _DESCRIPTIONS.get(base, base)


def _record(check: str, seed: int, passed: bool | None,
            margin: float, citation: str | None = None) -> CheckRecord:
    return CheckRecord(
        check=check, citation=citation or _describe(check),
        passed=None if passed is None else bool(passed),
        margin=float(margin), seed=seed,
    )


def _skip(check: str, seed: int) -> CheckRecord:
    return _record(check, seed, None, 0.0)


def _psd_record(check: str, seed: int, matrix: np.ndarray,
                tol: float) -> CheckRecord:
    verdict = is_psd(hermitian_part(matrix), tol)
    return _record(check, seed, verdict.passed, verdict.min_eigenvalue)


def corpus(count: int = 200, seed: int = 42, n_range: tuple[int, int] = (2, 6),
           r_max: int = 3) -> list[Instance]:
    """Deterministic instance corpus cycling dimensions, maps, and orders.

    Test matrices get spectra drawn uniformly from [-1.5, 1.5] so that the
    high moment powers stay well inside double precision; the positive
    definite variant is the same matrix shifted to put its smallest
    eigenvalue at ``PD_FLOOR``.
    """
    n_lo, n_hi = n_range
    if n_lo < 1 or n_hi < n_lo:
        raise ValueError(f"bad dimension range {n_range}")
    out = []
    for i in range(count):
        inst_seed = seed + 7919 * i
        n = n_lo + i % (n_hi - n_lo + 1)
        kind = MAP_KINDS[i % len(MAP_KINDS)]
        r = i % (r_max + 1)
        rng = np.random.default_rng(inst_seed)
        lam = np.sort(rng.uniform(-1.5, 1.5, n))
        a = hermitian_with_spectrum(lam, inst_seed + 1)
        a_pd = a + (PD_FLOOR - lam[0]) * np.eye(n)
        k = int(rng.integers(1, n + 1))
        pulm = random_map(kind, n, k, inst_seed + 2)
        out.append(Instance(
            index=i, seed=inst_seed, n=n, r=r, kind=kind,
            matrix=a, matrix_pd=a_pd, pulm=pulm,
        ))
    return out


def normal_corpus(count: int = 200, seed: int = 42,
                  n_range: tuple[int, int] = (2, 6)) -> list[tuple]:
    """Corpus of normal (generally non-Hermitian) matrices for the 3x3 block.

    Cycles compressions and vector states, the variants the normal-matrix
    checks target. Yields ``(seed, matrix, map)`` triples.
    """
    n_lo, n_hi = n_range
    out = []
    for i in range(count):
        inst_seed = seed + 104729 + 7919 * i
        n = n_lo + i % (n_hi - n_lo + 1)
        kind = NORMAL_MAP_KINDS[i % len(NORMAL_MAP_KINDS)]
        a = random_normal_matrix(n, inst_seed)
        rng = np.random.default_rng(inst_seed + 1)
        k = int(rng.integers(1, n + 1))
        pulm = random_map(kind, n, k, inst_seed + 2)
        out.append((inst_seed, a, pulm))
    return out


def _psd_base_records(pulm, matrix, r, seed, tol) -> list[CheckRecord]:
    table = moments.moment_table(pulm, matrix, 0, 2 * r + 2)
    records = []
    for kind in _ALWAYS_KINDS:
        block = moments.build_block(kind, table, r)
        records.append(_psd_record(f"psd_{kind}", seed, block.assembled, tol))
    distinct = moments.distinct_eigenvalues(hermitian_eig(matrix).eigenvalues)
    for g in range(2, distinct.size + 1):
        try:
            block = moments.build_block("gap_product", table, r,
                                        eigenvalues=distinct, gap_index=g)
        except DomainError:
            records.append(_skip("psd_gap_product", seed))
            continue
        records.append(_psd_record("psd_gap_product", seed, block.assembled, tol))
    return records


def _psd_pd_records(pulm, matrix_pd, r, seed, tol) -> list[CheckRecord]:
    table_pd = moments.moment_table(pulm, matrix_pd, -1, 2 * r + 2)
    records = []
    for kind in _PD_KINDS:
        block = moments.build_block(kind, table_pd, r)
        records.append(_psd_record(f"psd_{kind}", seed, block.assembled, tol))
    return records


def _pd_extra_records(pulm, matrix_pd, seed, tol) -> list[CheckRecord]:
    table = moments.moment_table(pulm, matrix_pd, 0, 4)
    outer, inner = moments.build_refinement_chain(table)
    records = [
        _psd_record("refinement_chain_outer", seed, outer - inner, tol),
        _psd_record("refinement_chain_inner", seed, inner, tol),
        _psd_record("log_deficit", seed,
                    moments.build_log_deficit_block(pulm, matrix_pd), tol),
    ]
    upper, lower = moments.build_log_endpoint_blocks(pulm, matrix_pd)
    records.append(_psd_record("log_endpoint_upper", seed, upper, tol))
    records.append(_psd_record("log_endpoint_lower", seed, lower, tol))
    return records


def _centered_records(functional, matrix, r, seed, tol) -> list[CheckRecord]:
    mean = float(functional.apply(matrix)[0, 0].real)
    lam = hermitian_eig(matrix).eigenvalues
    centered = matrix - mean * np.eye(matrix.shape[0])
    ctable = moments.moment_table(
        functional, centered, 0, 2 * r + 2,
        m=float(lam[0] - mean), M=float(lam[-1] - mean))
    records = []
    for kind, name in (("lower_shift", "centered_lower_shift"),
                       ("upper_shift", "centered_upper_shift")):
        block = moments.build_block(kind, ctable, r)
        records.append(_psd_record(name, seed, block.assembled, tol))
    return records


def psd_suite(inst: Instance, tol: float = 1e-9) -> list[CheckRecord]:
    """PSD verdicts for every block construction on one instance."""
    return (_psd_base_records(inst.pulm, inst.matrix, inst.r, inst.seed, tol)
            + _psd_pd_records(inst.pulm, inst.matrix_pd, inst.r, inst.seed, tol))


def scalar_suite(inst: Instance, tol: float = 1e-9) -> list[CheckRecord]:
    """Scalar-form and two-block inequality checks on one instance."""
    records = []
    for res in moments.scalar_checks(inst.pulm, inst.matrix, tol=tol):
        records.append(_record(res.check, inst.seed, res.passed, res.margin,
                               res.description))
    for res in moments.scalar_checks(inst.pulm, inst.matrix_pd, tol=tol):
        records.append(_record(f"{res.check}_pd", inst.seed,
                               res.passed, res.margin, res.description))
    records.extend(_pd_extra_records(inst.pulm, inst.matrix_pd, inst.seed, tol))
    if inst.pulm.is_functional:
        records.extend(_centered_records(inst.pulm, inst.matrix, inst.r,
                                         inst.seed, tol))
    return records


def _route_error(pulm, matrix, k_min, k_max) -> float:
    spectral = moments.moment_table(pulm, matrix, k_min, k_max, route="spectral")
    direct = moments.moment_table(pulm, matrix, k_min, k_max, route="direct")
    err = 0.0
    for k in range(k_min, k_max + 1):
        s, d = spectral.power(k), direct.power(k)
        err = max(err, frobenius(s - d) / max(1.0, frobenius(s)))
    return err


def _determinant_identity_error(cm: eigenbounds.CentralMoments) -> float:
    """Worst relative mismatch of determinant vs cubic at five shifts."""
    sigma = np.sqrt(max(cm.b2, 0.0)) + 1e-3
    b2, b3, b4, b5 = cm.b2, cm.b3, cm.b4, cm.b5
    gamma = eigenbounds.gamma_value(cm)
    beta1 = -b4 * b3 - b2 ** 2 * b3 + b2 * b5
    beta2 = -b3 * b5 + b4 ** 2 + b3 ** 2 * b2 - b2 ** 2 * b4
    beta3 = 2.0 * b2 * b3 * b4 - b2 ** 2 * b5 - b3 ** 3
    worst = 0.0
    for a in (-2.0 * sigma, -sigma, 0.0, sigma, 2.0 * sigma):
        det = eigenbounds.determinant_oracle(cm, a)
        poly = ((gamma * a + beta1) * a + beta2) * a + beta3
        worst = max(worst, abs(det - poly) / max(1.0, abs(det)))
    return worst


def oracle_suite(inst: Instance, include_pd: bool = True) -> list[CheckRecord]:
    """Cross-checks between independent computation routes."""
    records = []
    r = inst.r
    err = _route_error(inst.pulm, inst.matrix, 0, 2 * r + 2)
    if include_pd:
        err = max(err, _route_error(inst.pulm, inst.matrix_pd, -1,
                                    max(2 * r + 2, 4)))
    records.append(_record("route_agreement", inst.seed,
                           err <= 1e-8, 1e-8 - err))

    table = moments.moment_table(inst.pulm, inst.matrix, 0, 2 * r + 2)
    low = moments.build_block("lower_shift", table, r).assembled
    high = moments.build_block("upper_shift", table, r).assembled
    hank = moments.build_block("hankel", table, r).assembled
    err = float(np.max(np.abs(low + high - (table.M - table.m) * hank)))
    records.append(_record("shift_sum_identity", inst.seed,
                           err <= 1e-10, 1e-10 - err))

    cm = eigenbounds.central_moments(NormalizedTrace(inst.n), inst.matrix)
    worst = _determinant_identity_error(cm)
    records.append(_record("determinant_identity", inst.seed,
                           worst <= 1e-8, 1e-8 - worst))

    if inst.pulm.is_functional:
        spectrum = hermitian_eig(inst.matrix)
        weights = [float(inst.pulm.apply(np.outer(v, v.conj()))[0, 0].real)
                   for v in spectrum.eigenvectors.T]
        acc = np.zeros((r + 1, r + 1))
        for lam_j, w in zip(spectrum.eigenvalues, weights):
            v = np.array([lam_j ** k for k in range(r + 1)])
            acc += w * np.outer(v, v)
        err = float(np.max(np.abs(acc - hank.real)))
        records.append(_record("tensor_reconstruction", inst.seed,
                               err <= 1e-9, 1e-9 - err))
    return records


def bounds_suite(inst: Instance, tol: float = 1e-8) -> list[CheckRecord]:
    """Validity of the cubic eigenvalue bounds under the normalized trace."""
    records = []
    functional = NormalizedTrace(inst.n)
    report = eigenbounds.spectral_bounds(functional, inst.matrix)
    lam = hermitian_eig(inst.matrix).eigenvalues
    if report.degenerate:
        for check in ("bound_min_upper", "bound_max_lower",
                      "cubic_sign_min", "cubic_sign_max"):
            records.append(_skip(check, inst.seed))
        return records
    records.append(_record(
        "bound_min_upper", inst.seed,
        lam[0] <= report.lambda_min_upper + tol,
        report.lambda_min_upper - lam[0]))
    records.append(_record(
        "bound_max_lower", inst.seed,
        lam[-1] >= report.lambda_max_lower - tol,
        lam[-1] - report.lambda_max_lower))
    c2, c1, c0 = report.cubic
    scale = max(1.0, abs(c2), abs(c1), abs(c0))
    mu_min = lam[0] - report.mean
    mu_max = lam[-1] - report.mean
    p_min = ((mu_min + c2) * mu_min + c1) * mu_min + c0
    p_max = ((mu_max + c2) * mu_max + c1) * mu_max + c0
    records.append(_record("cubic_sign_min", inst.seed,
                           p_min <= tol * scale, -p_min))
    records.append(_record("cubic_sign_max", inst.seed,
                           p_max >= -tol * scale, p_max))
    return records


def normal_suite(seed: int, matrix: np.ndarray, pulm: PositiveUnitalMap,
                 tol: float = 1e-9) -> list[CheckRecord]:
    """Normal-matrix block and centered fourth-moment checks."""
    records = [_psd_record(
        "normal_block", seed, moments.build_normal_block(pulm, matrix), tol)]
    if pulm.is_functional:
        slack = moments.centered_fourth_moment_slack(pulm, matrix)
        scale = max(1.0, frobenius(matrix) ** 4)
        records.append(_record("centered_fourth_moment", seed,
                               slack >= -tol * scale, slack))
    return records


def run_campaign(count: int = 200, seed: int = 42,
                 n_range: tuple[int, int] = (2, 6), r_max: int = 3,
                 tol: float = 1e-9) -> list[CheckRecord]:
    """Full random campaign: every suite over both corpora."""
    records = []
    for inst in corpus(count, seed, n_range, r_max):
        records.extend(psd_suite(inst, tol))
        records.extend(scalar_suite(inst, tol))
        records.extend(oracle_suite(inst))
        records.extend(bounds_suite(inst))
    for nseed, matrix, pulm in normal_corpus(count, seed, n_range):
        records.extend(normal_suite(nseed, matrix, pulm, tol))
    return records


def single_matrix_records(matrix: np.ndarray, pulm: PositiveUnitalMap,
                          seed: int, r_max: int = 3,
                          tol: float = 1e-9) -> list[CheckRecord]:
    """File-mode verification: run every applicable check on one matrix.

    Non-Hermitian but normal input gets the normal-matrix checks; checks
    whose hypotheses fail for the given matrix are recorded as skipped,
    never as failures.
    """
    m = np.asarray(matrix, dtype=np.complex128)
    n = m.shape[0]
    scale = max(frobenius(m), np.finfo(float).tiny)
    hermitian = frobenius(m - m.conj().T) <= 1e-8 * scale
    comm = frobenius(m.conj().T @ m - m @ m.conj().T)
    normal = comm <= moments.NORMALITY_RTOL * max(frobenius(m) ** 2,
                                                  np.finfo(float).tiny)
    records: list[CheckRecord] = []
    if hermitian:
        h = (m + m.conj().T) / 2.0
        pd = hermitian_eig(h).min > 0.0
        records.extend(_psd_base_records(pulm, h, r_max, seed, tol))
        if pd:
            records.extend(_psd_pd_records(pulm, h, r_max, seed, tol))
            records.extend(_pd_extra_records(pulm, h, seed, tol))
        else:
            for kind in _PD_KINDS:
                records.append(_skip(f"psd_{kind}", seed))
            for check in _PD_EXTRA_CHECKS:
                records.append(_skip(check, seed))
        for res in moments.scalar_checks(pulm, h, tol=tol):
            records.append(_record(res.check, seed, res.passed, res.margin,
                                   res.description))
        if pulm.is_functional:
            records.extend(_centered_records(pulm, h, r_max, seed, tol))
        inst = Instance(index=0, seed=seed, n=n, r=r_max, kind="file",
                        matrix=h, matrix_pd=h, pulm=pulm)
        records.extend(oracle_suite(inst, include_pd=pd))
        records.extend(bounds_suite(inst))
        records.extend(normal_suite(seed, h, pulm, tol))
    elif normal:
        records.extend(normal_suite(seed, m, pulm, tol))
        for res in moments.scalar_checks(pulm, m, tol=tol):
            records.append(_record(res.check, seed, res.passed, res.margin,
                                   res.description))
    else:
        # Neither Hermitian nor normal: nothing in the catalog applies.
        for check in ("psd_hankel", "normal_block", "kadison",
                      "centered_fourth_moment"):
            records.append(_skip(check, seed))
    return records
