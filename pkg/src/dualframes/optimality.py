"""Optimality classes of dual pairs and the corank-1 dual family.

Membership tests compare measured values to the known optimal values n/N
(single erasure) and n/N + sqrt((nN - n^2) / (N^2 (N - 1))) (two erasures),
so no optimisation over dual pairs is needed to classify a pair.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .erasure import (
    MeasureParams, complex_pair_count, measure_report, round_sig,
    spectral_measure)
from .errors import (
    DualFramesError, InvariantViolation, NotCorank1, NotIndependent, PreconditionError)
from .frame import canonical_dual, gramian, make_frame, verify_dual
from .linalg import null_space_basis, sym_eig

UNIFORM_TOL = 1e-8
CLASS_TOL = 1e-9


@dataclass(frozen=True)
class UniformityVerdict:
    one_uniform: bool
    two_uniform: bool
    diagonal_value: float  # mean of <f_i, g_i>; equals n/N when one_uniform
    offdiag_product: float | None  # common <f_i,g_j><f_j,g_i> when two_uniform


def uniformity(pair, tol=UNIFORM_TOL):
    a = pair.cross_gramian
    N, n = pair.count, pair.dim
    diag = np.diag(a)
    one = bool(np.all(np.abs(diag - n / N) <= tol))
    if not one or N < 2:
        return UniformityVerdict(one, one, float(np.mean(diag)), None)
    iu, ju = np.triu_indices(N, 1)
    prods = a[iu, ju] * a[ju, iu]
    const = float(np.mean(prods))
    two = bool(np.all(np.abs(prods - const) <= tol))
    if not two:
        return UniformityVerdict(True, False, float(np.mean(diag)), None)
    # the cross-Gramian is idempotent with trace n, which pins the constant
    forced = (n * N - n * n) / (N * N * (N - 1))
    if abs(const - forced) > tol:
        raise InvariantViolation(
            f"2-uniform product {const:.12g} differs from (nN-n^2)/(N^2(N-1)) = {forced:.12g}")
    return UniformityVerdict(True, True, float(np.mean(diag)), const)


def classify(pair, params=MeasureParams(), tol=CLASS_TOL, uniform_tol=UNIFORM_TOL):
    """Erasure report for ``pair`` with optimality flags filled in.

    Flags: ``e1_optimal`` (E_1^p = n/N), ``e2_attains_bound`` (E_2^p equals
    the two-erasure lower bound), ``o1_optimal`` (O_1^p = n/N),
    ``one_uniform``, ``two_uniform`` and ``complex_modulus_pairs``, the number
    of 2x2 error blocks whose eigenvalues form a complex pair.
    """
    report = measure_report(pair, params)
    verdict = uniformity(pair, uniform_tol)
    o1_optimal = abs(report.o1 - report.delta1) <= tol
    if o1_optimal:
        # O_1 within tol of n/N only pins the diagonal to about sqrt(tol)
        loose = max(uniform_tol, 10.0 * math.sqrt(tol))
        diag = np.diag(pair.cross_gramian)
        if np.any(np.abs(diag - report.delta1) > loose):
            raise InvariantViolation("O_1-optimal pair is not 1-uniform")
    e2_hit = report.e2 is not None and abs(report.e2 - report.delta2_lower) <= tol
    report.flags = {
        "e1_optimal": abs(report.e1 - report.delta1) <= tol,
        "e2_attains_bound": bool(e2_hit),
        "o1_optimal": bool(o1_optimal),
        "one_uniform": verdict.one_uniform,
        "two_uniform": verdict.two_uniform,
        "complex_modulus_pairs": complex_pair_count(pair) if pair.count >= 2 else 0,
    }
    return report


# -- corank-1 dual family -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class DualFamily:
    """All duals of a frame with N = n + 1: g_i = S^{-1} f_i + c_i h."""

    frame: object
    base: object  # canonical dual frame
    kernel_coeffs: np.ndarray  # sum_i c_i f_i = 0, c[pivot] = 1
    pivot: int

    @property
    def dim(self):
        return self.frame.dim


def dual_family(f, tol=1e-10):
    if f.count != f.dim + 1:
        raise NotCorank1(f"need N = n + 1, got N = {f.count}, n = {f.dim}")
    null = null_space_basis(gramian(f), tol)
    if null.shape[1] != 1:
        raise NotCorank1(f"Gramian null space has dimension {null.shape[1]}, expected 1")
    c = null[:, 0]
    pivot = int(np.argmax(np.abs(c) > 1e-8 * np.max(np.abs(c))))
    c = c / c[pivot]
    relation = np.linalg.norm(f.synthesis @ c)
    if relation > 1e-8 * max(1.0, np.linalg.norm(f.synthesis)):
        raise InvariantViolation(f"kernel relation residual {relation:.3e}")
    return DualFamily(f, canonical_dual(f).g, c, pivot)


def dual_from_parameter(fam, h):
    h = np.asarray(h, dtype=float).reshape(-1)
    if h.size != fam.dim:
        raise PreconditionError(f"h must have {fam.dim} entries, got {h.size}")
    syn = fam.base.synthesis + np.outer(h, fam.kernel_coeffs)
    try:
        return verify_dual(fam.frame, make_frame(syn))
    except DualFramesError as exc:
        raise InvariantViolation(f"family member failed dual verification: {exc}") from exc


def parameter_of_dual(fam, g):
    """Least-squares h with g_i = base_i + c_i h; returns (h, residual)."""
    diff = g.synthesis - fam.base.synthesis
    c = fam.kernel_coeffs
    h = diff @ c / (c @ c)
    return h, float(np.linalg.norm(diff - np.outer(h, c)))


def check_independent(f, k, tol=1e-10):
    """Raise NotIndependent unless every k of the vectors are independent.

    Only k = N - 1 (one vector dropped) is enumerated here, which is all the
    closed-form single-erasure value needs.
    """
    if k != f.count - 1:
        raise PreconditionError("only (N-1)-independence is checked")
    syn = f.synthesis
    for drop in range(f.count):
        keep = [i for i in range(f.count) if i != drop]
        vals = sym_eig(syn[:, keep].T @ syn[:, keep]).values
        if vals[-1] <= tol * max(vals[0], 1e-300):
            raise NotIndependent(f"vectors {keep} are linearly dependent", keep)


def closed_form_E1_canonical(f, params=MeasureParams()):
    """E_1^p of (F, S^{-1}F) from the kernel relation sum c_i f_i = 0.

    Valid for (N-1)-independent frames with N = n + 1, where
    <f_i, S^{-1} f_i> = 1 - c_i^2 / sum_j c_j^2.
    """
    fam = dual_family(f)
    check_independent(f, f.count - 1)
    c = fam.kernel_coeffs
    terms = 1.0 - c**2 / np.sum(c**2)
    p = float(params.p)
    return float(np.mean(terms**p) ** (1.0 / p))


# -- search over the dual family -----------------------------------------------

@dataclass
class SearchResult:
    best_h: np.ndarray
    best_value: float
    value_at_zero: float
    attained_at_zero: bool
    min_gap: float  # min over sampled |h| > strict_radius of value(h) - value(0)
    grid_points: int
    random_points: int
    seed: int
    radius: float
    steps: int
    strict_radius: float
    trace: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self):
        return {
            "best_h": [round_sig(x) for x in self.best_h],
            "best_value": round_sig(self.best_value),
            "value_at_zero": round_sig(self.value_at_zero),
            "attained_at_zero": bool(self.attained_at_zero),
            "min_gap": round_sig(self.min_gap),
            "evidence": "finite sample",
            "grid_points": self.grid_points,
            "random_points": self.random_points,
            "radius": round_sig(self.radius),
            "steps": self.steps,
            "strict_radius": round_sig(self.strict_radius),
            "seed": self.seed,
        }


def family_e1_values(fam, hs, p):
    """E_1^p of the family member for each row of ``hs``."""
    f = fam.frame.synthesis
    base_diag = np.sum(fam.base.synthesis * f, axis=0)
    diag = base_diag + (hs @ f) * fam.kernel_coeffs
    return np.mean(np.abs(diag) ** p, axis=1) ** (1.0 / p)


def _grid(dim, radius, steps):
    half = (steps - 1) // 2
    axis = radius * (np.arange(steps) - half) / half if half else np.zeros(1)
    mesh = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def _ball(rng, dim, radius, count):
    x = rng.standard_normal((count, dim))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x * (radius * rng.random(count) ** (1.0 / dim))[:, None]


def search_optimal_dual(f, params=MeasureParams(), radius=1.0, steps=11, samples=1000,
                        seed=0, grid_max_dim=4, strict_radius=1e-6, keep_trace=False):
    """Scan E_1^p over the dual family of a corank-1 frame.

    A full grid over [-radius, radius]^n (when n <= grid_max_dim) plus
    ``samples`` uniform points in the ball of that radius. Ties in value go
    to the smallest |h|. ``attained_at_zero`` holds when the minimum is the
    canonical dual's value (within 1e-9) and every sampled h with
    |h| > strict_radius scores strictly higher. This is evidence from a finite
    sample, not a certificate.
    """
    if not radius > 0:
        raise PreconditionError(f"radius must be positive, got {radius}")
    if steps < 1 or steps % 2 == 0:
        raise PreconditionError(f"steps per axis must be odd so h = 0 is a grid point, got {steps}")
    fam = dual_family(f)
    dim = fam.dim
    p = float(params.p)
    parts = [np.zeros((1, dim))]
    grid_points = 0
    if dim <= grid_max_dim:
        grid = _grid(dim, radius, steps)
        grid_points = grid.shape[0]
        parts.append(grid)
    rng = np.random.default_rng(seed)
    parts.append(_ball(rng, dim, radius, samples))
    hs = np.concatenate(parts)
    values = family_e1_values(fam, hs, p)
    norms = np.linalg.norm(hs, axis=1)

    v0 = float(values[0])
    best = np.flatnonzero(values == values.min())
    pick = best[np.argmin(norms[best])]
    outside = norms > strict_radius
    gaps = values[outside] - v0
    min_gap = float(gaps.min()) if gaps.size else math.inf
    attained = abs(float(values[pick]) - v0) <= 1e-9 and bool(np.all(gaps > 0))

    # the vectorised scan must agree with the direct measure at the minimiser
    direct = spectral_measure(dual_from_parameter(fam, hs[pick]), 1, params)
    if abs(direct - values[pick]) > 1e-9 * max(1.0, direct):
        raise InvariantViolation(f"family scan {values[pick]!r} != direct measure {direct!r}")

    trace = np.column_stack([hs, values]) if keep_trace else None
    return SearchResult(
        best_h=hs[pick].copy(), best_value=float(values[pick]), value_at_zero=v0,
        attained_at_zero=attained, min_gap=min_gap, grid_points=grid_points,
        random_points=samples, seed=int(seed), radius=float(radius), steps=int(steps),
        strict_radius=float(strict_radius), trace=trace)
