"""Erasure error operators and their averaged size measures.

For a dual pair (F, G) and an erased index set L, the error operator is
E_L = sum_{i in L} <., f_i> g_i. Its nonzero spectrum coincides with that of
the principal submatrix of the cross-Gramian a_ij = <g_i, f_j> on L, which is
what the spectral-radius measures are computed from.

Indices are 0-based throughout.
"""
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import CombinatorialLimit, DomainError, NoConvergence
from .linalg import QR_ITER_FACTOR, operator_norm, spectral_radius

MAX_SUBSETS = 10**6
SIG_DIGITS = 15


@dataclass(frozen=True)
class MeasureParams:
    """Exponent of the p-averaged measures; p > 1 unless ``allow_p1``."""

    p: float = 2.0
    allow_p1: bool = False

    def __post_init__(self):
        p = float(self.p)
        if not math.isfinite(p):
            raise DomainError(f"p must be finite, got {self.p}")
        if p > 1.0:
            return
        if p == 1.0 and self.allow_p1:
            return
        raise DomainError(f"p must exceed 1 (p = 1 needs allow_p1), got {self.p}")


def erasure_set(indices, count):
    """Validate and sort an erasure index set for a frame of ``count`` vectors."""
    idx = tuple(sorted(int(i) for i in indices))
    if not idx:
        raise DomainError("erasure set must be non-empty")
    if len(set(idx)) != len(idx):
        raise DomainError(f"repeated index in erasure set {idx}")
    if idx[0] < 0 or idx[-1] >= count:
        raise DomainError(f"erasure set {idx} outside 0..{count - 1}")
    return idx


def error_submatrix(pair, erased):
    idx = list(erasure_set(erased, pair.count))
    return pair.cross_gramian[np.ix_(idx, idx)]


def error_operator(pair, erased):
    """The n x n matrix of E_L = Theta_G* D Theta_F."""
    idx = list(erasure_set(erased, pair.count))
    return pair.g.synthesis[:, idx] @ pair.f.synthesis[:, idx].T


def erasure_spectral_radius(pair, erased):
    sub = error_submatrix(pair, erased)
    if sub.shape[0] == 1:
        return abs(float(sub[0, 0]))
    return spectral_radius(sub)


def two_erasure_closed_form(a_ii, a_jj, a_ij, a_ji):
    """Spectral radius of [[a_ii, a_ji], [a_ij, a_jj]] from the quadratic formula.

    A negative discriminant gives a complex-conjugate pair; its common modulus
    is returned.
    """
    d = (a_ii - a_jj) ** 2 + 4.0 * a_ij * a_ji
    half = 0.5 * (a_ii + a_jj)
    if d >= 0:
        root = 0.5 * math.sqrt(d)
        return max(abs(half + root), abs(half - root))
    return math.sqrt(half * half + 0.25 * abs(d))


def erasure_operator_norm(pair, erased):
    return operator_norm(error_operator(pair, erased))


def subset_spectral_radii(pair, k, max_subsets=MAX_SUBSETS):
    """Spectral radius for every size-k erasure set, lexicographic order."""
    n = pair.count
    if not 1 <= k <= n:
        raise DomainError(f"k must lie in 1..{n}, got {k}")
    count = math.comb(n, k)
    if count > max_subsets:
        raise CombinatorialLimit(f"C({n}, {k}) = {count} exceeds {max_subsets}")
    a = np.ascontiguousarray(pair.cross_gramian, dtype=float)
    radii, failed = _kernels.subset_spectral_radii(a, k, count, QR_ITER_FACTOR)
    if failed >= 0:
        raise NoConvergence(f"QR failed on erasure subset #{failed} of size {k}")
    return radii


def _p_mean(values, p):
    values = np.asarray(values, dtype=float)
    return float(np.mean(values**p) ** (1.0 / p))


def spectral_measure(pair, k, params=MeasureParams()):
    """E_k^p: p-power mean of erasure spectral radii over all size-k sets."""
    return _p_mean(subset_spectral_radii(pair, k), float(params.p))


def single_erasure_norm_products(pair):
    """||f_i|| * ||g_i|| for every i."""
    return np.linalg.norm(pair.f.synthesis, axis=0) * np.linalg.norm(pair.g.synthesis, axis=0)


def opnorm_measure_O1(pair, params=MeasureParams()):
    """O_1^p from the norm products ||f_i|| ||g_i||."""
    return _p_mean(single_erasure_norm_products(pair), float(params.p))


@dataclass(frozen=True)
class Bounds:
    delta1: float
    delta2_lower: float | None


def bounds(N, n):
    """Optimal single-erasure value n/N and the two-erasure reference value.

    ``delta2_lower`` is n/N + sqrt((nN - n^2) / (N^2 (N - 1))), the value of
    E_2^p at any 2-uniform pair. It is None when N = 1 (no two-element
    erasures exist). 1-uniform pairs with unequal off-diagonal products can
    fall below it, so it is not a lower bound in general.
    """
    if not (isinstance(N, (int, np.integer)) and isinstance(n, (int, np.integer))):
        raise DomainError("N and n must be integers")
    if not 1 <= n <= N:
        raise DomainError(f"need 1 <= n <= N, got N={N}, n={n}")
    delta1 = n / N
    if N < 2:
        return Bounds(delta1, None)
    return Bounds(delta1, delta1 + math.sqrt((n * N - n * n) / (N * N * (N - 1))))


def lemma35_min(a, c, r, p):
    """r * (a + sqrt(c / r))**p, the value of sum_i |a + sqrt(x_i)|^p at x_i = c / r.

    This is the claimed infimum over the hyperplane sum x_i = c. It is not one
    in general: x -> (a + sqrt x)^p is concave near 0, so putting all of c in a
    single coordinate is often smaller (a = c = 1, r = p = 2 gives 5 < 5.83).
    """
    if not a > 0:
        raise DomainError(f"a must be positive, got {a}")
    if not c >= 0:
        raise DomainError(f"c must be non-negative, got {c}")
    if int(r) != r or r < 1:
        raise DomainError(f"r must be a positive integer, got {r}")
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p}")
    return r * (a + math.sqrt(c / r)) ** p


def complex_pair_count(pair):
    """Number of index pairs whose 2x2 error block has complex eigenvalues."""
    a = pair.cross_gramian
    diag = np.diag(a)
    iu, ju = np.triu_indices(pair.count, 1)
    disc = (diag[iu] - diag[ju]) ** 2 + 4.0 * a[iu, ju] * a[ju, iu]
    return int(np.sum(disc < 0))


def round_sig(x, digits=SIG_DIGITS):
    if x is None:
        return None
    return float(f"{float(x):.{digits}g}")


@dataclass
class ErasureReport:
    N: int
    n: int
    p: float
    e1: float
    e2: float | None
    o1: float
    delta1: float
    delta2_lower: float | None
    flags: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "N": self.N,
            "n": self.n,
            "p": round_sig(self.p),
            "e1": round_sig(self.e1),
            "e2": round_sig(self.e2),
            "o1": round_sig(self.o1),
            "delta1": round_sig(self.delta1),
            "delta2_lower": round_sig(self.delta2_lower),
            "flags": {k: _flag_value(v) for k, v in self.flags.items()},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _flag_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    return round_sig(v)


def measure_report(pair, params=MeasureParams()):
    """Measures and bounds for a pair; flags are left for the optimality module."""
    N, n = pair.count, pair.dim
    b = bounds(N, n)
    e2 = spectral_measure(pair, 2, params) if N >= 2 else None
    return ErasureReport(
        N=N, n=n, p=float(params.p),
        e1=spectral_measure(pair, 1, params),
        e2=e2,
        o1=opnorm_measure_O1(pair, params),
        delta1=b.delta1,
        delta2_lower=b.delta2_lower,
    )
