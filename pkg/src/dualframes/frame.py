"""Finite frames in R^n stored as n x N synthesis matrices (column i is f_i)."""
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch, NotADual, NotAFrame, NotEquivalent, ParseError, RankZero)
from .graph import laplacian
from .linalg import as_matrix, sym_eig

FRAME_TOL = 1e-10
DUAL_TOL = 1e-8
TIGHT_TOL = 1e-9
RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Frame:
    synthesis: np.ndarray
    lower: float  # optimal lower frame bound, lambda_min(S_F)
    upper: float  # optimal upper frame bound, lambda_max(S_F)

    @property
    def dim(self):
        return self.synthesis.shape[0]

    @property
    def count(self):
        return self.synthesis.shape[1]

    @property
    def vectors(self):
        """Frame vectors as rows, shape (N, n)."""
        return self.synthesis.T

    def transformed(self, u):
        """The frame {U f_i}."""
        return make_frame(np.asarray(u, dtype=float) @ self.synthesis)


@dataclass(frozen=True, eq=False)
class DualPair:
    f: Frame
    g: Frame
    cross_gramian: np.ndarray = field(repr=False)  # (i, j) -> <g_i, f_j>
    residual: float = 0.0

    @property
    def dim(self):
        return self.f.dim

    @property
    def count(self):
        return self.f.count

    def transformed(self, u):
        return verify_dual(self.f.transformed(u), self.g.transformed(u))


def _readonly(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


def make_frame(vectors, tol=FRAME_TOL):
    """Build a frame from an n x N synthesis matrix.

    Raises :class:`NotAFrame` unless the vectors span R^n, judged by
    ``lambda_min(S_F) > tol * lambda_max(S_F)``.
    """
    syn = as_matrix(vectors, "synthesis matrix")
    n, count = syn.shape
    if count < n:
        raise NotAFrame(f"{count} vectors cannot span R^{n}")
    vals = sym_eig(syn @ syn.T).values
    if vals[0] <= 0 or vals[-1] <= tol * vals[0]:
        raise NotAFrame(
            f"vectors do not span R^{n}: lambda_min(S_F) = {vals[-1]:.3e}, "
            f"lambda_max(S_F) = {vals[0]:.3e}")
    return Frame(_readonly(syn), float(vals[-1]), float(vals[0]))


def frame_from_vectors(rows, tol=FRAME_TOL):
    """Frame from a sequence of N vectors given as rows."""
    return make_frame(np.asarray(rows, dtype=float).T, tol)


def frame_operator(f):
    return f.synthesis @ f.synthesis.T


def gramian(f):
    return f.synthesis.T @ f.synthesis


def _operator_power(f, power):
    eig = sym_eig(frame_operator(f))
    return (eig.vectors * eig.values**power) @ eig.vectors.T


def verify_dual(f, g, tol=DUAL_TOL):
    """Accept ``g`` as a dual of ``f`` if ||Theta_G* Theta_F - I||_F <= tol."""
    if f.dim != g.dim or f.count != g.count:
        raise DimensionMismatch(
            f"frame is {f.dim}x{f.count} but candidate dual is {g.dim}x{g.count}")
    residual = float(np.linalg.norm(g.synthesis @ f.synthesis.T - np.eye(f.dim)))
    if not residual <= tol:
        raise NotADual(residual)
    cross = g.synthesis.T @ f.synthesis
    cross.flags.writeable = False
    return DualPair(f, g, cross, residual)


def canonical_dual(f, tol=DUAL_TOL):
    """The pair (F, {S_F^{-1} f_i})."""
    g = make_frame(_operator_power(f, -1.0) @ f.synthesis)
    return verify_dual(f, g, tol)


def parseval_normalize(f):
    """S_F^{-1/2} F, a Parseval frame."""
    return make_frame(_operator_power(f, -0.5) @ f.synthesis)


def frame_from_graph(g, tol=RANK_TOL):
    """An L_Gamma(N, n) frame: Gramian equal to the graph Laplacian.

    With L = M diag(lambda_1..lambda_n, 0..0) M^T, the synthesis matrix is
    diag(sqrt(lambda)) M_1^T where M_1 holds the n eigenvectors of the
    nonzero eigenvalues.
    """
    eig = sym_eig(laplacian(g))
    scale = max(1.0, float(eig.values[0]))
    rank = int(np.sum(eig.values > tol * scale))
    if rank == 0:
        raise RankZero("graph has no edges; its Laplacian is zero")
    lam = eig.values[:rank]
    return make_frame(np.sqrt(lam)[:, None] * eig.vectors[:, :rank].T)


def is_tight(f, tol=TIGHT_TOL):
    """Tight-frame bound A, or None if (B - A) / B > tol."""
    if (f.upper - f.lower) / f.upper <= tol:
        return f.upper
    return None


def find_unitary_intertwiner(f1, f2, tol=DUAL_TOL):
    """Orthogonal U with U f1_i = f2_i, which exists iff the Gramians agree."""
    if f1.dim != f2.dim or f1.count != f2.count:
        raise DimensionMismatch("frames have different shapes")
    gap = np.linalg.norm(gramian(f1) - gramian(f2))
    if gap > tol:
        raise NotEquivalent(f"Gramians differ by {gap:.3e} (Frobenius)")
    u = f2.synthesis @ f1.synthesis.T @ _operator_power(f1, -1.0)
    ortho = np.linalg.norm(u.T @ u - np.eye(f1.dim))
    fit = np.linalg.norm(u @ f1.synthesis - f2.synthesis)
    if ortho > tol or fit > tol:
        raise NotEquivalent(
            f"intertwiner check failed: ||U^T U - I|| = {ortho:.3e}, ||U F1 - F2|| = {fit:.3e}")
    return u


# -- CSV I/O: one vector per row, '#' comments ------------------------------

def read_frame_csv(text):
    """Parse frame CSV text into the N x n array of vectors (rows)."""
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [float(x) for x in line.split(",")]
        except ValueError:
            raise ParseError(f"non-numeric entry in {raw.strip()!r}", lineno) from None
        if not all(np.isfinite(row)):
            raise ParseError("non-finite entry", lineno)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"expected {width} columns, got {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise ParseError("no frame vectors found")
    return np.array(rows)


def load_frame(text, tol=FRAME_TOL):
    return frame_from_vectors(read_frame_csv(text), tol)


def format_frame_csv(f, header=None):
    lines = [f"# {line}" for line in (header or "").splitlines()]
    lines += [",".join(repr(float(x)) for x in row) for row in f.vectors]
    return "\n".join(lines) + "\n"
