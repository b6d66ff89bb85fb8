"""Defect subspaces M1, M2 and the unitaries that intertwine them.

For a strict commuting pair the two n-dimensional subspaces of C^n + C^n

    M1 = {(D1 h, D2 T1 h)},   M2 = {(D1 T2 h, D2 h)}

are isometric images of the range of D_T, so the map M2 -> M1 sending
(D1 T2 h, D2 h) to (D1 h, D2 T1 h) is unitary.  Pairing the orthogonal
complements by index extends it to a unitary S of C^2n.  The same recipe on
zero-padded generators produces the classical 4-block unitary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DegenerateDefect, RankDeficient
from .linalg import (
    adjoint,
    numerical_rank,
    operator_norm_2,
    orthonormal_basis,
    orthonormal_complement,
    qr_phased,
    singular_values,
)
from .pairs import ContractionPair, DefectData, defect_data

BOUNDARY_MARGIN = 1e-6
REORTHO_THRESHOLD = 1e-12


@dataclass(frozen=True)
class DefectSubspaces:
    g1: np.ndarray
    g2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    # smallest singular value of [g1 | g2]; positive iff M1 and M2 meet only in 0
    intersection_margin: float


@dataclass(frozen=True)
class AndoUnitary:
    s: np.ndarray
    unitarity_residual: float
    interp_residual: float


def _check_margins(defects: DefectData) -> None:
    if defects.min_margin < BOUNDARY_MARGIN:
        raise DegenerateDefect(
            f"defect margins ({defects.margin1:.3e}, {defects.margin2:.3e}, {defects.marginT:.3e}) "
            f"below {BOUNDARY_MARGIN:.0e}; pair is too close to the unit sphere"
        )


def build_subspaces(pair: ContractionPair, defects: DefectData | None = None) -> DefectSubspaces:
    defects = defect_data(pair) if defects is None else defects
    _check_margins(defects)
    n = pair.n
    g1 = np.vstack([defects.d1, defects.d2 @ pair.t1])
    g2 = np.vstack([defects.d1 @ pair.t2, defects.d2])
    b1, b2 = orthonormal_basis(g1), orthonormal_basis(g2)
    if b1.shape[1] != n or b2.shape[1] != n:
        raise RankDeficient(f"generator ranks {b1.shape[1]}, {b2.shape[1]} differ from n={n}")
    joint = np.hstack([g1, g2])
    if numerical_rank(joint) != 2 * n:
        raise RankDeficient("M1 and M2 intersect nontrivially at working precision")
    return DefectSubspaces(
        g1=g1,
        g2=g2,
        b1=b1,
        b2=b2,
        c1=orthonormal_complement(b1, 2 * n),
        c2=orthonormal_complement(b2, 2 * n),
        intersection_margin=float(singular_values(joint)[-1]),
    )


def extend_to_unitary(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Unitary U with ``U @ src == dst`` given equal Gram matrices of ``src`` and ``dst``.

    ``src = b_src R`` by QR; ``b_dst = dst R^-1`` is then orthonormal and
    ``U = b_dst b_src^* + c_dst c_src^*`` with complements paired by index.
    """
    dim, k = src.shape
    if numerical_rank(src) != k:
        raise RankDeficient(f"source generator has rank {numerical_rank(src)} < {k}")
    b_src, r = qr_phased(src)
    b_dst = scipy.linalg.solve_triangular(r.T, dst.T, lower=True).T
    if operator_norm_2(adjoint(b_dst) @ b_dst - np.eye(k)) > REORTHO_THRESHOLD:
        b_dst, _ = qr_phased(b_dst)
    c_src = orthonormal_complement(b_src, dim)
    c_dst = orthonormal_complement(orthonormal_basis(b_dst), dim)
    return b_dst @ adjoint(b_src) + c_dst @ adjoint(c_src)


def _residuals(u: np.ndarray, src: np.ndarray, dst: np.ndarray) -> tuple[float, float]:
    eye = np.eye(u.shape[0])
    return operator_norm_2(adjoint(u) @ u - eye), operator_norm_2(u @ src - dst)


def build_S(pair: ContractionPair, subspaces: DefectSubspaces | None = None) -> AndoUnitary:
    """Unitary S on C^2n with S (D1 T2 h, D2 h) = (D1 h, D2 T1 h) for every h."""
    sub = build_subspaces(pair) if subspaces is None else subspaces
    s = extend_to_unitary(sub.g2, sub.g1)
    unit_res, interp_res = _residuals(s, sub.g2, sub.g1)
    return AndoUnitary(s=s, unitarity_residual=unit_res, interp_residual=interp_res)


def classical_generators(pair: ContractionPair, defects: DefectData) -> tuple[np.ndarray, np.ndarray]:
    """Padded (source, target) generators: (D1T2h, 0, D2h, 0) -> (D2T1h, 0, D1h, 0)."""
    z = np.zeros_like(defects.d1)
    src = np.vstack([defects.d1 @ pair.t2, z, defects.d2, z])
    dst = np.vstack([defects.d2 @ pair.t1, z, defects.d1, z])
    return src, dst


def build_classical_U4(pair: ContractionPair, defects: DefectData | None = None) -> np.ndarray:
    defects = defect_data(pair) if defects is None else defects
    _check_margins(defects)
    src, dst = classical_generators(pair, defects)
    return extend_to_unitary(src, dst)
