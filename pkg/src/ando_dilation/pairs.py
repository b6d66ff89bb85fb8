"""Commuting contraction pairs: validation, defect operators, fixture generation."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .errors import BadParams, DimMismatch, NotCommuting, NotContraction, NotStrict
from .jsonio import content_hash, matrix_from_json, matrix_to_json, read_json, write_json
from .linalg import adjoint, as_matrix, hermitian_sqrt, operator_norm_2, singular_values

METHODS = ("polynomial", "codiagonal", "jordan")
CONTRACTION_SLACK = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ContractionPair:
    t1: np.ndarray
    t2: np.ndarray
    comm_residual: float
    norm1: float
    norm2: float
    strict: bool
    meta: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.t1.shape[0]

    @property
    def product(self) -> np.ndarray:
        return self.t1 @ self.t2

    def to_json(self) -> dict[str, Any]:
        return {"t1": matrix_to_json(self.t1), "t2": matrix_to_json(self.t2), "meta": dict(self.meta)}

    def content_hash(self) -> str:
        return content_hash({"t1": matrix_to_json(self.t1), "t2": matrix_to_json(self.t2)})


@dataclass(frozen=True)
class DefectData:
    d1: np.ndarray
    d2: np.ndarray
    dT: np.ndarray
    margin1: float
    margin2: float
    marginT: float

    @property
    def min_margin(self) -> float:
        return min(self.margin1, self.margin2, self.marginT)


def default_comm_tol(t1: np.ndarray, t2: np.ndarray) -> float:
    return 1e-10 * max(1.0, operator_norm_2(t1) * operator_norm_2(t2))


def validate_pair(
    t1,
    t2,
    require_strict: bool = True,
    comm_tol: float | None = None,
    strict_margin: float = 0.0,
    meta: dict[str, Any] | None = None,
) -> ContractionPair:
    """Check commutation and contractivity and return a populated pair.

    With ``require_strict`` both norms must satisfy ``norm <= 1 - strict_margin``
    and ``norm < 1``.
    """
    t1 = as_matrix(t1, "t1")
    t2 = as_matrix(t2, "t2")
    if t1.shape[0] != t1.shape[1] or t1.shape != t2.shape:
        raise DimMismatch(f"t1 {t1.shape} and t2 {t2.shape} must be square and equal-sized")
    norm1, norm2 = operator_norm_2(t1), operator_norm_2(t2)
    tol = default_comm_tol(t1, t2) if comm_tol is None else comm_tol
    residual = operator_norm_2(t1 @ t2 - t2 @ t1)
    if residual > tol:
        raise NotCommuting(residual, tol)
    for which, nrm in ((1, norm1), (2, norm2)):
        if nrm > 1.0 + CONTRACTION_SLACK:
            raise NotContraction(which, nrm)
    strict = norm1 < 1.0 and norm2 < 1.0
    if require_strict:
        for which, nrm in ((1, norm1), (2, norm2)):
            if not (nrm < 1.0 and nrm <= 1.0 - strict_margin + CONTRACTION_SLACK):
                raise NotStrict(which, nrm, strict_margin)
    return ContractionPair(
        t1=_frozen(t1),
        t2=_frozen(t2),
        comm_residual=residual,
        norm1=norm1,
        norm2=norm2,
        strict=strict,
        meta=dict(meta or {}),
    )


def defect_operator(t: np.ndarray) -> np.ndarray:
    """(I - T*T)^(1/2)."""
    n = t.shape[0]
    return hermitian_sqrt(np.eye(n) - adjoint(t) @ t)


def defect_data(pair: ContractionPair) -> DefectData:
    d1 = defect_operator(pair.t1)
    d2 = defect_operator(pair.t2)
    dT = defect_operator(pair.product)

    def margin(d):
        sv = singular_values(d)
        return float(sv[-1]) if sv.size else 0.0

    return DefectData(
        d1=_frozen(d1),
        d2=_frozen(d2),
        dT=_frozen(dT),
        margin1=margin(d1),
        margin2=margin(d2),
        marginT=margin(dT),
    )


def product_norm(pair: ContractionPair) -> float:
    return operator_norm_2(pair.product)


# --- fixture generation ---------------------------------------------------


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def _polyval(coeffs: np.ndarray, a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    eye = np.eye(a.shape[0], dtype=np.complex128)
    for c in coeffs:
        out = out @ a + c * eye
    return out


def _raw_polynomial(rng, n):
    a = _complex_normal(rng, (n, n)) / np.sqrt(n)
    while True:
        p = _complex_normal(rng, rng.integers(2, 5))
        q = _complex_normal(rng, rng.integers(2, 5))
        t1, t2 = _polyval(p, a), _polyval(q, a)
        if min(operator_norm_2(t1), operator_norm_2(t2)) > 1e-6:
            return t1, t2


def _raw_codiagonal(rng, n):
    z = _complex_normal(rng, (n, n))
    u, r = np.linalg.qr(z)
    u = u * (np.diag(r) / np.abs(np.diag(r)))

    def disc(size):
        return np.sqrt(rng.uniform(0.05, 1.0, size)) * np.exp(2j * np.pi * rng.uniform(size=size))

    return (u * disc(n)) @ adjoint(u), (u * disc(n)) @ adjoint(u)


def _raw_jordan(rng, n):
    a = rng.uniform(0.5, 1.5) * np.eye(n, k=1, dtype=np.complex128)
    alpha, beta, gamma, delta = _complex_normal(rng, 4)
    eye = np.eye(n, dtype=np.complex128)
    return alpha * (a + beta * eye), gamma * (a @ a + delta * eye)


_GENERATORS = {"polynomial": _raw_polynomial, "codiagonal": _raw_codiagonal, "jordan": _raw_jordan}


def _scale_norm(t: np.ndarray, norm_kind: str) -> float:
    if norm_kind == "2":
        return operator_norm_2(t)
    if norm_kind == "lp":
        # bounds every l_p operator norm at once (Riesz-Thorin between 1 and inf)
        a = np.abs(t)
        return max(operator_norm_2(t), a.sum(axis=0).max(), a.sum(axis=1).max())
    raise BadParams(f"unknown norm_kind {norm_kind!r}")


def generate_commuting_pair(
    seed: int,
    n: int,
    method: str = "polynomial",
    target_norms: tuple[float, float] = (0.9, 0.9),
    strict_margin: float = 0.05,
    norm_kind: str = "2",
) -> ContractionPair:
    """Deterministic commuting strict pair with prescribed norms.

    ``norm_kind="2"`` scales each Ti to operator 2-norm ri.  ``norm_kind="lp"``
    scales to ``max(|Ti|_1, |Ti|_2, |Ti|_inf) = ri`` so the pair is a strict
    contraction in every l_p norm.
    """
    if n < 1:
        raise BadParams(f"n must be >= 1, got {n}")
    if method not in _GENERATORS:
        raise BadParams(f"method must be one of {METHODS}, got {method!r}")
    r1, r2 = (float(r) for r in target_norms)
    for r in (r1, r2):
        if not 0.0 < r < 1.0:
            raise BadParams(f"target norms must lie in (0, 1), got {target_norms}")
        if r > 1.0 - strict_margin:
            raise BadParams(f"target norm {r} violates strict margin {strict_margin}")
    rng = np.random.default_rng([int(seed), n, METHODS.index(method)])
    t1, t2 = _GENERATORS[method](rng, n)
    t1 = t1 * (r1 / _scale_norm(t1, norm_kind))
    t2 = t2 * (r2 / _scale_norm(t2, norm_kind))
    meta = {"seed": int(seed), "n": n, "method": method, "norms": [r1, r2], "norm_kind": norm_kind}
    return validate_pair(t1, t2, require_strict=True, strict_margin=strict_margin, meta=meta)


def scalar_pair(a: complex, b: complex) -> ContractionPair:
    return validate_pair([[a]], [[b]], require_strict=False)


# --- fixture files --------------------------------------------------------


def save_pair(path: str | Path, pair: ContractionPair) -> None:
    write_json(path, pair.to_json())


def load_pair(path: str | Path, require_strict: bool = True, strict_margin: float = 0.0) -> ContractionPair:
    obj = read_json(path)
    return validate_pair(
        matrix_from_json(obj["t1"]),
        matrix_from_json(obj["t2"]),
        require_strict=require_strict,
        strict_margin=strict_margin,
        meta=obj.get("meta", {}),
    )
