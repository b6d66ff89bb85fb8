"""Normed-space layer: l_p oracles, A_T functionals, and the Banach dilation.

For a contraction T on a finite-dimensional normed space the functional

    A_T(x) = (|x|^2 - |Tx|^2)^(1/2)

may or may not be a norm.  When A_T1 and A_T2 are norms and a surjective
isometry S of the mixed space (X, A_T1) + (X, A_T2) maps (T2 x, x) to
(x, T1 x), the block-shift operators of :mod:`ando_dilation.engine` (banach
kinds) dilate the pair.  Everything here is sampled evidence, not proof:
verdicts say so explicitly.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .engine import DilationOperatorSpec, OpKind
from .errors import (
    ANormInvalid,
    BadP,
    DegenerateDefect,
    DimMismatch,
    NotContractiveInBase,
    ProductNotStrict,
    SNotInterpolating,
    SNotMixedIsometry,
)
from .jsonio import matrix_from_json, matrix_to_json
from .linalg import adjoint, as_matrix, operator_norm_2, singular_values
from .pairs import ContractionPair, DefectData, defect_data
from .verify import VerificationReport

log = logging.getLogger(__name__)

RADICAND_FLOOR = 1e-12
STRICT_SAFETY = 1e-3

VERIFIED = "verified-sampled"
COUNTEREXAMPLE = "counterexample"
INDETERMINATE = "indeterminate"


def parse_p(p) -> float:
    if isinstance(p, str):
        p = math.inf if p.strip().lower() in ("inf", "infinity", "oo") else float(p)
    p = float(p)
    if not p >= 1.0:
        raise BadP(f"p must be >= 1, got {p}")
    return p


def _p_json(p: float):
    return "inf" if math.isinf(p) else p


# --- oracles --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NormOracle:
    """A norm on C^dim.  ``evaluator`` is vectorized over leading axes."""

    dim: int
    evaluator: Callable[[np.ndarray], Any]
    descriptor: dict[str, Any]
    operator: np.ndarray | None = None
    base: "NormOracle | None" = None
    parts: tuple["NormOracle", ...] = ()

    def __call__(self, x):
        x = np.asarray(x, dtype=np.complex128)
        if x.shape[-1] != self.dim:
            raise DimMismatch(f"oracle of dimension {self.dim} got vectors of length {x.shape[-1]}")
        return self.evaluator(x)

    @property
    def p(self) -> float | None:
        if self.descriptor["kind"] == "lp":
            return parse_p(self.descriptor["p"])
        return None

    def to_json(self) -> dict[str, Any]:
        return self.descriptor


@dataclass(frozen=True)
class DilationNorm:
    """Norms for H (``base``) and for one block of the dilation space (``block``)."""

    base: NormOracle
    block: NormOracle


def lp_oracle(n: int, p) -> NormOracle:
    p = parse_p(p)

    def evaluate(x):
        return np.linalg.norm(x, ord=p, axis=-1)

    return NormOracle(n, evaluate, {"kind": "lp", "p": _p_json(p), "dim": n})


def _check_contractive(t: np.ndarray, base: NormOracle, samples: int, seed: int) -> None:
    p = base.p
    if p is not None:
        est = operator_p_norm(t, p)
        if est.upper <= 1.0 + RADICAND_FLOOR:
            return
        if est.value > 1.0 + RADICAND_FLOOR:
            raise NotContractiveInBase(f"|T|_{_p_json(p)} >= {est.value:.15g} > 1")
    rng = np.random.default_rng(seed)
    n = t.shape[0]
    x = np.vstack([np.eye(n), rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))])
    ratio = base(x @ t.T) / base(x)
    if ratio.max() > 1.0 + RADICAND_FLOOR:
        raise NotContractiveInBase(f"sampled |Tx|/|x| reaches {ratio.max():.15g}")


def a_norm_oracle(t, base: NormOracle, samples: int = 256, seed: int = 0) -> NormOracle:
    """x -> (base(x)^2 - base(Tx)^2)^(1/2), clamping radicands in (-1e-12 |x|^2, 0)."""
    t = as_matrix(t, "T")
    if t.shape != (base.dim, base.dim):
        raise DimMismatch(f"T has shape {t.shape}, base dimension is {base.dim}")
    _check_contractive(t, base, samples, seed)
    tt = np.ascontiguousarray(t.T)

    def evaluate(x):
        bx = np.asarray(base(x), dtype=float)
        rad = bx**2 - np.asarray(base(x @ tt), dtype=float) ** 2
        if np.any(rad < -RADICAND_FLOOR * bx**2):
            raise NotContractiveInBase(f"negative radicand {np.min(rad):.3e}")
        return np.sqrt(np.maximum(rad, 0.0))

    desc = {"kind": "a-norm", "T": matrix_to_json(t), "base": base.descriptor}
    return NormOracle(base.dim, evaluate, desc, operator=t, base=base)


def mixed_pair_oracle(first: NormOracle, second: NormOracle) -> NormOracle:
    """(x1, x2) -> (first(x1)^2 + second(x2)^2)^(1/2) on C^(d1 + d2)."""
    d1 = first.dim

    def evaluate(x):
        return np.sqrt(first(x[..., :d1]) ** 2 + second(x[..., d1:]) ** 2)

    desc = {"kind": "mixed-pair", "first": first.descriptor, "second": second.descriptor}
    return NormOracle(d1 + second.dim, evaluate, desc, parts=(first, second))


def oracle_from_json(desc: dict[str, Any]) -> NormOracle:
    kind = desc["kind"]
    if kind == "lp":
        return lp_oracle(int(desc["dim"]), desc["p"])
    if kind == "a-norm":
        return a_norm_oracle(matrix_from_json(desc["T"]), oracle_from_json(desc["base"]))
    if kind == "mixed-pair":
        return mixed_pair_oracle(oracle_from_json(desc["first"]), oracle_from_json(desc["second"]))
    raise ValueError(f"unknown oracle kind {kind!r}")


# --- operator p-norms -----------------------------------------------------


@dataclass(frozen=True)
class PNormEstimate:
    value: float
    upper: float
    mode: str
    iterations: int
    maximizer: np.ndarray
    exact: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "upper": self.upper,
            "mode": self.mode,
            "iterations": self.iterations,
            "exact": self.exact,
        }


def _phase(z):
    mag = np.abs(z)
    return np.where(mag > 0, z / np.where(mag > 0, mag, 1.0), 0.0)


def _dual_vector(y, p):
    # unit vector in the dual norm attaining <dual, y> = |y|_p
    if math.isinf(p):
        out = np.zeros_like(y)
        k = int(np.argmax(np.abs(y)))
        out[k] = _phase(y[k])
        return out
    if p == 1.0:
        return _phase(y)
    w = np.abs(y) ** (p - 1.0) * _phase(y)
    nrm = np.linalg.norm(y, ord=p)
    return w / nrm ** (p - 1.0) if nrm > 0 else w


def _power_iteration(t, p, x, max_iter):
    q = 1.0 if math.isinf(p) else (math.inf if p == 1.0 else p / (p - 1.0))
    x = x / np.linalg.norm(x, ord=p)
    it = 0
    for it in range(1, max_iter + 1):
        y = t @ x
        if not np.any(y):
            break
        z = adjoint(t) @ _dual_vector(y, p)
        if np.linalg.norm(z, ord=q) <= np.real(np.vdot(z, x)) * (1.0 + 1e-14):
            break
        x_new = _dual_vector(z, q)
        x_new = x_new / np.linalg.norm(x_new, ord=p)
        if np.allclose(x_new, x, rtol=0, atol=1e-15):
            break
        x = x_new
    return x, float(np.linalg.norm(t @ x, ord=p)), it


def operator_p_norm(t, p, mode: str = "auto", max_iter: int = 100, starts: int = 16, seed: int = 0) -> PNormEstimate:
    """Induced l_p operator norm.

    Exact (max column sum, largest singular value, max row sum) for p in
    {1, 2, inf} unless ``mode="power"``.  Otherwise a lower bound from the
    dual power iteration over several starts; ``upper`` is the Riesz-Thorin
    bound |T|_1^(1/p) |T|_inf^(1-1/p).
    """
    p = parse_p(p)
    t = as_matrix(t, "T")
    n = t.shape[1]
    a = np.abs(t)
    col, row = a.sum(axis=0), a.sum(axis=1)
    rt_upper = float(col.max() ** (1.0 / p) * row.max() ** (1.0 - 1.0 / p)) if n else 0.0
    if mode not in ("auto", "power"):
        raise ValueError(f"mode must be 'auto' or 'power', got {mode!r}")
    if mode == "auto" and p in (1.0, 2.0, math.inf):
        if p == 1.0:
            j = int(np.argmax(col))
            x = np.zeros(n, dtype=np.complex128)
            x[j] = 1.0
            return PNormEstimate(float(col[j]), float(col[j]), "exact-1", 0, x, True)
        if math.isinf(p):
            i = int(np.argmax(row))
            x = np.conj(_phase(t[i]))
            x[x == 0] = 1.0
            return PNormEstimate(float(row[i]), float(row[i]), "exact-inf", 0, x, True)
        _, sv, vh = np.linalg.svd(t)
        return PNormEstimate(float(sv[0]), float(sv[0]), "exact-2", 0, vh[0].conj(), True)
    rng = np.random.default_rng(seed)
    candidates = [np.ones(n, dtype=np.complex128)] + list(np.eye(n, dtype=np.complex128))
    candidates += list(rng.standard_normal((starts, n)) + 1j * rng.standard_normal((starts, n)))
    best_x, best, total_it = candidates[0], -1.0, 0
    for x0 in candidates:
        x, val, it = _power_iteration(t, p, x0, max_iter)
        total_it += it
        if val > best:
            best, best_x = val, x
    return PNormEstimate(best, max(rt_upper, best), "power", total_it, best_x, False)


# --- A_T norm checks ------------------------------------------------------


@dataclass
class ANormStatus:
    verdict: str
    counterexample: tuple[np.ndarray, np.ndarray] | None
    samples: int
    violation: str | None = None
    worst_excess: float = 0.0

    def reproduces(self, oracle: NormOracle, tol: float = 1e-10) -> bool:
        if self.counterexample is None:
            return False
        x, y = self.counterexample
        if self.violation == "definiteness":
            return bool(oracle(x) ** 2 <= tol * oracle.base(x) ** 2)
        return bool(oracle(x + y) > oracle(x) + oracle(y) + tol * (oracle.base(x) + oracle.base(y)))

    def to_json(self) -> dict[str, Any]:
        ce = None
        if self.counterexample is not None:
            ce = [{"re": v.real.tolist(), "im": v.imag.tolist()} for v in self.counterexample]
        return {
            "verdict": self.verdict,
            "violation": self.violation,
            "samples": self.samples,
            "worst_excess": self.worst_excess,
            "counterexample": ce,
        }


def _near_kernel(oracle: NormOracle) -> np.ndarray:
    # direction where |Tx|/|x| is largest, i.e. where A_T is smallest
    t, base = oracle.operator, oracle.base
    if base.p is not None:
        return operator_p_norm(t, base.p).maximizer
    rng = np.random.default_rng(1)
    x = rng.standard_normal((512, t.shape[0])) + 1j * rng.standard_normal((512, t.shape[0]))
    return x[int(np.argmax(base(x @ t.T) / base(x)))]


def check_a_norm(oracle: NormOracle, samples: int = 10_000, tol: float = 1e-10, seed: int = 0) -> ANormStatus:
    """Sampled test of definiteness and the triangle inequality for an A_T oracle.

    Structured pairs (basis, colinear, near the kernel of A_T) come first, then
    ``samples`` random complex pairs at mixed scales.  The first violation is
    returned as the counterexample.
    """
    if oracle.operator is None or oracle.base is None:
        raise ValueError("check_a_norm needs an a-norm oracle")
    n = oracle.dim
    base = oracle.base
    eye = np.eye(n, dtype=np.complex128)
    v = _near_kernel(oracle)
    probes = np.vstack([eye, v[None, :]])
    # judged on the radicand scale: A(v)^2 / |v|^2, since the square root amplifies rounding
    ratio = oracle(probes) / base(probes)
    k = int(np.argmin(ratio))
    if ratio[k] ** 2 <= tol:
        return ANormStatus(COUNTEREXAMPLE, (probes[k], np.zeros(n, dtype=np.complex128)), 0, "definiteness", float(-ratio[k]))

    rng = np.random.default_rng(seed)
    xs = [eye[i] for i in range(n) for _ in range(n)]
    ys = [c * eye[j] for _ in range(n) for j in range(n) for c in (1.0,)]
    xs += [eye[i] for i in range(n) for j in range(n)]
    ys += [1j * eye[j] for i in range(n) for j in range(n)]
    w = rng.standard_normal((4, n)) + 1j * rng.standard_normal((4, n))
    for r in w:
        xs += [r, r, v, v]
        ys += [2.0 * r, -0.5 * r, r, eye[0]]
    structured = len(xs)
    rx = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    ry = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    ry *= 10.0 ** rng.uniform(-2, 2, size=(samples, 1))
    x = np.vstack([np.array(xs).reshape(-1, n), rx])
    y = np.vstack([np.array(ys).reshape(-1, n), ry])
    excess = oracle(x + y) - oracle(x) - oracle(y)
    scale = base(x) + base(y)
    bad = np.flatnonzero(excess > tol * scale)
    rel = excess / scale
    if bad.size:
        i = int(bad[0])
        return ANormStatus(COUNTEREXAMPLE, (x[i], y[i]), structured + samples, "triangle", float(rel[i]))
    verdict = VERIFIED if samples > 0 else INDETERMINATE
    return ANormStatus(verdict, None, structured + samples, None, float(rel.max()))


def _sample(rng, n, k):
    x = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
    return np.vstack([np.zeros((1, n)), x])


def _pair_oracles(pair: ContractionPair, base: NormOracle):
    return a_norm_oracle(pair.t1, base), a_norm_oracle(pair.t2, base)


def product_a_norm_identity(
    pair: ContractionPair, base: NormOracle, samples: int = 200, tol: float = 1e-12, seed: int = 0
) -> VerificationReport:
    """A_T(x)^2 = A_T1(x)^2 + A_T2(T1 x)^2 with T = T1 T2, relative to base(x)^2."""
    a1, a2 = _pair_oracles(pair, base)
    at = a_norm_oracle(pair.product, base)
    x = _sample(np.random.default_rng(seed), pair.n, samples)
    lhs = at(x) ** 2
    rhs = a1(x) ** 2 + a2(x @ pair.t1.T) ** 2
    res = np.abs(lhs - rhs) / np.maximum(base(x) ** 2, np.finfo(float).tiny)
    k = int(np.argmax(res))
    return VerificationReport(
        check="product_a_norm_identity",
        passed=bool(res[k] <= tol),
        residual=float(res[k]),
        tol=tol,
        trials=samples + 1,
        params={"base": base.descriptor, "seed": seed},
    )


def qhat_isometry_check(
    pair: ContractionPair, base: NormOracle, samples: int = 200, tol: float = 1e-12, seed: int = 0
) -> VerificationReport:
    """A_T1(T2 x)^2 + A_T2(x)^2 = A_T1(x)^2 + A_T2(T1 x)^2, relative to base(x)^2."""
    a1, a2 = _pair_oracles(pair, base)
    x = _sample(np.random.default_rng(seed), pair.n, samples)
    lhs = a1(x @ pair.t2.T) ** 2 + a2(x) ** 2
    rhs = a1(x) ** 2 + a2(x @ pair.t1.T) ** 2
    res = np.abs(lhs - rhs) / np.maximum(base(x) ** 2, np.finfo(float).tiny)
    k = int(np.argmax(res))
    return VerificationReport(
        check="qhat_isometry",
        passed=bool(res[k] <= tol),
        residual=float(res[k]),
        tol=tol,
        trials=samples + 1,
        params={"base": base.descriptor, "seed": seed},
    )


def mhat_subspaces(pair: ContractionPair) -> tuple[np.ndarray, np.ndarray]:
    """Generators [T2; I] and [I; T1] of the graph subspaces."""
    eye = np.eye(pair.n, dtype=np.complex128)
    return np.vstack([pair.t2, eye]), np.vstack([eye, pair.t1])


def _product_strict(pair: ContractionPair, base: NormOracle | None) -> float:
    p = 2.0 if base is None or base.p is None else base.p
    est = operator_p_norm(pair.product, p)
    strict = est.upper < 1.0 or (est.value + (0.0 if est.exact else STRICT_SAFETY)) < 1.0
    if not strict:
        raise ProductNotStrict(f"|T1 T2|_{_p_json(p)} estimate {est.value:.6g} is not safely below 1")
    return est.value


def intersection_check(pair: ContractionPair, base: NormOracle | None = None, tol: float = 1e-10) -> VerificationReport:
    """Trivial intersection of the graph subspaces, via the smallest singular value of I - T1 T2.

    (x, T1 x) = (T2 y, y) forces x = T1 T2 x, so the subspaces meet only in 0
    exactly when I - T1 T2 is injective.
    """
    pnorm = _product_strict(pair, base)
    g1, g2 = mhat_subspaces(pair)
    margin = float(singular_values(np.eye(pair.n) - pair.product)[-1])
    joint = singular_values(np.hstack([g1, g2]))
    return VerificationReport(
        check="mhat_intersection",
        passed=margin > tol,
        residual=margin,
        tol=tol,
        trials=1,
        params={
            "margin": margin,
            "product_norm_2": operator_norm_2(pair.product),
            "product_norm_base": pnorm,
            "lower_bound": 1.0 - operator_norm_2(pair.product),
            "joint_sv_min": float(joint[-1]),
        },
    )


def a_norm_equivalence_check(oracle: NormOracle, samples: int = 1000, tol: float = 1e-12, seed: int = 0) -> VerificationReport:
    """(1 - |T|^2)^(1/2) base(x) <= A_T(x) <= base(x) on samples (the completeness sentinel)."""
    t, base = oracle.operator, oracle.base
    p = base.p if base.p is not None else 2.0
    upper = operator_p_norm(t, p).upper
    c = math.sqrt(max(0.0, 1.0 - upper**2))
    x = _sample(np.random.default_rng(seed), oracle.dim, samples)[1:]
    ratio = oracle(x) / base(x)
    lo, hi = float(ratio.min()), float(ratio.max())
    worst = max(0.0, c - lo, hi - 1.0)
    return VerificationReport(
        check="a_norm_equivalence",
        passed=worst <= tol,
        residual=worst,
        tol=tol,
        trials=samples,
        params={"lower_constant": c, "min_ratio": lo, "max_ratio": hi},
    )


# --- the Banach dilation --------------------------------------------------


def hilbert_S_to_banach_S(pair: ContractionPair, s_hilbert: np.ndarray, defects: DefectData | None = None) -> np.ndarray:
    """diag(D1, D2)^-1 S diag(D1, D2): the p = 2 solution of S(T2 x, x) = (x, T1 x)."""
    d = defect_data(pair) if defects is None else defects
    if min(d.margin1, d.margin2) < 1e-6:
        raise DegenerateDefect("D1 or D2 is numerically singular")
    n = pair.n
    dd = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    dd[:n, :n], dd[n:, n:] = d.d1, d.d2
    return np.linalg.solve(dd, s_hilbert @ dd)


def _interp_residual(pair: ContractionPair, s: np.ndarray, x: np.ndarray, block: NormOracle | None = None) -> float:
    src = np.hstack([x @ pair.t2.T, x])
    dst = np.hstack([x, x @ pair.t1.T])
    if block is None:
        return float((np.linalg.norm(src @ s.T - dst, axis=1) / np.linalg.norm(src, axis=1)).max())
    return float((block(src @ s.T - dst) / block(src)).max())


def _isometry_residual(block: NormOracle, s: np.ndarray, z: np.ndarray) -> float:
    nz = block(z)
    return float((np.abs(block(z @ s.T) - nz) / nz).max())


def check_S_candidate(
    pair: ContractionPair, base: NormOracle, s: np.ndarray, samples: int = 200, tol: float = 1e-9, seed: int = 0
) -> VerificationReport:
    """Whether ``s`` interpolates the graph subspaces and is a mixed-norm isometry (both ways)."""
    a1, a2 = _pair_oracles(pair, base)
    block = mixed_pair_oracle(a1, a2)
    rng = np.random.default_rng(seed)
    n = pair.n
    x = _sample(rng, n, samples)[1:]
    z = _sample(rng, 2 * n, samples)[1:]
    interp = _interp_residual(pair, s, x, block)
    iso = _isometry_residual(block, s, z)
    iso_inv = _isometry_residual(block, np.linalg.inv(s), z)
    worst = max(interp, iso, iso_inv)
    return VerificationReport(
        check="S_candidate",
        passed=worst <= tol,
        residual=worst,
        tol=tol,
        trials=samples,
        params={"interp": interp, "isometry": iso, "inverse_isometry": iso_inv, "base": base.descriptor},
    )


def build_banach_dilation(
    pair: ContractionPair,
    base: NormOracle,
    s: np.ndarray,
    samples: int = 200,
    tol: float = 1e-9,
    a_norm_samples: int = 10_000,
    seed: int = 0,
) -> tuple[DilationOperatorSpec, DilationOperatorSpec]:
    """Banach-kind specs for (T1, T2) given S with S(T2 x, x) = (x, T1 x).

    Preconditions are verified on samples: both A_Ti are norms, ``s``
    interpolates, and ``s`` and its inverse preserve the mixed norm.
    """
    s = as_matrix(s, "S")
    n = pair.n
    if s.shape != (2 * n, 2 * n):
        raise DimMismatch(f"S must be {2 * n}x{2 * n}, got {s.shape}")
    a1, a2 = _pair_oracles(pair, base)
    for i, a in ((1, a1), (2, a2)):
        status = check_a_norm(a, samples=a_norm_samples, seed=seed)
        if status.verdict != VERIFIED:
            raise ANormInvalid(f"A_T{i} is not a norm ({status.violation} violation)")
    block = mixed_pair_oracle(a1, a2)
    rng = np.random.default_rng(seed)
    x = _sample(rng, n, samples)[1:]
    interp = _interp_residual(pair, s, x, block)
    if interp > tol:
        raise SNotInterpolating(f"S(T2 x, x) - (x, T1 x) relative residual {interp:.3e} > {tol:.0e}")
    s_inv = np.linalg.inv(s)
    z = _sample(rng, 2 * n, samples)[1:]
    iso = max(_isometry_residual(block, s, z), _isometry_residual(block, s_inv, z))
    if iso > tol:
        raise SNotMixedIsometry(f"mixed-norm isometry residual {iso:.3e} > {tol:.0e}")
    norm = DilationNorm(base=base, block=block)
    return (
        DilationOperatorSpec(OpKind.BANACH_V1, pair, None, s, s_inv, norm),
        DilationOperatorSpec(OpKind.BANACH_V2, pair, None, s, s_inv, norm),
    )


def hilbert_to_banach_state(state, defects: DefectData):
    """Coordinate change (h, (h1, h2), ...) -> (h, (D1^-1 h1, D2^-1 h2), ...)."""
    from .engine import DilationState

    n = state.n
    inv1 = np.linalg.inv(defects.d1)
    inv2 = np.linalg.inv(defects.d2)
    b = state.blocks
    out = np.hstack([b[:, :n] @ inv1.T, b[:, n:] @ inv2.T]) if state.depth else b
    return DilationState(state.head, out, state.block_dim)


# --- norm-one search ------------------------------------------------------


@dataclass
class NormOneCandidate:
    t: np.ndarray
    status: ANormStatus
    pnorm: PNormEstimate
    seed: int
    index: int
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "T": matrix_to_json(self.t),
            "status": self.status.to_json(),
            "pnorm": self.pnorm.to_json(),
            "seed": self.seed,
            "index": self.index,
        }


def search_norm_one_examples(
    n: int, p, seed: int, budget: int, samples: int = 2000, norm_tol: float = 1e-6
) -> list[NormOneCandidate]:
    """Random search for T with |T|_p = 1 whose A_T passes :func:`check_a_norm`.

    Candidates are normalized by the operator p-norm estimate.  On a
    finite-dimensional space the norm is attained at some x, where A_T(x) = 0,
    so the definiteness probe along the maximizer rejects every candidate;
    the search records that outcome rather than assuming it.
    """
    p = parse_p(p)
    base = lp_oracle(n, p)
    rng = np.random.default_rng([int(seed), n])
    found: list[NormOneCandidate] = []
    rejected = {"not_contractive": 0, "norm_mismatch": 0, "not_a_norm": 0}
    for i in range(budget):
        t = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        t = t / operator_p_norm(t, p).value
        est = operator_p_norm(t, p)
        if abs(est.value - 1.0) > norm_tol:
            rejected["norm_mismatch"] += 1
            continue
        try:
            oracle = a_norm_oracle(t, base)
        except NotContractiveInBase:
            rejected["not_contractive"] += 1
            continue
        status = check_a_norm(oracle, samples=samples, seed=seed + i)
        if status.verdict == VERIFIED:
            found.append(NormOneCandidate(t, status, est, seed, i))
        else:
            rejected["not_a_norm"] += 1
    log.info("norm-one search n=%d p=%s budget=%d: %d found, rejected %s", n, p, budget, len(found), rejected)
    return found
