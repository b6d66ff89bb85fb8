"""Executable checks for the dilation properties.

Every check returns a :class:`VerificationReport` and never raises on a failed
property.  Checks are deterministic for a fixed ``seed``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .engine import (
    DilationOperatorSpec,
    DilationState,
    apply_op,
    embed,
    state_norm,
)
from .linalg import operator_norm_2, singular_values
from .pairs import ContractionPair, defect_data


@dataclass
class VerificationReport:
    check: str
    passed: bool
    residual: float
    tol: float
    trials: int
    params: dict[str, Any] = field(default_factory=dict)
    witness: Any = None
    expect_pass: bool = True

    @property
    def as_expected(self) -> bool:
        return self.passed == self.expect_pass

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "pass": bool(self.passed),
            "expected_pass": bool(self.expect_pass),
            "residual": float(self.residual),
            "tol": float(self.tol),
            "trials": int(self.trials),
            "params": self.params,
            "witness": self.witness,
        }


def random_state(rng: np.random.Generator, n: int, block_dim: int, max_depth: int) -> DilationState:
    depth = int(rng.integers(0, max_depth + 1))
    shape = (depth, block_dim)
    head = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    blocks = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return DilationState(head, blocks, block_dim)


def _norm_for(spec: DilationOperatorSpec):
    return spec.norm if spec.kind.is_banach else None


def check_isometry(
    spec: DilationOperatorSpec,
    trials: int = 1000,
    max_support_depth: int = 8,
    tol: float = 1e-10,
    seed: int = 0,
) -> VerificationReport:
    """Sampled ``| |Vx| - |x| | / max(1, |x|)``."""
    rng = np.random.default_rng(seed)
    oracle = _norm_for(spec)
    worst, witness = 0.0, None
    for _ in range(trials):
        x = random_state(rng, spec.pair.n, spec.block_dim, max_support_depth)
        nx = state_norm(x, oracle)
        res = abs(state_norm(apply_op(spec, x), oracle) - nx) / max(1.0, nx)
        if res > worst or witness is None:
            worst, witness = res, x
    return VerificationReport(
        check=f"isometry[{spec.kind.value}]",
        passed=worst <= tol,
        residual=worst,
        tol=tol,
        trials=trials,
        params={"max_support_depth": max_support_depth, "seed": seed},
        witness=witness.to_json() if witness is not None else None,
    )


def check_commutation(
    spec1: DilationOperatorSpec,
    spec2: DilationOperatorSpec,
    trials: int = 1000,
    tol: float = 1e-10,
    max_support_depth: int = 8,
    seed: int = 0,
) -> VerificationReport:
    """Sampled ``|V1 V2 x - V2 V1 x| / max(1, |x|)``."""
    rng = np.random.default_rng(seed)
    oracle = _norm_for(spec1)
    worst, witness = 0.0, None
    for _ in range(trials):
        x = random_state(rng, spec1.pair.n, spec1.block_dim, max_support_depth)
        diff = apply_op(spec1, apply_op(spec2, x)) - apply_op(spec2, apply_op(spec1, x))
        res = state_norm(diff, oracle) / max(1.0, state_norm(x, oracle))
        if res > worst or witness is None:
            worst, witness = res, x
    return VerificationReport(
        check=f"commutation[{spec1.kind.family}]",
        passed=worst <= tol,
        residual=worst,
        tol=tol,
        trials=trials,
        params={"max_support_depth": max_support_depth, "seed": seed},
        witness=witness.to_json() if witness is not None else None,
    )


def _multidegrees(max_total_degree: int):
    for total in range(max_total_degree + 1):
        for s1 in range(total, -1, -1):
            yield s1, total - s1


def check_dilation_identity(
    pair: ContractionPair,
    spec1: DilationOperatorSpec,
    spec2: DilationOperatorSpec,
    max_total_degree: int = 6,
    tol: float = 1e-9,
    interleavings: int = 10,
    seed: int = 0,
) -> VerificationReport:
    """Head of V1^s1 V2^s2 e_j against T1^s1 T2^s2 e_j, plus shuffled words.

    Words are applied letter by letter in order, so the sorted word
    ``(2,)*s2 + (1,)*s1`` is V1^s1 V2^s2.  For each multidegree with both
    exponents positive, ``interleavings`` random orderings of the same letters
    are checked as well.
    """
    rng = np.random.default_rng(seed)
    n, bd = pair.n, spec1.block_dim
    lookup = {1: spec1, 2: spec2}
    worst, witness, trials = 0.0, None, 0
    basis = np.eye(n, dtype=np.complex128)
    pw1 = [np.linalg.matrix_power(pair.t1, k) for k in range(max_total_degree + 1)]
    pw2 = [np.linalg.matrix_power(pair.t2, k) for k in range(max_total_degree + 1)]
    for s1, s2 in _multidegrees(max_total_degree):
        target = pw1[s1] @ pw2[s2]
        words = [(2,) * s2 + (1,) * s1]
        if s1 and s2:
            for _ in range(interleavings):
                words.append(tuple(rng.permutation(words[0])))
        for word in words:
            states = [embed(basis[j], bd) for j in range(n)]
            for letter in word:
                states = [apply_op(lookup[letter], st) for st in states]
            got = np.stack([st.head for st in states], axis=1)
            res = operator_norm_2(got - target) if n else 0.0
            trials += 1
            if res > worst or witness is None:
                worst, witness = res, {"s1": s1, "s2": s2, "word": [int(c) for c in word]}
    return VerificationReport(
        check=f"dilation_identity[{spec1.kind.family}]",
        passed=worst <= tol,
        residual=worst,
        tol=tol,
        trials=trials,
        params={"max_total_degree": max_total_degree, "interleavings": interleavings, "seed": seed},
        witness=witness,
    )


def check_single_dilation_identity(
    spec: DilationOperatorSpec, max_degree: int = 8, tol: float = 1e-10
) -> VerificationReport:
    """One-variable form: head of V^s e_j against T^s e_j."""
    n, t = spec.pair.n, spec.operator
    states = [embed(e, spec.block_dim) for e in np.eye(n, dtype=np.complex128)]
    power = np.eye(n, dtype=np.complex128)
    worst, witness = 0.0, {"s": 0}
    for s in range(1, max_degree + 1):
        states = [apply_op(spec, st) for st in states]
        power = t @ power
        res = operator_norm_2(np.stack([st.head for st in states], axis=1) - power)
        if res > worst:
            worst, witness = res, {"s": s}
    return VerificationReport(
        check=f"dilation_identity[{spec.kind.value}]",
        passed=worst <= tol,
        residual=worst,
        tol=tol,
        trials=max_degree + 1,
        params={"max_degree": max_degree},
        witness=witness,
    )


def orbit_matrix(
    spec1: DilationOperatorSpec,
    spec2: DilationOperatorSpec | None,
    depth_m: int,
    degree_cap: int,
) -> np.ndarray:
    """Columns are V1^s1 V2^s2 e_j truncated to the head and first ``depth_m`` blocks."""
    n, bd = spec1.pair.n, spec1.block_dim
    cols = []
    for j in range(n):
        e = np.zeros(n, dtype=np.complex128)
        e[j] = 1.0
        # walk V2 powers once, then V1 powers from each
        base = embed(e, bd)
        for s2 in range(degree_cap + 1 if spec2 is not None else 1):
            st = base
            for s1 in range(degree_cap - s2 + 1):
                cols.append(st.flatten(depth_m))
                if s1 < degree_cap - s2:
                    st = apply_op(spec1, st)
            if spec2 is not None and s2 < degree_cap:
                base = apply_op(spec2, base)
    return np.stack(cols, axis=1)


def check_minimality(
    pair: ContractionPair,
    spec1: DilationOperatorSpec,
    spec2: DilationOperatorSpec | None,
    depth_m: int,
    degree_cap: int,
    rank_tol: float = 1e-8,
) -> VerificationReport:
    """Rank of the truncated orbit against the full truncated dimension ``n + depth_m*bd``.

    ``spec2=None`` runs the one-variable version (orbit of a single operator).
    """
    n, bd = pair.n, spec1.block_dim
    expected = n + depth_m * bd
    sv = singular_values(orbit_matrix(spec1, spec2, depth_m, degree_cap))
    rank = int(np.count_nonzero(sv > rank_tol * sv[0])) if sv.size and sv[0] > 1e-12 else 0
    smallest_kept = float(sv[rank - 1] / sv[0]) if rank else 0.0
    family = spec1.kind.family if spec2 is not None else spec1.kind.value
    return VerificationReport(
        check=f"minimality[{family}]",
        passed=rank == expected,
        residual=float(expected - rank),
        tol=0.0,
        trials=int(sv.size),
        params={
            "depth": depth_m,
            "degree_cap": degree_cap,
            "rank": rank,
            "expected_rank": expected,
            "rank_tol": rank_tol,
            "smallest_retained_sv_rel": smallest_kept,
        },
    )


def check_S_interpolation(
    pair: ContractionPair, S: np.ndarray, trials: int = 200, tol: float = 1e-9, seed: int = 0
) -> VerificationReport:
    """Sampled ``|S(D1T2h, D2h) - (D1h, D2T1h)| / |h|``."""
    rng = np.random.default_rng(seed)
    d = defect_data(pair)
    n = pair.n
    h = rng.standard_normal((n, trials)) + 1j * rng.standard_normal((n, trials))
    src = np.vstack([d.d1 @ pair.t2 @ h, d.d2 @ h])
    dst = np.vstack([d.d1 @ h, d.d2 @ pair.t1 @ h])
    res = np.linalg.norm(S @ src - dst, axis=0) / np.linalg.norm(h, axis=0)
    k = int(np.argmax(res))
    return VerificationReport(
        check="S_interpolation",
        passed=bool(res[k] <= tol),
        residual=float(res[k]),
        tol=tol,
        trials=trials,
        params={"seed": seed},
        witness={"h": {"re": h[:, k].real.tolist(), "im": h[:, k].imag.tolist()}},
    )



def check_first_block_identity(
    pair: ContractionPair,
    spec1: DilationOperatorSpec,
    spec2: DilationOperatorSpec,
    trials: int = 200,
    tol: float = 1e-10,
    seed: int = 0,
) -> VerificationReport:
    """Head and first block of V1 V2 embed(h) and V2 V1 embed(h) against closed forms.

    V1 V2 embed(h) = (T1T2 h, S(D1T2 h, D2 h)) and V2 V1 embed(h) = (T1T2 h, (D1 h, D2T1 h));
    the two agree because S maps the first pair of blocks to the second.
    """
    rng = np.random.default_rng(seed)
    d = defect_data(pair)
    s = spec1.unitary
    t = pair.product
    worst = 0.0
    for _ in range(trials):
        h = rng.standard_normal(pair.n) + 1j * rng.standard_normal(pair.n)
        e = embed(h, spec1.block_dim)
        a = apply_op(spec1, apply_op(spec2, e))
        b = apply_op(spec2, apply_op(spec1, e))
        want_a = s @ np.concatenate([d.d1 @ pair.t2 @ h, d.d2 @ h])
        want_b = np.concatenate([d.d1 @ h, d.d2 @ pair.t1 @ h])
        scale = max(1.0, float(np.linalg.norm(h)))
        for got, blk in ((a, want_a), (b, want_b)):
            res = max(
                float(np.linalg.norm(got.head - t @ h)),
                float(np.linalg.norm(got.padded_blocks(1)[0] - blk)),
            )
            worst = max(worst, res / scale)
    return VerificationReport(
        check=f"first_block[{spec1.kind.family}]",
        passed=worst <= tol,
        residual=worst,
        tol=tol,
        trials=trials,
        params={"seed": seed},
    )
