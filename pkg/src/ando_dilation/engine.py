"""Finitely supported states of H + l2(B) and the dilation operators acting on them.

A :class:`DilationState` stores the H-component and a finite list of block
vectors; everything past the last stored block is zero, so norms and all
operator identities are exact up to floating point.

Operator kinds and block dimensions (n = dim H):

========================  ====  ============================================
kind                      bd    action on (h, b_1, b_2, ...)
========================  ====  ============================================
minimal-V1 / banach-V1    2n    (T1 h, S(D1 h, h_2), S(h_1, h_4), S(h_3, h_6), ...)
minimal-V2 / banach-V2    2n    (T2 h, (h_1', D2 h), (h_3', h_2'), ...), h' = S^-1 h
schaffer-i                n     (Ti h, Di h, b_1, b_2, ...)
naive-Vi                  2n    (Ti h, (Di h, 0), b_1, b_2, ...)
classical4-V1             4n    G W1 with G = U4 on every block
classical4-V2             4n    W2 G^-1
========================  ====  ============================================

Banach kinds use the identity in place of D1, D2.  For classical4, ``Wi`` is
the naive shift viewed on the stream of H-slots regrouped four at a time, so
each application moves the stream by half a block and puts (Di h, 0) in front.
With U4 (D1T2h, 0, D2h, 0) = (D2T1h, 0, D1h, 0) this gives commuting isometries.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .ando import build_classical_U4, build_S
from .errors import DimMismatch, MissingUnitary, NotUnitary
from .jsonio import vector_from_json, vector_to_json
from .linalg import adjoint, as_vector, operator_norm_2
from .pairs import ContractionPair, DefectData, defect_data, validate_pair

UNITARY_TOL = 1e-10


class OpKind(str, Enum):
    MINIMAL_V1 = "minimal-V1"
    MINIMAL_V2 = "minimal-V2"
    NAIVE_V1 = "naive-V1"
    NAIVE_V2 = "naive-V2"
    CLASSICAL4_V1 = "classical4-V1"
    CLASSICAL4_V2 = "classical4-V2"
    SCHAFFER_1 = "schaffer-1"
    SCHAFFER_2 = "schaffer-2"
    BANACH_V1 = "banach-V1"
    BANACH_V2 = "banach-V2"

    @property
    def index(self) -> int:
        return 1 if self.value.endswith("1") else 2

    @property
    def family(self) -> str:
        return self.value.rsplit("-", 1)[0]

    @property
    def is_banach(self) -> bool:
        return self.family == "banach"


_BLOCK_FACTOR = {"minimal": 2, "banach": 2, "naive": 2, "schaffer": 1, "classical4": 4}
_NEEDS_UNITARY = {"minimal", "banach", "classical4"}


def _trimmed(blocks: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.any(blocks != 0, axis=1))
    return blocks[: nz[-1] + 1] if nz.size else blocks[:0]


@dataclass(frozen=True, eq=False)
class DilationState:
    head: np.ndarray
    blocks: np.ndarray
    block_dim: int

    def __post_init__(self):
        head = np.ascontiguousarray(self.head, dtype=np.complex128)
        blocks = np.ascontiguousarray(self.blocks, dtype=np.complex128).reshape(-1, self.block_dim)
        # canonical form: only exact zeros are trimmed, near-zero blocks stay
        blocks = np.ascontiguousarray(_trimmed(blocks))
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return self.head.shape[0]

    @property
    def depth(self) -> int:
        return self.blocks.shape[0]

    def padded_blocks(self, depth: int) -> np.ndarray:
        out = np.zeros((depth, self.block_dim), dtype=np.complex128)
        k = min(depth, self.depth)
        out[:k] = self.blocks[:k]
        return out

    def flatten(self, depth: int | None = None) -> np.ndarray:
        depth = self.depth if depth is None else depth
        return np.concatenate([self.head, self.padded_blocks(depth).ravel()])

    def _combine(self, other: "DilationState", sign: float) -> "DilationState":
        if other.block_dim != self.block_dim or other.n != self.n:
            raise DimMismatch("states live in different dilation spaces")
        depth = max(self.depth, other.depth)
        return DilationState(
            self.head + sign * other.head,
            self.padded_blocks(depth) + sign * other.padded_blocks(depth),
            self.block_dim,
        )

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __rmul__(self, alpha):
        return DilationState(alpha * self.head, alpha * self.blocks, self.block_dim)

    def allclose(self, other: "DilationState", atol: float) -> bool:
        return state_norm(self - other) <= atol

    def to_json(self) -> dict[str, Any]:
        return {
            "head": vector_to_json(self.head),
            "blocks": [vector_to_json(b) for b in self.blocks],
            "block_dim": self.block_dim,
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "DilationState":
        bd = int(obj["block_dim"])
        head = vector_from_json(obj["head"])
        blocks = [vector_from_json(b) for b in obj["blocks"]]
        if any(b.shape[0] != bd for b in blocks):
            raise DimMismatch(f"all blocks must have dimension {bd}")
        arr = np.array(blocks, dtype=np.complex128).reshape(len(blocks), bd)
        return cls(head, arr, bd)


def embed(h, block_dim: int) -> DilationState:
    """The inclusion of H into the dilation space."""
    h = as_vector(h, "h")
    return DilationState(h, np.zeros((0, block_dim)), block_dim)


def zero_state(n: int, block_dim: int) -> DilationState:
    return embed(np.zeros(n), block_dim)


def project_head(state: DilationState) -> np.ndarray:
    return state.head.copy()


@dataclass(frozen=True, eq=False)
class DilationOperatorSpec:
    """One operator of a dilation family, bundled with what it needs to act.

    ``norm`` is only used by banach kinds: an object with ``base`` (norm on H)
    and ``block`` (mixed norm on the 2n-dimensional block space).
    """

    kind: OpKind
    pair: ContractionPair
    defects: DefectData | None = None
    unitary: np.ndarray | None = None
    unitary_inv: np.ndarray | None = None
    norm: Any = None
    check: InitVar[bool] = True
    _t: np.ndarray = field(init=False, repr=False)
    _d: np.ndarray = field(init=False, repr=False)

    def __post_init__(self, check: bool):
        kind = OpKind(self.kind)
        object.__setattr__(self, "kind", kind)
        n = self.pair.n
        needs = kind.family in _NEEDS_UNITARY
        if needs and self.unitary is None:
            raise MissingUnitary(f"{kind.value} requires a unitary")
        if not kind.is_banach and self.defects is None:
            object.__setattr__(self, "defects", defect_data(self.pair))
        if self.unitary is not None:
            u = np.ascontiguousarray(self.unitary, dtype=np.complex128)
            want = self.block_dim
            if u.shape != (want, want):
                raise DimMismatch(f"{kind.value} needs a {want}x{want} unitary, got {u.shape}")
            if self.unitary_inv is None:
                inv = np.linalg.inv(u) if kind.is_banach else adjoint(u)
            else:
                inv = self.unitary_inv
            inv = np.ascontiguousarray(inv, dtype=np.complex128)
            if check:
                if kind.is_banach:
                    res = operator_norm_2(u @ inv - np.eye(want))
                else:
                    res = operator_norm_2(adjoint(u) @ u - np.eye(want))
                if res > UNITARY_TOL:
                    raise NotUnitary(f"{kind.value}: unitary residual {res:.3e} > {UNITARY_TOL:.0e}")
            object.__setattr__(self, "unitary", u)
            object.__setattr__(self, "unitary_inv", inv)
        t = self.pair.t1 if kind.index == 1 else self.pair.t2
        if kind.is_banach:
            d = np.eye(n, dtype=np.complex128)
        else:
            d = self.defects.d1 if kind.index == 1 else self.defects.d2
        object.__setattr__(self, "_t", np.ascontiguousarray(t))
        object.__setattr__(self, "_d", np.ascontiguousarray(d))

    @property
    def block_dim(self) -> int:
        return _BLOCK_FACTOR[self.kind.family] * self.pair.n

    @property
    def operator(self) -> np.ndarray:
        return self._t


def apply_op(spec: DilationOperatorSpec, state: DilationState, backend=None) -> DilationState:
    k = backend or _kernels.kernels
    if state.block_dim != spec.block_dim or state.n != spec.pair.n:
        raise DimMismatch(
            f"{spec.kind.value} acts on (n={spec.pair.n}, bd={spec.block_dim}); "
            f"state has (n={state.n}, bd={state.block_dim})"
        )
    family, idx = spec.kind.family, spec.kind.index
    h, b = state.head, state.blocks
    if family in ("minimal", "banach"):
        if idx == 1:
            out = k.minimal_v1(spec._t, spec._d, spec.unitary, h, b)
        else:
            out = k.minimal_v2(spec._t, spec._d, spec.unitary_inv, h, b)
    elif family in ("schaffer", "naive"):
        out = k.prepend(spec._t, spec._d, h, b)
    elif family == "classical4":
        if idx == 1:
            out = k.classical_v1(spec._t, spec._d, spec.unitary, h, b)
        else:
            out = k.classical_v2(spec._t, spec._d, spec.unitary_inv, h, b)
    else:  # pragma: no cover
        raise ValueError(spec.kind)
    return DilationState(out[0], out[1], state.block_dim)


def apply_word(
    specs: Mapping[int, DilationOperatorSpec] | Sequence[DilationOperatorSpec],
    word: Iterable[int],
    state: DilationState,
    backend=None,
) -> DilationState:
    """Apply the letters of ``word`` (1 or 2) one after another, left to right."""
    lookup = specs if isinstance(specs, Mapping) else {i + 1: s for i, s in enumerate(specs)}
    for letter in word:
        state = apply_op(lookup[int(letter)], state, backend)
    return state


def state_norm(state: DilationState, oracle=None) -> float:
    """l2 aggregation of the head norm and the block norms.

    With ``oracle`` the head is measured by ``oracle.base`` and each block by
    ``oracle.block`` (the mixed pair norm); otherwise everything is Euclidean.
    """
    if oracle is None:
        return float(np.sqrt(np.vdot(state.head, state.head).real + np.vdot(state.blocks, state.blocks).real))
    if state.n != oracle.base.dim or state.block_dim != oracle.block.dim:
        raise DimMismatch("oracle dimensions do not match the state")
    total = float(oracle.base(state.head)) ** 2
    if state.depth:
        total += float(np.sum(oracle.block(state.blocks) ** 2))
    return float(np.sqrt(total))


# --- family constructors --------------------------------------------------


def minimal_specs(pair: ContractionPair, s: np.ndarray | None = None) -> tuple[DilationOperatorSpec, DilationOperatorSpec]:
    defects = defect_data(pair)
    if s is None:
        s = build_S(pair).s
    return (
        DilationOperatorSpec(OpKind.MINIMAL_V1, pair, defects, s),
        DilationOperatorSpec(OpKind.MINIMAL_V2, pair, defects, s),
    )


def classical4_specs(pair: ContractionPair, u4: np.ndarray | None = None) -> tuple[DilationOperatorSpec, DilationOperatorSpec]:
    defects = defect_data(pair)
    if u4 is None:
        u4 = build_classical_U4(pair, defects)
    return (
        DilationOperatorSpec(OpKind.CLASSICAL4_V1, pair, defects, u4),
        DilationOperatorSpec(OpKind.CLASSICAL4_V2, pair, defects, u4),
    )


def naive_specs(pair: ContractionPair) -> tuple[DilationOperatorSpec, DilationOperatorSpec]:
    defects = defect_data(pair)
    return (
        DilationOperatorSpec(OpKind.NAIVE_V1, pair, defects),
        DilationOperatorSpec(OpKind.NAIVE_V2, pair, defects),
    )


def schaffer_spec(t) -> DilationOperatorSpec:
    """One-variable dilation of a single contraction T, block space H."""
    t = np.asarray(t, dtype=np.complex128)
    pair = validate_pair(t, np.zeros_like(t), require_strict=False)
    return DilationOperatorSpec(OpKind.SCHAFFER_1, pair)
