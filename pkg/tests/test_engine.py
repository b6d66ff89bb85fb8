import numpy as np
import pytest

from ando_dilation._kernels import numpy_impl
from ando_dilation.engine import (
    DilationOperatorSpec,
    DilationState,
    OpKind,
    apply_op,
    apply_word,
    classical4_specs,
    embed,
    minimal_specs,
    naive_specs,
    project_head,
    schaffer_spec,
    state_norm,
    zero_state,
)
from ando_dilation.errors import DimMismatch, MissingUnitary, NotUnitary
from ando_dilation.pairs import generate_commuting_pair, scalar_pair, validate_pair

R = np.sqrt(0.75)


def test_scalar_half_half_v1_after_v2():
    v1, v2 = minimal_specs(scalar_pair(0.5, 0.5))
    out = apply_op(v1, apply_op(v2, embed([1.0], 2)))
    assert out.head[0] == pytest.approx(0.25)
    # S (D1 T2, D2) = (D1, D2 T1) = sqrt(3/4) (1, 1/2)
    np.testing.assert_allclose(out.blocks, [[R, R / 2]], atol=1e-15)


def test_scalar_half_half_v2_after_v1():
    v1, v2 = minimal_specs(scalar_pair(0.5, 0.5))
    out = apply_op(v2, apply_op(v1, embed([1.0], 2)))
    assert out.head[0] == pytest.approx(0.25)
    # the second block is zero up to rounding from S^-1 S
    np.testing.assert_allclose(out.padded_blocks(2), [[R, R / 2], [0, 0]], atol=1e-15)


def test_zero_pair_v1():
    v1, v2 = minimal_specs(validate_pair(np.zeros((2, 2)), np.zeros((2, 2))))
    out = apply_op(v1, embed([1.0, 2.0], 4))
    np.testing.assert_allclose(out.head, [0, 0])
    np.testing.assert_allclose(out.blocks, [[0, 0, 1, 2]], atol=1e-15)


def test_schaffer_single_step():
    spec = schaffer_spec([[0.6]])
    out = apply_op(spec, embed([1.0], 1))
    assert out.head[0] == pytest.approx(0.6)
    np.testing.assert_allclose(out.blocks, [[0.8]])
    out = apply_op(spec, out)
    np.testing.assert_allclose(out.blocks, [[0.48], [0.8]])


def test_naive_prepends_defect():
    n1, _ = naive_specs(scalar_pair(0.6, 0.0))
    out = apply_op(n1, embed([1.0], 2))
    np.testing.assert_allclose(out.blocks, [[0.8, 0.0]])


def test_apply_word_order():
    pair = generate_commuting_pair(0, 3)
    v1, v2 = minimal_specs(pair)
    x = embed([1.0, 2j, -1.0], 6)
    by_hand = apply_op(v1, apply_op(v2, apply_op(v2, x)))
    assert apply_word([v1, v2], [2, 2, 1], x).allclose(by_hand, 0.0)
    assert apply_word({1: v1, 2: v2}, (2, 2, 1), x).allclose(by_hand, 0.0)


def test_backends_give_same_states():
    pair = generate_commuting_pair(1, 4, method="codiagonal")
    for spec in (*minimal_specs(pair), *classical4_specs(pair)):
        rng = np.random.default_rng(0)
        x = DilationState(rng.standard_normal(4), rng.standard_normal((3, spec.block_dim)), spec.block_dim)
        a = apply_op(spec, x)
        b = apply_op(spec, x, backend=numpy_impl)
        assert a.allclose(b, 1e-12)


def test_state_arithmetic_and_trimming():
    a = DilationState([1.0], [[1.0, 0.0], [0.0, 0.0]], 2)
    assert a.depth == 1
    b = DilationState([0.0], [[0.0, 0.0], [0.0, 3.0]], 2)
    c = a + b
    assert c.depth == 2
    np.testing.assert_allclose(c.flatten(), [1, 1, 0, 0, 3])
    assert (c - b).allclose(a, 0.0)
    assert state_norm(2 * a) == pytest.approx(2 * np.sqrt(2))
    assert zero_state(3, 6).depth == 0
    np.testing.assert_array_equal(project_head(c), [1.0])


def test_state_json_roundtrip():
    x = DilationState([1 + 2j], [[0.5, -1j]], 2)
    y = DilationState.from_json(x.to_json())
    assert y.allclose(x, 0.0) and y.block_dim == 2


def test_state_json_rejects_bad_blocks():
    obj = DilationState([1.0], [[0.5, 1.0]], 2).to_json()
    obj["block_dim"] = 3
    with pytest.raises(DimMismatch):
        DilationState.from_json(obj)


def test_dim_mismatch_on_apply():
    v1, _ = minimal_specs(generate_commuting_pair(0, 2))
    with pytest.raises(DimMismatch):
        apply_op(v1, embed([1.0, 0.0], 8))


def test_spec_validation():
    pair = generate_commuting_pair(0, 2)
    with pytest.raises(MissingUnitary):
        DilationOperatorSpec(OpKind.MINIMAL_V1, pair)
    with pytest.raises(DimMismatch):
        DilationOperatorSpec(OpKind.MINIMAL_V1, pair, unitary=np.eye(3))
    with pytest.raises(NotUnitary):
        DilationOperatorSpec(OpKind.MINIMAL_V1, pair, unitary=2 * np.eye(4))
    spec = DilationOperatorSpec("minimal-V2", pair, unitary=np.eye(4))
    assert spec.kind is OpKind.MINIMAL_V2 and spec.block_dim == 4


def test_opkind_properties():
    assert OpKind.CLASSICAL4_V2.family == "classical4"
    assert OpKind.CLASSICAL4_V2.index == 2
    assert OpKind.BANACH_V1.is_banach
    assert not OpKind.SCHAFFER_1.is_banach


def test_state_norm_with_oracle_dimension_check():
    class Fake:
        class base:
            dim = 2

        class block:
            dim = 4

    with pytest.raises(DimMismatch):
        state_norm(embed([1.0], 2), Fake)
