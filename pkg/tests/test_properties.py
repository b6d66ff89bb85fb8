import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ando_dilation import banach
from ando_dilation._kernels import numba_impl, numpy_impl
from ando_dilation.ando import build_S
from ando_dilation.engine import DilationState, apply_op, classical4_specs, minimal_specs, state_norm
from ando_dilation.linalg import hermitian_sqrt, orthonormal_basis, orthonormal_complement
from ando_dilation.pairs import METHODS, generate_commuting_pair, validate_pair

SETTINGS = settings(max_examples=40, deadline=None)

pairs = st.builds(
    lambda seed, n, method, r1, r2: generate_commuting_pair(seed, n, method=method, target_norms=(r1, r2)),
    st.integers(0, 10_000),
    st.integers(1, 6),
    st.sampled_from(METHODS),
    st.floats(0.05, 0.95),
    st.floats(0.05, 0.95),
)


def _state(seed, n, bd, depth):
    rng = np.random.default_rng(seed)
    return DilationState(
        rng.standard_normal(n) + 1j * rng.standard_normal(n),
        rng.standard_normal((depth, bd)) + 1j * rng.standard_normal((depth, bd)),
        bd,
    )


@SETTINGS
@given(st.integers(0, 10_000), st.integers(1, 6))
def test_sqrt_squares_back(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = a @ a.conj().T
    root = hermitian_sqrt(m)
    np.testing.assert_allclose(root @ root, m, atol=1e-10 * max(1.0, np.linalg.norm(m, 2)))
    assert np.linalg.eigvalsh(root).min() >= -1e-10


@SETTINGS
@given(st.integers(0, 10_000), st.integers(2, 7), st.integers(0, 3))
def test_basis_plus_complement_is_unitary(seed, dim, k):
    k = min(k, dim)
    rng = np.random.default_rng(seed)
    b = orthonormal_basis(rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k)))
    full = np.hstack([b, orthonormal_complement(b, dim)])
    np.testing.assert_allclose(full.conj().T @ full, np.eye(dim), atol=1e-12)


@SETTINGS
@given(pairs)
def test_S_unitary_and_interpolating(pair):
    s = build_S(pair)
    assert s.unitarity_residual <= 1e-10
    assert s.interp_residual <= 1e-9


@SETTINGS
@given(pairs, st.integers(0, 10_000), st.integers(0, 8))
def test_minimal_isometry_and_commutation(pair, seed, depth):
    v1, v2 = minimal_specs(pair)
    x = _state(seed, pair.n, 2 * pair.n, depth)
    nx = state_norm(x)
    for spec in (v1, v2):
        assert abs(state_norm(apply_op(spec, x)) - nx) <= 1e-10 * max(1.0, nx)
    diff = apply_op(v1, apply_op(v2, x)) - apply_op(v2, apply_op(v1, x))
    assert state_norm(diff) <= 1e-10 * max(1.0, nx)


@SETTINGS
@given(pairs, st.integers(0, 10_000), st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_operators_are_linear(pair, seed, alpha):
    v1, v2 = minimal_specs(pair)
    x = _state(seed, pair.n, 2 * pair.n, 3)
    y = _state(seed + 1, pair.n, 2 * pair.n, 5)
    for spec in (v1, v2):
        lhs = apply_op(spec, alpha * x + y)
        rhs = alpha * apply_op(spec, x) + apply_op(spec, y)
        assert state_norm(lhs - rhs) <= 1e-10 * (1 + abs(alpha)) * (state_norm(x) + state_norm(y))


@SETTINGS
@given(pairs, st.integers(0, 10_000), st.integers(0, 6))
def test_backends_agree(pair, seed, depth):
    if numba_impl is None:
        return
    for spec in (*minimal_specs(pair), *classical4_specs(pair)):
        x = _state(seed, pair.n, spec.block_dim, depth)
        a = apply_op(spec, x, backend=numba_impl)
        b = apply_op(spec, x, backend=numpy_impl)
        assert state_norm(a - b) <= 1e-12 * max(1.0, state_norm(x))


@SETTINGS
@given(
    st.integers(1, 5),
    st.sampled_from([1.0, 1.5, 2.0, 3.0, np.inf]),
    st.integers(0, 10_000),
    st.complex_numbers(max_magnitude=100, allow_nan=False, allow_infinity=False),
)
def test_lp_norm_axioms(n, p, seed, alpha):
    base = banach.lp_oracle(n, p)
    rng = np.random.default_rng(seed)
    x, y = rng.standard_normal((2, n)) + 1j * rng.standard_normal((2, n))
    assert base(x + y) <= base(x) + base(y) + 1e-12
    assert abs(base(alpha * x) - abs(alpha) * base(x)) <= 1e-12 * max(1.0, abs(alpha) * base(x))


@SETTINGS
@given(pairs, st.sampled_from([1.0, 1.5, 2.0, 3.0, np.inf]), st.integers(0, 1000))
def test_identities_hold_for_lp_scaled_pairs(pair, p, seed):
    # rescale into the unit ball of every l_p operator norm
    scale = max(banach.operator_p_norm(t, q).upper for t in (pair.t1, pair.t2) for q in (1.0, np.inf))
    pair = validate_pair(0.95 * pair.t1 / scale, 0.95 * pair.t2 / scale)
    base = banach.lp_oracle(pair.n, p)
    assert banach.product_a_norm_identity(pair, base, samples=20, tol=1e-12, seed=seed).passed
    assert banach.qhat_isometry_check(pair, base, samples=20, tol=1e-12, seed=seed).passed


@SETTINGS
@given(st.integers(0, 10_000), st.integers(1, 5), st.sampled_from([1.0, 1.3, 2.0, 4.0, np.inf]))
def test_p_norm_estimate_bounds(seed, n, p):
    rng = np.random.default_rng(seed)
    t = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    est = banach.operator_p_norm(t, p)
    x = rng.standard_normal((200, n)) + 1j * rng.standard_normal((200, n))
    sampled = (np.linalg.norm(x @ t.T, ord=p, axis=1) / np.linalg.norm(x, ord=p, axis=1)).max()
    assert sampled <= est.value * (1 + 1e-9)
    assert est.value <= est.upper * (1 + 1e-12)
