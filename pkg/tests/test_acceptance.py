"""Acceptance criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""

import json

import numpy as np
import pytest

from ando_dilation import banach
from ando_dilation.ando import build_S, build_subspaces
from ando_dilation.cli import main
from ando_dilation.engine import (
    apply_op,
    classical4_specs,
    embed,
    minimal_specs,
    naive_specs,
    schaffer_spec,
)
from ando_dilation.linalg import adjoint, operator_norm_2
from ando_dilation.pairs import defect_data
from ando_dilation.verify import (
    check_commutation,
    check_dilation_identity,
    check_first_block_identity,
    check_isometry,
    check_minimality,
    check_single_dilation_identity,
)

P_VALUES = (1.0, 1.5, 2.0, 3.0, np.inf)


def _worst(pairs, fn):
    return max(fn(pair) for pair in pairs)


def test_criterion_01_defect_identities(fixture_pairs):
    assert len(fixture_pairs) == 100
    assert {p.n for p in fixture_pairs} == set(range(1, 9))
    for pair in fixture_pairs:
        d = defect_data(pair)
        eye = np.eye(pair.n)
        for t, dt in ((pair.t1, d.d1), (pair.t2, d.d2)):
            assert operator_norm_2(dt @ dt - (eye - adjoint(t) @ t)) <= 1e-10
        assert d.marginT > 1e-8


def test_criterion_02_S_construction(fixture_pairs):
    rng = np.random.default_rng(2)
    for pair in fixture_pairs:
        sub = build_subspaces(pair)
        s = build_S(pair, sub)
        assert s.unitarity_residual <= 1e-10
        assert s.interp_residual <= 1e-9
        h = rng.standard_normal((pair.n, 1000)) + 1j * rng.standard_normal((pair.n, 1000))
        h /= np.linalg.norm(h, axis=0)
        dt = defect_data(pair).dT
        gap = np.abs(np.linalg.norm(sub.g1 @ h, axis=0) - np.linalg.norm(dt @ h, axis=0))
        assert gap.max() <= 1e-10


def test_criterion_03_isometry_commutation(fixture_pairs):
    for i, pair in enumerate(fixture_pairs):
        v1, v2 = minimal_specs(pair)
        for spec in (v1, v2):
            r = check_isometry(spec, trials=1000, max_support_depth=8, tol=1e-10, seed=i)
            assert r.passed, (i, r.residual)
        r = check_commutation(v1, v2, trials=1000, max_support_depth=8, tol=1e-10, seed=i)
        assert r.passed, (i, r.residual)
        r = check_first_block_identity(pair, v1, v2, tol=1e-10, seed=i)
        assert r.passed, (i, r.residual)


def test_criterion_04_dilation_identity(fixture_pairs):
    for i, pair in enumerate(fixture_pairs):
        v1, v2 = minimal_specs(pair)
        r = check_dilation_identity(pair, v1, v2, max_total_degree=6, tol=1e-9, interleavings=10, seed=i)
        assert r.passed, (i, r.residual, r.witness)
        assert r.trials == 28 + 10 * 15


def test_criterion_05_minimality(fixture_pairs):
    small = [p for p in fixture_pairs if p.n <= 4]
    assert small
    for pair in small:
        v1, v2 = minimal_specs(pair)
        for m in (1, 2, 3, 4):
            r = check_minimality(pair, v1, v2, m, m + 2, rank_tol=1e-8)
            assert r.params["rank"] == pair.n * (1 + 2 * m), (pair.meta, m, r.params)


def test_criterion_06_naive_fails_commutation(fixture_pairs):
    failures = 0
    for i, pair in enumerate(fixture_pairs):
        n1, n2 = naive_specs(pair)
        r = check_commutation(n1, n2, trials=1000, tol=1e-3, seed=i)
        failures += r.residual > 1e-3
    assert failures >= 95, failures


def test_criterion_06_classical4_dilates_but_not_minimal(fixture_pairs):
    for i, pair in enumerate(fixture_pairs):
        c1, c2 = classical4_specs(pair)
        for spec in (c1, c2):
            assert check_isometry(spec, trials=1000, tol=1e-10, seed=i).passed
        assert check_commutation(c1, c2, trials=1000, tol=1e-10, seed=i).passed
        assert check_dilation_identity(pair, c1, c2, max_total_degree=6, tol=1e-9, seed=i).passed
        r = check_minimality(pair, c1, c2, 2, 4)
        assert r.params["rank"] < pair.n * (1 + 4 * 2), (i, r.params)


def test_criterion_07_single_contraction_baseline(fixture_pairs):
    for pair in fixture_pairs:
        for t in (pair.t1, pair.t2):
            spec = schaffer_spec(t)
            assert check_single_dilation_identity(spec, max_degree=8, tol=1e-10).passed
            if pair.n <= 4:
                for m in range(1, 5):
                    r = check_minimality(spec.pair, spec, None, m, m + 2)
                    assert r.params["rank"] == pair.n * (1 + m), (pair.meta, m, r.params)


@pytest.mark.parametrize("p", P_VALUES, ids=lambda p: f"p{p}")
def test_criterion_08_identities(lp_fixture_pairs, p):
    assert len(lp_fixture_pairs) == 50
    for i, pair in enumerate(lp_fixture_pairs):
        base = banach.lp_oracle(pair.n, p)
        r1 = banach.product_a_norm_identity(pair, base, tol=1e-12, seed=i)
        r2 = banach.qhat_isometry_check(pair, base, tol=1e-12, seed=i)
        assert r1.passed and r2.passed, (i, r1.residual, r2.residual)


def test_criterion_08_margin_equals_one_minus_product_norm(lp_fixture_pairs):
    # sigma_min(I - T) >= 1 - |T| always; equality needs the norm to be attained
    # along a direction where T acts as a positive multiple, which generic pairs lack
    gaps = []
    for pair in lp_fixture_pairs:
        r = banach.intersection_check(pair, banach.lp_oracle(pair.n, 2.0))
        gaps.append(abs(r.params["margin"] - (1.0 - r.params["product_norm_2"])))
    bad = sum(g > 1e-10 for g in gaps)
    assert bad == 0, f"{bad}/{len(gaps)} fixtures off by up to {max(gaps):.3e}"


def test_criterion_08_margin_lower_bound(lp_fixture_pairs):
    for pair in lp_fixture_pairs:
        r = banach.intersection_check(pair, banach.lp_oracle(pair.n, 2.0))
        assert r.passed
        assert r.params["margin"] >= r.params["lower_bound"] - 1e-12


def test_criterion_08_p2_pipeline(lp_fixture_pairs):
    for i, pair in enumerate(lp_fixture_pairs):
        base = banach.lp_oracle(pair.n, 2.0)
        s = build_S(pair).s
        b1, b2 = banach.build_banach_dilation(pair, base, banach.hilbert_S_to_banach_S(pair, s), seed=i)
        for spec in (b1, b2):
            assert check_isometry(spec, trials=1000, tol=1e-9, seed=i).passed
        assert check_commutation(b1, b2, trials=1000, tol=1e-9, seed=i).passed
        assert check_dilation_identity(pair, b1, b2, max_total_degree=6, tol=1e-9, seed=i).passed

        # cross-engine agreement after the defect coordinate change
        m1, m2 = minimal_specs(pair, s)
        d = defect_data(pair)
        rng = np.random.default_rng(i)
        for _ in range(10):
            h = rng.standard_normal(pair.n) + 1j * rng.standard_normal(pair.n)
            xh, xb = embed(h, 2 * pair.n), embed(h, 2 * pair.n)
            for letter in rng.integers(1, 3, size=6):
                xh = apply_op(m1 if letter == 1 else m2, xh)
                xb = apply_op(b1 if letter == 1 else b2, xb)
            mapped = banach.hilbert_to_banach_state(xh, d)
            depth = max(mapped.depth, xb.depth)
            gap = np.abs(mapped.flatten(depth) - xb.flatten(depth)).max()
            assert gap <= 1e-9 * max(1.0, np.linalg.norm(h)), (i, gap)


def test_criterion_09_verified_for_hilbert_fixtures(fixture_pairs):
    for i, pair in enumerate(fixture_pairs):
        base = banach.lp_oracle(pair.n, 2.0)
        for t in (pair.t1, pair.t2):
            status = banach.check_a_norm(banach.a_norm_oracle(t, base), samples=10_000, seed=i)
            assert status.verdict == banach.VERIFIED, (i, status.violation, status.worst_excess)


def test_criterion_09_stored_counterexample(data_dir):
    ce = json.loads((data_dir / "anorm_counterexample.json").read_text())
    t = np.array(ce["T"], dtype=float)
    oracle = banach.a_norm_oracle(t, banach.lp_oracle(2, ce["p"]))
    x, y = np.array(ce["x"]), np.array(ce["y"])
    assert oracle(x + y) > oracle(x) + oracle(y) + 1e-10
    status = banach.check_a_norm(oracle, samples=10_000)
    assert status.verdict == banach.COUNTEREXAMPLE
    assert status.reproduces(oracle)


def _run_pipeline(workdir, monkeypatch):
    monkeypatch.chdir(workdir)
    assert main(["gen", "--seed", "7", "--n", "3", "--norms", "0.8,0.7", "--out", "pair.json"]) == 0
    assert main(["dilate", "--fixture", "pair.json", "--out", "art.json"]) == 0
    suites = "isometry,commutation,dilation,minimality,banach,negative"
    args = ["verify", "--fixture", "pair.json", "--artifacts", "art.json", "--suite", suites, "--trials", "200"]
    assert main(args + ["--out", "report.jsonl"]) == 0
    assert main(["banach", "--fixture", "pair.json", "--p", "3", "--trials", "200", "--out", "banach.jsonl"]) == 0
    names = ["pair.json", "art.json", "report.jsonl", "report.jsonl.summary.json", "banach.jsonl", "banach.jsonl.summary.json"]
    return {name: (workdir / name).read_bytes() for name in names}


def test_criterion_10_reproducibility(tmp_path, monkeypatch):
    runs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        d.mkdir()
        runs.append(_run_pipeline(d, monkeypatch))
    for name in runs[0]:
        assert runs[0][name] == runs[1][name], name
