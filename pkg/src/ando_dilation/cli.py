"""Command-line experiment runner.

    ando-dilation gen --seed 1 --n 3 --norms 0.9,0.8 --out pair.json
    ando-dilation dilate --fixture pair.json --out art.json
    ando-dilation verify --fixture pair.json --artifacts art.json --out report.jsonl
    ando-dilation banach --fixture pair.json --p 3 --out banach.jsonl

Reports are JSON lines (one check per line) with a ``.summary.json`` next to
them; timestamps go to a separate ``.meta.json`` so report content is
byte-identical across runs with the same configuration.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from . import _kernels
from . import banach
from .ando import build_classical_U4, build_S, build_subspaces
from .engine import classical4_specs, minimal_specs, naive_specs
from .errors import BadParams, DilationError, HashMismatch, ProductNotStrict
from .jsonio import dumps, matrix_from_json, matrix_to_json, read_json, write_json
from .pairs import METHODS, ContractionPair, generate_commuting_pair, load_pair, save_pair
from .verify import (
    VerificationReport,
    check_commutation,
    check_dilation_identity,
    check_isometry,
    check_minimality,
    check_S_interpolation,
)

log = logging.getLogger("ando_dilation")

TOL_ENV = "ANDO_DILATION_TOL"
SUITES = ("isometry", "commutation", "dilation", "minimality", "banach", "negative")
DEFAULT_SUITE = "isometry,commutation,dilation,minimality"
NEGATIVE_COMMUTATION_TOL = 1e-3

EXIT_OK, EXIT_FAIL, EXIT_ERROR, EXIT_HASH = 0, 1, 2, 3


@dataclass
class ExperimentConfig:
    fixture: str
    artifacts: str | None = None
    suites: list[str] = field(default_factory=list)
    deg: int = 6
    depth: int = 2
    trials: int = 1000
    seed: int = 0
    tol: float | None = None
    p: float | str | None = None

    def __post_init__(self):
        if self.deg < 0 or self.depth < 0 or self.trials < 0:
            raise BadParams("degree, depth and trial caps must be >= 0")
        if self.tol is not None and not self.tol > 0:
            raise BadParams(f"tolerance must be > 0, got {self.tol}")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise BadParams(f"unknown suites {unknown}; choose from {SUITES}")

    def tol_or(self, default: float) -> float:
        return self.tol if self.tol is not None else default

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


def _env_tol() -> float | None:
    raw = os.environ.get(TOL_ENV)
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError:
        raise BadParams(f"{TOL_ENV}={raw!r} is not a number") from None


def _parse_norms(text: str) -> tuple[float, float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 2:
        raise BadParams(f"--norms expects r1,r2, got {text!r}")
    return float(parts[0]), float(parts[1])


def _parse_suites(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


# --- report bundles -------------------------------------------------------


def write_bundle(out: str | Path, reports: list[VerificationReport], config: ExperimentConfig, extra: dict | None = None) -> dict:
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as fh:
        for r in reports:
            fh.write(dumps(r.to_json()) + "\n")
    summary = {
        "config": config.to_json(),
        "total": len(reports),
        "passed": sum(r.passed for r in reports),
        "as_expected": sum(r.as_expected for r in reports),
        "unexpected": [r.check for r in reports if not r.as_expected],
        "ok": all(r.as_expected for r in reports),
    }
    if extra:
        summary.update(extra)
    write_json(f"{out}.summary.json", summary)
    write_json(
        f"{out}.meta.json",
        {
            "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
            "version": __version__,
            "backend": _kernels.kernels.name,
        },
    )
    return summary


def _print_summary(reports: list[VerificationReport]) -> None:
    for r in reports:
        mark = "ok" if r.as_expected else "UNEXPECTED"
        want = "" if r.expect_pass else " (expected fail)"
        print(f"{mark:10s} {r.check:40s} residual={r.residual:.3e} tol={r.tol:.0e}{want}")


# --- commands -------------------------------------------------------------


def cmd_gen(args) -> int:
    pair = generate_commuting_pair(
        args.seed,
        args.n,
        method=args.method,
        target_norms=_parse_norms(args.norms),
        norm_kind="lp" if args.lp_contractive else "2",
    )
    save_pair(args.out, pair)
    print(f"wrote {args.out} (hash {pair.content_hash()[:12]})")
    return EXIT_OK


def build_artifacts(pair: ContractionPair) -> dict[str, Any]:
    sub = build_subspaces(pair)
    s = build_S(pair, sub)
    u4 = build_classical_U4(pair)
    eye4 = np.eye(u4.shape[0])
    return {
        "fixture_hash": pair.content_hash(),
        "n": pair.n,
        "S": matrix_to_json(s.s),
        "U4": matrix_to_json(u4),
        "bases": {k: matrix_to_json(getattr(sub, k)) for k in ("b1", "b2", "c1", "c2")},
        "residuals": {
            "S_unitarity": s.unitarity_residual,
            "S_interpolation": s.interp_residual,
            "U4_unitarity": float(np.linalg.norm(u4.conj().T @ u4 - eye4, 2)),
            "intersection_margin": sub.intersection_margin,
        },
    }


def cmd_dilate(args) -> int:
    pair = load_pair(args.fixture)
    try:
        art = build_artifacts(pair)
    except DilationError as exc:
        raise DilationError(f"{args.fixture}: {type(exc).__name__}: {exc}") from exc
    write_json(args.out, art)
    r = art["residuals"]
    print(f"wrote {args.out}: S unitarity {r['S_unitarity']:.2e}, interpolation {r['S_interpolation']:.2e}")
    return EXIT_OK


def _load_linked(fixture: str, artifacts: str) -> tuple[ContractionPair, dict[str, Any]]:
    pair = load_pair(fixture)
    art = read_json(artifacts)
    if art.get("fixture_hash") != pair.content_hash():
        raise HashMismatch(f"{artifacts} was built for {art.get('fixture_hash')}, fixture hashes to {pair.content_hash()}")
    return pair, art


def run_suites(pair: ContractionPair, art: dict[str, Any], cfg: ExperimentConfig) -> list[VerificationReport]:
    s = matrix_from_json(art["S"])
    m1, m2 = minimal_specs(pair, s)
    reports: list[VerificationReport] = []
    for suite in cfg.suites:
        if suite == "isometry":
            reports.append(check_S_interpolation(pair, s, tol=cfg.tol_or(1e-9), seed=cfg.seed))
            for spec in (m1, m2):
                reports.append(check_isometry(spec, trials=cfg.trials, tol=cfg.tol_or(1e-10), seed=cfg.seed))
        elif suite == "commutation":
            reports.append(check_commutation(m1, m2, trials=cfg.trials, tol=cfg.tol_or(1e-10), seed=cfg.seed))
        elif suite == "dilation":
            reports.append(check_dilation_identity(pair, m1, m2, cfg.deg, tol=cfg.tol_or(1e-9), seed=cfg.seed))
        elif suite == "minimality":
            reports.append(check_minimality(pair, m1, m2, cfg.depth, cfg.depth + 2))
        elif suite == "banach":
            reports.extend(banach_reports(pair, banach.lp_oracle(pair.n, 2.0), cfg, s_hilbert=s)[0])
        elif suite == "negative":
            n1, n2 = naive_specs(pair)
            r = check_commutation(n1, n2, trials=cfg.trials, tol=NEGATIVE_COMMUTATION_TOL, seed=cfg.seed)
            r.check, r.expect_pass = "negative/naive_commutation", False
            reports.append(r)
            c1, c2 = classical4_specs(pair, matrix_from_json(art["U4"]))
            r = check_minimality(pair, c1, c2, 2, 4)
            r.check, r.expect_pass = "negative/classical4_minimality", False
            reports.append(r)
    return reports


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else _env_tol()
    cfg = ExperimentConfig(
        fixture=args.fixture,
        artifacts=args.artifacts,
        suites=_parse_suites(args.suite),
        deg=args.deg,
        depth=args.depth,
        trials=args.trials,
        seed=args.seed,
        tol=tol,
    )
    pair, art = _load_linked(args.fixture, args.artifacts)
    reports = run_suites(pair, art, cfg)
    summary = write_bundle(args.out, reports, cfg)
    _print_summary(reports)
    return EXIT_OK if summary["ok"] else EXIT_FAIL


def _failed(check: str, exc: Exception, tol: float = 0.0) -> VerificationReport:
    return VerificationReport(check=check, passed=False, residual=float("inf"), tol=tol, trials=0, params={"error": f"{type(exc).__name__}: {exc}"})


def banach_reports(
    pair: ContractionPair,
    base: banach.NormOracle,
    cfg: ExperimentConfig,
    s_hilbert: np.ndarray | None = None,
    s_user: np.ndarray | None = None,
) -> tuple[list[VerificationReport], dict[str, Any]]:
    """Norm, identity and subspace checks in ``base``; dilation checks when an S is at hand.

    At p = 2 the S is derived from the Hilbert construction.  For other p only
    a user-supplied S is tried; the Hilbert-derived candidate is still tested
    and its outcome recorded as S-search data.
    """
    p = base.p
    reports: list[VerificationReport] = []
    statuses: dict[str, Any] = {}
    tag = f"p={banach._p_json(p)}"
    oracles = []
    for i, t in ((1, pair.t1), (2, pair.t2)):
        try:
            a = banach.a_norm_oracle(t, base)
        except DilationError as exc:
            reports.append(_failed(f"banach[{tag}]/a_norm_T{i}", exc))
            continue
        st = banach.check_a_norm(a, samples=min(cfg.trials * 10, 10_000), seed=cfg.seed)
        statuses[f"T{i}"] = st.to_json()
        oracles.append(a)
        if p == 2.0:
            # away from p = 2 whether A_T is a norm is an outcome, not a requirement
            reports.append(
                VerificationReport(
                    check=f"banach[{tag}]/a_norm_T{i}",
                    passed=st.verdict == banach.VERIFIED,
                    residual=max(st.worst_excess, 0.0),
                    tol=1e-10,
                    trials=st.samples,
                    params={"verdict": st.verdict, "violation": st.violation},
                    witness=st.to_json()["counterexample"],
                )
            )
        rep = banach.a_norm_equivalence_check(a, seed=cfg.seed)
        rep.check = f"banach[{tag}]/equivalence_T{i}"
        reports.append(rep)
    for fn, name in ((banach.product_a_norm_identity, "product_identity"), (banach.qhat_isometry_check, "qhat_isometry")):
        try:
            rep = fn(pair, base, tol=cfg.tol_or(1e-12), seed=cfg.seed)
        except DilationError as exc:
            rep = _failed(name, exc)
        rep.check = f"banach[{tag}]/{name}"
        reports.append(rep)
    try:
        rep = banach.intersection_check(pair, base)
    except ProductNotStrict as exc:
        rep = _failed("intersection", exc)
    rep.check = f"banach[{tag}]/intersection"
    reports.append(rep)

    extra: dict[str, Any] = {"a_norm_status": statuses}
    s_hat, source = None, "unavailable"
    if s_user is not None:
        s_hat, source = s_user, "supplied"
    elif p == 2.0:
        s_h = build_S(pair).s if s_hilbert is None else s_hilbert
        s_hat, source = banach.hilbert_S_to_banach_S(pair, s_h), "hilbert-derived"
    elif len(oracles) == 2:
        try:
            cand = banach.hilbert_S_to_banach_S(pair, build_S(pair).s)
            extra["s_candidate"] = banach.check_S_candidate(pair, base, cand, seed=cfg.seed).to_json()
        except DilationError as exc:
            extra["s_candidate"] = {"error": f"{type(exc).__name__}: {exc}"}
    extra["s_status"] = source
    if s_hat is not None:
        try:
            b1, b2 = banach.build_banach_dilation(pair, base, s_hat, seed=cfg.seed)
        except DilationError as exc:
            reports.append(_failed(f"banach[{tag}]/build", exc))
        else:
            tol = cfg.tol_or(1e-9)
            for rep in (
                check_isometry(b1, trials=cfg.trials, tol=tol, seed=cfg.seed),
                check_isometry(b2, trials=cfg.trials, tol=tol, seed=cfg.seed),
                check_commutation(b1, b2, trials=cfg.trials, tol=tol, seed=cfg.seed),
                check_dilation_identity(pair, b1, b2, cfg.deg, tol=tol, seed=cfg.seed),
            ):
                rep.check = f"banach[{tag}]/{rep.check}"
                reports.append(rep)
    return reports, extra


def cmd_banach(args) -> int:
    p = banach.parse_p(args.p)
    tol = args.tol if args.tol is not None else _env_tol()
    cfg = ExperimentConfig(fixture=args.fixture, deg=args.deg, trials=args.trials, seed=args.seed, tol=tol, p=banach._p_json(p))
    pair = load_pair(args.fixture, require_strict=False)
    s_user = matrix_from_json(read_json(args.s)["S"]) if args.s else None
    base = banach.lp_oracle(pair.n, p)
    reports, extra = banach_reports(pair, base, cfg, s_user=s_user)
    summary = write_bundle(args.out, reports, cfg, extra)
    _print_summary(reports)
    print(f"S status: {extra['s_status']}")
    return EXIT_OK if summary["ok"] else EXIT_FAIL


# --- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ando-dilation", description="Minimal isometric dilations of commuting contraction pairs.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a commuting strict pair fixture")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--method", choices=METHODS, default="polynomial")
    g.add_argument("--norms", default="0.9,0.9", help="target norms r1,r2")
    g.add_argument("--lp-contractive", action="store_true", help="scale so the pair is strict in every l_p norm")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("dilate", help="build S, U4 and subspace bases for a fixture")
    d.add_argument("--fixture", required=True)
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_dilate)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--fixture", required=True)
    v.add_argument("--artifacts", required=True)
    v.add_argument("--suite", default=DEFAULT_SUITE, help=f"comma list from {','.join(SUITES)}")
    v.add_argument("--deg", type=int, default=6)
    v.add_argument("--depth", type=int, default=2)
    v.add_argument("--tol", type=float, default=None, help=f"override every tolerance (default from ${TOL_ENV})")
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", required=True)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("banach", help="normed-space checks in l_p")
    b.add_argument("--fixture", required=True)
    b.add_argument("--p", required=True, help="p >= 1 or inf")
    b.add_argument("--s", default=None, help="JSON file with an 'S' matrix to try")
    b.add_argument("--deg", type=int, default=6)
    b.add_argument("--tol", type=float, default=None)
    b.add_argument("--trials", type=int, default=1000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_banach)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except HashMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HASH
    except (DilationError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
