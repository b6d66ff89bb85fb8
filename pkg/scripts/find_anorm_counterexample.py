"""Brute-force grid search for a 2x2 real contraction T and an l_p norm for which
x -> (|x|_p^2 - |Tx|_p^2)^(1/2) violates the triangle inequality.

The first hit (in grid order) is written to tests/data/anorm_counterexample.json.
"""
from __future__ import annotations

import itertools
import json
import math
import sys
from pathlib import Path

import numpy as np

GRID = np.round(np.linspace(-0.9, 0.9, 7), 6) + 0.0
P_VALUES = (1.0, 1.5, 3.0, math.inf)


def lp(x: np.ndarray, p: float) -> np.ndarray:
    return np.linalg.norm(x, ord=p, axis=-1)


def probe_vectors() -> np.ndarray:
    angles = np.linspace(0.0, np.pi, 24, endpoint=False)
    return np.stack([np.cos(angles), np.sin(angles)], axis=-1)


def contractive(T: np.ndarray, p: float) -> bool:
    if p == 1.0:
        return np.abs(T).sum(axis=0).max() <= 1.0
    if math.isinf(p):
        return np.abs(T).sum(axis=1).max() <= 1.0
    # sampled on the unit circle; 2x2 keeps this dense enough to reject
    circle = probe_vectors()
    return bool(np.all(lp(circle @ T.T, p) <= lp(circle, p) * (1 - 1e-9)))


def search(out: Path) -> dict | None:
    vecs = probe_vectors()
    xs, ys = np.meshgrid(np.arange(len(vecs)), np.arange(len(vecs)), indexing="ij")
    x, y = vecs[xs.ravel()], vecs[ys.ravel()]
    tried = 0
    for p in P_VALUES:
        for a, b, c, d in itertools.product(GRID, repeat=4):
            T = np.array([[a, b], [c, d]])
            tried += 1
            if not contractive(T, p):
                continue

            def anorm(v: np.ndarray) -> np.ndarray:
                return np.sqrt(np.maximum(lp(v, p) ** 2 - lp(v @ T.T, p) ** 2, 0.0))

            excess = anorm(x + y) - anorm(x) - anorm(y)
            k = int(np.argmax(excess))
            if excess[k] > 1e-6:
                hit = {
                    "p": "inf" if math.isinf(p) else p,
                    "T": T.tolist(),
                    "x": x[k].tolist(),
                    "y": y[k].tolist(),
                    "excess": float(excess[k]),
                    "grid": GRID.tolist(),
                    "candidates_tried": tried,
                }
                out.write_text(json.dumps(hit, indent=2) + "\n")
                return hit
    return None


if __name__ == "__main__":
    target = Path(__file__).resolve().parents[1] / "tests" / "data" / "anorm_counterexample.json"
    found = search(target)
    if found is None:
        print("no counterexample on the grid")
        sys.exit(1)
    print(json.dumps(found, indent=2))
