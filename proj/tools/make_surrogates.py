#!/usr/bin/env python3
"""Regenerate the surrogate inputs under data/.

The caterpillar and jewelweed G matrices are built from published eigenvalues
placed on a fixed frame of discrete orthonormal polynomials over each trait
grid. The eigenvectors of the original REML fits are not available, so the
frame is a stand-in; only the eigenvalues carry over.
"""
import json
import pathlib

import numpy as np

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

CATERPILLAR_T = [11.0, 17.0, 23.0, 29.0, 35.0, 40.0]
JEWELWEED_T = [18.0, 26.0, 33.0, 39.0, 47.0, 57.0]


def poly_frame(t):
    t = np.asarray(t)
    x = (t - t.mean()) / t.std()
    q, _ = np.linalg.qr(np.vander(x, len(t), increasing=True))
    for k in range(q.shape[1]):
        i = int(np.argmax(np.abs(q[:, k]) > 1e-8))
        if q[i, k] < 0:
            q[:, k] *= -1
    return q


def matrix_json(m):
    m = 0.5 * (m + m.T)
    return {"dim": m.shape[0], "entries": [float(v) for v in m.reshape(-1)]}


def dump(name, payload):
    (DATA / name).write_text(json.dumps(payload, indent=2) + "\n")


def main():
    DATA.mkdir(exist_ok=True)
    dump("caterpillar_grid.json", {"points": CATERPILLAR_T})
    dump("jewelweed_grid.json", {"points": JEWELWEED_T})

    # Growth-rate G: eigenvalues from the PCA figure caption.
    lam = np.array([0.618, 0.200, 0.153, 0.061, 0.008, 0.0])
    frame = poly_frame(CATERPILLAR_T)[:, [5, 0, 1, 3, 2, 4]]
    g = frame @ np.diag(lam) @ frame.T
    dump("caterpillar_surrogate_g.json", matrix_json(g))

    t = np.asarray(CATERPILLAR_T)
    e = 0.05 * 0.5 ** (np.abs(t[:, None] - t[None, :]) / 6.0)
    dump("caterpillar_study.json", {
        "grid": {"points": CATERPILLAR_T},
        "mu": [0.0] * 6,
        "G": matrix_json(g),
        "E": matrix_json(e),
        "sigma2": 0.01,
        "N_f": 100,
        "n": 20,
        "design": "halfsib",
        "seed": 20121,
        "reps": 200,
        "null_dim": 3,
        "measure": "d1",
    })

    # Height G before clipping: leading and two negative eigenvalues as reported,
    # the middle three invented.
    lam = np.array([183.7, 3.1, 1.2, 0.3, -0.21, -0.55])
    frame = poly_frame(JEWELWEED_T)[:, [2, 1, 0, 3, 4, 5]]
    dump("jewelweed_surrogate_g.json", matrix_json(frame @ np.diag(lam) @ frame.T))


if __name__ == "__main__":
    main()
