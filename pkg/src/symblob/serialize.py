"""JSON and triplet formats for Π, Σ, solver output and numeric matrices."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema
import numpy as np
import scipy.sparse as sp

from .specialize import PI_KEYS, SIGMA_KEYS, Pi, Sigma, Solution


def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def pair_complex(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    re, im = v
    return complex(re, im)


def pi_to_json(pi: Pi) -> dict:
    return {k: complex_pair(getattr(pi, k)) for k in PI_KEYS}


def sigma_to_json(s: Sigma) -> dict:
    return {k: complex_pair(getattr(s, k)) for k in SIGMA_KEYS}


def pi_from_json(obj: dict) -> Pi:
    return Pi(**{k: pair_complex(obj[k]) for k in PI_KEYS})


def sigma_from_json(obj: dict) -> Sigma:
    return Sigma(**{k: pair_complex(obj[k]) for k in SIGMA_KEYS})


def solution_to_json(sol: Solution, accepted: bool = True) -> dict:
    m = sol.intermediate
    return {
        "pi": pi_to_json(sol.pi),
        "sigma": sigma_to_json(sol.sigma),
        "residuals": sol.residuals.to_dict(),
        "x0_used": complex_pair(sol.x0_used),
        "retries": sol.retries,
        "accepted": accepted,
        "intermediate": {k: complex_pair(getattr(m, k))
                         for k in ("x0", "y0", "e0", "p0", "q0", "f0", "g0", "d0")},
    }


@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    text = resources.files("symblob").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(obj, name: str) -> None:
    jsonschema.validate(obj, schema(name))


# -- numeric sparse matrices ------------------------------------------------------

def write_numeric_triplets(m: sp.spmatrix, fh) -> None:
    """``row col value`` lines, value as a Python complex literal (exact round trip)."""
    coo = sp.coo_matrix(m)
    order = np.lexsort((coo.row, coo.col))
    for k in order:
        fh.write(f"{coo.row[k]} {coo.col[k]} {complex(coo.data[k])!r}\n")


def read_numeric_triplets(fh, dim: int) -> sp.csr_matrix:
    rows, cols, vals = [], [], []
    for line in fh:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        r, c, v = line.split(maxsplit=2)
        rows.append(int(r))
        cols.append(int(c))
        vals.append(complex(v))
    return sp.csr_matrix((np.array(vals, dtype=complex), (rows, cols)), shape=(dim, dim))


def numeric_matrix_to_json(m: sp.spmatrix, n: int, generator: str) -> dict:
    coo = sp.coo_matrix(m)
    order = np.lexsort((coo.row, coo.col))
    return {
        "n": n,
        "generator": generator,
        "shape": list(coo.shape),
        "entries": [[int(coo.row[k]), int(coo.col[k]), complex_pair(coo.data[k])] for k in order],
    }


def numeric_matrix_from_json(obj: dict) -> sp.csr_matrix:
    rows = [e[0] for e in obj["entries"]]
    cols = [e[1] for e in obj["entries"]]
    vals = np.array([pair_complex(e[2]) for e in obj["entries"]], dtype=complex)
    return sp.csr_matrix((vals, (rows, cols)), shape=tuple(obj["shape"]))
