"""JSON exchange formats.

- matrix: ``{"dim": n, "data": [n*n reals, row-major]}``
- vector: ``{"data": [reals]}`` (sorted decreasingly on read)
- measure: ``{"weights": [...], "atoms": [matrix or vector objects]}``
- transport plan: ``{"value": x, "mass": [[...], ...]}``

Floats are written with Python's shortest round-trip repr, so a
write/read cycle reproduces every bit.
"""

import json

import numpy as np

from ._validation import check_ordered_positive, check_symmetric
from .measures import DiscreteMeasure


def matrix_to_json(A):
    A = np.asarray(A, dtype=float)
    return {"dim": int(A.shape[0]), "data": [float(x) for x in A.ravel()]}


def matrix_from_json(obj):
    n = int(obj["dim"])
    data = np.asarray(obj["data"], dtype=float)
    if data.size != n * n:
        raise ValueError(f"matrix object has {data.size} entries, expected {n * n}")
    return check_symmetric(data.reshape(n, n))


def vector_to_json(v):
    return {"data": [float(x) for x in np.asarray(v, dtype=float).ravel()]}


def vector_from_json(obj):
    return check_ordered_positive(obj["data"])


def measure_to_json(mu):
    encode = matrix_to_json if mu.is_matrix else vector_to_json
    return {"weights": [float(w) for w in mu.weights], "atoms": [encode(a) for a in mu.atoms]}


def measure_from_json(obj):
    atoms = obj["atoms"]
    if not atoms:
        raise ValueError("measure has no atoms")
    decode = matrix_from_json if "dim" in atoms[0] else vector_from_json
    return DiscreteMeasure(np.stack([decode(a) for a in atoms]), obj["weights"])


def plan_to_json(value, plan):
    return {"value": float(value), "mass": plan.mass.tolist()}


def dump(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)


def load(path):
    with open(path) as fh:
        return json.load(fh)
