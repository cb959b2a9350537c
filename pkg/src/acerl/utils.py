import hashlib
import json
import os
from pathlib import Path
from typing import Any, Union

import numpy as np


def expanded_path(path: Union[str, Path]) -> Path:
    """
    Expands environment variables and user tilde in a given path.

    :param path: The path to expand.
    :return: The expanded path as a Path object.
    """
    if isinstance(path, Path):
        path = str(path)

    return Path(os.path.expandvars(os.path.expanduser(path)))


def deep_update(d: dict, u: dict) -> dict:
    """
    Recursively merge ``u`` into ``d`` in place; values from ``u`` win.

    :param d: Dictionary to update.
    :param u: Dictionary with overriding values.
    :return: The updated ``d``.
    """
    for k, v in u.items():
        if isinstance(v, dict):
            d[k] = deep_update(d.get(k, {}) or {}, v)
        else:
            d[k] = v
    return d


def stable_hash64(*parts: Any) -> int:
    """
    Platform-independent 64-bit hash of JSON-serialisable parts.

    Python's builtin ``hash`` is salted per process, so seeds derived from it
    would not survive a restart.
    """
    payload = json.dumps(parts, sort_keys=True, separators=(",", ":"), default=str)
    digest = hashlib.blake2b(payload.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def derive_seed(base_seed: int, *parts: Any) -> int:
    """Seed for one unit of work: ``base_seed + hash(parts)`` wrapped to 63 bits."""
    return (int(base_seed) + stable_hash64(*parts)) % (1 << 63)


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """
    Flip each column so its largest-magnitude entry is positive.

    Eigen- and QR-solvers return columns with arbitrary sign; this pins them.
    """
    vectors = np.array(vectors, dtype=np.float64, copy=True)
    if vectors.size == 0:
        return vectors
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def top_rows_order(norms: np.ndarray) -> np.ndarray:
    """Row indices sorted by descending norm, ties broken by smaller index."""
    norms = np.asarray(norms, dtype=np.float64)
    return np.lexsort((np.arange(norms.shape[0]), -norms))


def frozen(array: np.ndarray) -> np.ndarray:
    """Float64 copy of ``array`` that refuses in-place writes."""
    out = np.array(array, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out
