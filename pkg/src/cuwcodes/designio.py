"""Canonical JSON interchange for designs.

A design file is a single JSON object with keys nt, lambda, g, matrices,
partition, meta: matrices is a list of K row-major matrices whose entries
are [re, im] integer pairs, and partition uses 1-based flat indices.
Serialization is canonical (sorted keys, compact separators, trailing
newline), so equal designs produce byte-identical files.  Loading
revalidates everything: strict integers (no floats, no booleans), matching
shapes, a power-of-two lambda, a covering disjoint partition, a leading
identity weight, and unitarity of every matrix.
"""

from __future__ import annotations

import json

from . import __version__
from .designs import LinearDesign
from .gaussian import GaussianMatrix

_REQUIRED_KEYS = {"nt", "lambda", "g", "matrices", "partition", "meta"}


class DesignFileError(ValueError):
    """A design file is malformed or violates the design invariants."""


def _require_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DesignFileError(f"{where} must be an integer, got {value!r}")
    return value


def design_to_document(d: LinearDesign) -> dict:
    """Plain JSON-able dict for a design (partition written 1-based)."""
    meta = {k: v for k, v in d.meta.items()}
    meta.setdefault("tool_version", __version__)
    return {
        "nt": d.nt,
        "lambda": d.lam,
        "g": d.g,
        "matrices": [w.to_pairs() for w in d.weights],
        "partition": [[i + 1 for i in group] for group in d.partition],
        "meta": meta,
    }


def design_from_document(doc) -> LinearDesign:
    """Validate a parsed design document and build the design.

    Raises DesignFileError with a pointer-style witness (for example
    "matrices[2] is not unitary") on the first violation found.
    """
    if not isinstance(doc, dict):
        raise DesignFileError("design document must be a JSON object")
    missing = _REQUIRED_KEYS - doc.keys()
    if missing:
        raise DesignFileError(f"missing keys: {sorted(missing)}")
    extra = doc.keys() - _REQUIRED_KEYS
    if extra:
        raise DesignFileError(f"unexpected keys: {sorted(extra)}")

    nt = _require_int(doc["nt"], "nt")
    lam = _require_int(doc["lambda"], "lambda")
    g = _require_int(doc["g"], "g")
    if nt < 1:
        raise DesignFileError("nt must be positive")
    if lam < 1 or lam & (lam - 1):
        raise DesignFileError("lambda must be a power of two")
    if g < 1:
        raise DesignFileError("g must be positive")

    raw_matrices = doc["matrices"]
    if not isinstance(raw_matrices, list) or len(raw_matrices) != g * lam:
        raise DesignFileError(f"matrices must be a list of {g * lam} matrices")
    weights = []
    for k, rows in enumerate(raw_matrices):
        where = f"matrices[{k}]"
        if not isinstance(rows, list) or len(rows) != nt:
            raise DesignFileError(f"{where} must have {nt} rows")
        entries = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != nt:
                raise DesignFileError(f"{where} row {i} must have {nt} entries")
            for j, pair in enumerate(row):
                if not isinstance(pair, list) or len(pair) != 2:
                    raise DesignFileError(f"{where}[{i}][{j}] must be an [re, im] pair")
                re = _require_int(pair[0], f"{where}[{i}][{j}] real part")
                im = _require_int(pair[1], f"{where}[{i}][{j}] imaginary part")
                entries.append((re, im))
        mat = GaussianMatrix.from_rows(
            [
                [entries[i * nt + j] for j in range(nt)]
                for i in range(nt)
            ]
        )
        weights.append(mat)

    if not weights[0].is_identity():
        raise DesignFileError("matrices[0] must be the identity")
    for k, w in enumerate(weights):
        if not w.is_unitary():
            raise DesignFileError(f"matrices[{k}] is not unitary")

    raw_partition = doc["partition"]
    if not isinstance(raw_partition, list) or not raw_partition:
        raise DesignFileError("partition must be a non-empty list of groups")
    partition = []
    for gi, group in enumerate(raw_partition):
        if not isinstance(group, list) or not group:
            raise DesignFileError(f"partition[{gi}] must be a non-empty list")
        indices = []
        for v in group:
            idx = _require_int(v, f"partition[{gi}] index")
            if not (1 <= idx <= g * lam):
                raise DesignFileError(
                    f"partition[{gi}] index {idx} outside 1..{g * lam}"
                )
            indices.append(idx - 1)
        partition.append(tuple(indices))
    flat = [i for group in partition for i in group]
    if len(flat) != len(set(flat)):
        raise DesignFileError("partition groups overlap")
    if len(flat) != g * lam:
        raise DesignFileError("partition does not cover every variable")

    meta = doc["meta"]
    if not isinstance(meta, dict):
        raise DesignFileError("meta must be an object")

    try:
        return LinearDesign(
            nt=nt,
            lam=lam,
            g=g,
            weights=tuple(weights),
            partition=tuple(partition),
            meta=meta,
        )
    except ValueError as exc:
        raise DesignFileError(str(exc)) from exc


def serialize(d: LinearDesign) -> bytes:
    """Canonical bytes: sorted keys, compact separators, one trailing
    newline.  Deterministic for equal designs."""
    doc = design_to_document(d)
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()


def deserialize(data: bytes | str) -> LinearDesign:
    """Parse and fully validate design-file bytes."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DesignFileError(f"not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DesignFileError(f"malformed JSON: {exc}") from exc
    return design_from_document(doc)
