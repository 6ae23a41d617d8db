"""Versioned on-disk format for feasibility instances.

JSON, one object per file: version, m, n, domain, row-major A, b, and
optional label / witness / certificate / provenance. Serialization is
canonical (sorted keys, fixed indentation, shortest round-trip float
repr), so write(read(write(x))) is byte-identical to write(x).
"""

from __future__ import annotations

import json

import numpy as np

from .errors import UsageError
from .gen import LabeledInstance
from .instance import DOMAINS, FeasInstance

FORMAT_VERSION = 1


def to_payload(labeled: LabeledInstance) -> dict:
    inst = labeled.instance
    payload = {
        "version": FORMAT_VERSION,
        "m": inst.m,
        "n": inst.n,
        "domain": inst.domain,
        "A": [[float(v) for v in row] for row in inst.a],
        "b": [float(v) for v in inst.b],
    }
    if labeled.label is not None:
        payload["label"] = labeled.label
    if labeled.witness is not None:
        payload["witness"] = [float(v) for v in labeled.witness]
    if labeled.certificate is not None:
        payload["certificate"] = [float(v) for v in labeled.certificate]
    if labeled.provenance is not None:
        payload["provenance"] = labeled.provenance
    return payload


def dumps(labeled: LabeledInstance) -> str:
    return json.dumps(to_payload(labeled), sort_keys=True, indent=2) + "\n"


def write_instance(path: str, labeled: LabeledInstance) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(labeled))


def _reject_nonfinite(token: str):
    raise UsageError(f"non-finite number {token!r} is not allowed in instance files")


def _require(payload: dict, key: str):
    if key not in payload:
        raise UsageError(f"instance file is missing required field {key!r}")
    return payload[key]


def from_payload(payload: dict) -> LabeledInstance:
    if not isinstance(payload, dict):
        raise UsageError("instance file must hold a JSON object")
    version = _require(payload, "version")
    if version != FORMAT_VERSION:
        raise UsageError(
            f"unsupported instance file version {version!r}, expected {FORMAT_VERSION}"
        )
    m = _require(payload, "m")
    n = _require(payload, "n")
    domain = _require(payload, "domain")
    if domain not in DOMAINS:
        raise UsageError(f"field 'domain' must be one of {DOMAINS}, got {domain!r}")
    rows = _require(payload, "A")
    if not isinstance(rows, list) or len(rows) != m:
        raise UsageError(f"field 'A' must be a list of {m} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise UsageError(f"field 'A' row {i} must hold {n} entries")
    b = _require(payload, "b")
    if not isinstance(b, list) or len(b) != m:
        raise UsageError(f"field 'b' must be a list of {m} entries")
    try:
        inst = FeasInstance(np.array(rows, dtype=np.float64).reshape(m, n),
                            np.array(b, dtype=np.float64), domain)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad numeric data in instance file: {exc}") from exc
    witness = payload.get("witness")
    certificate = payload.get("certificate")
    label = payload.get("label")
    for name, val, length in (("witness", witness, n), ("certificate", certificate, m)):
        if val is not None and (not isinstance(val, list) or len(val) != length):
            raise UsageError(f"field {name!r} must be a list of {length} entries")
    return LabeledInstance(
        instance=inst,
        label=label,
        witness=None if witness is None else np.asarray(witness, dtype=np.float64),
        certificate=(
            None if certificate is None else np.asarray(certificate, dtype=np.float64)
        ),
        provenance=payload.get("provenance"),
    )


def loads(text: str) -> LabeledInstance:
    try:
        payload = json.loads(text, parse_constant=_reject_nonfinite)
    except json.JSONDecodeError as exc:
        raise UsageError(f"instance file is not valid JSON: {exc}") from exc
    return from_payload(payload)


def read_instance(path: str) -> LabeledInstance:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
