"""
Versioned JSON documents written by the command line tools.

Every document has the form ``{"schema": ..., "result": ..., "metadata": ...}``.
``result`` is a deterministic function of the inputs; run-dependent details
such as the creation time live in ``metadata`` only.
"""

from __future__ import annotations

import datetime
import json
from pathlib import Path

from . import __version__
from .potentials import DomainError

SCHEMAS = {
    "analytic": "paulicrystal.analytic/1",
    "run-record": "paulicrystal.run-record/1",
    "sweep": "paulicrystal.sweep/1",
    "shells": "paulicrystal.shells/1",
    "density": "paulicrystal.density/1",
    "compare": "paulicrystal.compare/1",
}


def make_document(kind: str, result: dict, timestamp: bool = True) -> dict:
    meta = {"package_version": __version__}
    if timestamp:
        meta["created"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return {"schema": SCHEMAS[kind], "result": result, "metadata": meta}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def primary_json(doc: dict) -> str:
    """Canonical serialisation of the deterministic part of a document."""
    return json.dumps({"schema": doc["schema"], "result": doc["result"]}, sort_keys=True)


def read_document(path, kind: str | None = None) -> dict:
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict) or "schema" not in doc:
        raise DomainError(f"{path} is not a versioned document")
    if kind is not None and doc["schema"] != SCHEMAS[kind]:
        raise DomainError(f"{path}: expected schema {SCHEMAS[kind]}, found {doc['schema']}")
    return doc


def write_text(path, text: str) -> None:
    Path(path).write_text(text)
