"""JSON persistence for the target registry."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .errors import CorruptStore
from .records import TargetRecord

SCHEMA_VERSION = 1

Registry = dict[str, TargetRecord]


def store_save(registry: Registry, path: str | Path) -> None:
    """Write atomically: a temp file in the same directory, then rename."""
    path = Path(path)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "targets": {tid: rec.to_dict() for tid, rec in sorted(registry.items())},
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def store_load(path: str | Path) -> Registry:
    """Read a registry; a missing file is an empty registry."""
    path = Path(path)
    if not path.exists():
        return {}
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise CorruptStore(f"{path}: empty store file")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptStore(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise CorruptStore(f"{path}: top level is not an object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise CorruptStore(f"{path}: unsupported schema_version {version!r}")
    targets = doc.get("targets")
    if not isinstance(targets, dict):
        raise CorruptStore(f"{path}: field 'targets' missing or not an object")
    registry: Registry = {}
    for tid, data in targets.items():
        try:
            rec = TargetRecord.from_dict(data)
        except KeyError as exc:
            raise CorruptStore(f"{path}: target {tid!r}: missing field {exc.args[0]!r}") from exc
        except Exception as exc:  # bad types, fractions, params or URLs
            raise CorruptStore(f"{path}: target {tid!r}: {exc}") from exc
        if rec.config.target_id != tid:
            raise CorruptStore(f"{path}: target {tid!r}: config.target_id is {rec.config.target_id!r}")
        registry[tid] = rec
    return registry
