"""On-disk cache of character tables and fusion rings, keyed by group spec and version.

Verification results are never cached; only the expensive artifacts are.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .charmod import ModularCharacterTable, character_table_mod_p, table_from_json
from .fusion import FusionRing, fusion_from_character_table, fusion_from_json
from .groups import FiniteGroup

CACHE_ENV = "CHAINCENTER_CACHE_DIR"


def canonical_spec(spec: dict) -> str:
    return json.dumps(spec, sort_keys=True, separators=(",", ":"))


def cache_key(spec: dict, version: str = __version__) -> str:
    return hashlib.sha256(f"{version}\n{canonical_spec(spec)}".encode()).hexdigest()


def default_cache_dir() -> Path | None:
    value = os.environ.get(CACHE_ENV)
    return Path(value) if value else None


class ArtifactCache:
    def __init__(self, root: str | Path | None):
        self.root = Path(root) if root else None
        self.hits = 0
        self.misses = 0

    def _path(self, spec: dict) -> Path:
        return self.root / f"{cache_key(spec)}.json"

    def load(self, spec: dict) -> dict | None:
        if self.root is None:
            return None
        path = self._path(spec)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None
        if data.get("spec") != json.loads(canonical_spec(spec)):
            return None
        return data

    def store(self, spec: dict, table: ModularCharacterTable, ring: FusionRing) -> None:
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        payload = {"version": __version__, "spec": spec, "table": table.to_json(),
                   "ring": ring.to_json()}
        # write-then-rename so concurrent workers never see a partial file
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, self._path(spec))

    def artifacts(self, spec: dict, G: FiniteGroup) -> tuple[ModularCharacterTable, FusionRing]:
        data = self.load(spec)
        if data is not None:
            try:
                T = table_from_json(data["table"])
                F = fusion_from_json(data["ring"], name=G.name)
            except Exception:  # corrupt entry: recompute and overwrite
                pass
            else:
                if len(T.class_sizes) == len(G.classes.classes):
                    self.hits += 1
                    return T, F
        self.misses += 1
        T = character_table_mod_p(G)
        F = fusion_from_character_table(T, G.classes, G.order, name=G.name)
        self.store(spec, T, F)
        return T, F
