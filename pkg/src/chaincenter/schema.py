"""Access to the published JSON schemas of the CLI reports."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib.resources import files

REPORT_KINDS = ("analyze", "verify_all", "su2", "catalog", "error", "group_spec", "fusion_ring",
                "character_table")


@lru_cache(maxsize=None)
def _document() -> dict:
    return json.loads(files("chaincenter").joinpath("schemas/reports.schema.json").read_text())


def load_schema(kind: str) -> dict:
    """A standalone schema whose root validates one report kind."""
    if kind not in REPORT_KINDS:
        raise KeyError(f"unknown schema {kind!r}; choose from {', '.join(REPORT_KINDS)}")
    doc = dict(_document())
    doc["$ref"] = f"#/$defs/{kind}"
    return doc
