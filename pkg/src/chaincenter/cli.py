"""Command-line interface: analyze, verify-all, su2 and catalog."""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .cache import ArtifactCache, default_cache_dir
from .catalog import CATALOG, catalog_listing, dq_pairs
from .centerdual import CenterError
from .chaingroup import WellDefinednessViolation, truncated_chain_group
from .charmod import CharacterTableError
from .fusion import FusionAxiomError, fusion_from_file, fusion_from_json, su2_fusion_oracle
from .groups import (CATALOG_NAMES, DEFAULT_ORDER_BOUND, GroupError, group_from_spec, spec_label,
                     spec_order)
from .pipeline import DEFAULT_MODULI, analysis_report, analyze_group, analyze_ring, run_verification
from .verify import VerificationFailure

EXIT_OK, EXIT_FAILURE, EXIT_INPUT = 0, 1, 2
# statement or pipeline failures on valid input; checked before the input errors they subclass
FAILURES = (VerificationFailure, WellDefinednessViolation, CenterError, CharacterTableError)
INPUT_ERRORS = (GroupError, FusionAxiomError, json.JSONDecodeError, OSError, ValueError)


@dataclass
class RunConfig:
    command: str
    group_spec: dict | None = None
    fusion_path: Path | None = None
    levels: int | None = None
    moduli: tuple[int, ...] = DEFAULT_MODULI
    order_bound: int | None = None
    cache_dir: Path | None = None
    fmt: str = "text"
    timings: bool = False
    workers: int = 1
    catalog: list[dict] = field(default_factory=list)

    def __post_init__(self):
        if self.command == "analyze" and (self.group_spec is None) == (self.fusion_path is None):
            raise ValueError("exactly one of --group and --fusion is required")
        if any(m < 1 for m in self.moduli):
            raise ValueError("moduli must be >= 1")
        if self.levels is not None and self.levels < 1:
            raise ValueError("--levels must be >= 1")


# -- argument parsing --------------------------------------------------------

def parse_moduli(text: str) -> tuple[int, ...]:
    """``2..12`` or ``2,3,5``."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\s*\.\.\s*(\d+)", text)
    try:
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad moduli list {text!r}") from None


def _shorthand_factor(text: str) -> dict:
    tokens = [t for t in re.split(r"[\s:(),]+", text) if t]
    if tokens and tokens[0] == "named":
        tokens = tokens[1:]
    if not tokens or tokens[0] not in CATALOG_NAMES:
        raise GroupError(f"unknown group {text.strip()!r}; known families: {', '.join(CATALOG_NAMES)}")
    try:
        params = [int(t) for t in tokens[1:]]
    except ValueError:
        raise GroupError(f"group parameters must be integers: {text.strip()!r}") from None
    return {"type": "named", "name": tokens[0], "params": params}


def parse_group_spec(text: str) -> dict:
    """Accept JSON, a path to a JSON file, or shorthand like ``dicyclic 2`` or ``dihedral:4 * cyclic:3``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return json.loads(stripped)
    path = Path(stripped)
    if path.suffix == ".json" or path.is_file():
        return json.loads(path.read_text())
    factors = [_shorthand_factor(f) for f in re.split(r"\*|\s+x\s+", stripped)]
    return factors[0] if len(factors) == 1 else {"type": "product", "factors": factors}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chaincenter",
                                     description="Chain groups of fusion rings versus group centers.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--cache-dir", type=Path, default=None,
                       help="artifact cache (default: $CHAINCENTER_CACHE_DIR, unset disables)")

    p = sub.add_parser("analyze", help="analyze one group or fusion ring")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", help="group spec: JSON, a .json file, or shorthand like 'dicyclic 2'")
    src.add_argument("--fusion", type=Path, help="fusion ring JSON file")
    p.add_argument("--moduli", type=parse_moduli, default=DEFAULT_MODULI, help="e.g. 2..12 or 2,3,5")
    p.add_argument("--order-bound", type=int, default=DEFAULT_ORDER_BOUND)
    p.add_argument("--timings", action="store_true", help="include per-statement timings")
    common(p)

    p = sub.add_parser("verify-all", help="run the verification suite over the catalog")
    p.add_argument("--max-order", type=int, default=None, help="skip entries above this order")
    p.add_argument("--moduli", type=parse_moduli, default=DEFAULT_MODULI)
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: CPU count)")
    p.add_argument("--catalog", type=Path, default=None,
                   help="JSON list of group specs or {'name', 'fusion'} entries")
    common(p)

    p = sub.add_parser("su2", help="truncated chain groups of SU(2)")
    p.add_argument("--levels", type=int, required=True)
    common(p)

    p = sub.add_parser("catalog", help="show the built-in catalog")
    p.add_argument("--list", action="store_true", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    kw: dict[str, Any] = {"cache_dir": getattr(args, "cache_dir", None) or default_cache_dir(),
                          "fmt": args.format}
    if args.command == "analyze":
        kw.update(moduli=tuple(args.moduli), order_bound=args.order_bound, timings=args.timings)
        if args.group is not None:
            kw["group_spec"] = parse_group_spec(args.group)
        else:
            kw["fusion_path"] = args.fusion
    elif args.command == "verify-all":
        catalog = json.loads(args.catalog.read_text()) if args.catalog else [dict(s) for s in CATALOG]
        if not isinstance(catalog, list):
            raise ValueError("catalog file must hold a JSON list")
        kw.update(moduli=tuple(args.moduli), order_bound=args.max_order,
                  workers=args.workers or os.cpu_count() or 1, catalog=catalog)
    elif args.command == "su2":
        kw["levels"] = args.levels
    return RunConfig(args.command, **kw)


# -- commands ----------------------------------------------------------------

def _error_payload(exc: BaseException) -> dict[str, Any]:
    module = type(exc).__module__.rsplit(".", 1)[-1]
    out = {"module": module, "type": type(exc).__name__, "message": str(exc)}
    witness = getattr(exc, "witness", None)
    if witness is None and isinstance(exc, FusionAxiomError):
        witness = {"violations": exc.violations}
    if witness is None and isinstance(exc, VerificationFailure):
        witness = exc.report.to_json()
    if witness is not None:
        out["witness"] = witness
    return out


def cmd_analyze(cfg: RunConfig) -> tuple[dict[str, Any], int]:
    cache = ArtifactCache(cfg.cache_dir)
    if cfg.group_spec is not None:
        G = group_from_spec(cfg.group_spec, order_bound=cfg.order_bound or DEFAULT_ORDER_BOUND)
        T, F = cache.artifacts(cfg.group_spec, G)
        A = analyze_group(G, spec_label(cfg.group_spec), table=T, ring=F)
    else:
        F = fusion_from_file(cfg.fusion_path)
        A = analyze_ring(F)
    report = run_verification(A, cfg.moduli)
    return analysis_report(A, report, cfg.timings), EXIT_OK if report.ok else EXIT_FAILURE


def _entry_label(entry: dict) -> str:
    if "fusion" in entry:
        return str(entry.get("name") or entry["fusion"].get("name") or "fusion")
    return spec_label(entry)


def _entry_order(entry: dict) -> int | None:
    return None if "fusion" in entry else spec_order(entry)


def run_entry(entry: dict, moduli: Sequence[int], cache_dir: Path | None) -> dict[str, Any]:
    """One catalog entry, with every failure captured rather than raised."""
    label = _entry_label(entry)
    out: dict[str, Any] = {"entry": label, "order": None, "status": "error"}
    try:
        out["order"] = _entry_order(entry)
        if "fusion" in entry:
            A = analyze_ring(fusion_from_json(entry["fusion"], name=label), label)
        else:
            G = group_from_spec(entry)
            T, F = ArtifactCache(cache_dir).artifacts(entry, G)
            A = analyze_group(G, label, table=T, ring=F)
        verification = run_verification(A, moduli)
    except FAILURES as exc:
        out.update(status="fail", error=_error_payload(exc))
        return out
    except INPUT_ERRORS as exc:
        out["error"] = _error_payload(exc)
        return out
    report = analysis_report(A, verification)
    out["status"] = "pass" if verification.ok else "fail"
    out["invariant_factors"] = report["chain_group"]["invariant_factors"]
    out["center_invariants"] = report["center"]["center_invariants"] if report["center"] else None
    out["report"] = report
    return out


def _dq_comparison(results: list[dict]) -> list[dict[str, Any]]:
    by_label = {r["entry"]: r for r in results}
    rows = []
    for l, d_spec, q_spec in dq_pairs():
        d, q = by_label.get(spec_label(d_spec)), by_label.get(spec_label(q_spec))
        if d is None or q is None:
            continue
        rows.append({
            "l": l,
            "order": 8 * l,
            "dihedral": d.get("invariant_factors"),
            "dicyclic": q.get("invariant_factors"),
            "dihedral_center": d.get("center_invariants"),
            "dicyclic_center": q.get("center_invariants"),
            "same_chain_group": (d.get("invariant_factors") is not None
                                 and d.get("invariant_factors") == q.get("invariant_factors")),
        })
    return rows


def cmd_verify_all(cfg: RunConfig) -> tuple[dict[str, Any], int]:
    entries = []
    for entry in cfg.catalog:
        try:
            order = _entry_order(entry)
        except INPUT_ERRORS:
            order = None
        if cfg.order_bound is None or order is None or order <= cfg.order_bound:
            entries.append(entry)
    args = [(e, cfg.moduli, cfg.cache_dir) for e in entries]
    workers = max(1, min(cfg.workers, len(entries)))
    if workers == 1:
        results = [run_entry(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map keeps submission order, so assembly does not depend on timing
            results = list(pool.map(run_entry, *zip(*args)))
    counts = {s: sum(r["status"] == s for r in results) for s in ("pass", "fail", "error")}
    code = EXIT_INPUT if counts["error"] else EXIT_FAILURE if counts["fail"] else EXIT_OK
    return {
        "version": __version__,
        "max_order": cfg.order_bound,
        "moduli": list(cfg.moduli),
        "summary": counts,
        "entries": results,
        "dq_pairs": _dq_comparison(results),
    }, code


def cmd_su2(cfg: RunConfig) -> tuple[dict[str, Any], int]:
    return truncated_chain_group(su2_fusion_oracle(), cfg.levels).to_json(), EXIT_OK


# -- text rendering ----------------------------------------------------------

def _render_analyze(r: dict) -> str:
    cg = r["chain_group"]
    lines = [f"subject: {r['subject']}  rank: {r['rank']}"
             + (f"  order: {r['order']}  prime: {r['prime']}" if "order" in r else ""),
             f"chain group: invariant factors {cg['invariant_factors']}, free rank {cg['free_rank']}",
             f"class group (equivalence route): {r['class_group_invariants']}"]
    classes: dict[int, list[str]] = {}
    for label, c in cg["classes"].items():
        classes.setdefault(c, []).append(label)
    lines.append("chain classes: " + "  ".join("{" + ", ".join(v) + "}" for _, v in sorted(classes.items())))
    lines.append("C0: {" + ", ".join(r["C0"]) + "}")
    if r["center"]:
        c = r["center"]
        lines.append(f"center: {c['center_invariants']}  abelianization dual: {c['abelianization_dual']}")
        lines.append("r_G: " + "  ".join(f"{k}->{v}" for k, v in c["r_G"].items()))
    else:
        lines.append("center: not applicable (fusion ring input)")
    v = r["verification"]
    for res in v["results"]:
        lines.append(f"  {res['status']:<4}  {res['statement']}")
    lines.append("verification: " + ("ok" if v["ok"] else "FAILED"))
    return "\n".join(lines)


def _render_verify_all(r: dict) -> str:
    lines = []
    for e in r["entries"]:
        order = "-" if e["order"] is None else e["order"]
        if e["status"] == "pass":
            lines.append(f"PASS   {e['entry']:<40} |G|={order:<5} C(G)={e['invariant_factors']}"
                         f"  Z(G)={e['center_invariants']}")
        else:
            err = e.get("error", {})
            detail = err.get("message") or "; ".join(
                f"{x['statement']}: {x['witness']}" for x in e["report"]["verification"]["results"]
                if x["status"] == "fail")
            lines.append(f"{e['status'].upper():<6} {e['entry']:<40} {detail}")
    if r["dq_pairs"]:
        lines.append("")
        lines.append(f"{'l':>2}  {'order':>5}  {'dihedral C(G)':<14} {'dicyclic C(G)':<14} same")
        for row in r["dq_pairs"]:
            lines.append(f"{row['l']:>2}  {row['order']:>5}  {str(row['dihedral']):<14} "
                         f"{str(row['dicyclic']):<14} {'yes' if row['same_chain_group'] else 'NO'}")
    s = r["summary"]
    lines.append(f"\n{s['pass']} passed, {s['fail']} failed, {s['error']} errors")
    return "\n".join(lines)


def _render_su2(r: dict) -> str:
    lines = [f"{r['oracle']} truncations"]
    for lv in r["levels"]:
        lines.append(f"  level {lv['level']:>3}: {len(lv['generators'])} labels, "
                     f"invariant factors {lv['invariant_factors']}, free rank {lv['free_rank']}")
    lines.append(f"stabilized: {r['stabilized']}")
    return "\n".join(lines)


def _render_catalog(rows: list[dict]) -> str:
    return "\n".join(f"{r['order']:>5}  {r['label']}" for r in rows)


def emit(payload: Any, fmt: str, render) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(render(payload) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "text")
    try:
        if args.command == "catalog":
            emit(catalog_listing(), fmt, _render_catalog)
            return EXIT_OK
        cfg = config_from_args(args)
        command, render = {
            "analyze": (cmd_analyze, _render_analyze),
            "verify-all": (cmd_verify_all, _render_verify_all),
            "su2": (cmd_su2, _render_su2),
        }[cfg.command]
        payload, code = command(cfg)
    except FAILURES as exc:
        return _report_error(exc, fmt, EXIT_FAILURE)
    except INPUT_ERRORS as exc:
        return _report_error(exc, fmt, EXIT_INPUT)
    emit(payload, fmt, render)
    return code


def _report_error(exc: BaseException, fmt: str, code: int) -> int:
    payload = {"error": _error_payload(exc)}
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        err = payload["error"]
        sys.stderr.write(f"error [{err['module']}.{err['type']}]: {err['message']}\n")
        if "witness" in err:
            sys.stderr.write("witness: " + json.dumps(err["witness"]) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
