"""Command line driver: knit, tilt, bb and catalog."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .ar import knit_preinjective, knit_preprojective, reference_catalog
from .catalog import dinf_orbits, verify_catalog
from .linalg import Field, default_field, field_from_name
from .mesh import component_dot
from .quiver import FAMILIES, Quiver, WindowTooSmall, truncate
from .rep import Rep
from .tilted import build_tilted, global_dimension, psi_matrix, verify_bb
from .tilting import is_tilting, section_window_check, verify_section

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FAMILY_ALIASES = {"ainf": "AInf", "ainfinf": "AInfInf", "dinf": "DInf"}


class UsageError(Exception):
    """Bad input: unreadable file, malformed JSON or schema violation."""


@dataclass
class SessionConfig:
    field: Field
    window: tuple[int, int] | None = None
    margin: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.margin < 0:
            raise UsageError("margin must be non-negative")


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def parse_window(text: str) -> tuple[int, int]:
    for sep in ("..", ","):
        if sep in text:
            lo, hi = text.split(sep, 1)
            try:
                lo_, hi_ = int(lo), int(hi)
            except ValueError:
                break
            if hi_ < lo_:
                raise UsageError(f"empty window {text!r}")
            return lo_, hi_
    raise UsageError(f"window must look like 0..12, got {text!r}")


def load_quiver(path: str) -> Quiver:
    """A quiver file holds explicit vertices and arrows, or a family with a window."""
    d = _read_json(path)
    if isinstance(d, dict) and "window" in d and "vertices" not in d:
        fam = FAMILIES.get(d.get("family")) or FAMILIES.get(FAMILY_ALIASES.get(str(d.get("family")).lower(), ""))
        if fam is None:
            raise UsageError(f"{path}: unknown family {d.get('family')!r}")
        w = d["window"]
        if not (isinstance(w, list) and len(w) == 2):
            raise UsageError(f"{path}: window must be [lo, hi]")
        return truncate(fam, (int(w[0]), int(w[1])))
    try:
        return Quiver.from_dict(d)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def load_section(path: str, q: Quiver, cfg: SessionConfig):
    """Returns (modules on the finite quiver, section keys or None, component or None)."""
    d = _read_json(path)
    fq = q.finite()
    if not isinstance(d, dict) or not ({"vertices", "modules"} & set(d)):
        raise UsageError(f"{path}: section file needs 'vertices' or 'modules'")
    if "modules" in d:
        mods = []
        for n, m in enumerate(d["modules"]):
            if not isinstance(m, dict):
                raise UsageError(f"{path}: module {n} is not an object")
            m = {k: v for k, v in m.items() if k != "quiver"}
            m.setdefault("field", cfg.field.name)
            try:
                mods.append(Rep.from_dict(m, fq))
            except (ValueError, KeyError, TypeError) as exc:
                raise UsageError(f"{path}: module {n}: {exc}") from exc
        return mods, None, None
    keys = []
    for item in d["vertices"]:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, int) for x in item)):
            raise UsageError(f"{path}: vertex entries are [orbit, level], got {item!r}")
        if item[0] not in q.vertices or item[1] < 0:
            raise UsageError(f"{path}: unknown vertex {item!r}")
        keys.append((item[0], item[1]))
    depth = max(k[1] for k in keys) + 1 if keys else 1
    c = knit_preprojective(q, depth, cfg.field)
    missing = [k for k in keys if k not in c.vertices]
    if missing:
        raise UsageError(f"{path}: unknown vertex {list(missing[0])}: not in the knitted component")
    return [c.rep(k).on(fq) for k in keys], keys, c


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n")


# --- commands -------------------------------------------------------------------


def cmd_knit(args, cfg: SessionConfig) -> int:
    q = load_quiver(args.quiver)
    if args.side == "pre":
        c = knit_preprojective(q, args.depth, cfg.field)
    else:
        c = knit_preinjective(q, args.depth, cfg.field)
    sys.stdout.write(component_dot(c))
    if args.json:
        Path(args.json).write_text(json.dumps(c.to_dict(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _section_check(keys, c) -> dict | None:
    if keys is None:
        return None
    chk = verify_section(c, keys)
    out = {"ok": chk.ok, "violations": list(chk.violations)}
    if chk.ok and c.quiver.is_truncation:
        section_window_check(c, keys)
    return out


def cmd_tilt(args, cfg: SessionConfig) -> int:
    q = load_quiver(args.quiver)
    mods, keys, c = load_section(args.section, q, cfg)
    sec = _section_check(keys, c)
    rep = is_tilting(mods)
    out = rep.to_dict()
    if sec is not None:
        out["section"] = sec
    _emit(out)
    return EXIT_OK if rep.verdict else EXIT_FAIL


def cmd_bb(args, cfg: SessionConfig) -> int:
    q = load_quiver(args.quiver)
    mods, keys, c = load_section(args.section, q, cfg)
    _section_check(keys, c)
    trep = is_tilting(mods)
    if not trep.verdict:
        sys.stderr.write("refusing: the input is not a tilting set\n")
        sys.stderr.write(json.dumps(trep.to_dict(), sort_keys=True, default=str) + "\n")
        return EXIT_FAIL
    fq = q.finite()
    catalog = reference_catalog(fq, args.depth, cfg.field)
    tc = build_tilted(mods)
    rep = verify_bb(mods, catalog, tc)
    out = rep.to_dict()
    out["global_dimension"] = global_dimension(tc)
    if args.k0:
        out["k0"] = {"matrix": rep.k0, "psi": psi_matrix(tc).tolist(), "unimodular": rep.unimodular}
    else:
        out.pop("k0_matrix", None)
    _emit(out)
    return EXIT_OK if rep.verdict else EXIT_FAIL


def cmd_catalog(args, cfg: SessionConfig) -> int:
    kind = FAMILY_ALIASES.get(args.family.lower())
    if kind is None:
        raise UsageError(f"unknown family {args.family!r}; use ainf, ainfinf or dinf")
    window = cfg.window or ((-12, 12) if kind == "AInfInf" else (0, 14))
    rep = verify_catalog(kind, window, margin=cfg.margin, field=cfg.field, census=(kind == "AInfInf"))
    out = rep.to_dict()
    ok = rep.ok
    if kind == "DInf":
        try:
            orb = dinf_orbits(window, field=cfg.field)
        except WindowTooSmall as exc:
            out["orbits"] = {"skipped": f"window: {exc}"}
        else:
            out["orbits"] = orb
            ok = ok and all(o["agrees"] for o in orb.values())
    if args.dot:
        Path(args.dot).write_text(rep.to_dot())
    _emit(out)
    return EXIT_OK if ok else EXIT_FAIL


# --- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quivertilt", description="Exact representation theory of quivers.")
    p.add_argument("--field", help="QQ or a prime p (default from QUIVERTILT_FIELD)")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("knit", help="knit a preprojective or preinjective component")
    k.add_argument("quiver")
    k.add_argument("--depth", type=int, default=4)
    k.add_argument("--side", choices=("pre", "post"), default="pre")
    k.add_argument("--json", metavar="PATH", help="also write the component as JSON")
    k.set_defaults(run=cmd_knit)

    t = sub.add_parser("tilt", help="check whether a section or module list is tilting")
    t.add_argument("quiver")
    t.add_argument("section")
    t.set_defaults(run=cmd_tilt)

    b = sub.add_parser("bb", help="verify the torsion theory correspondence for a tilt")
    b.add_argument("quiver")
    b.add_argument("section")
    b.add_argument("--k0", action="store_true", help="report the Grothendieck group matrices")
    b.add_argument("--depth", type=int, default=3, help="knitting depth of the test catalog (non-Dynkin)")
    b.set_defaults(run=cmd_bb)

    c = sub.add_parser("catalog", help="verify the indecomposable catalog of an infinite Dynkin family")
    c.add_argument("family")
    c.add_argument("--window", help="lo..hi")
    c.add_argument("--margin", type=int, default=2)
    c.add_argument("--dot", metavar="PATH", help="also write a DOT overlay of predicted vs computed membership")
    c.set_defaults(run=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        field = field_from_name(args.field) if args.field else default_field()
        cfg = SessionConfig(field, parse_window(args.window) if getattr(args, "window", None) else None,
                            getattr(args, "margin", 2), args.seed)
        return args.run(args, cfg)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except WindowTooSmall as exc:
        sys.stderr.write(f"window too small: {exc}\n")
        return EXIT_FAIL
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
