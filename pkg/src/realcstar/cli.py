"""Command-line front end: ``realcstar <area> <action> ...``.

Every command builds a JSON-ready payload; ``--format text`` renders that
same payload, so both formats carry identical data.  Payloads are cached
on disk keyed by a hash of the command, its options and the bytes of any
input files.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from pathlib import Path

from realcstar import __version__
from realcstar.errors import FormatError, RealCStarError

log = logging.getLogger("realcstar")

CACHE_ENV = "REALCSTAR_CACHE_DIR"
EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# cache


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "realcstar"


def _canonical(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def cache_key(command: str, options: dict, files=()) -> str:
    h = hashlib.sha256()
    h.update(_canonical({"version": __version__, "command": command, "options": options}).encode())
    for f in files:
        h.update(b"\0")
        h.update(Path(f).read_bytes())
    return h.hexdigest()


def cache_load(cache_dir: Path, key: str):
    path = cache_dir / f"{key}.json"
    if not path.exists():
        return None
    try:
        record = json.loads(path.read_text(encoding="utf-8"))
        payload = record["payload"]
        ok = record["key"] == key and record["digest"] == hashlib.sha256(_canonical(payload).encode()).hexdigest()
    except (ValueError, KeyError, TypeError):
        ok = False
    if not ok:
        log.warning("discarding corrupt cache entry %s; recomputing", path.name)
        return None
    return payload


def cache_store(cache_dir: Path, key: str, payload) -> None:
    cache_dir.mkdir(parents=True, exist_ok=True)
    record = {"key": key, "digest": hashlib.sha256(_canonical(payload).encode()).hexdigest(),
              "payload": payload}
    tmp = cache_dir / f"{key}.json.tmp"
    tmp.write_text(json.dumps(record, ensure_ascii=False), encoding="utf-8")
    tmp.replace(cache_dir / f"{key}.json")


# ---------------------------------------------------------------------------
# group commands


def _load_table(source: str, builtin: bool, max_order: int):
    from realcstar.chartab import compute_character_table, table_from_json
    from realcstar.groups import builtin_group, group_from_json

    if builtin:
        G = builtin_group(source)
        return (G.name or source), compute_character_table(G, max_order=max_order)
    try:
        data = json.loads(Path(source).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: invalid JSON ({exc})") from exc
    name = (data.get("name") if isinstance(data, dict) else None) or Path(source).stem
    if isinstance(data, dict) and "characters" in data:
        return name, table_from_json(data)
    return name, compute_character_table(group_from_json(data, bound=max_order), max_order=max_order)


def _group_payload(action: str, name: str, T) -> dict:
    from realcstar.realrep import classify_types, fs_indicators, wedderburn_real

    nu = fs_indicators(T)
    inv = classify_types(T)
    out = {
        "group": name,
        "order": T.group_order,
        "dims": list(T.dims),
        "indicators": nu,
        "types": [t.value for t in inv.types],
        "counts": inv.counts(),
    }
    if action == "decompose":
        A = wedderburn_real(T, name)
        out["algebra"] = str(A)
        out["algebra_json"] = A.to_json()
        out["real_dimension"] = A.real_dimension()
    else:
        out["dual_involution"] = list(inv.permutation)
    return out


def _render_group(p: dict) -> str:
    lines = []
    if "algebra" in p:
        lines.append(p["algebra"])
    lines.append(f"group {p['group']} (order {p['order']})")
    lines.append("dims       " + " ".join(str(d) for d in p["dims"]))
    lines.append("indicators " + " ".join(f"{v:+d}" for v in p["indicators"]))
    c = p["counts"]
    lines.append(f"real {c['real']}, complex pairs {c['complex_pairs']}, quaternionic {c['quaternionic']}")
    return "\n".join(lines)


def cmd_group(args):
    sources = []
    if args.batch:
        d = Path(args.batch)
        if not d.is_dir():
            raise UsageError(f"--batch expects a directory: {d}")
        sources = [(str(p), False) for p in sorted(d.glob("*.json"))]
    elif args.builtin:
        sources = [(args.builtin, True)]
    elif args.input:
        sources = [(args.input, False)]
    else:
        raise UsageError("give an input file, --builtin NAME or --batch DIR")

    def one(src, builtin):
        opts = {"action": args.action, "source": src if builtin else None, "max_order": args.max_order}
        files = () if builtin else (src,)

        def compute():
            name, T = _load_table(src, builtin, args.max_order)
            return _group_payload(args.action, name, T)

        return cached(args, f"group.{args.action}", opts, files, compute)

    results = [one(s, b) for s, b in sources]
    if args.batch:
        return {"batch": results}, lambda p: "\n\n".join(_render_group(r) for r in p["batch"])
    return results[0], _render_group


# ---------------------------------------------------------------------------
# K-theory commands


def _graded_source(src: str):
    from realcstar.kcalc import GradedGroup, named_theory

    p = Path(src)
    if p.exists():
        try:
            return GradedGroup.from_json(json.loads(p.read_text()))
        except json.JSONDecodeError as exc:
            raise FormatError(f"{src}: invalid JSON ({exc})") from exc
    return named_theory(src)


def _graded_payload(name: str, G) -> dict:
    G = G.reduced() if name == "ksc" else G
    return {"theory": name, "period": G.period, "groups": G.to_json(),
            "degrees": [G.describe(n) for n in range(G.period)]}


def cmd_ktheory(args):
    if args.action == "table":
        from realcstar.kcalc import named_theory

        def compute():
            return _graded_payload(args.theory.lower(), named_theory(args.theory))

        payload = cached(args, "ktheory.table", {"theory": args.theory.lower()}, (), compute)
        return payload, lambda p: "(" + ", ".join(p["degrees"]) + ")"

    from realcstar.kcalc import equal_up_to_shift

    files = tuple(f for f in (args.a, args.b) if Path(f).exists())

    def compute():
        shifts = equal_up_to_shift(_graded_source(args.a), _graded_source(args.b))
        return {"a": args.a, "b": args.b, "shifts": sorted(shifts)}

    payload = cached(args, "ktheory.shift-eq", {"a": args.a, "b": args.b}, files, compute)
    return payload, lambda p: ("shifts: " + ", ".join(map(str, p["shifts"]))) if p["shifts"] else "no shift"


# ---------------------------------------------------------------------------
# cyclic group (co)homology


def cmd_cyclic(args):
    from realcstar import cyccoh

    def module():
        if args.module:
            return cyccoh.load_module(args.module)
        kind = args.builtin or "trivial"
        m = args.order
        if kind == "trivial":
            return cyccoh.trivial_module(m)
        if kind == "sign":
            return cyccoh.sign_module(m)
        if kind == "hyperbolic":
            return cyccoh.hyperbolic_module()
        return cyccoh.regular_module(m)

    fn = cyccoh.cohomology if args.action == "cohomology" else cyccoh.homology
    degrees = list(range(args.max_degree + 1)) if args.degree is None else [args.degree]
    opts = {"action": args.action, "builtin": args.builtin, "order": args.order, "degrees": degrees}

    def compute():
        M = module()
        return {"kind": args.action, "order": M.m, "matrix": M.T.tolist(),
                "groups": {str(n): fn(M, n).to_json() for n in degrees},
                "text": {str(n): str(fn(M, n)) for n in degrees}}

    payload = cached(args, "cyclic", opts, (args.module,) if args.module else (), compute)
    sym = "H^" if args.action == "cohomology" else "H_"
    return payload, lambda p: "\n".join(f"{sym}{n} = {g}" for n, g in p["text"].items())


# ---------------------------------------------------------------------------
# spaces


def cmd_space(args):
    from realcstar.realspace import brauer_group, builtin_space, enumerate_sign_choices, load_space

    if not args.input and not args.builtin:
        raise UsageError("give a complex file or --builtin NAME")

    def compute():
        X = builtin_space(args.builtin) if args.builtin else load_space(args.input)
        B = brauer_group(X)
        count, _ = enumerate_sign_choices(X)
        out = B.to_json()
        out.update({"space": X.name, "sign_choices": count, "text": str(B)})
        return out

    files = (args.input,) if args.input else ()
    payload = cached(args, "space.brauer", {"builtin": args.builtin}, files, compute)
    return payload, lambda p: f"{p['space']}: {p['text']}; sign choices: {p['sign_choices']}"


# ---------------------------------------------------------------------------
# compact groups


def cmd_weyl(args):
    from realcstar import weyl

    if args.action == "su2":
        def compute():
            k = weyl.spin(args.spin)
            nu = weyl.fs_su2(k)
            return {"spin": str(k), "character": str(weyl.su2_character(k)), "indicator": nu,
                    "type": weyl.irrep_type(nu).value}

        payload = cached(args, "weyl.su2", {"spin": args.spin}, (), compute)
        return payload, lambda p: f"spin {p['spin']}: indicator {p['indicator']:+d} ({p['type']})"

    def compute():
        return weyl.weil_h_report(args.n)

    payload = cached(args, "weyl.weil-h", {"n": args.n}, (), compute)

    def text(p):
        line = f"π_{p['n']}: indicator {p['indicator']:+d} ({p['type']})"
        return line + (f"\nflag: {p['note']}" if p.get("discrepancy") else "")

    return payload, text


# ---------------------------------------------------------------------------
# catalog


def cmd_catalog(args):
    from realcstar import catalog

    if args.action == "list":
        payload = cached(args, "catalog.list", {}, (),
                         lambda: catalog.catalog_to_json(catalog.build_catalog()))

        def text(p):
            return "\n".join(
                f"[{t['class_id']}] {t['name']}" + (f"  signs {''.join(t['sign_choice'])}" if t["sign_choice"] else "")
                for t in p)

        return payload, text
    if args.action == "verify":
        payload = cached(args, "catalog.verify", {}, (),
                         lambda: catalog.verify_duality_partition(catalog.build_catalog()))

        def text(p):
            lines = [f"{len(p['sizes'])} classes, sizes {tuple(p['sizes'])}"]
            for cid, inv in p["invariants"].items():
                lines.append(f"  {cid}: ranks {tuple(inv['rank_sequence'])}, 2-torsion {tuple(inv['torsion2_sequence'])}")
            for x in p["inter_class"]:
                lines.append(f"  {x['classes'][0]} vs {x['classes'][1]}: inequivalent ({x['distinguisher']})")
            return "\n".join(lines)

        return payload, text
    payload = cached(args, "catalog.bc-check", {}, (), catalog.baum_connes_shift_check)

    def text(p):
        lines = ["left and right agree in all 8 degrees" if p["equal"] else "mismatch"]
        lines += [f"  {d['degree']}: {d['left']}" for d in p["degrees"]]
        lines.append("torsion-free degrees: " + ", ".join(map(str, p["torsion_free_degrees"])))
        return "\n".join(lines)

    return payload, text


# ---------------------------------------------------------------------------
# plumbing


def cached(args, command: str, options: dict, files, compute):
    """Run ``compute`` through the cache; the result is always plain JSON data."""
    if args.no_cache:
        return json.loads(json.dumps(compute(), ensure_ascii=False))
    cache_dir = Path(args.cache_dir) if args.cache_dir else default_cache_dir()
    key = cache_key(command, options, files)
    hit = cache_load(cache_dir, key)
    if hit is not None:
        log.info("cache hit %s", key[:12])
        return hit
    payload = json.loads(json.dumps(compute(), ensure_ascii=False))
    try:
        cache_store(cache_dir, key, payload)
    except OSError as exc:
        log.warning("could not write cache entry: %s", exc)
    return payload


def _existing_file(s: str) -> str:
    if not Path(s).is_file():
        raise argparse.ArgumentTypeError(f"no such file: {s}")
    return s


def build_parser() -> argparse.ArgumentParser:
    def options(suppress: bool) -> argparse.ArgumentParser:
        # subcommand copies must not overwrite values given before the subcommand
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        o = argparse.ArgumentParser(add_help=False)
        o.add_argument("--format", choices=("json", "text"), default=d("text"))
        o.add_argument("--cache-dir", default=d(None),
                       help=f"cache directory (default ${CACHE_ENV} or ~/.cache/realcstar)")
        o.add_argument("--no-cache", action="store_true", default=d(False), help="always recompute")
        o.add_argument("-v", "--verbose", action="count", default=d(0))
        o.add_argument("--max-order", type=int, default=d(5000), help="largest group order accepted")
        return o

    top, common = options(False), options(True)

    p = argparse.ArgumentParser(prog="realcstar", parents=[top],
                                description="Real group algebras, KO-groups and Real spaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="area", required=True)

    g = sub.add_parser("group", parents=[common], help="finite groups")
    g.add_argument("action", choices=("decompose", "types"))
    g.add_argument("input", nargs="?", type=_existing_file, help="group or character-table JSON")
    g.add_argument("--builtin", help="Q8, D8, Z/n, S3..S6")
    g.add_argument("--batch", help="directory of JSON inputs")
    g.set_defaults(run=cmd_group)

    k = sub.add_parser("ktheory", parents=[common], help="graded K-groups")
    ksub = k.add_subparsers(dest="action", required=True)
    kt = ksub.add_parser("table", parents=[common])
    kt.add_argument("theory", choices=("ko", "ku", "ksp", "ksc", "ko-t2"), type=str.lower)
    ks = ksub.add_parser("shift-eq", parents=[common])
    ks.add_argument("a", help="graded-group JSON file or theory name")
    ks.add_argument("b")
    k.set_defaults(run=cmd_ktheory)

    c = sub.add_parser("cyclic", parents=[common], help="cyclic group (co)homology")
    c.add_argument("action", choices=("cohomology", "homology"))
    c.add_argument("--module", type=_existing_file, help='JSON {"order": m, "matrix": [[...]]}')
    c.add_argument("--builtin", choices=("trivial", "sign", "hyperbolic", "regular"))
    c.add_argument("--order", type=int, default=2)
    c.add_argument("--degree", type=int)
    c.add_argument("--max-degree", type=int, default=4)
    c.set_defaults(run=cmd_cyclic)

    s = sub.add_parser("space", parents=[common], help="Real simplicial spaces")
    s.add_argument("action", choices=("brauer",))
    s.add_argument("input", nargs="?", type=_existing_file)
    s.add_argument("--builtin")
    s.set_defaults(run=cmd_space)

    w = sub.add_parser("weyl", parents=[common], help="SU(2) and the group H")
    wsub = w.add_subparsers(dest="action", required=True)
    ws = wsub.add_parser("su2", parents=[common])
    ws.add_argument("--spin", required=True, help="half-integer such as 3/2")
    wh = wsub.add_parser("weil-h", parents=[common])
    wh.add_argument("--n", type=int, required=True)
    w.set_defaults(run=cmd_weyl)

    cat = sub.add_parser("catalog", parents=[common], help="elliptic-curve orientifold theories")
    cat.add_argument("action", choices=("list", "verify", "bc-check"))
    cat.set_defaults(run=cmd_catalog)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        payload, render = args.run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RealCStarError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.format == "json":
        stdout.write(json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write(render(payload) + "\n")
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
