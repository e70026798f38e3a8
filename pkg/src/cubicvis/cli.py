"""Command line entry point.

Every subcommand writes a JSON report with keys in a fixed order and exits
0 when all certificates pass, 1 when one fails, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import container, cubic, generators, orchard, patches, visibility
from .errors import CubicvisError, InputParseError
from .geometry import PointSet, enumerate_lines, parse_rational

log = logging.getLogger("cubicvis")

COMMANDS = [
    "generate",
    "analyze",
    "classify-cubic",
    "patches",
    "container",
    "turan",
    "orchard",
    "fit-cubic",
    "ambient-check",
    "verify-all",
]

# flag name -> (type, default)
OPTIONS = {
    "in": (str, None),
    "cubic": (str, None),
    "kind": (str, None),
    "m": (int, None),
    "n": (int, None),
    "a": (str, None),
    "b": (str, None),
    "P": (str, None),
    "range": (int, 100),
    "w": (int, None),
    "h": (int, None),
    "outliers": (int, 0),
    "k": (int, 4),
    "l": (int, 4),
    "chart": (str, "auto"),
    "seed": (int, 0),
    "trials": (int, 200),
    "clique_budget": (int, 200_000),
    "patch": (str, None),
    "alpha": (str, None),
    "beta": (str, None),
    "suite": (str, None),
    "out": (str, None),
}

HELP = {
    "in": "point-set JSON file",
    "cubic": "weierstrass, cubic-power, acnodal, crunodal, cuspidal, or a coefficient JSON file",
    "kind": "generator: one-blocker, cubic-power, elliptic, random, grid",
    "P": "base point x,y for the elliptic generator",
    "range": "coordinate range for the random generator",
    "outliers": "number of off-curve points to plant",
    "k": "collinearity bound: no k points on a line",
    "l": "visible-clique bound",
    "chart": "auto, standard or sheared",
    "trials": "random 9-point samples for fit-cubic",
    "clique_budget": "node budget for the exact clique search",
    "patch": "patch index, or 'conic'",
    "suite": "directory of instance JSON files",
    "out": "write the report JSON here instead of stdout",
}

USAGE_ERRORS = (InputParseError, FileNotFoundError, IsADirectoryError, json.JSONDecodeError, KeyError, ValueError)


class UsageError(CubicvisError):
    pass


def _cert(name: str, passed: bool, detail: str = "") -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _config_hash(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:16]


# -- inputs ---------------------------------------------------------------


def _resolve(path: str, base: Optional[Path]) -> Path:
    p = Path(path)
    return p if p.is_absolute() or base is None else base / p


def load_points(cfg: dict, base: Optional[Path] = None) -> PointSet:
    if cfg.get("points") is not None:
        A = PointSet.from_json(cfg["points"])
    elif cfg.get("in"):
        A = PointSet.load(_resolve(cfg["in"], base))
    elif cfg.get("generator") or cfg.get("kind"):
        A = generator_spec(cfg).build()
    else:
        raise UsageError("no point set given (use --in or a generator)")
    s = int(cfg.get("outliers") or 0)
    if s:
        avoid = None
        if cfg.get("cubic"):
            F = load_cubic(cfg, base)
            avoid = lambda p: F(p.x, p.y, Fraction(1)) == 0  # noqa: E731
        A = generators.plant_outliers(A, s, int(cfg.get("seed") or 0), avoid=avoid)
    return A


def load_cubic(cfg: dict, base: Optional[Path] = None) -> cubic.HomogeneousCubic:
    spec = cfg.get("cubic")
    if spec is None:
        raise UsageError("no cubic given (use --cubic)")
    if isinstance(spec, dict):
        return cubic.HomogeneousCubic.from_json(spec)
    try:
        return cubic.named_cubic(spec)
    except KeyError:
        return cubic.HomogeneousCubic.load(_resolve(spec, base))


def generator_spec(cfg: dict) -> generators.GeneratorSpec:
    if isinstance(cfg.get("generator"), dict):
        g = cfg["generator"]
        return generators.GeneratorSpec(g["kind"], dict(g.get("params", {})))
    kind = cfg["kind"]
    params = {key: cfg[key] for key in ("m", "n", "a", "b", "range", "w", "h") if cfg.get(key) is not None}
    if kind == "random":
        params["seed"] = cfg.get("seed", 0)
    if cfg.get("P") is not None:
        P = cfg["P"]
        params["P"] = P.split(",") if isinstance(P, str) else P
    return generators.GeneratorSpec(kind, params)


# -- commands -------------------------------------------------------------


def cmd_generate(cfg, base):
    A = load_points(cfg, base)
    return {"point_set": A.to_json(), "n": len(A)}, [_cert("points distinct", True)]


def cmd_analyze(cfg, base):
    A = load_points(cfg, base)
    stats = enumerate_lines(A)
    G = visibility.visibility_graph(A)
    certs = [_cert("visibility matches triple scan", G.adj == visibility.visibility_graph_bruteforce(A).adj)]
    res = {"n": len(A), "lines": stats.to_json(), "max_collinear": max(stats.histogram), "visibility": G.to_json()}
    try:
        clique = visibility.max_visible_clique(G, cfg["clique_budget"])
        res["max_visible_clique"] = clique
        if len(A) <= 18:
            bf = visibility.max_clique_bruteforce(G)
            certs.append(_cert("clique matches enumeration", bf == len(clique), f"{len(clique)} vs {bf}"))
    except CubicvisError as e:
        res["max_visible_clique"] = None
        res["clique_note"] = str(e)
    return res, certs


def cmd_classify(cfg, base):
    F = load_cubic(cfg, base)
    c = cubic.classify(F)
    res = {"cubic": F.to_json(), "classification": c.to_json(), "hessian": repr(cubic.hessian(F))}
    certs = []
    if c.tag == "Irreducible":
        chart = "standard" if cfg["chart"] == "auto" else cfg["chart"]
        E = cubic.exceptional_set(F, chart)
        res["exceptional"] = E.to_json()
        certs.append(_cert("exceptional set size <= 13", E.size <= 13, str(E.size)))
    return res, certs


def cmd_patches(cfg, base):
    F = load_cubic(cfg, base)
    if cfg["chart"] == "auto":
        D, notes = patches.decompose_with_fallback(F)
    else:
        D, notes = patches.decompose(F, cubic.exceptional_set(F, cfg["chart"])), []
    res = D.to_json()
    res["notes"] = notes
    certs = [_cert("exceptional set size <= 13", D.exceptional.size <= 13, str(D.exceptional.size))]
    if D.lam != 0 or cfg["chart"] != "standard":
        certs.append(_cert(f"patch count <= {patches.PATCH_LIMIT}", D.patch_count <= patches.PATCH_LIMIT))
    return res, certs


def cmd_container(cfg, base):
    A = load_points(cfg, base)
    F = load_cubic(cfg, base)
    R = container.cubic_container(A, F, cfg["k"], cfg["chart"], cfg["clique_budget"])
    G = visibility.visibility_graph(A)
    certs = [c.to_json() for c in R.certificates]
    certs.append(_cert("visibility matches triple scan", G.adj == visibility.visibility_graph_bruteforce(A).adj))
    return R.to_json(), certs


def cmd_turan(cfg, base):
    A = load_points(cfg, base)
    R = container.turan_identities(A, cfg["clique_budget"])
    certs = [_cert(name, ok) for name, ok in R.identities_checked.items() if ok is not None]
    return R.to_json(), certs


def cmd_orchard(cfg, base):
    A = load_points(cfg, base)
    core = orchard.orchard_core(A, cfg["k"], cfg["l"])
    core = orchard.verify_orchard_guarantees(core, A, cfg["k"], cfg["l"], cfg["clique_budget"])
    return core.to_json(), [_cert("orchard guarantees", core.status != "Violated", core.status)]


def cmd_fit(cfg, base):
    A = load_points(cfg, base)
    r = container.fit_cubic(A, cfg["trials"], cfg["seed"])
    return r.to_json(), [_cert("cubic found", r.form is not None, f"{r.degenerate} degenerate samples")]


def cmd_ambient(cfg, base):
    A = load_points(cfg, base)
    F = load_cubic(cfg, base)
    if cfg.get("patch") is None or cfg.get("alpha") is None or cfg.get("beta") is None:
        raise UsageError("ambient-check needs --patch, --alpha and --beta")
    patch = cfg["patch"]
    if patch != "conic":
        patch = int(patch)
    res = container.ambient_container_check(
        A, F, patch, parse_rational(cfg["alpha"]), parse_rational(cfg["beta"]), cfg["chart"]
    )
    # the conjectured inequalities are measured, not asserted
    return res, []


HANDLERS = {
    "generate": cmd_generate,
    "analyze": cmd_analyze,
    "classify-cubic": cmd_classify,
    "patches": cmd_patches,
    "container": cmd_container,
    "turan": cmd_turan,
    "orchard": cmd_orchard,
    "fit-cubic": cmd_fit,
    "ambient-check": cmd_ambient,
}


def _with_defaults(cfg: dict) -> dict:
    out = {key: default for key, (_, default) in OPTIONS.items()}
    out.update({k: v for k, v in cfg.items() if v is not None})
    for key in ("k", "l", "seed", "trials", "clique_budget", "outliers"):
        try:
            out[key] = int(out[key])
        except (TypeError, ValueError) as e:
            raise UsageError(f"{key} must be an integer") from e
    if out["chart"] not in ("auto", "standard", "sheared"):
        raise UsageError(f"unknown chart {out['chart']!r}")
    if out["k"] < 2 or out["l"] < 2 or out["trials"] < 1 or out["clique_budget"] < 1 or out["outliers"] < 0:
        raise UsageError("k, l >= 2; trials, clique budget >= 1; outliers >= 0")
    return out


def run_config(command: str, cfg: dict, base: Optional[Path] = None) -> tuple[dict, list]:
    """Run one command; returns (results, certificates).  Raises on errors."""
    if command == "verify-all":
        return verify_all(cfg["suite"])
    if command not in HANDLERS:
        raise UsageError(f"unknown command {command!r}")
    return HANDLERS[command](_with_defaults(cfg), base)


def verify_all(suite) -> tuple[dict, list]:
    """Run every instance JSON in a directory, in file-name order."""
    if suite is None:
        raise UsageError("verify-all needs --suite")
    d = Path(suite)
    if not d.is_dir():
        raise UsageError(f"{suite} is not a directory")
    files = sorted(p for p in d.iterdir() if p.suffix == ".json")
    if not files:
        log.warning("suite %s is empty", suite)
    results, certs = [], []
    for p in files:
        try:
            inst = json.loads(p.read_text(encoding="utf-8"))
            if not isinstance(inst, dict) or "command" not in inst:
                raise InputParseError("instance needs a 'command' field")
            cmd = inst["command"]
            cfg = {k: v for k, v in inst.items() if k not in ("command", "expect")}
        except (json.JSONDecodeError, InputParseError, UnicodeDecodeError) as e:
            raise InputParseError(f"{p.name}: {e}") from e
        try:
            res, c = run_config(cmd, cfg, d)
        except CubicvisError as e:
            if isinstance(e, (InputParseError, UsageError)):
                raise InputParseError(f"{p.name}: {e}") from e
            res, c = {"error": type(e).__name__, "message": str(e)}, [_cert(type(e).__name__, False, str(e))]
        expect = inst.get("expect", {})
        for key, want in sorted(expect.items()):
            got = res.get(key)
            c.append(_cert(f"expect {key}", got == want, f"{got!r} vs {want!r}"))
        results.append({"instance": p.name, "command": cmd, "passed": all(x["passed"] for x in c)})
        certs.extend({**x, "name": f"{p.name}: {x['name']}"} for x in c)
    return {"instances": results}, certs


# -- argv -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubicvis", description="Certified visibility computations on point sets")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON file of option values; flags override it")
        sp.add_argument("--quiet", action="store_true", help="do not print the report")
        for key, (typ, _) in OPTIONS.items():
            flag = "--" + key.replace("_", "-")
            sp.add_argument(flag, dest=key, type=typ, default=None, help=HELP.get(key))
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    flags = {k: v for k, v in vars(args).items() if k in OPTIONS and v is not None}
    t0 = time.perf_counter()
    cfg: dict = {}
    try:
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
            if not isinstance(cfg, dict):
                raise InputParseError("config must be a JSON object")
        cfg.update(flags)
        base = Path(args.config).parent if args.config else None
        results, certs = run_config(args.command, cfg, base)
        code = 0 if all(c["passed"] for c in certs) else 1
    except (UsageError, InputParseError) as e:
        results, certs, code = {"error": type(e).__name__, "message": str(e)}, [], 2
    except CubicvisError as e:
        # preconditions and certificate checks
        results = {"error": type(e).__name__, "message": str(e)}
        certs, code = [_cert(type(e).__name__, False, str(e))], 1
    except USAGE_ERRORS as e:
        results, certs, code = {"error": type(e).__name__, "message": str(e)}, [], 2
    report = {
        "command": args.command,
        "config_hash": _config_hash({k: v for k, v in cfg.items() if k != "out"}),
        "results": results,
        "certificates": certs,
        "passed": code == 0,
        "timing": {"seconds": round(time.perf_counter() - t0, 3)},
    }
    text = json.dumps(report, indent=1, default=str)
    out = cfg.get("out") if isinstance(cfg, dict) else None
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if code == 2:
        print(f"error: {results['message']}", file=sys.stderr)
    if not args.quiet:
        failed = [c["name"] for c in certs if not c["passed"]]
        status = {0: "PASS", 1: "FAIL", 2: "ERROR"}[code]
        print(f"{args.command}: {status} ({len(certs)} certificates, {len(failed)} failed)")
        for name in failed:
            print(f"  failed: {name}")
        if not out:
            print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
