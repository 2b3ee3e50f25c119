"""Command line client for the laboratory service.

The command line never computes anything itself.  It assembles a JSON
request, POSTs it to the service (an in-process application instance by
default, a remote ``--server`` when given), and writes the response
deterministically: sorted keys, no timestamps, so identical inputs give
byte-identical artifacts.  Worker count for the parallel map is taken
from the HOROLAB_THREADS environment variable.
"""

import argparse
import asyncio
import csv
import json
import sys
from pathlib import Path

import httpx


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError:
        _fail("missing-file", f"no such file: {path}")
    except json.JSONDecodeError as exc:
        _fail("bad-json", f"could not parse {path}: {exc}")


def _fail(code: str, message: str, detail=None):
    body = {"error": {"code": code, "message": message, "detail": detail or {}}}
    print(json.dumps(body, sort_keys=True), file=sys.stderr)
    raise SystemExit(1)


def _comma_list(text: str):
    return [item.strip() for item in str(text).split(",") if item.strip()]


def _int_list(text: str):
    """Either a comma list (2,4,6) or an inclusive range spec min:max[:step]."""
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        if len(parts) == 2:
            lo, hi, step = parts[0], parts[1], 1
        elif len(parts) == 3:
            lo, hi, step = parts
        else:
            _fail("bad-flag", f"bad integer range {text!r}, expected min:max[:step]")
        if step < 1 or hi < lo:
            _fail("bad-flag", f"bad integer range {text!r}")
        return list(range(lo, hi + 1, step))
    return [int(item) for item in _comma_list(text)]


def _rgrid(text: str) -> dict:
    parts = text.split(":")
    if len(parts) != 3:
        _fail("bad-flag", f"bad radius grid {text!r}, expected min:max:steps")
    return {"min": float(parts[0]), "max": float(parts[1]), "steps": int(parts[2])}


def _divisor(text: str, center: float) -> dict:
    """Comma list of point[:multiplicity] tokens; 'inf' stands for infinity."""
    points = []
    for token in _comma_list(text):
        if ":" in token:
            where, mult = token.rsplit(":", 1)
            multiplicity = int(mult)
        else:
            where, multiplicity = token, 1
        point = None if where in ("inf", "infinity") else float(where)
        points.append({"point": point, "multiplicity": multiplicity})
    return {"center": center, "points": points}


# --- request builders, one per subcommand -----------------------------------------


def _system_spec(args) -> dict:
    spec = _load_json(args.system)
    if args.initial:
        spec["initial"] = _comma_list(args.initial)
    return spec


def _build_solve(args):
    return {
        "system": _system_spec(args),
        "base_point": args.base_point,
        "truncation": args.truncation,
    }


def _build_certify(args):
    body = {
        "system": _system_spec(args),
        "base_point": args.base_point,
        "truncation": args.truncation,
        "alpha": args.alpha,
    }
    if args.allowed_primes:
        body["allowed_primes"] = [int(p) for p in _comma_list(args.allowed_primes)]
    if args.s is not None:
        body["s"] = args.s
    return body


def _build_construct(args):
    body = {
        "system": _system_spec(args),
        "points": _comma_list(args.points),
        "degree": args.degree,
        "strategy": args.strategy,
    }
    if args.order is not None:
        body["order"] = args.order
    if args.truncation is not None:
        body["truncation"] = args.truncation
    if args.profile_degrees:
        body["profile_degrees"] = _int_list(args.profile_degrees)
    return body


def _build_zero_lemma(args):
    body = {
        "system": _system_spec(args),
        "points": _comma_list(args.points),
        "strategy": args.strategy,
    }
    if args.degrees:
        body["degrees"] = _int_list(args.degrees)
    elif args.degree is not None:
        body["degree"] = args.degree
    if args.truncation is not None:
        body["truncation"] = args.truncation
    return body


def _build_growth(args):
    spec = {"name": args.map}
    if args.coefficients:
        spec["coefficients"] = [float(c) for c in _comma_list(args.coefficients)]
    if args.constant is not None:
        spec["constant"] = args.constant
    return {
        "map": spec,
        "target": args.target,
        "divisor": _divisor(args.divisor, args.center),
        "rgrid": _rgrid(args.rgrid),
        "samples": args.samples,
        "raw": bool(args.raw),
    }


def _build_independence(args):
    return {
        "values": _comma_list(args.values),
        "degree": args.degree,
        "height_bound": args.height,
        "precision": args.precision,
        "subspace": bool(args.subspace),
    }


def _build_isomono(args):
    if args.one_form:
        return {"one_form": _load_json(args.one_form)}
    family = {}
    for name in ("a", "b", "c"):
        value = getattr(args, name)
        if value is not None:
            family[name] = value
    return {"family": family}


def _build_family(args):
    return {
        "a": args.a,
        "b": args.b,
        "c": args.c,
        "x0": args.x0,
        "x1": args.x1,
        "precision": args.precision,
    }


_BUILDERS = {
    "solve": _build_solve,
    "certify-lg": _build_certify,
    "construct": _build_construct,
    "zero-lemma": _build_zero_lemma,
    "growth": _build_growth,
    "independence": _build_independence,
    "isomono": _build_isomono,
    "example-1-3": _build_family,
}


# --- transport ----------------------------------------------------------------------


async def _post_async(server, path, payload):
    if server:
        async with httpx.AsyncClient(base_url=server, timeout=600.0) as client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()
    from .service import create_app

    transport = httpx.ASGITransport(app=create_app())
    async with httpx.AsyncClient(
        transport=transport, base_url="http://horolab.internal", timeout=600.0
    ) as client:
        response = await client.post(path, json=payload)
        return response.status_code, response.json()


def _post(server, path, payload):
    try:
        return asyncio.run(_post_async(server, path, payload))
    except httpx.HTTPError as exc:
        _fail("connection-failed", f"could not reach the service: {exc}")


# --- artifact writing -----------------------------------------------------------------


def _artifact(subcommand: str, envelope: dict) -> dict:
    return {
        "schema_version": envelope.get("schema_version"),
        "manifest": {
            "subcommand": subcommand,
            "request": envelope.get("request", {}),
        },
        "result": envelope.get("result", {}),
    }


def _write_csv(path: Path, rows):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        for row in rows:
            writer.writerow(row)


def _emit(subcommand: str, envelope: dict, out_dir):
    artifact = _artifact(subcommand, envelope)
    text = json.dumps(artifact, sort_keys=True, indent=2)
    if out_dir is None:
        print(text)
        return
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    json_path = directory / f"{subcommand}.json"
    json_path.write_text(text + "\n", encoding="utf-8")
    written = [str(json_path)]
    result = artifact["result"]
    if isinstance(result.get("csv"), list):
        csv_path = directory / f"{subcommand}.csv"
        _write_csv(csv_path, result["csv"])
        written.append(str(csv_path))
    if isinstance(result.get("profile_csv"), list):
        csv_path = directory / f"{subcommand}-profile.csv"
        _write_csv(csv_path, result["profile_csv"])
        written.append(str(csv_path))
    for path in written:
        print(path)


# --- argument parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horolab",
        description="Thin client for the horolab laboratory service.",
        epilog="Set HOROLAB_THREADS to cap the worker count of parallel stages.",
    )
    parser.add_argument("--server", default=None, help="remote service URL; default runs in process")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, system=True):
        p.add_argument("--out", default=None, help="directory for JSON/CSV artifacts")
        if system:
            p.add_argument("--system", required=True, help="path to a system JSON file")
            p.add_argument("--initial", default=None,
                           help="comma list of rational weights for the solution basis")

    p = sub.add_parser("solve", help="local solution basis of a system")
    common(p)
    p.add_argument("--base-point", default="0")
    p.add_argument("--truncation", type=int, default=16)

    p = sub.add_parser("certify-lg", help="per-prime slope certificate of a germ")
    common(p)
    p.add_argument("--base-point", default="0")
    p.add_argument("--truncation", type=int, default=120)
    p.add_argument("--alpha", default="1")
    p.add_argument("--allowed-primes", default=None, help="comma list, e.g. 2,3")
    p.add_argument("--s", type=int, default=None,
                   help="also check growth order against s/alpha")

    p = sub.add_parser("construct", help="small section with forced vanishing")
    common(p)
    p.add_argument("--points", default="0", help="comma list of expansion points")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--truncation", type=int, default=None)
    p.add_argument("--strategy", choices=("spare", "max"), default="spare")
    p.add_argument("--profile-degrees", default=None,
                   help="degrees for a height profile, comma list or min:max[:step]")

    p = sub.add_parser("zero-lemma", help="measured ord/rank margin of constructed sections")
    common(p)
    p.add_argument("--points", default="0")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--degrees", default=None, help="comma list or min:max[:step]")
    p.add_argument("--truncation", type=int, default=None)
    p.add_argument("--strategy", choices=("spare", "max"), default="max")

    p = sub.add_parser("growth", help="value-distribution table and growth order")
    common(p, system=False)
    p.add_argument("--map", default="exp",
                   help="z, exp, exp-square, constant, or polynomial")
    p.add_argument("--coefficients", default=None,
                   help="comma list, ascending powers, for polynomial maps")
    p.add_argument("--constant", type=float, default=None)
    p.add_argument("--target", type=float, default=0.0)
    p.add_argument("--center", type=float, default=0.0)
    p.add_argument("--divisor", default="inf",
                   help="comma list of point[:mult] tokens; inf for infinity")
    p.add_argument("--rgrid", default="2:256:16", help="min:max:steps, geometric")
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--raw", action="store_true",
                   help="raw interior counting instead of the convention-free form")

    p = sub.add_parser("independence", help="integer relation search at fixed degree")
    common(p, system=False)
    p.add_argument("--values", required=True,
                   help="comma list of decimal strings or named constants")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--height", type=int, default=100)
    p.add_argument("--precision", type=int, default=200)
    p.add_argument("--subspace", action="store_true",
                   help="also estimate the witnessed relation subspace")

    p = sub.add_parser("isomono", help="integrability of a matrix one-form")
    common(p, system=False)
    p.add_argument("--one-form", default=None, help="path to a one-form JSON file")
    p.add_argument("--a", default=None, help="family parameter, omitted stays symbolic")
    p.add_argument("--b", default=None)
    p.add_argument("--c", default=None)

    p = sub.add_parser("example-1-3",
                       help="one-shot verification of the built-in log-twisted family")
    common(p, system=False)
    p.add_argument("--a", default="1/2")
    p.add_argument("--b", default="1/3")
    p.add_argument("--c", default="1")
    p.add_argument("--x0", default="1")
    p.add_argument("--x1", default="2")
    p.add_argument("--precision", type=int, default=30)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    payload = _BUILDERS[args.subcommand](args)
    status, body = _post(args.server, f"/api/{args.subcommand}", payload)
    if status != 200 or "error" in body:
        error = body.get("error", {"code": f"http-{status}", "message": str(body)})
        print(json.dumps({"error": error}, sort_keys=True), file=sys.stderr)
        return 1
    _emit(args.subcommand, body, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
