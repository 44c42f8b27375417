"""Command-line client for the computation service.

By default every subcommand talks to an in-process instance of the FastAPI
app, so no server is needed; pass --server http://host:port to target a
running one instead.  Tabular outputs are CSV files with a '#'-prefixed
header block recording all inputs; records are flat key = value text.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import os
import sys
from pathlib import Path

from . import __version__

_LENGTH_SUFFIXES = {"nm": 1e-9, "um": 1e-6, "µm": 1e-6, "mm": 1e-3, "m": 1.0}


def parse_length(text: str) -> float:
    """Parse a length like '300nm', '0.5um' or a plain value in metres."""
    s = text.strip()
    for suffix in ("nm", "um", "µm", "mm", "m"):
        if s.endswith(suffix):
            return float(s[: -len(suffix)]) * _LENGTH_SUFFIXES[suffix]
    return float(s)


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # the in-process client import warns on some stacks
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _material_selector(text: str | None) -> dict:
    if not text:
        return {"name": "gold"}
    if text.endswith(".ini") or os.path.sep in text or Path(text).exists():
        return {"path": text}
    return {"name": text}


def _post(client, route: str, payload: dict) -> dict:
    resp = client.post(route, json=payload)
    if resp.status_code != 200:
        detail = ""
        try:
            detail = resp.json().get("detail", resp.text)
        except Exception:
            detail = resp.text
        raise SystemExit(f"error: {route} failed ({resp.status_code}): {detail}")
    return resp.json()


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _write_csv(path: str, columns: list[str], rows: list[dict], header: dict) -> None:
    lines = [f"# casimir-ase {__version__}"]
    for key in sorted(header):
        lines.append(f"# {key} = {header[key]}")
    lines.append(f"# generated = {_dt.datetime.now(_dt.timezone.utc).isoformat()}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(row.get(col)) for col in columns))
    Path(path).write_text("\n".join(lines) + "\n")
    print(f"wrote {len(rows)} rows to {path}")


def _render_record(record: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, value in record.items():
        if isinstance(value, dict):
            lines.extend(_render_record(value, prefix=f"{prefix}{key}."))
        else:
            lines.append(f"{prefix}{key} = {_fmt(value)}")
    return lines


def _emit_record(record: dict, out: str | None) -> None:
    text = "\n".join(_render_record(record)) + "\n"
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_compute(args) -> int:
    payload = {
        "material": _material_selector(args.material),
        "a": parse_length(args.a),
        "T": args.T,
        "prescription": args.prescription,
        "model": args.model,
        "relaxation": args.relaxation,
        "abs_tol": args.abs_tol,
        "method": args.method,
    }
    if args.sphere_radius is not None:
        payload["sphere_radius"] = parse_length(args.sphere_radius)
    with _client(args.server) as client:
        record = _post(client, "/compute", payload)
    rep = record.get("applicability") or {}
    if rep and not (rep["ase_valid"] and rep["impedance_form_valid"] and rep["below_debye"]):
        print("warning: outside the validity window of the impedance description", file=sys.stderr)
    _emit_record(record, args.out)
    return 0


def cmd_applicability(args) -> int:
    payload = {
        "material": _material_selector(args.material),
        "a": parse_length(args.a),
        "T": args.T,
        "relaxation": args.relaxation,
        "ase_threshold": args.ase_threshold,
    }
    with _client(args.server) as client:
        record = _post(client, "/applicability", payload)
    _emit_record(record, args.out)
    return 0


def cmd_constants(args) -> int:
    with _client(args.server) as client:
        resp = client.get("/constants")
        if resp.status_code != 200:
            raise SystemExit(f"error: /constants failed ({resp.status_code})")
        data = resp.json()
    lines = ["name,computed,reference,abs_difference"]
    for key in ("q1", "q2", "p1", "p2"):
        lines.append(
            f"{key},{data[key]:.9f},{data['reference'][key]:.4f},{data['abs_difference'][key]:.2e}"
        )
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    return 0


def cmd_figure1(args) -> int:
    payload = {
        "tau": args.tau, "a_min": args.a_min, "a_max": args.a_max,
        "count": args.count, "abs_tol": args.abs_tol,
    }
    with _client(args.server) as client:
        data = _post(client, "/figure1", payload)
    _write_csv(args.out, data["columns"], data["rows"], data["meta"])
    return 0


def cmd_figure2(args) -> int:
    separations = [parse_length(s) for s in args.separations.split(",")]
    payload = {
        "material": _material_selector(args.material),
        "separations": separations,
        "T_min": args.t_min, "T_max": args.t_max, "count": args.count,
        "model": args.model, "relaxation": args.relaxation, "abs_tol": args.abs_tol,
    }
    with _client(args.server) as client:
        data = _post(client, "/figure2", payload)
    _write_csv(args.out, data["columns"], data["rows"], data["meta"])
    failed = [r for r in data["rows"] if r.get("error")]
    if failed:
        print(f"warning: {len(failed)} rows failed", file=sys.stderr)
        return 1
    return 0


def _parse_fixed(pairs: list[str]) -> dict:
    fixed = {}
    for pair in pairs:
        if "=" not in pair:
            raise SystemExit(f"error: --fixed expects key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        key = key.strip()
        fixed[key] = parse_length(value) if key == "a" else float(value)
    return fixed


def cmd_sweep(args) -> int:
    payload = {
        "axis": args.axis,
        "min": parse_length(args.min) if args.axis == "a" else float(args.min),
        "max": parse_length(args.max) if args.axis == "a" else float(args.max),
        "count": args.count,
        "spacing": args.spacing,
        "fixed": _parse_fixed(args.fixed or []),
        "prescriptions": args.prescriptions.split(","),
        "model": args.model,
        "relaxation": args.relaxation,
        "material": _material_selector(args.material),
        "abs_tol": args.abs_tol,
        "with_derivatives": args.with_derivatives,
    }
    with _client(args.server) as client:
        data = _post(client, "/sweep", payload)
    _write_csv(args.out, data["columns"], data["rows"], data["meta"])
    failed = [r for r in data["rows"] if r.get("error")]
    if failed:
        print(f"warning: {len(failed)} of {len(data['rows'])} rows failed", file=sys.stderr)
        return 1
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("casimir_ase.service:app", host=args.host, port=args.port)
    return 0


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _add_common(p, material=True):
    p.add_argument("--server", help="base URL of a running service (default: in-process)")
    p.add_argument("--abs-tol", type=float, default=1e-6, dest="abs_tol")
    p.add_argument("--out", help="output file path")
    if material:
        p.add_argument("--material", help="material preset name or config path (default gold)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-ase",
        description="Cryogenic Casimir temperature correction (anomalous skin effect)",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="single-point computation")
    _add_common(p)
    p.add_argument("--a", required=True, help="plate separation (metres; nm/um suffix allowed)")
    p.add_argument("--T", type=float, required=True, help="temperature [K]")
    p.add_argument("--prescription", default="ideal-static",
                   choices=["unmodified", "ideal-static", "plasma-like"])
    p.add_argument("--model", default="impedance", choices=["impedance", "drude", "ideal"])
    p.add_argument("--relaxation", default="bloch-gruneisen", choices=["poly", "bloch-gruneisen"])
    p.add_argument("--sphere-radius", dest="sphere_radius", help="sphere radius for the proximity force")
    p.add_argument("--method", default="numeric", choices=["numeric", "auto"])
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("applicability", help="validity gates at (a, T)")
    _add_common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--relaxation", default="bloch-gruneisen", choices=["poly", "bloch-gruneisen"])
    p.add_argument("--ase-threshold", dest="ase_threshold", type=float, default=5.0)
    p.set_defaults(func=cmd_applicability)

    p = sub.add_parser("constants", help="expansion constants vs reference values")
    _add_common(p, material=False)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("figure1", help="relative correction G(A) data with both asymptotics")
    _add_common(p, material=False)
    p.add_argument("--tau", type=float, default=1e-4)
    p.add_argument("--a-min", dest="a_min", type=float, default=1e-3)
    p.add_argument("--a-max", dest="a_max", type=float, default=1e3)
    p.add_argument("--count", type=int, default=61)
    p.set_defaults(func=cmd_figure1)
    p.set_defaults(out_required=True)

    p = sub.add_parser("figure2", help="G(T) curves at a few separations")
    _add_common(p)
    p.add_argument("--separations", default="100nm,300nm,500nm")
    p.add_argument("--t-min", dest="t_min", type=float, default=1.0)
    p.add_argument("--t-max", dest="t_max", type=float, default=80.0)
    p.add_argument("--count", type=int, default=40)
    p.add_argument("--model", default="impedance", choices=["impedance", "drude", "ideal"])
    p.add_argument("--relaxation", default="bloch-gruneisen", choices=["poly", "bloch-gruneisen"])
    p.set_defaults(func=cmd_figure2, out_required=True)

    p = sub.add_parser("sweep", help="grid sweep over T, a or A")
    _add_common(p)
    p.add_argument("--axis", required=True, choices=["T", "a", "A"])
    p.add_argument("--min", required=True)
    p.add_argument("--max", required=True)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--spacing", default="linear", choices=["linear", "log"])
    p.add_argument("--fixed", action="append", metavar="KEY=VALUE",
                   help="held-constant parameter, e.g. a=300nm or T=50 or tau=1e-4")
    p.add_argument("--prescriptions", default="ideal-static")
    p.add_argument("--model", default="impedance", choices=["impedance", "drude", "ideal"])
    p.add_argument("--relaxation", default="bloch-gruneisen", choices=["poly", "bloch-gruneisen"])
    p.add_argument("--with-derivatives", action="store_true", dest="with_derivatives")
    p.set_defaults(func=cmd_sweep, out_required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "out_required", False) and not args.out:
        print("error: --out is required for this command", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 1
        raise


if __name__ == "__main__":
    sys.exit(main())
