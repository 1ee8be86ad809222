"""Batch CLI: a thin client of the HTTP service.

Every subcommand builds a request, sends it to the service, and renders the
JSON response.  By default the ASGI app is mounted in-process (no listener,
no network); ``--server URL`` targets a running ``ndg serve`` instead.  The
payload and rendering logic are identical either way.

Exit codes: 0 success, 2 usage error (bad flags, malformed request), 3 data
error (bad CSV, ties under the strict policy, unknown spec, domain errors).

Formats: CSV files use a header ``x,y`` and one pair per row, UTF-8 with a
``.`` decimal separator; floats are serialized with 17 significant digits so
round-trips are lossless.  JSON reports include ``"generated_at"`` unless
``--deterministic`` is given; everything else is byte-stable for identical
argv.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import io
import json
import sys
from datetime import datetime, timezone
from typing import Any, Sequence

import httpx

__all__ = ["main", "build_parser"]

_USAGE_EXIT = 2
_DATA_EXIT = 3
_FMT = "%.17g"


class _DataError(Exception):
    """Client-side data problem (bad CSV, unreadable file)."""


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, default_format: str = "json") -> None:
    p.add_argument("--format", choices=("json", "csv"), default=default_format,
                   help="report format (default %(default)s)")
    p.add_argument("--deterministic", action="store_true",
                   help="suppress the generated_at timestamp")
    p.add_argument("--server", default=None, metavar="URL",
                   help="send requests to a running service instead of in-process")


def _add_spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", required=True,
                   help="builtin spec name or path to a spec JSON file")
    p.add_argument("--w", type=float, default=None,
                   help="two-segments: weight of the diagonal segment")
    p.add_argument("--depth", type=int, default=None,
                   help="fat-cantor: construction depth")
    p.add_argument("--weights", default=None,
                   help="fig1b-weights: four comma-separated weights")
    p.add_argument("--shifts", default=None,
                   help="singular-shift: comma-separated shift values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ndg",
        description="Rank-correlation degeneracy diagnostics over CSV/JSON.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("sample", help="draw a sample from a spec, emit CSV")
    _add_spec_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p, default_format="csv")

    p = sub.add_parser("estimate", help="estimate tau/rho and degeneracy from CSV")
    p.add_argument("--input", required=True, help="CSV file with header x,y ('-' for stdin)")
    p.add_argument("--tie-policy", choices=("strict", "midrank"), default="midrank")
    p.add_argument("--threshold", type=float, default=0.02)
    p.add_argument("--grid-dump", default=None, metavar="PATH",
                   help="write a d_tau heatmap grid CSV (x,y,d_tau) to PATH")
    p.add_argument("--grid-size", type=int, default=50)
    _add_common(p)

    p = sub.add_parser("support", help="rectangle-witness and occupancy analysis")
    _add_spec_args(p)
    p.add_argument("--resolution", type=float, required=True)
    p.add_argument("--cell", type=float, required=True)
    p.add_argument("--origin", default="0,0", help="snap origin as 'x,y' (default 0,0)")
    _add_common(p)

    p = sub.add_parser("mc", help="replicated Monte Carlo scaled variances")
    _add_spec_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("curve", help="scaled-variance trajectory over sample sizes")
    _add_spec_args(p)
    p.add_argument("--n-list", required=True, help="comma-separated increasing sample sizes")
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("serve", help="run the HTTP service with uvicorn")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


# ---------------------------------------------------------------------------
# spec payload assembly
# ---------------------------------------------------------------------------


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise _DataError(f"{flag} expects comma-separated numbers: {exc}") from exc


def _spec_payload(args: argparse.Namespace) -> dict[str, Any]:
    name = args.spec
    if name.endswith(".json"):
        try:
            with open(name, "r", encoding="utf-8") as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise _DataError(f"cannot read spec file {name!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise _DataError(f"invalid spec JSON in {name!r}: {exc}") from exc
        if not isinstance(obj, dict) or "components" not in obj:
            raise _DataError(f"spec file {name!r} must contain a 'components' list")
        return {"components": obj["components"]}
    params: dict[str, Any] = {}
    if args.w is not None:
        params["w"] = args.w
    if args.depth is not None:
        params["depth"] = args.depth
    if args.weights is not None:
        params["weights"] = _parse_float_list(args.weights, "--weights")
    if args.shifts is not None:
        params["shifts"] = _parse_float_list(args.shifts, "--shifts")
    return {"name": name, "params": params or None}


# ---------------------------------------------------------------------------
# transport
# ---------------------------------------------------------------------------


def _post(args: argparse.Namespace, path: str, payload: dict[str, Any]) -> dict[str, Any]:
    async def go() -> httpx.Response:
        server = getattr(args, "server", None)
        if server:
            async with httpx.AsyncClient(base_url=server, timeout=600.0) as client:
                return await client.post(path, json=payload)
        from .service import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://ndg.internal", timeout=600.0
        ) as client:
            return await client.post(path, json=payload)

    resp = asyncio.run(go())
    if resp.status_code == 200:
        return resp.json()
    if resp.status_code == 400:
        body = resp.json()
        raise _DataError(f"{body.get('error', 'error')}: {body.get('detail', '')}")
    if resp.status_code == 422:
        print(f"ndg: invalid request: {resp.text}", file=sys.stderr)
        raise SystemExit(_USAGE_EXIT)
    raise _DataError(f"service returned status {resp.status_code}: {resp.text}")


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _fmt_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _FMT % v
    if v is None:
        return ""
    return str(v)


def _flatten(obj: Any, prefix: str, rows: list[tuple[str, str]]) -> None:
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(obj[k], f"{prefix}{k}.", rows)
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(v, f"{prefix}{i}.", rows)
    else:
        rows.append((prefix[:-1], _fmt_value(obj)))


def _emit_report(args: argparse.Namespace, data: dict[str, Any]) -> None:
    out = dict(data)
    if not args.deterministic:
        out["generated_at"] = datetime.now(timezone.utc).isoformat()
    if args.format == "json":
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        rows: list[tuple[str, str]] = []
        _flatten(out, "", rows)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("key", "value"))
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())


def _emit_pairs_csv(xs: Sequence[float], ys: Sequence[float]) -> None:
    w = sys.stdout.write
    w("x,y\n")
    for x, y in zip(xs, ys):
        w(f"{_FMT % x},{_FMT % y}\n")


def _read_pairs_csv(path: str) -> tuple[list[float], list[float]]:
    try:
        fh = sys.stdin if path == "-" else open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise _DataError(f"cannot read {path!r}: {exc}") from exc
    try:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise _DataError(f"{path!r} is empty") from None
        if [h.strip() for h in header] != ["x", "y"]:
            raise _DataError(f"{path!r} must start with header 'x,y', got {header!r}")
        xs: list[float] = []
        ys: list[float] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise _DataError(f"{path!r} line {lineno}: expected 2 fields, got {len(row)}")
            try:
                xs.append(float(row[0]))
                ys.append(float(row[1]))
            except ValueError as exc:
                raise _DataError(f"{path!r} line {lineno}: {exc}") from exc
        return xs, ys
    finally:
        if fh is not sys.stdin:
            fh.close()


def _write_grid_csv(path: str, grid: dict[str, Any]) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("x,y,d_tau\n")
            for i, x in enumerate(grid["xs"]):
                row_vals = grid["d_tau"][i]
                for j, y in enumerate(grid["ys"]):
                    fh.write(f"{_FMT % x},{_FMT % y},{_FMT % row_vals[j]}\n")
    except OSError as exc:
        raise _DataError(f"cannot write {path!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_sample(args: argparse.Namespace) -> int:
    payload = {"spec": _spec_payload(args), "n": args.n, "seed": args.seed}
    data = _post(args, "/sample", payload)
    if args.format == "csv":
        _emit_pairs_csv(data["xs"], data["ys"])
    else:
        _emit_report(args, data)
    return 0


def _cmd_estimate(args: argparse.Namespace) -> int:
    xs, ys = _read_pairs_csv(args.input)
    payload: dict[str, Any] = {
        "xs": xs,
        "ys": ys,
        "tie_policy": args.tie_policy,
        "threshold": args.threshold,
    }
    if args.grid_dump is not None:
        payload["grid_size"] = args.grid_size
    data = _post(args, "/estimate", payload)
    grid = data.pop("grid", None)
    if args.grid_dump is not None:
        if grid is None:
            raise _DataError("service response carried no grid")
        _write_grid_csv(args.grid_dump, grid)
    _emit_report(args, data)
    return 0


def _cmd_support(args: argparse.Namespace) -> int:
    origin = _parse_float_list(args.origin, "--origin")
    if len(origin) != 2:
        raise _DataError("--origin expects 'x,y'")
    payload = {
        "spec": _spec_payload(args),
        "resolution": args.resolution,
        "cell": args.cell,
        "origin": origin,
    }
    data = _post(args, "/support", payload)
    _emit_report(args, data)
    return 0


def _cmd_mc(args: argparse.Namespace) -> int:
    payload = {
        "spec": _spec_payload(args),
        "n": args.n,
        "reps": args.reps,
        "seed": args.seed,
    }
    data = _post(args, "/mc", payload)
    _emit_report(args, data)
    return 0


def _cmd_curve(args: argparse.Namespace) -> int:
    n_list = [int(v) for v in _parse_float_list(args.n_list, "--n-list")]
    payload = {
        "spec": _spec_payload(args),
        "n_list": n_list,
        "reps": args.reps,
        "seed": args.seed,
    }
    data = _post(args, "/curve", payload)
    _emit_report(args, data)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


_DISPATCH = {
    "sample": _cmd_sample,
    "estimate": _cmd_estimate,
    "support": _cmd_support,
    "mc": _cmd_mc,
    "curve": _cmd_curve,
    "serve": _cmd_serve,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors itself
        return int(exc.code) if exc.code is not None else 0
    try:
        return _DISPATCH[args.subcommand](args)
    except _DataError as exc:
        print(f"ndg: {exc}", file=sys.stderr)
        return _DATA_EXIT
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    except httpx.HTTPError as exc:
        print(f"ndg: transport error: {exc}", file=sys.stderr)
        return _DATA_EXIT


if __name__ == "__main__":
    sys.exit(main())
