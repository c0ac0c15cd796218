"""Command-line front end: scenario configs in, tables and plots out.

The CLI is a thin client of the HTTP service. By default it mounts the
FastAPI app in-process (no server needed); `--server URL` points it at a
running instance instead. Subcommands: region, saturation, layers,
validate, plus `serve` to run the service under uvicorn.

Config is a single JSON document:

    {
      "params":  {"a": 0.25, "b": 0.25, "p1": 2.0, "p2": 2.0, "sigma2": 1.0},
      "mu_grid": [0.5, 1.0, 2.0],                  # optional
      "options": {"coarse": 64, "refine_rounds": 8,
                  "delta_list": [0.1, 0.05, 0.025, 0.0125],
                  "pv1": 1.0, "pv2": 1.0, "seed": 0}   # all optional
    }

Exit codes: 0 ok, 1 validation failure, 2 config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

DEFAULT_CONFIG = {
    "params": {"a": 0.25, "b": 0.25, "p1": 2.0, "p2": 2.0, "sigma2": 1.0},
}

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2


def _fmt(v) -> str:
    """Full round-trip decimal text for one CSV cell."""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_csv(path: Path, header: List[str], rows: List[List]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(c) for c in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return dict(DEFAULT_CONFIG)
    p = Path(path)
    if not p.exists():
        print("config not found", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)
    try:
        cfg = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        print(f"config is not valid JSON: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)
    if "params" not in cfg:
        print("config is missing the params object", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)
    return cfg


def _client(server: Optional[str]):
    if server:
        import httpx
        return httpx.Client(base_url=server)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from fastapi.testclient import TestClient
    from .service import create_app
    return TestClient(create_app())


def _post(client, path: str, payload: dict) -> dict:
    resp = client.post(path, json=payload)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        print(f"request failed ({resp.status_code}): {detail}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)
    return resp.json()


def _search_options(cfg: dict) -> dict:
    opts = cfg.get("options", {})
    out = {}
    for key in ("coarse", "refine_rounds"):
        if key in opts:
            out[key] = opts[key]
    return out


def _region_payload(cfg: dict, mu_grid: Optional[List[float]]) -> dict:
    payload = {"params": cfg["params"], "options": _search_options(cfg)}
    grid = mu_grid if mu_grid is not None else cfg.get("mu_grid")
    if grid is not None:
        payload["mu_grid"] = grid
    return payload


def cmd_region(cfg, args, client) -> int:
    data = _post(client, "/region", _region_payload(cfg, args.mu_grid))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = [[p["mu"], p["r1"], p["r2"], p["r_u1"], p["r_v1"], p["r_u2"],
             p["r_v2"], p["pv1"], p["pv2"], p["dominant"]]
            for p in data["points"]]
    _write_csv(out / "boundary.csv",
               ["mu", "r1", "r2", "r_u1", "r_v1", "r_u2", "r_v2",
                "pv1", "pv2", "dominant"], rows)
    (out / "solutions.json").write_text(
        json.dumps(data, indent=2, sort_keys=True) + "\n")
    if args.plot:
        from .svgplot import line_plot
        series = [
            ("HK boundary", [p["r1"] for p in data["points"]],
             [p["r2"] for p in data["points"]]),
            ("all-private", [p["r1"] for p in data["all_private"]],
             [p["r2"] for p in data["all_private"]]),
        ]
        (out / "region.svg").write_text(line_plot(
            series, "R1 (bits/use)", "R2 (bits/use)", "Rate-region boundary"))
    return EXIT_OK


def cmd_saturation(cfg, args, client) -> int:
    data = _post(client, "/saturation", _region_payload(cfg, args.mu_grid))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = [[r["mu"], r["p_hat_1"], r["p_hat_2"], r["r_sat_1"], r["r_sat_2"],
             r["residual"]] for r in data["rows"]]
    _write_csv(out / "saturation.csv",
               ["mu", "p_hat_1", "p_hat_2", "r_sat_1", "r_sat_2", "residual"],
               rows)
    if not data["all_ok"]:
        print("saturation residual exceeded tolerance", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_layers(cfg, args, client) -> int:
    opts = cfg.get("options", {})
    payload = {"params": cfg["params"]}
    for key in ("pv1", "pv2", "delta_list"):
        if key in opts:
            payload[key] = opts[key]
    data = _post(client, "/layers", payload)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = [[r["delta"], r["r_u1"], r["r_v1"], r["r_u2"], r["r_v2"],
             r["dummy_y1"], r["dummy_y2"], r["max_abs_error"]]
            for r in data["rows"]]
    _write_csv(out / "layers.csv",
               ["delta", "r_u1", "r_v1", "r_u2", "r_v2",
                "dummy_y1", "dummy_y2", "max_abs_error"], rows)
    if args.plot:
        from .svgplot import line_plot
        floor = 1e-16                  # exact aggregates plot at the floor
        deltas = [r["delta"] for r in data["rows"]]
        errs = [max(r["max_abs_error"], floor) for r in data["rows"]]
        (out / "layers.svg").write_text(line_plot(
            [("max abs error", deltas, errs)], "delta", "error",
            "Layer discretization error", logx=True, logy=True))
    return EXIT_OK


def cmd_validate(cfg, args, client) -> int:
    seed = args.seed if args.seed is not None \
        else cfg.get("options", {}).get("seed", 0)
    payload = {"seed": seed, "inject_fault": bool(args.inject_fault)}
    data = _post(client, "/validate", payload)
    sys.stdout.write(data["report"])
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "validation.txt").write_text(data["report"])
    return EXIT_OK if data["all_passed"] else EXIT_VALIDATION


def cmd_serve(cfg, args, client) -> int:
    import uvicorn
    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def _parse_mu_grid(text: str) -> List[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        print(f"bad --mu-grid value: {text!r}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gic",
        description="Rate regions for the 2-user weak Gaussian "
                    "interference channel.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="scenario JSON file")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--plot", action="store_true",
                        help="emit SVG plots alongside the tables")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for the property suites")
    common.add_argument("--mu-grid", default=None,
                        help='override, e.g. "0.5,1,2"')
    common.add_argument("--server", default=None,
                        help="base URL of a running service "
                             "(default: in-process)")
    sub.add_parser("region", parents=[common],
                   help="boundary sweep: CSV, JSON, optional SVG")
    sub.add_parser("saturation", parents=[common],
                   help="per-mu saturation levels and nested re-solve")
    sub.add_parser("layers", parents=[common],
                   help="delta-layer discretization error table")
    validate = sub.add_parser("validate", parents=[common],
                              help="run the seeded property-check suite")
    validate.add_argument("--inject-fault", action="store_true",
                          help="test mode: perturb one rank to force a failure")
    serve = sub.add_parser("serve", parents=[common],
                           help="run the HTTP service under uvicorn")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "inject_fault"):
        args.inject_fault = False
    args.mu_grid = _parse_mu_grid(args.mu_grid) if args.mu_grid else None
    cfg = _load_config(args.config)
    handlers = {"region": cmd_region, "saturation": cmd_saturation,
                "layers": cmd_layers, "validate": cmd_validate,
                "serve": cmd_serve}
    client = None if args.command == "serve" else _client(args.server)
    try:
        return handlers[args.command](cfg, args, client)
    finally:
        if client is not None:
            client.close()


if __name__ == "__main__":
    sys.exit(main())
