"""Command-line front end.

Each subcommand names the experiment kind; parameters come from an
optional ``--config`` file (flat key = value with section headers), with
a few flags overriding the file.  Runs execute in-process unless
``--server`` points at a running service.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from pydantic import ValidationError

from .client import HttpClient, LocalClient
from .config import PRESET_NAMES, ExperimentConfig, read_flat

__all__ = ["main"]

KINDS = ("spectrum", "dynamics", "floquet", "classify", "sweep", "preset")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magnonchain",
        description="Spectra, Floquet physics, and magnon dynamics of finite spin chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind, help=f"run a {kind} experiment")
        p.add_argument("--config", type=Path, help="key = value config file")
        p.add_argument("--out", help="output directory (default: runs)")
        p.add_argument("--steps", type=int, help="propagator steps per drive period")
        p.add_argument("--threads", type=int, help="worker threads for sweeps")
        p.add_argument("--server", help="base URL of a running service (default: in-process)")
        if kind == "preset":
            p.add_argument("name", nargs="?", help=f"one of: {', '.join(PRESET_NAMES)}")
            p.add_argument("--preset", help="preset name (alternative to the positional)")
    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _config_for(args: argparse.Namespace) -> ExperimentConfig:
    overrides: dict = {
        "out": args.out,
        "steps": args.steps,
        "threads": args.threads,
    }
    if args.command == "preset":
        if args.preset and args.name and args.preset != args.name:
            raise ValueError(
                f"preset given twice with different names: {args.name!r} vs {args.preset!r}"
            )
        overrides["preset"] = args.preset or args.name
    flat: dict = read_flat(args.config) if args.config is not None else {}
    if "kind" in flat and flat["kind"] != args.command:
        raise ValueError(
            f"config file says kind = {flat['kind']} but the subcommand is {args.command}"
        )
    flat.update({k: v for k, v in overrides.items() if v is not None})
    flat["kind"] = args.command
    return ExperimentConfig.model_validate(flat)


def _summarize(manifest) -> str:
    lines = [f"wrote {len(manifest.outputs)} files to {manifest.config['out']}"]
    for record in manifest.outputs:
        lines.append(f"  {record.path}  ({record.bytes} bytes, sha256 {record.sha256[:12]}...)")
    if manifest.results:
        lines.append(f"results: {manifest.results}")
    lines.append(f"total time: {manifest.timings.get('total', 0.0):.2f} s")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    try:
        config = _config_for(args)
    except (ValueError, ValidationError, OSError) as exc:
        print(f"error: {_first_error(exc)}", file=sys.stderr)
        return 2

    client = HttpClient(args.server) if args.server else LocalClient()
    try:
        manifest = client.run(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if isinstance(client, HttpClient):
            client.close()
    print(_summarize(manifest))
    return 0


def _first_error(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        first = exc.errors()[0]
        location = ".".join(str(p) for p in first["loc"]) or "config"
        return f"{location}: {first['msg']}"
    return str(exc)


if __name__ == "__main__":
    sys.exit(main())
