"""`sweep` command-line client.

A thin client of the service API: requests are posted to an in-process
instance of the app by default, or to a remote server given with --server.
Exit codes: 0 success, 2 configuration error, 3 validation-tolerance
failure (the CSV is still written so the deviations can be inspected).
"""

from __future__ import annotations

import argparse
import asyncio
import sys

import httpx

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDATION = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sweep",
        description=(
            "Sweep handover outcome probabilities over a velocity grid, or "
            "emit the boundary-distance table (preset table4). Results are CSV."
        ),
    )
    parser.add_argument("--config", help="scenario file (INI sections [macro] [pico] [geometry] [offsets])")
    parser.add_argument(
        "--preset",
        choices=["fig7", "fig8", "fig9", "table4"],
        help="built-in grid: fig7=250 m, fig8=75 m, fig9=125 m velocity sweeps, "
        "table4=boundary table",
    )
    parser.add_argument(
        "--policies",
        help="comma-separated subset of lte,zeus,zeus-ext (default: all)",
    )
    parser.add_argument(
        "--velocities",
        help="comma-separated speeds in km/h (default: 5..120 step 5)",
    )
    parser.add_argument(
        "--validate", action="store_true",
        help="re-evaluate every point with the Monte Carlo oracle and "
        "fail (exit 3) on any deviation beyond 3 standard errors",
    )
    parser.add_argument("--samples", type=int, default=1_000_000,
                        help="Monte Carlo samples per point (default 1e6)")
    parser.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    parser.add_argument(
        "--r-thresh", choices=["coverage", "trigger"], default="coverage",
        help="high-speed-extension threshold radius rule (default: coverage)",
    )
    parser.add_argument("--out", help="output CSV path (default: stdout)")
    parser.add_argument("--server", help="base URL of a running service "
                        "(default: run the service in-process)")
    return parser


async def _post(path: str, payload: dict, server: str | None) -> httpx.Response:
    if server:
        async with httpx.AsyncClient(base_url=server, timeout=None) as client:
            return await client.post(path, json=payload)
    from .service import app

    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(
        transport=transport, base_url="http://hosweep", timeout=None
    ) as client:
        return await client.post(path, json=payload)


def _read_config(path: str) -> str | None:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError:
        return None


def _fail(message: str) -> int:
    print(f"sweep: {message}", file=sys.stderr)
    return EXIT_CONFIG


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if not args.config and not args.preset:
        return _fail("need --config and/or --preset")

    payload: dict = {}
    if args.config:
        text = _read_config(args.config)
        if text is None:
            return _fail(f"cannot read config file {args.config!r}")
        payload["config_ini"] = text

    if args.preset == "table4":
        path = "/table4"
    else:
        path = "/sweep"
        if args.preset:
            payload["preset"] = args.preset
        if args.policies:
            payload["policies"] = [p.strip() for p in args.policies.split(",") if p.strip()]
        if args.velocities:
            try:
                payload["velocities_kmh"] = [
                    float(v) for v in args.velocities.split(",") if v.strip()
                ]
            except ValueError:
                return _fail(f"non-numeric velocity in {args.velocities!r}")
        payload["validate_mc"] = args.validate
        payload["samples"] = args.samples
        payload["seed"] = args.seed
        payload["r_thresh_rule"] = args.r_thresh

    try:
        response = asyncio.run(_post(path, payload, args.server))
    except httpx.HTTPError as exc:
        return _fail(f"cannot reach server: {exc}")

    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        return _fail(f"{detail}")

    body = response.json()
    _write(body["csv"], args.out)

    validation = body.get("validation")
    if validation is not None:
        status = "PASS" if validation["passed"] else "FAIL"
        print(
            f"sweep: validation {status}: max |z| = {validation['max_abs_z']:.3f} "
            f"over {validation['n_checks']} checks (threshold {validation['threshold']:g}, "
            f"worst {validation['worst']})",
            file=sys.stderr,
        )
        if not validation["passed"]:
            return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
