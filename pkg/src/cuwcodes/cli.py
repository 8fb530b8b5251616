"""Command-line client for the service.

By default each command talks to the FastAPI app in-process (no socket);
`--server URL` points it at a running instance instead.  Exit codes:
0 when the command (and any verification it ran) succeeded, 1 when a
verification failed or the server rejected the request, 2 for usage and
file errors.
"""

from __future__ import annotations

import asyncio
import json
import sys
from fractions import Fraction
from pathlib import Path

import click
import httpx

_IN_PROCESS_BASE = "http://cuwcodes.local"


class ServiceClient:
    """Minimal request wrapper: in-process ASGI by default, HTTP otherwise."""

    def __init__(self, base_url: str | None = None):
        self.base_url = base_url
        self._app = None

    def _get_app(self):
        if self._app is None:
            from .server import create_app

            self._app = create_app()
        return self._app

    def request(self, method: str, path: str, *, params=None, json_body=None) -> httpx.Response:
        if self.base_url:
            with httpx.Client(base_url=self.base_url, timeout=600.0) as client:
                return client.request(method, path, params=params, json=json_body)

        async def _run() -> httpx.Response:
            transport = httpx.ASGITransport(app=self._get_app())
            async with httpx.AsyncClient(
                transport=transport, base_url=_IN_PROCESS_BASE, timeout=600.0
            ) as client:
                return await client.request(method, path, params=params, json=json_body)

        return asyncio.run(_run())


def _fail(message: str, code: int = 1):
    click.echo(message, err=True)
    sys.exit(code)


def _check_response(resp: httpx.Response) -> None:
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        _fail(f"error: {detail}")


def _load_json_file(path: str, what: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        _fail(f"cannot read {what} {path}: {exc}", code=2)
    except json.JSONDecodeError as exc:
        _fail(f"parse error in {what} {path}: {exc}", code=2)


def _print_report(payload: dict, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
        return
    for check in payload["checks"]:
        if check["passed"]:
            click.echo(f"ok   {check['name']}")
        else:
            witnesses = check["witnesses"] or [check["witness"]]
            click.echo(f"FAIL {check['name']}: {witnesses[0]}")
            for extra in witnesses[1:]:
                click.echo(f"     {extra}")
    click.echo("passed" if payload["passed"] else "failed")


def _exit_by_pass(payload: dict):
    sys.exit(0 if payload["passed"] else 1)


@click.group()
@click.option(
    "--server",
    default=None,
    metavar="URL",
    help="Base URL of a running service; default runs the app in-process.",
)
@click.pass_context
def main(ctx: click.Context, server: str | None):
    """Construct, verify and simulate unitary-weight multigroup STBC designs."""
    ctx.obj = ServiceClient(server)


@main.command()
@click.option("--method", type=click.Choice(["blockdiag", "tensor", "abba"]), required=True)
@click.option("--g", "g", type=int, default=None, help="Decoding groups (blockdiag/tensor).")
@click.option("--lambda", "lam", type=int, required=True, help="Real variables per group (power of two).")
@click.option(
    "--delta-style",
    type=click.Choice(["diagonal", "regular"]),
    default="diagonal",
    show_default=True,
    help="tensor only: commuting-factor style.",
)
@click.option(
    "--slot",
    type=click.Choice(["scalar", "alamouti"]),
    default="alamouti",
    show_default=True,
    help="abba only: per-block orthogonal slot.",
)
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True)
@click.pass_obj
def construct(client: ServiceClient, method: str, g: int | None, lam: int, delta_style: str, slot: str, output: str):
    """Build a design and write it as a canonical design file."""
    body = {"method": method, "lambda": lam, "delta_style": delta_style, "slot": slot}
    if g is not None:
        body["g"] = g
    resp = client.request("POST", "/construct", params={"format": "file"}, json_body=body)
    _check_response(resp)
    Path(output).write_bytes(resp.content)
    doc = json.loads(resp.content)
    k = doc["g"] * doc["lambda"]
    rate = Fraction(k, 2 * doc["nt"])
    click.echo(f"wrote {output}: nt={doc['nt']} g={doc['g']} lambda={doc['lambda']} rate={rate}")


def _read_partition(path: str | None):
    if path is None:
        return None
    payload = _load_json_file(path, "partition file")
    if not isinstance(payload, list):
        _fail(f"partition file {path} must hold a JSON list of groups", code=2)
    return payload


@main.command()
@click.argument("design_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--partition", "partition_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON list of 1-based index groups to check instead of the file's own.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report on stdout.")
@click.option("--verbose", is_flag=True, help="Collect every witness, not just the first.")
@click.pass_obj
def verify(client: ServiceClient, design_file: str, partition_file: str | None, as_json: bool, verbose: bool):
    """Check the design conditions and decodability of a design file."""
    body = {
        "design": _load_json_file(design_file, "design file"),
        "partition": _read_partition(partition_file),
        "verbose": verbose,
    }
    resp = client.request("POST", "/verify", json_body=body)
    _check_response(resp)
    payload = resp.json()
    _print_report(payload, as_json)
    _exit_by_pass(payload)


@main.command("rate-table")
@click.option("--gmax", type=int, required=True, help="Largest group count to tabulate.")
@click.option("--json", "as_json", is_flag=True)
@click.pass_obj
def rate_table(client: ServiceClient, gmax: int, as_json: bool):
    """Maximal rates and minimal antenna counts for g = 1..gmax."""
    resp = client.request("GET", "/rate-table", params={"gmax": gmax})
    _check_response(resp)
    payload = resp.json()
    if as_json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
        return
    lams = sorted(payload["rows"][0]["min_nt"], key=int) if payload["rows"] else []
    header = ["g", "max_rate"] + [f"nt(lambda={lam})" for lam in lams]
    click.echo("  ".join(f"{h:>14}" for h in header))
    for row in payload["rows"]:
        cells = [str(row["g"]), row["max_rate"]] + [str(row["min_nt"][lam]) for lam in lams]
        click.echo("  ".join(f"{cell:>14}" for cell in cells))


def _parse_snr_list(_ctx, _param, value: str) -> list[float]:
    try:
        return [float(v) for v in value.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise click.BadParameter(f"expected comma-separated numbers: {exc}")


@main.command()
@click.argument("design_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--snr-db", callback=_parse_snr_list, required=True,
              help="Comma-separated SNR points in dB, e.g. 0,5,10.")
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, envvar="CUW_SEED",
              help="Simulation seed (env CUW_SEED).")
@click.option("--partition", "partition_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--points-per-group", type=int, default=4, show_default=True)
@click.option("--rotation", type=float, default=None, help="Pairwise constellation rotation in radians.")
@click.option("--nr", type=int, default=1, show_default=True, help="Receive antennas.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True)
@click.pass_obj
def simulate(client: ServiceClient, design_file: str, snr_db: list[float], trials: int, seed: int,
             partition_file: str | None, points_per_group: int, rotation: float | None, nr: int, output: str):
    """Monte-Carlo sweep of a design file; writes a CSV table."""
    body = {
        "design": _load_json_file(design_file, "design file"),
        "partition": _read_partition(partition_file),
        "snr_db": snr_db,
        "trials": trials,
        "seed": seed,
        "points_per_group": points_per_group,
        "rotation": rotation,
        "nr": nr,
    }
    resp = client.request("POST", "/simulate", params={"format": "csv"}, json_body=body)
    _check_response(resp)
    Path(output).write_text(resp.text)
    rows = resp.text.strip().splitlines()
    click.echo(f"wrote {output}: {max(len(rows) - 1, 0)} rows over {len(snr_db)} SNR points")


@main.command("group-check")
@click.option("--n", type=int, required=True, help="Anticommuting generators.")
@click.option("--a", type=int, required=True, help="Commuting generators.")
@click.option("--json", "as_json", is_flag=True)
@click.option("--verbose", is_flag=True)
@click.pass_obj
def group_check(client: ServiceClient, n: int, a: int, as_json: bool, verbose: bool):
    """Exhaustively verify the signed monomial group for (n, a)."""
    resp = client.request(
        "GET", "/group-check", params={"n": n, "a": a, "verbose": verbose}
    )
    _check_response(resp)
    payload = resp.json()
    if not as_json:
        click.echo(f"group order {payload['order']} (n={n}, a={a})")
    _print_report(payload, as_json)
    _exit_by_pass(payload)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("cuwcodes.server:app", host=host, port=port)


if __name__ == "__main__":
    main()
