"""Command-line client for the chshlab service.

Every subcommand is a thin HTTP client: it posts a JSON request and formats
the JSON response.  By default the request is dispatched to the FastAPI app
in-process (ASGI transport, no server required); pass --server URL to talk
to a remote instance instead.

Exit codes: 0 success, 1 unreadable/unparseable input file, 2 validation
failure, 3 optimizer non-convergence, 64 usage error.
"""

from __future__ import annotations

import argparse
import asyncio
import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout

import httpx

from .errors import ChshlabError
from .fileio import FileFormatError, load_state_file, state_to_payload

EXIT_OK = 0
EXIT_FILE = 1
EXIT_INVALID = 2
EXIT_NO_CONVERGENCE = 3
EXIT_USAGE = 64


def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.9f}"


def _fmt_sci(x: float) -> str:
    if x == 0.0:
        x = 0.0
    return f"{x:.9e}"


def _csv_num(x: float) -> str:
    if x == 0.0:
        x = 0.0
    return f"{x:.9g}"


def _post(path: str, payload: dict, server: str | None) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            return client.post(path, json=payload)

    from .service import app  # lazy: only the in-process default needs it

    async def _go() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://chshlab.internal", timeout=None
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(_go())


class _ClientError(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _call(path: str, payload: dict, server: str | None) -> dict:
    response = _post(path, payload, server)
    if response.status_code == 200:
        return response.json()
    try:
        detail = response.json().get("detail")
    except (json.JSONDecodeError, ValueError, AttributeError):
        detail = response.text
    if not isinstance(detail, str):
        detail = json.dumps(detail)
    raise _ClientError(EXIT_INVALID, f"request rejected ({response.status_code}): {detail}")


def _load_payload(path: str) -> dict:
    try:
        state = load_state_file(path)
    except FileFormatError as exc:
        raise _ClientError(EXIT_FILE, str(exc)) from exc
    except ChshlabError as exc:
        raise _ClientError(EXIT_INVALID, str(exc)) from exc
    return state_to_payload(state)


def _print_scheme(scheme: dict) -> None:
    for key in ("a", "a_prime", "b", "b_prime"):
        print(key, " ".join(_fmt(c) for c in scheme[key]))


def _cmd_analytic(ns) -> int:
    resp = _call("/analytic", {"theta": ns.theta}, ns.server)
    print(f"bound {_fmt(resp['bound'])}, entropy {_fmt(resp['entropy'])}")
    return EXIT_OK


def _cmd_schmidt(ns) -> int:
    resp = _call("/schmidt", {"state": _load_payload(ns.infile)}, ns.server)
    print(f"theta {_fmt(resp['theta'])}")
    for label in ("u_a", "u_b"):
        entries = [c for row in resp[label]["matrix"] for pair in row for c in pair]
        print(label, " ".join(_fmt(c) for c in entries))
    return EXIT_OK


def _cmd_maximize(ns) -> int:
    resp = _call(
        "/maximize",
        {"state": _load_payload(ns.infile), "restarts": ns.restarts, "seed": ns.seed},
        ns.server,
    )
    print(f"value {_fmt(resp['value'])}")
    _print_scheme(resp["scheme"])
    print("converged", "true" if resp["converged"] else "false")
    return EXIT_OK if resp["converged"] else EXIT_NO_CONVERGENCE


def _cmd_optimal(ns) -> int:
    resp = _call("/optimal", {"state": _load_payload(ns.infile)}, ns.server)
    print(f"lambda {_fmt(resp['lambda_angle'])}")
    print(f"achieved {_fmt(resp['achieved'])}")
    print(f"bound {_fmt(resp['bound'])}")
    print(f"residual {_fmt_sci(resp['residual'])}")
    _print_scheme(resp["scheme"])
    return EXIT_OK


def _cmd_horodecki(ns) -> int:
    resp = _call("/horodecki", {"state": _load_payload(ns.infile)}, ns.server)
    print(
        f"M {_fmt(resp['m'])}, max {_fmt(resp['max_chsh'])}, "
        f"purity {_fmt(resp['purity'])}"
    )
    return EXIT_OK


def _cmd_sweep(ns) -> int:
    resp = _call("/sweep", {"steps": ns.steps}, ns.server)
    rows = resp["rows"]
    with open(ns.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("theta,bound,entropy\n")
        for r in rows:
            fh.write(
                f"{_csv_num(r['theta'])},{_csv_num(r['bound'])},"
                f"{_csv_num(r['entropy'])}\n"
            )
    print(f"wrote {len(rows)} rows to {ns.out}")
    return EXIT_OK


def _cmd_scan_mixed(ns) -> int:
    payload = {"count": ns.count, "seed": ns.seed}
    if ns.rank is not None:
        payload["rank"] = ns.rank
    resp = _call("/scan-mixed", payload, ns.server)
    rows = resp["rows"]
    with open(ns.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("index,rank,purity,max_chsh\n")
        for r in rows:
            fh.write(
                f"{r['index']},{r['rank']},{_csv_num(r['purity'])},"
                f"{_csv_num(r['max_chsh'])}\n"
            )
    print(f"wrote {len(rows)} rows to {ns.out}")
    print(f"max {_fmt(resp['max_chsh'])}, purity {_fmt(resp['max_purity'])}")
    return EXIT_OK


def _cmd_verify(ns) -> int:
    resp = _call("/verify", {"seed": ns.seed, "trials": ns.trials}, ns.server)
    checks = resp["checks"]
    for check in checks:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"{status} {check['name']}: {check['detail']}")
    passed = sum(1 for c in checks if c["passed"])
    print(f"passed {passed}/{len(checks)}")
    return EXIT_OK if resp["all_passed"] else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chshlab",
        description="Two-qubit CHSH analysis: exact violation bounds, optimal "
        "settings, the Horodecki criterion, and a numerical cross-check.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--server",
        default=None,
        help="base URL of a running chshlab service (default: in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "analytic", parents=[common],
        help="exact violation bound and entanglement entropy for a Schmidt angle",
    )
    p.add_argument("--theta", type=float, required=True, help="Schmidt angle in radians")
    p.set_defaults(handler=_cmd_analytic)

    p = sub.add_parser(
        "schmidt", parents=[common], help="Schmidt angle and local unitaries of a pure state"
    )
    p.add_argument("--in", dest="infile", required=True, help="pure state file")
    p.set_defaults(handler=_cmd_schmidt)

    p = sub.add_parser(
        "maximize", parents=[common],
        help="numerically maximize |<B>| over all measurement schemes",
    )
    p.add_argument("--in", dest="infile", required=True, help="pure or density state file")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_maximize)

    p = sub.add_parser(
        "optimal", parents=[common],
        help="construct measurement settings achieving the exact pure-state maximum",
    )
    p.add_argument("--in", dest="infile", required=True, help="pure state file")
    p.set_defaults(handler=_cmd_optimal)

    p = sub.add_parser(
        "horodecki", parents=[common],
        help="Horodecki criterion M, maximal CHSH value 2 sqrt(M), and purity",
    )
    p.add_argument("--in", dest="infile", required=True, help="density matrix file")
    p.set_defaults(handler=_cmd_horodecki)

    p = sub.add_parser(
        "sweep", parents=[common], help="CSV of bound and entropy over theta in [0, pi]"
    )
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser(
        "scan-mixed", parents=[common],
        help="seeded ensemble scan: purity and 2 sqrt(M) per random density matrix",
    )
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--rank", type=int, default=None, help="fix the sample rank (1..4)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(handler=_cmd_scan_mixed)

    p = sub.add_parser(
        "verify", parents=[common], help="run the cross-checking invariant suite"
    )
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return ns.handler(ns)
    except _ClientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FILE
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return EXIT_INVALID


def run_command(argv: list[str]) -> tuple[int, str, str]:
    """Run a CLI invocation, capturing stdout/stderr; returns (code, out, err)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def entry() -> None:
    raise SystemExit(main())
