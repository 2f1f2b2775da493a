"""Command-line front end: ``compop <command> [flags]``.

Exit codes: 0 success / bounded, 1 negative verdict, 2 undecidable, and
``LabError.exit_code`` (> 2) for every failure.
"""

import argparse
import logging
import sys

from pydantic import BaseModel

from compop import paths
from compop.errors import VALIDATION_ERROR, LabError
from compop.models import RunConfig
from compop.services import experiments, reporting
from compop.services.settings import get_settings, load_settings
from compop.specs import load_disc_map, load_symbol, load_target

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """Usage errors become VALIDATION_ERROR so they never collide with verdict codes."""

    def error(self, message: str):
        raise LabError(VALIDATION_ERROR, 422, f"usage: {message}")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return values


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _window(text: str) -> tuple[int, int]:
    parts = _int_list(text)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("window is 'lo,hi'")
    return parts[0], parts[1]


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="compop", description="Composition operators on Hardy spaces of Dirichlet series")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, help: str, spec: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        if spec:
            p.add_argument("--spec", required=True, help="JSON spec file")
        return p

    command("validate", "boundedness verdict for a symbol")

    p = command("decay", "approximation numbers and decay fits")
    p.add_argument("--n", type=int, required=True, help="truncation size N")
    p.add_argument("--row-tol", type=float, default=None)
    p.add_argument("--window", type=_window, default=None, help="fit window lo,hi")

    p = command("lowerbound", "kernel-subspace lower bounds")
    p.add_argument("--n", type=_int_list, required=True, help="comma-separated n values")
    p.add_argument("--sigma0", type=float, default=1.0, help="chain abscissa for c0 >= 1")

    p = command("carleson", "Monte Carlo pullback box masses")
    p.add_argument("--eps", type=_float_list, required=True, help="descending epsilons")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    p = command("transfer", "disc-to-Dirichlet transference check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=_window, default=None)

    command("selftest", "built-in numerical checks", spec=False)

    p = command("serve", "start the local HTTP service", spec=False)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=0, help="0 picks a free port")

    for name in ("decay", "lowerbound", "carleson", "transfer"):
        sp = sub.choices[name]
        sp.add_argument("--out", default=None, help="CSV output path (stdout when omitted)")
        sp.add_argument("--json", dest="json_out", default=None, help="JSON output path")
    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _emit(config: RunConfig, report: BaseModel) -> None:
    csv_text = reporting.to_csv(report)
    if config.out:
        reporting.write_text(config.out, csv_text)
    else:
        sys.stdout.write(csv_text)
    if config.json_out:
        reporting.write_text(config.json_out, reporting.to_json(config, report))


def cmd_validate(args: argparse.Namespace) -> int:
    verdict = experiments.run_validate(load_symbol(args.spec))
    print(verdict.model_dump_json())
    return verdict.exit_code


def cmd_decay(args: argparse.Namespace) -> int:
    row_tol = args.row_tol if args.row_tol is not None else get_settings().row_tolerance
    config = RunConfig(
        command="decay",
        spec_path=args.spec,
        n=args.n,
        row_tolerance=row_tol,
        window=args.window,
        out=args.out,
        json_out=args.json_out,
    )
    report = experiments.run_decay(load_symbol(args.spec), args.n, args.window, row_tol)
    _emit(config, report)
    return 0


def cmd_lowerbound(args: argparse.Namespace) -> int:
    config = RunConfig(
        command="lowerbound",
        spec_path=args.spec,
        n_list=args.n,
        out=args.out,
        json_out=args.json_out,
    )
    report = experiments.run_lowerbound(load_target(args.spec), args.n, args.sigma0)
    _emit(config, report)
    return 0


def cmd_carleson(args: argparse.Namespace) -> int:
    settings = get_settings()
    samples = settings.mc_samples if args.samples is None else args.samples
    seed = settings.mc_seed if args.seed is None else args.seed
    config = RunConfig(
        command="carleson",
        spec_path=args.spec,
        samples=samples,
        seed=seed,
        epsilons=args.eps,
        out=args.out,
        json_out=args.json_out,
    )
    report = experiments.run_carleson(load_target(args.spec), args.eps, samples, seed)
    _emit(config, report)
    return 0


def cmd_transfer(args: argparse.Namespace) -> int:
    config = RunConfig(
        command="transfer",
        spec_path=args.spec,
        n=args.n,
        window=args.window,
        out=args.out,
        json_out=args.json_out,
    )
    report = experiments.run_transfer(load_disc_map(args.spec), args.n, args.window)
    _emit(config, report)
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    checks = experiments.run_selftest()
    for check in checks:
        print(f"{'ok' if check.passed else 'FAIL':4}  {check.name}: {check.detail}")
    return 0 if all(c.passed for c in checks) else 1


def cmd_serve(args: argparse.Namespace) -> int:
    import socket

    port = args.port
    if port == 0:
        with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as s:
            s.bind((args.host, 0))
            port = s.getsockname()[1]
    print(f"PORT={port}", flush=True)

    import uvicorn

    from compop.main import app

    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "decay": cmd_decay,
    "lowerbound": cmd_lowerbound,
    "carleson": cmd_carleson,
    "transfer": cmd_transfer,
    "selftest": cmd_selftest,
    "serve": cmd_serve,
}


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.verbose)
        paths.init()
        load_settings()
        return COMMANDS[args.command](args)
    except LabError as e:
        print(f"error [{e.code}]: {e.detail}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        # settings file rejected by validate_settings
        print(f"error [{VALIDATION_ERROR}]: {e}", file=sys.stderr)
        return LabError(VALIDATION_ERROR, 422, str(e)).exit_code


def run() -> None:
    sys.exit(main())
