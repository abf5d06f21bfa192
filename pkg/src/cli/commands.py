"""
Subcommands of the `exciton` command line.

Every command builds an ExcitonContainer, applies its numerical flags as
provider overrides and writes one CSV or JSON document to --out (stdout
by default). Energies are in effective Rydbergs, lengths in effective
Bohr radii.
"""

import argparse
from typing import Any, Dict, List, Optional, Sequence

from dependency_injector import providers
from pydantic import ValidationError

from src.core.config import load_config_file, settings
from src.core.exceptions import ConfigurationError, ConvergenceError
from src.core.logging_config import logger
from src.exciton.engines.constants import DEFAULT_SPECTRUM_STATES
from src.exciton.models import QuadratureSpec
from src.exciton.oracle import GridSpec
from src.exciton.variational import TrialParams
from src.services.container import ExcitonContainer
from src.services.exciton_service import ExcitonService, VariationalReport, build_sweep_config
from src.utils.formatting import ResultTable, metadata_line, render_csv, write_text

# Namespace attributes that never appear in the metadata line
_PLUMBING = {"handler", "command", "config", "log_level", "out"}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _csv_list(text: str) -> List[str]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected a comma-separated list")
    return items


def _parse_bool(key: str, text: str) -> bool:
    value = text.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ConfigurationError(f"Config key '{key}' expects a boolean, got '{text}'")


# ---------------------------------------------------------------------------
# Container wiring
# ---------------------------------------------------------------------------

def build_service(args: argparse.Namespace) -> ExcitonService:
    """Fresh container with the numerical flags of `args` applied."""
    container = ExcitonContainer()

    panels = getattr(args, "quad_panels", None)
    if panels is not None:
        try:
            quad = QuadratureSpec.from_panels(panels)
        except ValidationError:
            raise ConfigurationError(f"--quad-panels must be at least 8, got {panels}") from None
        container.quadrature.override(providers.Object(quad))

    tol = getattr(args, "tol", None)
    if tol is not None:
        if not tol > 0:
            raise ConfigurationError(f"--tol must be positive, got {tol}")
        container.config.root_tol.from_value(tol)

    points = getattr(args, "oracle_points", None)
    length = getattr(args, "oracle_length", None)
    if points is not None or length is not None:
        grid = GridSpec(
            half_length=settings.oracle_half_length if length is None else length,
            n_points=settings.oracle_points if points is None else points,
        )
        container.grid.override(providers.Object(grid))

    return container.service()


def _flags(args: argparse.Namespace) -> Dict[str, Any]:
    flags = {}
    for key, value in vars(args).items():
        if key in _PLUMBING:
            continue
        if isinstance(value, list):
            value = ",".join(str(item) for item in value)
        flags[key.replace("_", "-")] = value
    return flags


def _emit_table(args: argparse.Namespace, table: ResultTable) -> None:
    metadata = metadata_line(args.command, _flags(args), table.notes)
    write_text(render_csv(table, metadata), args.out)


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise ConfigurationError(f"{args.command}: missing required {', '.join(missing)}")


def _sweep(args: argparse.Namespace, states: Optional[Sequence[str]] = None):
    return build_sweep_config(
        r_min=args.r_min,
        r_max=args.r_max,
        n_points=args.points,
        spacing="log" if args.log else "linear",
        states=list(states) if states is not None else args.states,
        engines=getattr(args, "engines", None),
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_potential(args: argparse.Namespace) -> None:
    """V_eff(x) in closed form and by quadrature, with their relative difference."""
    _require(args, "r")
    service = build_service(args)
    _emit_table(args, service.potential_table(args.r, args.x_min, args.x_max, args.n))


def cmd_spectrum(args: argparse.Namespace) -> None:
    service = build_service(args)
    table = service.spectrum_sweep(_sweep(args), include_alpha=args.alpha)
    _emit_table(args, table)


def cmd_variational(args: argparse.Namespace) -> None:
    """
    Minimised trial energy as a JSON document.

    A search that stops before convergence still writes its JSON (with
    "converged": false) and then fails with a numerical exit code.
    """
    _require(args, "r")
    init = None
    if args.k0 is not None or args.q0 is not None:
        _require(args, "k0", "q0")
        init = TrialParams(args.k0, args.q0)
    service = build_service(args)
    result = service.variational(args.r, args.state, init)
    report = VariationalReport.from_result(result)
    write_text(report.model_dump_json(indent=2) + "\n", args.out)
    if not report.converged:
        raise ConvergenceError(
            f"Variational {report.state} at r={report.r:g} did not converge "
            f"after {report.iterations} iterations"
        )


def cmd_compare(args: argparse.Namespace) -> None:
    service = build_service(args)
    table = service.compare_sweep(_sweep(args, DEFAULT_SPECTRUM_STATES), oracle=args.oracle)
    _emit_table(args, table)


def cmd_convert_units(args: argparse.Namespace) -> None:
    _require(args, "r_angstrom")
    service = build_service(args)
    conversion = service.convert_units(args.r_angstrom, args.epsilon, args.mu)
    row = conversion.model_dump()
    _emit_table(args, ResultTable(columns=list(row), rows=[row]))


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--config", default=None, help="flat key=value file mirroring the flags")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--quad-panels", type=int, default=None, help="quadrature nodes along x")
    common.add_argument("--tol", type=float, default=None, help="root tolerance on alpha")
    return common


def _add_sweep_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r-min", type=float, default=None)
    parser.add_argument("--r-max", type=float, default=None)
    parser.add_argument("--points", type=int, default=None)
    parser.add_argument(
        "--log",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="log-spaced radii (default); --no-log for a linear grid",
    )


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="exciton",
        description="Exciton energies on a cylindrical surface (units: Ry*, a_B*).",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    potential = subparsers.add_parser("potential", parents=[common], help="tabulate V_eff(x)")
    potential.add_argument("--r", type=float, default=None)
    potential.add_argument("--x-min", type=float, default=0.05)
    potential.add_argument("--x-max", type=float, default=10.0)
    potential.add_argument("--n", type=int, default=200)
    potential.set_defaults(handler=cmd_potential)

    spectrum = subparsers.add_parser("spectrum", parents=[common], help="energies over an r grid")
    _add_sweep_flags(spectrum)
    spectrum.add_argument("--states", type=_csv_list, default=list(DEFAULT_SPECTRUM_STATES))
    spectrum.add_argument("--engines", type=_csv_list, default=["coulomb"])
    spectrum.add_argument("--alpha", action="store_true", help="add alpha_<state> columns")
    spectrum.add_argument("--oracle-points", type=int, default=None)
    spectrum.add_argument("--oracle-length", type=float, default=None)
    spectrum.set_defaults(handler=cmd_spectrum)

    variational = subparsers.add_parser(
        "variational", parents=[common], help="minimised trial energy at one radius"
    )
    variational.add_argument("--r", type=float, default=None)
    variational.add_argument("--state", default="2p", choices=["1s", "2p"])
    variational.add_argument("--k0", type=float, default=None, help="initial k (with --q0)")
    variational.add_argument("--q0", type=float, default=None, help="initial q (with --k0)")
    variational.set_defaults(handler=cmd_variational)

    compare = subparsers.add_parser(
        "compare", parents=[common], help="Coulomb model against variational and FD energies"
    )
    _add_sweep_flags(compare)
    compare.add_argument("--oracle", action="store_true", help="add E_fd_odd / E_fd_even")
    compare.add_argument("--oracle-points", type=int, default=None)
    compare.add_argument("--oracle-length", type=float, default=None)
    compare.set_defaults(handler=cmd_compare)

    convert = subparsers.add_parser(
        "convert-units", parents=[common], help="tube radius in Å to units of a_B*"
    )
    convert.add_argument("--r-angstrom", type=float, default=None)
    convert.add_argument("--epsilon", type=float, default=1.0)
    convert.add_argument("--mu", type=float, default=1.0)
    convert.set_defaults(handler=cmd_convert_units)

    return parser


def _subparser(parser: argparse.ArgumentParser, command: str) -> argparse.ArgumentParser:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[command]
    raise ConfigurationError(f"Unknown command '{command}'")


def apply_config_file(parser: argparse.ArgumentParser, argv: Sequence[str]) -> None:
    """
    Load --config values as subcommand defaults so explicit flags still win.

    String values go through each flag's `type` when argparse applies
    defaults; boolean flags are converted here.
    """
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("command", nargs="?")
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if known.config is None or known.command is None:
        return

    sub = _subparser(parser, known.command)
    actions = {
        action.dest: action
        for action in sub._actions
        if action.dest not in ("help", "config") and action.option_strings
    }
    values = load_config_file(known.config, set(actions))
    defaults: Dict[str, Any] = {}
    for dest, raw in values.items():
        action = actions[dest]
        if action.nargs == 0:
            defaults[dest] = _parse_bool(dest, raw)
        else:
            defaults[dest] = raw
    logger.debug(f"Config file {known.config} sets {sorted(defaults)}")
    sub.set_defaults(**defaults)
