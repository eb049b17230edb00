"""Command-line entry point for speclat.

Exit codes: 0 all checks passed, 1 a check failed, 2 input error,
3 a size cap or enumeration budget was exceeded.
"""

import argparse
import dataclasses
import logging
import sys
import time
from pathlib import Path

from src.config import Config
from src.models.closure_set import ClosureSet
from src.models.errors import (
    CapExceededError,
    HomomorphismError,
    InvariantViolationError,
    PreconditionError,
    StructureError,
)
from src.models.powerset import Ideal
from src.models.report import AxiomReport, VerificationReport
from src.models.structure_file import StructureFile
from src.services.core import (
    check_closure_identity,
    closure_table,
    to_closure_semilattice,
    validate_join_table,
    validate_specialization,
)
from src.services.dot_export import export_dot
from src.services.examples_factory import (
    chain,
    mod_ideal,
    powerset_from_preorder,
    random_spec_semilattice,
)
from src.services.free_extension import build_free_extension, lift_hom
from src.services.logger import log_axiom_report, log_cli_command, setup_logging
from src.services.reporter import (
    FORMATS,
    Reporter,
    check_summary,
    extension_summary,
    hom_summary,
    verification_summary,
)
from src.services.structure_io import parse_hom_map, parse_structure, serialize_structure
from src.services.verifier import (
    check_lemma_suite,
    check_remarks,
    check_universal_property,
    check_universal_property_z,
    check_witness_elimination,
)
from src.services.z_extension import (
    all_closures,
    build_z_extension,
    lift_hom_z,
    lift_hom_z_via_quotient,
)
from src.utils.bitset import parse_points


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXCEEDED = 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, help="maximum |S| for extension builds")
    common.add_argument("--normalize", action="store_true", help="pre-normalize pairs")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--workers", type=int, help="worker threads")
    common.add_argument("--format", choices=FORMATS, default="text", help="report format")

    oracle = argparse.ArgumentParser(add_help=False)
    oracle.add_argument(
        "--oracle", action="store_true", help="enable brute-force cross-checks"
    )

    parser = argparse.ArgumentParser(
        prog="speclat",
        description="Finite specialization semilattices and their free principal extensions.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="check axioms and closure facts")
    check.add_argument("file")

    extend = commands.add_parser("extend", parents=[common], help="build the free extension")
    extend.add_argument("file")
    extend.add_argument(
        "--z", action="store_true", help="preserve the file's Z (all closures if absent)"
    )

    lift = commands.add_parser("lift", parents=[common, oracle], help="lift a homomorphism S -> T")
    lift.add_argument("source")
    lift.add_argument("target")
    lift.add_argument("--hom", required=True, help="map as a->x,b->y,...")
    lift.add_argument("--z", action="store_true", help="lift through the Z-extension")

    verify = commands.add_parser("verify", parents=[common, oracle], help="verify the universal property")
    verify.add_argument("file")
    verify.add_argument("--against", help="codomain structure file (default: the structure itself)")

    dot = commands.add_parser("export-dot", parents=[common], help="print a DOT Hasse diagram")
    dot.add_argument("file")
    dot.add_argument("--extend", action="store_true", help="draw the free extension instead")

    gen = commands.add_parser("gen", parents=[common], help="generate a structure file")
    gen.add_argument("--kind", choices=("random", "powerset", "ideal", "chain"), required=True)
    gen.add_argument("--size", type=int, default=2, help="elements (random, chain) or points")
    gen.add_argument("--relation", choices=("leq", "total"), default="leq", help="chain relation")
    gen.add_argument("--preorder", default="", help='powerset preorder edges, e.g. "q<p"')
    gen.add_argument("--ideal", default="", help='points of the largest ideal member, e.g. "p,q"')
    gen.add_argument("--name", help="structure name")

    return parser


def load_config(args: argparse.Namespace) -> Config:
    """Environment configuration with command-line overrides applied."""
    config = Config.from_env()
    overrides = {}
    if args.cap is not None:
        overrides["extension_cap"] = args.cap
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.normalize:
        overrides["normalize"] = True
    if getattr(args, "oracle", False):
        overrides["oracle"] = True
    return dataclasses.replace(config, **overrides)


def _read(path: str, config: Config, validate: bool = True) -> StructureFile:
    return parse_structure(
        Path(path).read_text(encoding="utf-8"),
        validate=validate,
        core_cap=config.core_cap,
        powerset_cap=config.powerset_cap,
    )


def _extension_options(config: Config) -> dict:
    return {
        "cap": config.extension_cap,
        "normalize": config.normalize,
        "workers": config.workers,
        "self_check_limit": config.self_check_limit,
    }


def _z_for(parsed: StructureFile) -> ClosureSet:
    return parsed.z if parsed.z is not None else all_closures(parsed.structure)


def cmd_check(args: argparse.Namespace, config: Config) -> tuple[dict, bool]:
    parsed = _read(args.file, config, validate=False)
    structure = parsed.structure
    reports: list[AxiomReport] = [validate_join_table(structure.base)]
    verifications: list[VerificationReport] = []

    if reports[0].ok:
        reports.append(validate_specialization(structure))
        verifications.append(check_remarks(structure))
        if reports[-1].ok and all(k is not None for k in closure_table(structure)):
            closure = to_closure_semilattice(structure)
            for r in range(3):
                for s in range(3):
                    if r + s >= 1:
                        reports.append(
                            check_closure_identity(
                                closure, r, s, samples=config.identity_samples, seed=args.seed
                            )
                        )

    for report in reports:
        log_axiom_report(report.subject, report.ok, report.axioms_violated(), len(report.violations))
    summary = check_summary(parsed.name, reports, verifications)
    return summary, summary["ok"]


def cmd_extend(args: argparse.Namespace, config: Config) -> tuple[dict, bool]:
    parsed = _read(args.file, config)
    if args.z:
        extension = build_z_extension(parsed.structure, _z_for(parsed), **_extension_options(config))
    else:
        extension = build_free_extension(parsed.structure, **_extension_options(config))
    return extension_summary(extension, parsed.name), True


def cmd_lift(args: argparse.Namespace, config: Config) -> tuple[dict, bool]:
    source = _read(args.source, config)
    target = _read(args.target, config)
    table = parse_hom_map(args.hom, source.structure, target.structure)

    if args.z:
        z = _z_for(source)
        extension = build_z_extension(source.structure, z, **_extension_options(config))
        lifted = lift_hom_z(extension, target.structure, table, z)
        if config.oracle:
            plain = build_free_extension(source.structure, **_extension_options(config))
            via_quotient = lift_hom_z_via_quotient(plain, extension, target.structure, table, z)
            if via_quotient != lifted:
                summary = hom_summary(lifted, f"{source.name} -> {target.name}")
                summary["ok"] = False
                summary["quotient_route"] = list(via_quotient.as_tuple())
                return summary, False
    else:
        extension = build_free_extension(source.structure, **_extension_options(config))
        lifted = lift_hom(extension, target.structure, table)

    summary = hom_summary(lifted, f"{source.name} -> {target.name}")
    summary["ok"] = True
    return summary, True


def cmd_verify(args: argparse.Namespace, config: Config) -> tuple[dict, bool]:
    parsed = _read(args.file, config)
    structure = parsed.structure
    target = _read(args.against, config).structure if args.against else structure

    options = _extension_options(config)
    verifications = [check_lemma_suite(structure, workers=config.workers)]
    if config.oracle:
        verifications.append(check_witness_elimination(structure))

    extension = build_free_extension(structure, **options)
    verifications.append(
        check_universal_property(
            structure, extension, target, budget=config.hom_budget, workers=config.workers
        )
    )
    if parsed.z is not None:
        extension_z = build_z_extension(structure, parsed.z, **options)
        verifications.append(
            check_universal_property_z(
                structure,
                parsed.z,
                extension_z,
                target,
                budget=config.hom_budget,
                workers=config.workers,
            )
        )

    summary = verification_summary(parsed.name, verifications)
    return summary, summary["ok"]


def cmd_export_dot(args: argparse.Namespace, config: Config) -> str:
    parsed = _read(args.file, config)
    if args.extend:
        return export_dot(build_free_extension(parsed.structure, **_extension_options(config)), parsed.name)
    return export_dot(parsed.structure, parsed.name)


def _preorder_edges(text: str, n: int) -> list[tuple[int, int]]:
    edges = [(x, x) for x in range(n)]
    for item in filter(None, (part.strip() for part in text.split(","))):
        if "<" not in item:
            raise StructureError(f"Preorder edge {item!r} is not of the form x<y")
        lower, upper = (part.strip() for part in item.split("<", 1))
        try:
            edges.append(
                (
                    parse_points([lower], n).bit_length() - 1,
                    parse_points([upper], n).bit_length() - 1,
                )
            )
        except ValueError as e:
            raise StructureError(str(e)) from None
    return edges


def cmd_gen(args: argparse.Namespace, config: Config) -> str:
    n = args.size
    if args.kind == "random":
        structure = random_spec_semilattice(args.seed, n, cap=config.core_cap)
        name = args.name or f"random-{args.seed}-{n}"
    elif args.kind == "chain":
        if n > config.core_cap:
            raise CapExceededError("Chain exceeds the core cap", limit=config.core_cap, estimate=n)
        structure = chain(n, args.relation)
        name = args.name or f"chain-{n}-{args.relation}"
    elif args.kind == "powerset":
        structure, _ = powerset_from_preorder(
            n, _preorder_edges(args.preorder, n), cap=config.powerset_cap
        )
        name = args.name or f"powerset-{n}"
    else:
        points = [p.strip() for p in args.ideal.split(",") if p.strip()]
        try:
            top = parse_points(points, n)
        except ValueError as e:
            raise StructureError(str(e)) from None
        structure = mod_ideal(n, Ideal.generated_by(n, [top]), cap=config.powerset_cap)
        name = args.name or f"ideal-{n}-{''.join(points) or 'empty'}"
    return serialize_structure(structure, None, name)


REPORT_COMMANDS = {
    "check": cmd_check,
    "extend": cmd_extend,
    "lift": cmd_lift,
    "verify": cmd_verify,
}
TEXT_COMMANDS = {
    "export-dot": cmd_export_dot,
    "gen": cmd_gen,
}


def main(argv: list[str] | None = None) -> int:
    """Run one CLI command.

    Returns:
        int: Exit code (0 pass, 1 check failure, 2 input error, 3 cap exceeded).
    """
    start_time = time.time()
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(args)
    except ValueError as e:
        print(f"speclat: configuration error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    setup_logging(config.log_level)
    exit_code = EXIT_OK
    try:
        if args.command in TEXT_COMMANDS:
            sys.stdout.write(TEXT_COMMANDS[args.command](args, config))
        else:
            summary, ok = REPORT_COMMANDS[args.command](args, config)
            sys.stdout.write(Reporter.render(summary, args.format))
            exit_code = EXIT_OK if ok else EXIT_CHECK_FAILED
    except CapExceededError as e:
        print(f"speclat: {e}", file=sys.stderr)
        exit_code = EXIT_CAP_EXCEEDED
    except InvariantViolationError as e:
        print(f"speclat: internal check failed: {e}", file=sys.stderr)
        exit_code = EXIT_CHECK_FAILED
    except (StructureError, HomomorphismError, PreconditionError, OSError) as e:
        print(f"speclat: {e}", file=sys.stderr)
        exit_code = EXIT_INPUT_ERROR

    log_cli_command(args.command, exit_code, round(time.time() - start_time, 3))
    return exit_code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
