# amortflow.py
"""Command-line entry point: typecheck, run, erase and extract .la programs,
and drive the bound, splay and fuzz harnesses."""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

import yaml
from pydantic import ValidationError

from analysis.erase import erase
from analysis.errors import (
    AmortFlowError, BoundViolation, ConfigError, EvaluationError, InvariantViolation, LCTypeError,
    ParseError, TypeCheckError,
)
from analysis.extract import extract
from analysis.interp import evaluate
from analysis.leq import beta_simplify
from analysis.typecheck import EMPTY_CONTEXT, TypeChecker
from data_models.credits import ResourceTerm
from data_models.la_syntax import TList, TNat, type_equal
from data_models.program import ProgramFile
from harness.bounds import parse_input_spec, verify
from harness.fuzz import check_certificates, fuzz_metatheory
from harness.solve import parse_size_range, solve_program
from harness.splay_check import check_splay
from utils.config_loader import CONFIG_FILENAME, AppConfig, load_config
from utils.la_parser import load_program
from utils.la_printer import format_lc_term, format_lc_type, format_stlc, format_term, format_type

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_TYPE = 4
EXIT_EVAL = 5
EXIT_CONFIG = 6


def _error(message: str) -> None:
    print(f"ERROR: {message}", file=sys.stderr)


def _emit(df, as_csv: bool) -> None:
    if as_csv:
        sys.stdout.write(df.to_csv(index=False))
    else:
        print(df.to_string(index=False))


def _main_term(program: ProgramFile, path: Path):
    term = program.expand_main()
    if term is None:
        raise ValueError(f"'{path}' has no main term")
    return term


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_check(args, config: AppConfig) -> int:
    program = load_program(args.file)
    checker = TypeChecker()
    for definition in program.definitions:
        result = checker.synthesize(EMPTY_CONTEXT, program.expand(definition.name))
        if not type_equal(result.type, definition.type):
            _error(f"'{definition.name}' has type {format_type(result.type)}, "
                   f"declared {format_type(definition.type)}")
            return EXIT_TYPE
        if not result.resources.leq(ResourceTerm.of_bank(definition.bank)):
            _error(f"'{definition.name}' needs {result.resources}, declared bank {definition.bank}")
            return EXIT_TYPE
        print(f"{definition.name} : {format_type(result.type)}  [{result.resources}]")
    main = program.expand_main()
    if main is not None:
        result = checker.synthesize(EMPTY_CONTEXT, main)
        print(f"main : {format_type(result.type)}  [{result.resources}]")
    return EXIT_OK


def cmd_run(args, config: AppConfig) -> int:
    program = load_program(args.file)
    outcome = evaluate(_main_term(program, args.file), fuel=config.eval.fuel,
                       trace=args.trace or config.eval.trace)
    print(format_term(outcome.value))
    print(f"n = {outcome.cost.n}, r = {outcome.cost.r}, n + r = {outcome.cost.amortized}")
    for record in outcome.trace or []:
        print(record)
    return EXIT_OK


def cmd_erase(args, config: AppConfig) -> int:
    program = load_program(args.file)
    print(format_stlc(erase(_main_term(program, args.file))))
    return EXIT_OK


def cmd_extract(args, config: AppConfig) -> int:
    program = load_program(args.file)
    targets = [(d.name, program.expand(d.name)) for d in program.definitions]
    if program.main is not None:
        targets.append(("main", program.expand_main()))
    if args.name:
        targets = [(n, t) for n, t in targets if n == args.name]
        if not targets:
            raise ValueError(f"no definition named '{args.name}'")
    for name, term in targets:
        complexity = extract(EMPTY_CONTEXT, term)
        body = complexity.term
        if args.simplify:
            body, _ = beta_simplify(body)
        print(f"# {name} : {format_lc_type(complexity.type)}")
        print(format_lc_term(body))
        print()
    return EXIT_OK


def cmd_solve(args, config: AppConfig) -> int:
    program = load_program(args.file)
    sizes = parse_size_range(args.sizes) if args.sizes else range(config.solve.sizes[0], config.solve.sizes[1] + 1)
    table = solve_program(program, sizes)
    for name, reason in table.skipped.items():
        print(f"INFO: Skipping '{name}': {reason}", file=sys.stderr)
    _emit(table.to_dataframe() if args.csv else table.wide(), args.csv)
    return EXIT_OK


def cmd_verify(args, config: AppConfig) -> int:
    program = load_program(args.file)
    if args.inputs:
        specs = parse_input_spec(args.inputs)
    else:
        specs = _default_specs(program, config)
    report = verify(program, specs, fuel=config.eval.fuel, name=str(args.file))
    _emit(report.record_frame() if args.csv else report.summary(), args.csv)
    for rec in report.failures:
        print(f"ERROR: {rec.program} {rec.input}: {rec.detail}", file=sys.stderr)
    print(f"INFO: {len(report.records)} runs, {len(report.failures)} failed.", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERDICT


def _default_specs(program: ProgramFile, config: AppConfig):
    specs = []
    for d in program.definitions:
        arg = getattr(d.type, "arg", None)
        if arg is None:
            continue
        if isinstance(arg, TNat):
            specs.append((d.name, config.verify.max_nat))
        elif isinstance(arg, TList):
            specs.append((d.name, config.verify.max_bits))
    if not specs:
        raise ValueError("no definition takes a natural or a list; pass --inputs")
    return specs


def cmd_splay(args, config: AppConfig) -> int:
    settings = config.splay
    report = check_splay(
        max_size=args.max_size or settings.max_size,
        trials=settings.trials if args.trials is None else args.trials,
        seed=settings.seed if args.seed is None else args.seed,
        sequence_length=settings.sequence_length if args.sequence is None else args.sequence,
        okasaki_limit=settings.okasaki_limit,
        fuel=config.eval.fuel,
    )
    _emit(report.record_frame() if args.csv else report.to_dataframe(), args.csv)
    print(f"INFO: rotation inequality checked on {report.okasaki_cases} size splits, "
          f"{len(report.okasaki_failures)} failures.", file=sys.stderr)
    if report.sequence is not None:
        seq = report.sequence
        print(f"INFO: sequence of {seq.operations} splits: {seq.total_ticks} ticks, "
              f"plain bound {seq.plain_bound}, accounted bound {seq.accounted_bound} ({seq.verdict}).",
              file=sys.stderr)
    for rec in report.records:
        if rec.verdict != "pass":
            print(f"ERROR: trial {rec.trial} (size {rec.size}, pivot {rec.pivot}): {rec.detail}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERDICT


def cmd_fuzz(args, config: AppConfig) -> int:
    settings = config.fuzz
    report = fuzz_metatheory(
        count=settings.count if args.count is None else args.count,
        depth=args.depth or settings.depth,
        seed=settings.seed if args.seed is None else args.seed,
        fuel=config.eval.fuel,
        shrink_budget=settings.shrink_budget,
    )
    sampling = config.sampling
    certificates = sampling.certificates if args.certificates is None else args.certificates
    if certificates:
        check_certificates(certificates, seed=sampling.seed, samples=sampling.samples,
                           fuel=config.eval.fuel, report=report)
    _emit(report.violation_frame() if args.csv else report.to_dataframe(), args.csv)
    print(f"INFO: {report.generated} terms checked, {report.discarded} discarded.", file=sys.stderr)
    for v in report.violations:
        print(f"ERROR: {v.property}: {v.detail}\n  shrunk: {v.shrunk}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERDICT


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=Path(CONFIG_FILENAME), help="Path to config.yaml")
    common.add_argument("--fuel", type=int, help="Evaluation step budget (overrides config and AMORTFLOW_FUEL)")
    common.add_argument("--csv", action="store_true", help="Emit comma-separated records instead of a table")

    parser = argparse.ArgumentParser(prog="amortflow", description="Amortized cost analysis for λ^A programs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="Typecheck every definition and print its resources")
    p.add_argument("file", type=Path)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("run", parents=[common], help="Evaluate main and print (value, n, r)")
    p.add_argument("file", type=Path)
    p.add_argument("--trace", action="store_true", help="Print one line per rule firing")
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("erase", parents=[common], help="Print the cost-free erasure of main")
    p.add_argument("file", type=Path)
    p.set_defaults(handler=cmd_erase)

    p = sub.add_parser("extract", parents=[common], help="Print the extracted recurrences")
    p.add_argument("file", type=Path)
    p.add_argument("--name", help="Only this definition (or 'main')")
    p.add_argument("--simplify", action="store_true", help="β-simplify before printing")
    p.set_defaults(handler=cmd_extract)

    p = sub.add_parser("solve", parents=[common], help="Tabulate extracted costs by input size")
    p.add_argument("file", type=Path)
    p.add_argument("--sizes", help="LO..HI, inclusive")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="Check runs against their extracted bounds")
    p.add_argument("file", type=Path)
    p.add_argument("--inputs", help="name:max[,name:max...]")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("splay", parents=[common], help="Check splay-tree split on random trees")
    p.add_argument("--max-size", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--sequence", type=int, help="Length of the split sequence (0 to skip)")
    p.set_defaults(handler=cmd_splay)

    p = sub.add_parser("fuzz", parents=[common], help="Check the metatheory on generated programs")
    p.add_argument("--count", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--certificates", type=int, help="Certificate instances to sample (0 to skip)")
    p.add_argument("--seed", type=int)
    p.set_defaults(handler=cmd_fuzz)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except (yaml.YAMLError, ValidationError, ConfigError):
        return EXIT_CONFIG
    if args.fuel is not None:
        if args.fuel <= 0:
            _error("--fuel must be positive")
            return EXIT_USAGE
        config.eval.fuel = args.fuel

    try:
        return args.handler(args, config)
    except ParseError as e:
        _error(f"{getattr(args, 'file', '')}: {e}")
        return EXIT_PARSE
    except (TypeCheckError, LCTypeError) as e:
        _error(str(e))
        return EXIT_TYPE
    except EvaluationError as e:
        _error(str(e))
        return EXIT_EVAL
    except (BoundViolation, InvariantViolation) as e:
        _error(str(e))
        return EXIT_VERDICT
    except AmortFlowError as e:
        _error(str(e))
        return EXIT_VERDICT
    except (FileNotFoundError, KeyError, ValueError) as e:
        _error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
