# harness/solve.py
"""Solve extracted recurrences by evaluating them in the size model.

Only definitions whose argument abstracts to a size (ℕ or a list) are
tabulated; everything else is reported as skipped.
"""
from typing import Iterable

from analysis.errors import SemanticError
from analysis.extract import extract
from analysis.sem import cost_table, second, sem_eval
from analysis.typecheck import EMPTY_CONTEXT
from data_models.extended import INF, format_ext
from data_models.la_syntax import TList, TLolli, TNat
from data_models.program import ProgramFile
from data_models.reports import SolveRow, SolveTable
from utils.la_printer import format_type


def size_abstractable(ty) -> bool:
    return isinstance(ty, TLolli) and isinstance(ty.arg, (TNat, TList))


def solve_definition(program: ProgramFile, name: str, sizes: Iterable[int]):
    """[(size, cost)] for one definition; cost is an ExtInt."""
    complexity = extract(EMPTY_CONTEXT, program.expand(name))
    fn = second(sem_eval({}, complexity.term))
    return cost_table(fn, sizes)


def solve_program(program: ProgramFile, sizes: Iterable[int]) -> SolveTable:
    sizes = list(sizes)
    table = SolveTable()
    for definition in program.definitions:
        if not size_abstractable(definition.type):
            table.skipped[definition.name] = f"argument type {format_type(definition.type)} has no size reading"
            continue
        try:
            costs = solve_definition(program, definition.name, sizes)
        except SemanticError as e:
            table.skipped[definition.name] = str(e)
            continue
        table.rows.extend(
            SolveRow(function=definition.name, size=n, cost=format_ext(c) if c is INF else c)
            for n, c in costs)
    return table


def parse_size_range(text: str) -> range:
    """``LO..HI`` (inclusive) → range(LO, HI + 1)."""
    lo, sep, hi = text.partition("..")
    if not sep or not lo.strip().isdigit() or not hi.strip().isdigit():
        raise ValueError(f"bad size range '{text}', expected LO..HI")
    lo_n, hi_n = int(lo), int(hi)
    if hi_n < lo_n:
        raise ValueError(f"empty size range '{text}'")
    return range(lo_n, hi_n + 1)
