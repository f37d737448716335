# analysis/__init__.py
from .typecheck import TypeChecker, TypingContext, EMPTY_CONTEXT, synthesize, check
from .interp import Evaluator, evaluate, run
from .extract import extract
from .normalize import lc_normalize, normalize_cost
