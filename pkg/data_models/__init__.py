# data_models/__init__.py
# Make key data models easily importable
from .extended import INF
from .credits import CreditTerm, ResourceTerm
from .program import Definition, ProgramFile
from .reports import BoundRecord, BoundReport, CostPair, EvalOutcome, FuzzReport, SolveTable, SplayReport
