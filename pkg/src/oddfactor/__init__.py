"""Factoring odd integers with an addition-and-subtraction-only iteration."""

from .arith import ArithContext, AuditedInt, AuditReport
from .engine import (Branch, EngineState, FactorResult, Status, TraceRow, audited_run,
                     init, reconstruct, resume, run, step, trace)
from .errors import BudgetExhausted, DomainError
from .factorizer import Factorization, full_factorization, is_prime, strip_twos
from .isqrt import SqrtRem, isqrt_rem

__version__ = "0.1.0"
