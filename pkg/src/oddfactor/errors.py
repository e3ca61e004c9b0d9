class DomainError(ValueError):
    """Input outside the domain an operation is defined on."""


class BudgetExhausted(RuntimeError):
    """An engine run hit its iteration cap before halting.

    The partial :class:`~oddfactor.engine.FactorResult` is kept on ``result``
    so callers can resume from its state.
    """

    def __init__(self, n, result):
        super().__init__(f"iteration budget exhausted while factoring {n} "
                         f"(after {result.iterations} iterations)")
        self.n = n
        self.result = result
