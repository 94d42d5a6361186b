from __future__ import annotations


class HcovError(Exception):
    """Base class for every error the toolkit reports."""


class ModelError(HcovError):
    """A model refers to undeclared symbols or is otherwise malformed."""


class ModelParseError(ModelError):
    def __init__(self, line: int, message: str) -> None:
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class UndeclaredEnum(ModelError):
    def __init__(self, enum_name: str, where: str = "") -> None:
        self.enum_name = enum_name
        suffix = f" (in {where})" if where else ""
        super().__init__(f"argument position typed by undeclared enum '{enum_name}'{suffix}")


class ModeMismatch(HcovError):
    """A word history was combined with a bag history."""


class NotEnabled(HcovError):
    def __init__(self, transition: str) -> None:
        self.transition = transition
        super().__init__(f"transition '{transition}' is not enabled")


class IterationBudgetExceeded(HcovError):
    def __init__(self, budget: int, fact_count: int) -> None:
        self.budget = budget
        self.fact_count = fact_count
        super().__init__(
            f"saturation did not converge within {budget} iterations "
            f"({fact_count} facts so far)"
        )


class NotCoverable(HcovError):
    """A trace was requested from a verdict that found no covering fact."""


class ReplayStuck(HcovError):
    def __init__(self, index: int, step: str) -> None:
        self.index = index
        self.step = step
        super().__init__(f"step {index} ('{step}') is not applicable")


class UnknownTarget(HcovError):
    def __init__(self, name: str, available: list[str]) -> None:
        self.name = name
        listed = ", ".join(available) or "(none declared)"
        super().__init__(f"no target named '{name}'. Available targets: {listed}")
