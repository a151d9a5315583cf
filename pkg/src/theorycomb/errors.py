"""Exception hierarchy shared across the package."""


class TheoryCombError(Exception):
    """Base class for every error raised by this package."""


class FormulaSyntaxError(TheoryCombError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownSymbolError(TheoryCombError):
    def __init__(self, symbol: str, detail: str = ""):
        msg = f"unknown symbol {symbol!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.symbol = symbol


class LimitExceeded(TheoryCombError):
    """A configured search ceiling would be exceeded."""


class TableError(TheoryCombError):
    """A parameter table violates one of its side conditions."""


class TableRangeError(TableError):
    """A table was read beyond its stored prefix."""


class CapabilityError(TheoryCombError):
    """A theory handle lacks a capability the requested operation needs."""


class UnsatisfiableInput(TheoryCombError):
    """An operation defined only on satisfiable input received an unsatisfiable one."""


class ContractViolation(TheoryCombError):
    """A declared property of a theory was observed to fail."""


class OutOfFamilyQuery(TheoryCombError):
    """An analytic oracle was asked about a formula outside its query family."""
