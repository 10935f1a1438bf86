"""Exception types shared across the toolkit."""


class LieDegError(Exception):
    """Base class for all toolkit errors."""


class ParseError(LieDegError):
    """Syntax error in a scalar expression, algebra file or witness file."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        if line is not None and col is not None:
            message = f"{message} (line {line}, column {col})"
        elif line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)


class CatalogError(LieDegError):
    """Unknown catalog name or bad parameter list."""


class SingularMatrixError(LieDegError):
    """A basis change or witness matrix is not invertible."""


class JacobiError(LieDegError):
    """A bracket table fails the Jacobi identity.

    Carries the 1-based indices (i, j, k, s) of the first violated
    Jacobi component.
    """

    def __init__(self, indices, defect=None):
        self.indices = indices
        self.defect = defect
        i, j, k, s = indices
        msg = f"Jacobi identity fails on (e{i}, e{j}, e{k}), component e{s}"
        if defect is not None:
            msg += f" (defect {defect})"
        super().__init__(msg)


class NoLimitError(LieDegError):
    """A transported law has no limit at t = 0.

    Carries the 1-based entry (i, j, r) of lowest valuation and that
    valuation.
    """

    def __init__(self, entry, valuation):
        self.entry = entry
        self.valuation = valuation
        i, j, r = entry
        super().__init__(
            f"no limit at t=0: entry c[{i}][{j}]^{r} has valuation {valuation}"
        )


class VerificationError(LieDegError):
    """A claimed degeneration witness does not check out."""
