import typing

USAGE_EXIT_CODE = 2
RUNTIME_EXIT_CODE = 1


class BaseError(Exception):
    """Base library exception. Shouldn't be used directly."""
    exit_code = RUNTIME_EXIT_CODE


class D2kError(BaseError):
    """Base class for all d2k exceptions.

    Carries a human readable message, optional structured data and the
    process exit code the command line front end should return."""

    exit_code = RUNTIME_EXIT_CODE

    def __init__(self, message: str, data: typing.Optional[typing.Any] = None):
        super().__init__(message)
        self.__message = message
        self.__data = data

    @property
    def message(self):
        return self.__message

    @property
    def data(self):
        return self.__data

    def __str__(self):
        return self.message

    def __repr__(self):
        return "%s(\"%s\")" % (self.__class__.__name__, str(self))


class DomainError(D2kError, ValueError):
    """A parameter lies outside the domain where the formulas are defined."""
    exit_code = USAGE_EXIT_CODE


class ModelError(D2kError, ValueError):
    """The operation needs a strand-symmetric letter model.

    Raised when a general distribution (no perturbation parameter) is passed
    to an operation that is only defined for strand-symmetric text, or when
    k > 0 is requested on the general-alphabet path."""
    exit_code = USAGE_EXIT_CODE


class SequenceParseError(D2kError, ValueError):
    """Sequence text or file could not be parsed."""
    exit_code = USAGE_EXIT_CODE


class LengthMismatchError(D2kError, ValueError):
    """Two words or sequences that must have equal length do not."""
    exit_code = USAGE_EXIT_CODE


class UsageError(D2kError):
    """The command line is invalid."""
    exit_code = USAGE_EXIT_CODE


class CommandNotFoundError(UsageError):
    """The subcommand does not exist."""
    pass


class InvalidParamsError(UsageError):
    """Invalid subcommand parameter(s)."""
    pass


class ResourceError(D2kError):
    """A simulation ran out of resources. Partial results are discarded."""
    pass


class GridCellError(D2kError):
    """A cell of a KS grid failed."""

    def __init__(self, n: int, m: int, cause: BaseException):
        super().__init__("ks-grid cell (n=%s, m=%s) failed: %s" % (n, m, cause),
                         data={'n': n, 'm': m})
        self.exit_code = getattr(cause, 'exit_code', RUNTIME_EXIT_CODE)


class InternalError(D2kError):
    """Internal error."""
    pass
