"""
Error hierarchy for the workbench.

Every error's class name doubles as the machine-parsable error class printed
by the command line and returned by the API.
"""


class WorkbenchError(Exception):
    """Base class of every error raised by the dynamics app."""

    @property
    def error_class(self):
        return type(self).__name__

    def one_line(self):
        detail = " ".join(str(self).split())
        return f"{self.error_class}: {detail}"


class ParseError(WorkbenchError):
    pass


class ConfigError(WorkbenchError):
    pass


# words

class AlphabetMismatch(WorkbenchError):
    pass


class InvalidWord(WorkbenchError):
    pass


class OutOfWindow(WorkbenchError):
    pass


class WindowTooShort(WorkbenchError):
    """Raised when a window-doubling stabilization check fails."""

    def __init__(self, message, n=None):
        super().__init__(message)
        self.n = n


# shift spaces

class InvalidSubstitution(WorkbenchError):
    pass


class NotSelfProlongable(WorkbenchError):
    pass


class InvalidSturmianSpec(WorkbenchError):
    pass


# speedups

class InvalidJump(WorkbenchError):
    pass


class MissingJumpEntry(InvalidJump):
    def __init__(self, word):
        super().__init__(f"jump table has no value for centered word {word}")
        self.word = word


class InsufficientMargin(WorkbenchError):
    pass


class OrbitExit(WorkbenchError):
    pass


# group extensions

class AmbiguousEntries(WorkbenchError):
    pass


class WordTooShort(WorkbenchError):
    pass


class InvalidOccurrencePair(WorkbenchError):
    pass


class CocycleOutOfRange(WorkbenchError):
    pass


class GroupSizeMismatch(WorkbenchError):
    pass


# presentations

class DegeneratePresentation(WorkbenchError):
    pass
