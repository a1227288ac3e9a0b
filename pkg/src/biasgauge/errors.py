"""Exception hierarchy.

Every error carries the process exit code the CLI maps it to, so scripts
can branch on the exit status alone.
"""

from __future__ import annotations

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_UNREADABLE = 3
EXIT_UNWRITABLE = 4


class BiasGaugeError(Exception):
    exit_code = EXIT_INTERNAL

    @property
    def kind(self) -> str:
        return type(self).__name__


class ConfigError(BiasGaugeError):
    exit_code = EXIT_VALIDATION


class FileNotReadable(BiasGaugeError):
    exit_code = EXIT_UNREADABLE


class OutputNotWritable(BiasGaugeError):
    exit_code = EXIT_UNWRITABLE


class ColumnNotFound(BiasGaugeError):
    exit_code = EXIT_VALIDATION

    def __init__(self, name: str, available: list[str] | None = None):
        self.name = name
        msg = f"column {name!r} not found"
        if available:
            msg += f" (available: {', '.join(available)})"
        super().__init__(msg)


class TargetNotBinary(BiasGaugeError):
    exit_code = EXIT_VALIDATION


class EmptyAfterFiltering(BiasGaugeError):
    exit_code = EXIT_VALIDATION


class DegenerateTarget(BiasGaugeError):
    exit_code = EXIT_VALIDATION


class DegenerateMarginal(BiasGaugeError):
    exit_code = EXIT_VALIDATION


class NegativeProbability(BiasGaugeError):
    exit_code = EXIT_VALIDATION


class RowNotNormalized(BiasGaugeError):
    exit_code = EXIT_VALIDATION


class UnknownFixture(BiasGaugeError):
    exit_code = EXIT_VALIDATION
