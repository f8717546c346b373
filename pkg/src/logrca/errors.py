"""Exception types shared across the analysis pipeline."""


class AnalysisError(Exception):
    """Base class for every error this package raises on purpose."""


class ParseError(AnalysisError):
    """Malformed input data; carries the 1-based line/row number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SchemaError(AnalysisError):
    """Input columns do not match the declared contract (e.g. missing label)."""


class ConfigError(AnalysisError):
    """Invalid parameter value; names the offending CLI flag when known."""

    def __init__(self, message: str, flag: str | None = None):
        if flag is not None:
            message = f"{flag}: {message}"
        super().__init__(message)
        self.flag = flag


class TargetAbsentError(AnalysisError):
    """No row carries the target label value, so lift is undefined."""


class InternalError(AnalysisError):
    """Invariant violation inside the package (a bug, not a user error)."""


class OracleGuardError(AnalysisError):
    """Brute-force oracle invoked beyond its enumeration guard."""


class EquivalenceError(AnalysisError):
    """Benchmark runs produced differing mining outputs."""
