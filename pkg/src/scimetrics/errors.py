"""Exception types shared across the pipeline."""


class ScimetricsError(Exception):
    """Base class for all package errors."""


class MalformedDoi(ScimetricsError):
    """A DOI string does not normalize to the ``10.<digits>/<suffix>`` shape."""


class SchemaError(ScimetricsError):
    """An input file is structurally unusable (missing column, bad encoding)."""


class UnknownAuthor(ScimetricsError):
    """A publication record references an author_key absent from the roster."""


class UnknownDiscipline(ScimetricsError):
    """A scope label is not part of the run's declared discipline set."""


class EmptyScope(ScimetricsError):
    """A scope holds no publications, so proportions are undefined."""


class DegenerateInput(ScimetricsError):
    """Too little data, or a constant variable, for the requested statistic."""


class ConfigError(ScimetricsError):
    """A run configuration violates its invariants."""
