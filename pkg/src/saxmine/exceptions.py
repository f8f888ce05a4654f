"""Exception hierarchy shared by every saxmine module."""


class SaxMineError(Exception):
    """Base class for all errors raised by saxmine."""


class InvalidInputError(SaxMineError, ValueError):
    """An argument violates the documented preconditions."""


class CorruptGrammarError(SaxMineError, ValueError):
    """A grammar references a rule that does not exist or is cyclic."""


class ConfigError(SaxMineError, ValueError):
    """A run configuration is inconsistent with the selected algorithm."""


class IngestionError(SaxMineError):
    """A CSV input could not be turned into a time series."""
