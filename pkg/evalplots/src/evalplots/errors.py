"""Exception hierarchy. Everything raised on purpose derives from PlotError
so the CLI can map any expected failure to (class name on stderr, exit 2)."""


class PlotError(Exception):
    pass


class ParseError(PlotError):
    """Input CSV does not match the documented schema."""


class EmptyInput(PlotError):
    """No data rows to plot."""


class InvalidOutput(PlotError):
    """Output path has an unsupported image extension."""
