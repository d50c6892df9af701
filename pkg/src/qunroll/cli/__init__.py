"""Command-line front end and expression language."""

from qunroll.cli.evaluate import Context, ContextError, evaluate, parse_context
from qunroll.cli.parser import ArityError, ParseError, UnknownGenerator, parse, to_source

__all__ = ["ArityError", "Context", "ContextError", "ParseError", "UnknownGenerator",
           "evaluate", "parse", "parse_context", "to_source"]
