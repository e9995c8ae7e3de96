"""Console display."""

from .console import Console, configure_logging, console
from .tables import TableDisplay

__all__ = ["Console", "TableDisplay", "configure_logging", "console"]
