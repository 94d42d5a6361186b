"""History coverability for well-structured transition systems with event logs."""

__version__ = "0.1.0"
