from __future__ import annotations

import functools
from typing import Callable

import click

from hcov.errors import HcovError

EXIT_ERROR = 2


def handle_errors(command: Callable) -> Callable:
    """Report toolkit and I/O errors on one stderr line and exit with status 2."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (HcovError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(EXIT_ERROR) from None

    return wrapper


def verdict_word(coverable: bool) -> str:
    return "coverable" if coverable else "not coverable"
