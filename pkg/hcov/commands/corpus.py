from __future__ import annotations

import click

from hcov.commands.common import handle_errors, verdict_word
from hcov.config import settings
from hcov.services.checker import load_model
from hcov.storage.base import CORPUS_PREFIX
from hcov.storage.corpus import CorpusModelSource


@click.command()
@handle_errors
def corpus() -> None:
    """List the bundled example models with their targets."""
    for name in CorpusModelSource(settings.corpus_dir).list_models():
        model = load_model(f"{CORPUS_PREFIX}{name}")
        targets = []
        for target in model.target_names:
            expected = model.expected(target)
            targets.append(target if expected is None else f"{target}={verdict_word(expected)}")
        click.echo(f"{CORPUS_PREFIX}{name} [{model.kind.value}] " + ", ".join(targets))
