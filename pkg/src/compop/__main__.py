"""Entry point for ``python -m compop``."""

from compop.cli import run

run()
