"""`python -m varbv.cli` entry point."""

from varbv.cli import cli

if __name__ == "__main__":
    cli()
