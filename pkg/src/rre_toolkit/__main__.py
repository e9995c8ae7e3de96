"""Entry point for running rre_toolkit as a module."""

from rre_toolkit.cli import app

if __name__ == "__main__":
    app()
