"""
Entry point for `python -m src.cli`.
"""
from src.interfaces.cli.app import app

if __name__ == "__main__":
    app()
