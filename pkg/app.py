"""
Permanental Ideals - Command-Line Application

Main entry point for the command-line interface.
Run with: python app.py min-primes --shape 2,2,2 --t 2
"""

from src.cli import main


if __name__ == "__main__":
    raise SystemExit(main())
