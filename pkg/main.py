"""
main.py — entry point for the rcch command line.

Usage:
    python main.py --help
    python main.py verify-axioms --catalog fig7 --dim 8
"""

import sys

from rcch.cli import main

if __name__ == "__main__":
    sys.exit(main())
