"""
unseen command-line entry point.

Estimates the Shannon entropy of a population from a sample of species
counts, runs the simulation scenarios and emits the pmf and curve data.

Usage:
    python main.py estimate counts.txt --method proposed
    python main.py simulate --profile desk --out results.csv
"""

from unseen.presentation.cli.app import main

if __name__ == "__main__":
    raise SystemExit(main())
