"""Command-line entry point for the disordered quantum systems toolkit.

Examples:
    python main.py spin-glass sweep --lattice square2d --dims 4 4 --jbar 0 --delta 1 --realizations 2000
    python main.py ion-chain solve --n 20 --exponent 0.5 --amplitude 30 --softening 1 --audit
    python main.py qnn revivals --n 6 --exponent 2 --pair 0 1
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
