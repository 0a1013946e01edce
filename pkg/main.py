"""
GridOCC - command line entry point
Run `python main.py --help` for the subcommands.
"""

import os
import sys
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from gridocc.cli import main

if __name__ == "__main__":
    sys.exit(main())
