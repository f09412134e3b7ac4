"""
Run a reduction chain end to end: validation, commutant, closure and symmetrization.
"""

import sys

from liecomm.cli import create_argparser, main

__all__ = ["create_argparser", "main"]

if __name__ == "__main__":
    sys.exit(main())
