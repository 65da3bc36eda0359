#!/usr/bin/env python3
"""
octopus-lab
Checks spectral-gap, octopus-inequality and Kazhdan-constant claims on the
symmetric group S_n.
"""

import sys

from octopus_lab.cli import run


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
