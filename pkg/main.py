#!/usr/bin/env python3
"""Command-line utility for the NOMA outage toolkit (same as the noma-outage script)."""

import sys

from noma_outage.main import main

if __name__ == '__main__':
    sys.exit(main())
