"""Entry point for running hyperlat as a module."""
import sys

from hyperlat.cli import main

if __name__ == '__main__':
    sys.exit(main())
