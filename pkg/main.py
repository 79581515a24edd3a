import sys

from qspsim.main import main

__all__ = ["main"]

if __name__ == "__main__":
    sys.exit(main())
