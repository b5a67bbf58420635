import sys

from flat_qqf.cli import main

if __name__ == "__main__":
    sys.exit(main())
