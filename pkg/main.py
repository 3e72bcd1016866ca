import sys

from fermat_root_numbers.cli import main

if __name__ == "__main__":
    sys.exit(main())
