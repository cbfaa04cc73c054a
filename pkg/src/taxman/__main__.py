import sys

from taxman.cli import main

sys.exit(main())
