import sys

from momangle.cli import main

sys.exit(main())
