import sys

from beidepth.cli import main

sys.exit(main())
