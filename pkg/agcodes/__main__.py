import sys

from agcodes.cli import main

sys.exit(main())
