import sys

from smpleak.cli import main

sys.exit(main())
