import sys

from qwdist.cli import main

sys.exit(main())
