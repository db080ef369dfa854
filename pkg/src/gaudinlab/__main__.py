import sys

from gaudinlab.cli import main

sys.exit(main())
