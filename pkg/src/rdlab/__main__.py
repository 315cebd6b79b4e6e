import sys

from rdlab.cli import main

sys.exit(main())
