import sys

from sepiso.cli import main

sys.exit(main())
