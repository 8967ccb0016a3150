import sys

from rcgs.cli import main

sys.exit(main())
