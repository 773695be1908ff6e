import sys

from lastsym.cli import main

sys.exit(main())
