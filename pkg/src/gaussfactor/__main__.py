import sys

from gaussfactor.cli import main

sys.exit(main())
