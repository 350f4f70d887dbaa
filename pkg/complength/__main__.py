import sys

from complength.cli import main

sys.exit(main())
