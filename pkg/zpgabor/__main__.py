import sys

from zpgabor.core import main

sys.exit(main())
