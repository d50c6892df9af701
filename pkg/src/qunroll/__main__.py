import sys

from qunroll.cli.main import main

sys.exit(main())
