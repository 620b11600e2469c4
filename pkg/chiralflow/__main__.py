import sys

from chiralflow.main import main

sys.exit(main())
