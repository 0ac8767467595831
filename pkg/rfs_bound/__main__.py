import sys

from rfs_bound.main import main

sys.exit(main())
