#!/usr/bin/python3

"""Entry point for ``python -m acforge``"""

import sys
from .cli import main

sys.exit(main())
