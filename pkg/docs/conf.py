#!/usr/bin/env python3

"""Sphinx configuration for acforge"""

import sys
import os.path
from sphinx_pyproject import SphinxConfig


sys.path.insert(0, os.path.abspath(os.path.join("..", "src")))

config = SphinxConfig("../pyproject.toml", globalns=globals())

intersphinx_mapping = {
    "python": ("https://docs.python.org/3/", None),
}
