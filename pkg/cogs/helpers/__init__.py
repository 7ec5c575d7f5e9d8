# This file makes "helpers" a Python package.
