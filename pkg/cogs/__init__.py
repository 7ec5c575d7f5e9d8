# This file makes "cogs" a Python package.
