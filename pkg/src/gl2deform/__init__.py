"""Exact rewriting and verification toolkit for GL(2)-type quantum groups."""
