"""Exact q-series toolkit for restricted distinct-part partitions."""

__version__ = "0.1.0"
