"""Exact size statistics of simultaneous (s,t)-core partitions."""

__version__ = "0.1.0"
