"""Enumeration-degree toolkit for represented second-countable T0 spaces."""

__version__ = "0.1.0"
