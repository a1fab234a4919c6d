"""Internal utilities for the hyperlat library.

This package contains implementation details not part of the public API.
"""
