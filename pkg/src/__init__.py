"""
Exact WKB sur S1 - Module source principal
"""

from .config.settings import settings

__all__ = ["settings"]
