"""
Services - Un service par module du toolkit exact-WKB.
"""

from src.application.services.potential_core import PotentialCore
from src.application.services.sweep_runner import SweepRunner

__all__ = ["PotentialCore", "SweepRunner"]
