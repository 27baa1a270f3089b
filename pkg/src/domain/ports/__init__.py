"""
Ports (Interfaces) - Contrats que les adapters doivent implementer.
"""

from src.domain.ports.artifact_writer_port import ArtifactWriter

__all__ = ["ArtifactWriter"]
