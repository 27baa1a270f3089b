"""
Adapters - Implementations concretes des ports.
"""

from src.infrastructure.adapters.csv_artifact_writer import CsvArtifactWriter
from src.infrastructure.adapters.json_artifact_writer import JsonArtifactWriter
from src.infrastructure.adapters.svg_artifact_writer import SvgArtifactWriter
from src.infrastructure.adapters.html_artifact_writer import HtmlArtifactWriter

__all__ = [
    "CsvArtifactWriter",
    "JsonArtifactWriter",
    "SvgArtifactWriter",
    "HtmlArtifactWriter",
]
