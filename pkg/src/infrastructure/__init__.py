"""
Infrastructure layer - Adapters et implementations concretes.

Cette couche contient les implementations des ports definis dans domain.
Elle gere les details techniques (fichiers CSV, JSON, SVG, HTML).
"""
