"""
Domain layer - Contient les objets mathematiques et les ports (interfaces).

Cette couche ne depend d'aucune couche externe (pas d'adapters,
pas de services).
"""
