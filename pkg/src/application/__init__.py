"""
Application layer - Services de calcul et orchestrateur des commandes.
"""
