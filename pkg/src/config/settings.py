"""
Configuration centralisee pour la librairie exact-WKB.

Ce fichier charge les variables d'environnement et fournit
une interface unique pour acceder aux tolerances et aux tailles numeriques.
"""

import os
from dotenv import load_dotenv

load_dotenv()


class Settings:
    """Classe de configuration centralisee."""

    # === CONFIGURATION EXECUTION ===
    EWKB_THREADS: int = int(os.getenv("EWKB_THREADS", "4"))
    EWKB_LOG_LEVEL: str = os.getenv("EWKB_LOG_LEVEL", "INFO")
    EWKB_LOGS_DIR: str = os.getenv("EWKB_LOGS_DIR", "logs")
    EWKB_OUTPUT_DIR: str = os.getenv("EWKB_OUTPUT_DIR", "output")

    # === CONFIGURATION WKB ===
    WKB_NODES: int = int(os.getenv("WKB_NODES", "256"))
    WKB_MAX_NODES: int = int(os.getenv("WKB_MAX_NODES", "4096"))
    WKB_RTOL: float = float(os.getenv("WKB_RTOL", "1e-10"))
    WKB_MAX_ORDER: int = int(os.getenv("WKB_MAX_ORDER", "12"))
    WKB_DEFAULT_ORDERS: int = int(os.getenv("WKB_DEFAULT_ORDERS", "5"))
    WKB_CONDITIONING_BOUND: float = float(os.getenv("WKB_CONDITIONING_BOUND", "1e3"))

    # === CONFIGURATION STOKES ===
    STOKES_SADDLE_TOL: float = float(os.getenv("STOKES_SADDLE_TOL", "1e-5"))
    STOKES_APPROACH_RADIUS: float = float(os.getenv("STOKES_APPROACH_RADIUS", "5e-3"))
    STOKES_SEED_RADIUS: float = float(os.getenv("STOKES_SEED_RADIUS", "1e-4"))
    STOKES_IM_BOUND: float = float(os.getenv("STOKES_IM_BOUND", "2.5"))
    STOKES_MAX_STEP: float = float(os.getenv("STOKES_MAX_STEP", "0.02"))
    STOKES_SAMPLE_STEP: float = float(os.getenv("STOKES_SAMPLE_STEP", "0.01"))  # pas d'abscisse curviligne des points stockes
    STOKES_CUT_PAIRING: str = os.getenv("STOKES_CUT_PAIRING", "well")  # "well" ou "barrier"

    # === CONFIGURATION QUANTIFICATION ===
    SIDE_PAIRING: str = os.getenv("SIDE_PAIRING", "direct")  # "direct" ou "swapped"
    QUANTIZE_SCAN_POINTS: int = int(os.getenv("QUANTIZE_SCAN_POINTS", "600"))
    QUANTIZE_RECT_HEIGHT: float = float(os.getenv("QUANTIZE_RECT_HEIGHT", "1e-3"))
    QUANTIZE_DW_ORDER: int = int(os.getenv("QUANTIZE_DW_ORDER", "8"))
    QUANTIZE_POLISH_TOL: float = float(os.getenv("QUANTIZE_POLISH_TOL", "1e-13"))

    # === CONFIGURATION ORACLE ===
    ORACLE_MIN_BASIS: int = int(os.getenv("ORACLE_MIN_BASIS", "65"))
    ORACLE_TOL: float = float(os.getenv("ORACLE_TOL", "1e-10"))
    ORACLE_MAX_BASIS: int = int(os.getenv("ORACLE_MAX_BASIS", "4097"))

    # === CONFIGURATION ALGEBRE / BOREL ===
    ALGEBRA_MAX_N: int = int(os.getenv("ALGEBRA_MAX_N", "8"))
    BOREL_DPS: int = int(os.getenv("BOREL_DPS", "50"))


# Instance globale pour import facile
settings = Settings()
