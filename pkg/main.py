#!/usr/bin/env python3
"""
Exact WKB sur S1 - Point d'entree principal

Usage:
    python main.py COMMAND [options]    Lance une commande et ecrit ses artefacts
"""

import argparse
import logging
import sys
from datetime import datetime
from pathlib import Path

from pydantic import ValidationError

from src.config import settings

# Créer le dossier logs s'il n'existe pas
logs_dir = Path(settings.EWKB_LOGS_DIR)
logs_dir.mkdir(parents=True, exist_ok=True)

# Nom du fichier avec date jj_mm_yyyy
log_filename = logs_dir / f"{datetime.now().strftime('%d_%m_%Y')}.log"

# Configuration du logging
logging.basicConfig(
    level=getattr(logging, settings.EWKB_LOG_LEVEL.upper(), logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[
        logging.FileHandler(log_filename, encoding="utf-8"),
        logging.StreamHandler(),  # Aussi afficher dans la console
    ]
)
logging.getLogger("matplotlib").setLevel(logging.WARNING)
logging.getLogger("PIL").setLevel(logging.WARNING)

from src.domain.enums import Command, ExportFormat, Side  # noqa: E402
from src.domain.exceptions import EwkbError  # noqa: E402
from src.domain.models.run_config import RunConfig  # noqa: E402
from src.infrastructure.container import Container  # noqa: E402

EXIT_CONFIG = 2

# option CLI -> champ de RunConfig
_FLAG_FIELDS = {
    "n": "N",
    "hbar": "hbar",
    "hbar_sweep": "hbar_sweep",
    "theta": "theta",
    "theta_sweep": "theta_sweep",
    "orders": "orders",
    "bands": "bands",
    "airy": "airy",
    "side": "side",
    "energy": "energy",
    "arg_hbar": "arg_hbar",
    "window_periods": "window_periods",
    "level": "level",
    "max_order": "max_order",
    "ray_angle": "ray_angle",
    "sector_order": "sector_order",
    "spot_checks": "spot_checks",
    "seed": "seed",
    "out": "out",
    "format": "format",
}


def print_error(message: str):
    """Affiche un message d'erreur formate."""
    print(f"\n[ERREUR] {message}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact WKB sur S1 - V(x) = 1 - cos(N x)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exemples:
  python main.py spectrum --n 2 --hbar 0.5 --theta pi       # Racines DW et oracle cote a cote
  python main.py ddp-check --n 6                            # S[D+] = D- exact, PASS 6/6 sectors
  python main.py stokes-graph --n 1 --energy 1 --arg-hbar 0.1 --format svg
  python main.py borel --n 1 --hbar-sweep 0.3,0.2           # Discontinuite laterale vs bion
  python main.py split --n 1 --hbar-sweep 0.7,0.55,0.4      # Splitting oracle vs formule

Codes de sortie: 0 succes, 2 configuration invalide, 3 echec numerique.
        """
    )

    parser.add_argument(
        "command",
        choices=[c.value for c in Command],
        help="Commande a executer"
    )
    parser.add_argument("--config", default=None, help="Fichier TOML (les options CLI gagnent)")
    parser.add_argument("--n", type=int, default=None, help="Nombre de minima N")
    parser.add_argument("--hbar", type=float, default=None, help="Valeur de hbar")
    parser.add_argument("--hbar-sweep", default=None, help="Liste de hbar separes par des virgules")
    parser.add_argument("--theta", default=None, help="Angle theta (nombre ou expression: pi, pi/2)")
    parser.add_argument("--theta-sweep", default=None, help="Liste d'angles separes par des virgules")
    parser.add_argument("--orders", type=int, default=None, help="Ordre en hbar du residu DW")
    parser.add_argument("--bands", type=int, default=None, help="Bandes par secteur")
    parser.add_argument(
        "--airy", action="store_const", const=True, default=None, help="Ajoute les racines Airy (spectrum)"
    )
    parser.add_argument("--side", default=None, choices=[s.value for s in (Side.UPPER, Side.LOWER, Side.MEDIAN)])
    parser.add_argument("--energy", type=float, default=None, help="Energie E (stokes-graph)")
    parser.add_argument("--arg-hbar", default=None, help="arg hbar (stokes-graph)")
    parser.add_argument("--window-periods", type=int, default=None, help="Fenetre en periodes de 2 pi")
    parser.add_argument("--level", type=int, default=None, help="Niveau n de la serie perturbative (borel)")
    parser.add_argument("--max-order", type=int, default=None, help="Ordre de la serie perturbative (borel)")
    parser.add_argument("--ray-angle", type=float, default=None, help="Angle des rayons lateraux (borel)")
    parser.add_argument("--sector-order", type=int, default=None, help="Ordre |Q| + 2K maximal (sectors)")
    parser.add_argument("--spot-checks", type=int, default=None, help="Points numeriques aleatoires (factorize)")
    parser.add_argument("--seed", type=int, default=None, help="Graine des tests aleatoires")
    parser.add_argument("--out", default=None, help=f"Dossier de sortie (defaut: {settings.EWKB_OUTPUT_DIR})")
    parser.add_argument("--format", default=None, choices=[f.value for f in ExportFormat])
    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    if not argv:
        parser.print_help()
        return 0
    args = parser.parse_args(argv)

    overrides = {"command": args.command}
    overrides.update({field: getattr(args, flag) for flag, field in _FLAG_FIELDS.items()})
    try:
        config = RunConfig.from_sources(args.config, overrides)
    except ValidationError as e:
        print_error(f"Configuration invalide:\n{e}")
        return EXIT_CONFIG
    except EwkbError as e:
        print_error(str(e))
        return e.exit_code

    container = Container()
    container.config.format.from_value(config.format.value)

    from src.application.experiment_runner import ExperimentRunner

    try:
        result = ExperimentRunner().run(config)
    except EwkbError as e:
        print_error(str(e))
        return e.exit_code

    for line in result.summary:
        print(line)
    for path in result.artifacts:
        print(f"-> {path}")
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    try:
        main()
    except KeyboardInterrupt:
        print("\nArret demande par l'utilisateur.")
        sys.exit(0)
    except Exception as e:
        print_error(f"Erreur fatale: {e}")
        sys.exit(1)
