"""Execution parallele de balayages (hbar, theta, angles) avec fusion ordonnee."""
import concurrent.futures as cf
import logging
from typing import Callable, Iterable, TypeVar

from src.config import settings

logger = logging.getLogger(__name__)

Item = TypeVar("Item")
Result = TypeVar("Result")


class SweepRunner:
    """
    Applique une fonction pure sur une grille de points.

    Les resultats sont rendus dans l'ordre de la grille, quel que soit
    l'ordre d'achevement des taches.
    """

    def __init__(self, max_workers: int = settings.EWKB_THREADS):
        self._max_workers = max(1, max_workers)

    @property
    def max_workers(self) -> int:
        return self._max_workers

    def map(self, function: Callable[[Item], Result], items: Iterable[Item]) -> list[Result]:
        points = list(items)
        if not points:
            return []
        if self._max_workers == 1 or len(points) == 1:
            return [function(point) for point in points]

        results: dict[int, Result] = {}
        with cf.ThreadPoolExecutor(max_workers=min(self._max_workers, len(points))) as ex:
            futures = {ex.submit(function, point): index for index, point in enumerate(points)}
            for future in cf.as_completed(futures):
                index = futures[future]
                # une erreur sur un point interrompt tout le balayage
                results[index] = future.result()
                logger.debug(f"[SWEEP] point {index + 1}/{len(points)} termine")
        return [results[index] for index in range(len(points))]
