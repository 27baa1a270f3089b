"""
Oracle spectral: diagonalisation de H = -(hbar^2/2) d^2 + 1 - cos(N x) dans
une base d'ondes planes tordues.

cos(N x) ne couple que m et m +/- N: la matrice pleine est une bande de
largeur N (scipy.linalg.eig_banded) et chaque classe m = p mod N donne un bloc
tridiagonal (scipy.linalg.eigh_tridiagonal), qui est le secteur de Bloch p.
"""
import logging
from typing import Callable

import numpy as np
from scipy import linalg

from src.config import settings
from src.domain.enums import Method
from src.domain.exceptions import ConvergenceError
from src.domain.models.oracle import BandSplitting, BlochDecomposition, BlochProblem
from src.domain.models.spectral import SpectralRecord

logger = logging.getLogger(__name__)


class SpectralOracle:
    """Valeurs propres de reference, etiquetees par le moment de Bloch p."""

    def __init__(
        self,
        min_basis: int = settings.ORACLE_MIN_BASIS,
        tol: float = settings.ORACLE_TOL,
        max_basis: int = settings.ORACLE_MAX_BASIS,
        degeneracy_tol: float = 1e-8,
        label_tol: float = 1e-6,
    ):
        self._min_basis = min_basis
        self._tol = tol
        self._max_basis = max_basis
        self._degeneracy_tol = degeneracy_tol
        self._label_tol = label_tol

    # =========================================================================
    # CONVERGENCE EN TAILLE DE BASE
    # =========================================================================

    def _starting_problem(self, problem: BlochProblem, num_levels: int) -> BlochProblem:
        size = max(problem.basis_size, self._min_basis, 4 * (num_levels + problem.N) + 1)
        size += 1 - size % 2
        return BlochProblem(problem.N, problem.hbar, problem.theta, size, problem.amplitude)

    def _converged(self, problem: BlochProblem, solve: Callable[[BlochProblem], tuple]) -> tuple:
        """
        Double la base jusqu'a stabilite des valeurs propres.

        solve renvoie un tuple dont le premier element est le tableau des energies.
        """
        current = solve(problem)
        residual = float("inf")
        while 2 * problem.basis_size - 1 <= self._max_basis:
            bigger = problem.doubled()
            candidate = solve(bigger)
            residual = float(np.max(np.abs(candidate[0] - current[0]) / np.maximum(1.0, np.abs(candidate[0]))))
            logger.debug(f"[ORACLE:N={problem.N}] base {bigger.basis_size}: ecart {residual:.2e}")
            if residual <= self._tol:
                return candidate + (bigger,)
            problem, current = bigger, candidate
        raise ConvergenceError("doublement de la base de l'oracle", residual, self._max_basis)

    # =========================================================================
    # SPECTRE PLEIN
    # =========================================================================

    @staticmethod
    def _full_eigensystem(problem: BlochProblem, num_levels: int) -> tuple[np.ndarray, np.ndarray]:
        N, size = problem.N, problem.basis_size
        band = np.zeros((N + 1, size))
        band[N, :] = 0.5 * problem.hbar**2 * problem.momenta**2 + problem.amplitude
        if size > N:
            band[0, N:] = -0.5 * problem.amplitude
        count = min(num_levels, size)
        energies, vectors = linalg.eig_banded(band, lower=False, select="i", select_range=(0, count - 1))
        return energies, vectors

    def band_spectrum(self, problem: BlochProblem, num_levels: int) -> list[SpectralRecord]:
        """
        Plus basses valeurs propres de la matrice pleine, n = indice global.

        Chaque niveau recoit l'etiquette p de sa valeur propre de translation.
        """
        start = self._starting_problem(problem, num_levels)
        energies, vectors, solved = self._converged(start, lambda pb: self._full_eigensystem(pb, num_levels))
        labels, ambiguous = self._translation_labels(solved, energies, vectors)
        if ambiguous:
            logger.warning(f"[ORACLE:N={problem.N}] etiquette p ambigue pour les niveaux {ambiguous}")
        logger.info(
            f"[ORACLE:N={problem.N}] hbar={problem.hbar} theta={problem.theta:.4f} "
            f"{len(energies)} niveaux (base {solved.basis_size})"
        )
        return [
            SpectralRecord(
                N=problem.N,
                hbar=problem.hbar,
                theta=problem.theta,
                p=labels[i],
                n=i,
                energy_re=float(energy),
                method=Method.ORACLE,
            )
            for i, energy in enumerate(energies)
        ]

    def _translation_labels(
        self, problem: BlochProblem, energies: np.ndarray, vectors: np.ndarray
    ) -> tuple[list[int], list[int]]:
        """
        p tel que T v = e^{i(theta + 2 pi p)/N} v.

        Dans un sous-espace degenere, T est diagonalise sur la base propre
        du sous-espace avant etiquetage.
        """
        N = problem.N
        phases = problem.translation_phases()
        twist = np.exp(-1j * problem.theta / N)
        labels: list[int] = [0] * len(energies)
        ambiguous: list[int] = []

        start = 0
        while start < len(energies):
            stop = start + 1
            while stop < len(energies) and abs(energies[stop] - energies[start]) < self._degeneracy_tol * max(
                1.0, abs(energies[start])
            ):
                stop += 1
            block = vectors[:, start:stop]
            restricted = block.conj().T @ (phases[:, None] * block)
            eigenvalues = np.linalg.eigvals(restricted)
            group = []
            for value in eigenvalues:
                p = int(np.round(np.angle(value * twist) * N / (2 * np.pi))) % N
                target = np.exp(1j * (problem.theta + 2 * np.pi * p) / N)
                group.append((p, abs(value - target) > self._label_tol))
            for offset, (p, is_ambiguous) in enumerate(sorted(group)):
                labels[start + offset] = p
                if is_ambiguous:
                    ambiguous.append(start + offset)
            start = stop
        return labels, ambiguous

    def projector_diagonal(self, problem: BlochProblem, p: int) -> np.ndarray:
        """P_p = (1/N) sum_k (e^{-i(theta + 2 pi p)/N} T)^k, diagonal en ondes planes."""
        N = problem.N
        ratio = problem.translation_phases() * np.exp(-1j * (problem.theta + 2 * np.pi * p) / N)
        return np.mean([ratio**k for k in range(N)], axis=0)

    # =========================================================================
    # DECOMPOSITION DE BLOCH
    # =========================================================================

    @staticmethod
    def _sector_energies(problem: BlochProblem, p: int, num_levels: int) -> np.ndarray:
        momenta = problem.momenta[(problem.modes - p) % problem.N == 0]
        diagonal = 0.5 * problem.hbar**2 * momenta**2 + problem.amplitude
        off_diagonal = np.full(len(momenta) - 1, -0.5 * problem.amplitude)
        count = min(num_levels, len(momenta))
        return linalg.eigh_tridiagonal(
            diagonal, off_diagonal, eigvals_only=True, select="i", select_range=(0, count - 1)
        )

    def sector_spectrum(self, problem: BlochProblem, p: int, num_levels: int) -> np.ndarray:
        """Bandes n = 0..num_levels-1 du secteur p, convergees."""
        start = self._starting_problem(problem, num_levels * problem.N)
        energies, _ = self._converged(start, lambda pb: (self._sector_energies(pb, p, num_levels),))
        return energies

    def bloch_decompose(self, problem: BlochProblem, num_levels: int) -> BlochDecomposition:
        """
        Spectres par secteur p et controles croises avec la matrice pleine.

        Args:
            num_levels: bandes par secteur
        """
        N = problem.N
        records: list[SpectralRecord] = []
        union = []
        for p in range(N):
            energies = self.sector_spectrum(problem, p, num_levels)
            union.extend(energies)
            for n, energy in enumerate(energies):
                records.append(
                    SpectralRecord(
                        N=N,
                        hbar=problem.hbar,
                        theta=problem.theta,
                        p=p,
                        n=n,
                        energy_re=float(energy),
                        method=Method.ORACLE,
                    )
                )

        start = self._starting_problem(problem, num_levels)
        full, vectors, solved = self._converged(start, lambda pb: self._full_eigensystem(pb, num_levels))
        lowest_union = np.sort(union)[: len(full)]
        matches = bool(np.allclose(lowest_union, full, rtol=0, atol=1e-8 * max(1.0, float(np.max(np.abs(full))))))

        projector_error = 0.0
        for p in range(N):
            projector = self.projector_diagonal(solved, p)[:, None]
            once = projector * vectors
            twice = projector * once
            projector_error = max(projector_error, float(np.max(np.abs(twice - once))))

        _, ambiguous = self._translation_labels(solved, full, vectors)
        counts = {p: sum(1 for r in records if r.p == p) for p in range(N)}
        logger.info(
            f"[ORACLE:N={N}] decomposition theta={problem.theta:.4f}: {counts}, "
            f"accord matrice pleine={matches}, erreur projecteur={projector_error:.1e}"
        )
        return BlochDecomposition(
            records=records,
            counts=counts,
            matches_full=matches,
            projector_error=projector_error,
            ambiguous=ambiguous,
        )

    # =========================================================================
    # SPLITTING DE BANDE
    # =========================================================================

    def band_splitting(self, problem: BlochProblem, band: int = 0) -> BandSplitting:
        """
        E_n(bord oppose) - E_n(theta = 0, p = 0).

        Le bord oppose est le secteur de cos((theta + 2 pi p)/N) = -1:
        theta = pi pour N impair, sinon theta = 0 et p = N/2.
        """
        N = problem.N
        theta_edge = np.pi * (N % 2)
        p_edge = (N - N % 2) // 2
        lower = self.sector_spectrum(problem.with_theta(0.0), 0, band + 1)[band]
        upper = self.sector_spectrum(problem.with_theta(theta_edge), p_edge % N, band + 1)[band]
        logger.info(f"[ORACLE:N={N}] bande {band}: ecart {upper - lower:.6e} (hbar={problem.hbar})")
        return BandSplitting(
            N=N,
            hbar=problem.hbar,
            band=band,
            lower=float(lower),
            upper=float(upper),
            theta_edge=float(theta_edge),
            p_edge=p_edge % N,
        )
