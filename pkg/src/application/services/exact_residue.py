"""
Residu exact F(E, hbar) au point tournant double.

En mode RESCALED, S_odd^DW a un pole en x = 0 a chaque ordre. On pose
R_k = x^(2k+1) S_k^+ (serie paire reguliere) et la recursion de Riccati devient

    2u R_k = x^(2k) Q_(k+1) - sum_j R_j R_(k-1-j) - x R'_(k-1) + (2k-1) R_(k-1)

avec s = 2 sin(x/2) = x u(x). Le residu de S_k^+ est le coefficient de x^(2k)
de R_k. Les branches satisfont S_k^-(E) = (-1)^k S_k^+(-E), d'ou
F_k(E) = [r_k(E) - (-1)^k r_k(-E)] / 2. Le cas N general s'obtient par
F_k^(N)(E) = N^k F_k^(1)(E/N).
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_mul, rs_series_inversion
from sympy.polys.rings import ring

from src.domain.models.series import ResidueSeries

logger = logging.getLogger(__name__)

_RING, _E, _X = ring("E, x", QQ)


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


@lru_cache(maxsize=8)
def _unit_residues(max_order: int) -> tuple[tuple[Fraction, ...], ...]:
    """F_k^(1)(E), k = 0..max_order, coefficients croissants en E."""
    prec = 2 * max_order + 1
    u = _RING.zero
    for j in range(max_order + 1):
        u += QQ((-1) ** j, 4**j * math.factorial(2 * j + 1)) * _X ** (2 * j)
    half_inv_u = rs_series_inversion(u, _X, prec) * QQ(1, 2)

    R = {-1: u}
    R[0] = rs_mul(-2 * _E - _X * u.diff(_X) - u, half_inv_u, _X, prec)
    for k in range(1, max_order + 1):
        numerator = -_X * R[k - 1].diff(_X) + (2 * k - 1) * R[k - 1]
        for j in range(0, (k + 1) // 2):
            term = rs_mul(R[j], R[k - 1 - j], _X, prec)
            numerator -= term if 2 * j == k - 1 else 2 * term
        R[k] = rs_mul(numerator, half_inv_u, _X, prec)
        logger.debug(f"[RESIDUE] R_{k}: {len(R[k].terms())} termes")

    polynomials = []
    for k in range(max_order + 1):
        coefficients: dict[int, Fraction] = {}
        for (deg_e, deg_x), value in R[k].terms():
            # seuls les degres de parite opposee a k survivent dans la partie impaire
            if deg_x == 2 * k and (k + deg_e) % 2 == 1:
                coefficients[deg_e] = _to_fraction(value)
        degree = max(coefficients, default=0)
        polynomials.append(tuple(coefficients.get(d, Fraction(0)) for d in range(degree + 1)))
    return tuple(polynomials)


class ExactResidueSolver:
    """Calcule les polynomes exacts F_k(E) pour le potentiel 1 - cos(N x)."""

    def residue_polynomials(self, N: int, max_order: int) -> ResidueSeries:
        """
        Polynomes rationnels F_k(E), k = 0..max_order.

        Args:
            N: nombre de minima
            max_order: ordre maximal en hbar

        Returns:
            ResidueSeries avec F(E, hbar) = sum_k F_k(E) hbar^k
        """
        if N < 1 or max_order < 0:
            raise ValueError(f"parametres invalides: N={N}, max_order={max_order}")
        unit = _unit_residues(max_order)
        scaled = []
        for k, poly in enumerate(unit):
            scaled.append(tuple(c * Fraction(N) ** k / Fraction(N) ** d for d, c in enumerate(poly)))
        logger.info(f"[RESIDUE:N={N}] F_k exacts jusqu'a l'ordre {max_order}")
        return ResidueSeries(N=N, polynomials=tuple(scaled))
