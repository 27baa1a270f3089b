"""
Series formelles tronquees en hbar.

Une HbarSeries represente sum_k c_k hbar^(nu + k) pour k = 0..M. Les
coefficients au-dela de l'ordre M sont inconnus (et non nuls), donc toute
operation binaire tronque au plus petit ordre des deux operandes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class HbarSeries:
    """
    Serie tronquee en hbar avec prefacteur hbar^nu.

    Attributes:
        coefficients: c_0 ... c_M (complexes)
        nu: exposant du prefacteur (rationnel)
        exact: memes coefficients en rationnels exacts, si connus
    """

    coefficients: np.ndarray
    nu: Fraction = Fraction(0)
    exact: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coefficients, dtype=complex)).copy()
        if c.size == 0:
            raise ValueError("serie vide")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "nu", Fraction(self.nu))
        if self.exact is not None:
            if len(self.exact) != c.size:
                raise ValueError(f"{len(self.exact)} coefficients exacts pour {c.size} coefficients")
            object.__setattr__(self, "exact", tuple(Fraction(e) for e in self.exact))

    @classmethod
    def from_terms(cls, terms: Iterable[complex], nu: Fraction | int = 0) -> HbarSeries:
        return cls(np.array(list(terms), dtype=complex), Fraction(nu))

    # =========================================================================
    # PROPRIETES
    # =========================================================================

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def top(self) -> Fraction:
        """Plus haute puissance de hbar conservee."""
        return self.nu + self.order

    @property
    def is_real(self) -> bool:
        return bool(np.all(np.abs(self.coefficients.imag) <= 1e-12 * (1 + np.abs(self.coefficients.real))))

    def coefficient(self, power: Fraction | int) -> complex:
        """Coefficient de hbar^power (0 si hors de la plage conservee par le bas)."""
        k = Fraction(power) - self.nu
        if k.denominator != 1 or k < 0:
            return 0j
        if k > self.order:
            raise IndexError(f"puissance {power} au-dela de l'ordre de troncature {self.top}")
        return complex(self.coefficients[int(k)])

    def truncate(self, order: int) -> HbarSeries:
        if order > self.order:
            raise ValueError("la troncature ne peut pas augmenter l'ordre")
        exact = self.exact[: order + 1] if self.exact is not None else None
        return HbarSeries(self.coefficients[: order + 1], self.nu, exact)

    # =========================================================================
    # ARITHMETIQUE
    # =========================================================================

    def _aligned(self, other: HbarSeries) -> tuple[np.ndarray, np.ndarray, Fraction]:
        shift = self.nu - other.nu
        if shift.denominator != 1:
            raise ValueError(f"prefacteurs incompatibles: {self.nu} et {other.nu}")
        nu = min(self.nu, other.nu)
        top = min(self.top, other.top)
        size = int(top - nu) + 1
        a = np.zeros(size, dtype=complex)
        b = np.zeros(size, dtype=complex)
        for target, series in ((a, self), (b, other)):
            start = int(series.nu - nu)
            stop = min(size, start + len(series.coefficients))
            target[start:stop] = series.coefficients[: stop - start]
        return a, b, nu

    def _as_series(self, value) -> HbarSeries:
        if isinstance(value, HbarSeries):
            return value
        # constante: seule la puissance 0 est connue exactement
        c = np.zeros(max(int(self.top), 0) + 1, dtype=complex)
        c[0] = complex(value)
        return HbarSeries(c, Fraction(0))

    def __add__(self, other) -> HbarSeries:
        other = self._as_series(other)
        a, b, nu = self._aligned(other)
        return HbarSeries(a + b, nu)

    __radd__ = __add__

    def __neg__(self) -> HbarSeries:
        return HbarSeries(-self.coefficients, self.nu)

    def __sub__(self, other) -> HbarSeries:
        return self + (-self._as_series(other))

    def __rsub__(self, other) -> HbarSeries:
        return (-self) + other

    def __mul__(self, other) -> HbarSeries:
        if not isinstance(other, HbarSeries):
            return HbarSeries(complex(other) * self.coefficients, self.nu)
        order = min(self.order, other.order)
        product = np.convolve(self.coefficients, other.coefficients)[: order + 1]
        return HbarSeries(product, self.nu + other.nu)

    __rmul__ = __mul__

    def inverse(self) -> HbarSeries:
        c = self.coefficients
        if c[0] == 0:
            raise ZeroDivisionError("coefficient dominant nul: serie non inversible")
        ans = np.zeros_like(c)
        for n in range(len(c)):
            tot = 1.0 + 0j if n == 0 else 0j
            for i in range(n):
                tot -= ans[i] * c[n - i]
            ans[n] = tot / c[0]
        return HbarSeries(ans, -self.nu)

    def __truediv__(self, other) -> HbarSeries:
        if isinstance(other, HbarSeries):
            return self * other.inverse()
        return HbarSeries(self.coefficients / complex(other), self.nu)

    def __rtruediv__(self, other) -> HbarSeries:
        return self.inverse() * other

    def __pow__(self, exponent: int) -> HbarSeries:
        if not isinstance(exponent, (int, np.integer)):
            raise TypeError("seules les puissances entieres sont supportees")
        base = self if exponent >= 0 else self.inverse()
        result = HbarSeries(np.eye(1, base.order + 1, dtype=complex)[0], Fraction(0))
        for _ in range(abs(int(exponent))):
            result = result * base
        return result

    def exp(self) -> HbarSeries:
        """Exponentielle, definie si nu est un entier >= 0."""
        if self.nu < 0 or self.nu.denominator != 1:
            raise ValueError(f"exp indefinie pour un prefacteur hbar^{self.nu}")
        c = np.concatenate([np.zeros(int(self.nu), dtype=complex), self.coefficients])
        x = HbarSeries(c)
        f0 = np.exp(c[0])
        x = x - c[0]
        ans = HbarSeries(np.eye(1, x.order + 1, dtype=complex)[0])
        for n in range(x.order, 0, -1):
            ans = 1.0 + x * ans / float(n)
        return ans * f0

    def log(self) -> HbarSeries:
        if self.nu != 0:
            raise ValueError("log d'une serie avec prefacteur non trivial")
        c0 = self.coefficients[0]
        if c0 == 0:
            raise ZeroDivisionError("log d'une serie de terme constant nul")
        x = -(self - c0) / c0
        ans = HbarSeries(np.eye(1, self.order + 1, dtype=complex)[0] * np.log(c0))
        xn = HbarSeries(np.eye(1, self.order + 1, dtype=complex)[0])
        for n in range(1, self.order + 1):
            xn = xn * x
            ans = ans - xn / float(n)
        return ans

    def rescale(self, factor: complex) -> HbarSeries:
        """Serie de S(factor * hbar)."""
        powers = np.array([complex(factor) ** float(self.nu + k) for k in range(self.order + 1)])
        return HbarSeries(self.coefficients * powers, self.nu)

    # =========================================================================
    # EVALUATION
    # =========================================================================

    def __call__(self, hbar: complex) -> complex:
        total = 0j
        for c in self.coefficients[::-1]:
            total = total * hbar + c
        return complex(hbar) ** float(self.nu) * total if self.nu != 0 else total

    def smallest_term_order(self, hbar: float) -> int:
        """Indice du plus petit terme |c_k hbar^k| (troncature optimale)."""
        magnitudes = [abs(c) * abs(hbar) ** k if c != 0 else math.inf for k, c in enumerate(self.coefficients)]
        return int(np.argmin(magnitudes[1:]) + 1) if len(magnitudes) > 1 else 0

    def allclose(self, other: HbarSeries, rtol: float = 1e-9, atol: float = 0.0) -> bool:
        if self.nu != other.nu or self.order != other.order:
            return False
        return bool(np.allclose(self.coefficients, other.coefficients, rtol=rtol, atol=atol))

    def to_list(self) -> list[complex]:
        return [complex(c) for c in self.coefficients]

    def __repr__(self) -> str:
        return f"HbarSeries(nu={self.nu}, coefficients={np.array2string(self.coefficients, precision=6)})"


@dataclass(frozen=True)
class ResidueSeries:
    """
    Residu F(E, hbar) = sum_k F_k(E) hbar^k avec F_k polynomes rationnels en E.

    Attributes:
        N: nombre de minima
        polynomials: F_k sous forme de coefficients croissants en E (Fractions exactes)
    """

    N: int
    polynomials: tuple[tuple[Fraction, ...], ...]

    @property
    def max_order(self) -> int:
        return len(self.polynomials) - 1

    def truncated(self, order: int) -> ResidueSeries:
        if order > self.max_order:
            raise ValueError("la troncature ne peut pas augmenter l'ordre")
        return ResidueSeries(self.N, self.polynomials[: order + 1])

    def coefficient_values(self, energy: complex) -> np.ndarray:
        """Valeurs numeriques F_k(E)."""
        return np.array(
            [np.polynomial.polynomial.polyval(complex(energy), [float(c) for c in poly]) for poly in self.polynomials],
            dtype=complex,
        )

    def at(self, energy: complex) -> HbarSeries:
        return HbarSeries(self.coefficient_values(energy))

    def __call__(self, energy: complex, hbar: float) -> complex:
        return self.at(energy)(hbar)
