"""
Anneau exact des symboles de cycles.

Toutes les expressions vivent dans le corps QQ(s, t, c, w, z, ds, dt):
    s = sqrt(A), t = sqrt(B), c = cos(theta), w = e^{i theta / N},
    z = e^{i pi / N} (racine 2N-ieme de l'unite, traitee comme indeterminee),
    ds, dt = derivees de s et t par rapport a E.
L'ordre monomial est grlex; la forme canonique a un denominateur unitaire.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import sympy as sp
from pydantic import BaseModel
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, field as frac_field
from sympy.polys.orderings import grlex

from src.domain.exceptions import ConfigError

SYMBOL_FIELD, S, T, C, W, Z, DS, DT = frac_field("s,t,c,w,z,ds,dt", QQ, grlex)
SYMBOL_RING = SYMBOL_FIELD.ring
GENERATORS = {"s": S, "t": T, "c": C, "w": W, "z": Z, "ds": DS, "dt": DT}


def rational(value) -> FracElement:
    """Constante rationnelle exacte du corps."""
    value = Fraction(value)
    return SYMBOL_FIELD(QQ(value.numerator, value.denominator))


def is_zero(value: FracElement) -> bool:
    return not value.numer


@dataclass(frozen=True, eq=False)
class CycleSymbolExpr:
    """Element canonique du corps des symboles (egalite exacte)."""

    value: FracElement

    @classmethod
    def symbol(cls, name: str) -> CycleSymbolExpr:
        return cls(GENERATORS[name])

    @classmethod
    def constant(cls, value) -> CycleSymbolExpr:
        return cls(rational(value))

    @staticmethod
    def _raw(other) -> FracElement:
        if isinstance(other, CycleSymbolExpr):
            return other.value
        if isinstance(other, FracElement):
            return other
        return rational(other)

    def __add__(self, other) -> CycleSymbolExpr:
        return CycleSymbolExpr(self.value + self._raw(other))

    __radd__ = __add__

    def __sub__(self, other) -> CycleSymbolExpr:
        return CycleSymbolExpr(self.value - self._raw(other))

    def __rsub__(self, other) -> CycleSymbolExpr:
        return CycleSymbolExpr(self._raw(other) - self.value)

    def __neg__(self) -> CycleSymbolExpr:
        return CycleSymbolExpr(-self.value)

    def __mul__(self, other) -> CycleSymbolExpr:
        return CycleSymbolExpr(self.value * self._raw(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> CycleSymbolExpr:
        return CycleSymbolExpr(self.value / self._raw(other))

    def __rtruediv__(self, other) -> CycleSymbolExpr:
        return CycleSymbolExpr(self._raw(other) / self.value)

    def __pow__(self, exponent: int) -> CycleSymbolExpr:
        return CycleSymbolExpr(self.value**exponent)

    def __eq__(self, other) -> bool:
        try:
            return is_zero(self.value - self._raw(other))
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.canonical())

    def canonical(self) -> str:
        """Texte deterministe numer/denom, denominateur unitaire en grlex."""
        numer, denom = self.value.numer, self.value.denom
        scale = QQ(1) / denom.LC
        numer, denom = numer.mul_ground(scale), denom.mul_ground(scale)
        if denom == denom.ring.one:
            return f"({numer})"
        return f"({numer})/({denom})"

    def free_of(self, name: str) -> bool:
        index = list(GENERATORS).index(name)
        numer, denom = self.value.numer, self.value.denom
        return all(m[index] == 0 for m in numer.monoms()) and all(m[index] == 0 for m in denom.monoms())

    def as_expr(self) -> sp.Expr:
        return self.value.as_expr()

    def evaluate(self, **values: complex) -> complex:
        """Evaluation numerique (les symboles absents valent 0)."""
        names = list(GENERATORS)
        function = sp.lambdify(sp.symbols(names), self.as_expr(), "numpy")
        return complex(function(*[values.get(name, 0.0) for name in names]))

    def __repr__(self) -> str:
        return f"CycleSymbolExpr({self.canonical()})"


@dataclass(frozen=True)
class SectorIndex:
    """(p, Q, K): secteur de Bloch, charge topologique, nombre de bions."""

    p: int
    Q: int
    K: int

    def __post_init__(self):
        if self.K < 0:
            raise ConfigError(f"K doit etre >= 0 (recu {self.K})")
        if abs(self.Q) + self.K == 0:
            raise ConfigError("|Q| + K > 0 requis pour un secteur non perturbatif")

    @property
    def t_degree(self) -> int:
        return abs(self.Q) + 2 * self.K


@dataclass(frozen=True, eq=False)
class QuadExt:
    """
    a + b r avec r^2 = radicand, r = sqrt(xi^2 - 1) du cote `sign`.

    Les deux cotes portent des radicaux distincts; les operations exigent le meme.
    """

    a: FracElement
    b: FracElement
    radicand: FracElement
    sign: int = 1

    def _check(self, other: QuadExt) -> None:
        if self.sign != other.sign or not is_zero(self.radicand - other.radicand):
            raise ValueError("radicaux differents")

    def __add__(self, other: QuadExt) -> QuadExt:
        self._check(other)
        return QuadExt(self.a + other.a, self.b + other.b, self.radicand, self.sign)

    def __sub__(self, other: QuadExt) -> QuadExt:
        self._check(other)
        return QuadExt(self.a - other.a, self.b - other.b, self.radicand, self.sign)

    def __mul__(self, other: QuadExt) -> QuadExt:
        self._check(other)
        return QuadExt(
            self.a * other.a + self.b * other.b * self.radicand,
            self.a * other.b + self.b * other.a,
            self.radicand,
            self.sign,
        )

    def __pow__(self, exponent: int) -> QuadExt:
        if exponent < 0:
            raise ValueError("puissance negative: utiliser conjugate()")
        result = QuadExt(SYMBOL_FIELD.one, SYMBOL_FIELD.zero, self.radicand, self.sign)
        for _ in range(exponent):
            result = result * self
        return result

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.radicand, self.sign)

    def equals(self, other: QuadExt) -> bool:
        return (
            self.sign == other.sign
            and is_zero(self.radicand - other.radicand)
            and is_zero(self.a - other.a)
            and is_zero(self.b - other.b)
        )

    @property
    def is_rational(self) -> bool:
        return is_zero(self.b)


@dataclass(frozen=True)
class TSeries:
    """Serie en t tronquee a l'ordre M, coefficients dans le corps des symboles (sans t)."""

    coefficients: tuple[FracElement, ...]

    @classmethod
    def from_list(cls, values: list, order: int) -> TSeries:
        padded = [SYMBOL_FIELD(v) if not isinstance(v, FracElement) else v for v in values[: order + 1]]
        padded += [SYMBOL_FIELD.zero] * (order + 1 - len(padded))
        return cls(tuple(padded))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __add__(self, other: TSeries) -> TSeries:
        M = min(self.order, other.order)
        return TSeries(tuple(self.coefficients[k] + other.coefficients[k] for k in range(M + 1)))

    def __sub__(self, other: TSeries) -> TSeries:
        return self + other.scale(-1)

    def scale(self, factor) -> TSeries:
        factor = factor if isinstance(factor, FracElement) else rational(factor)
        return TSeries(tuple(c * factor for c in self.coefficients))

    def __mul__(self, other: TSeries) -> TSeries:
        M = min(self.order, other.order)
        out = []
        for k in range(M + 1):
            total = SYMBOL_FIELD.zero
            for j in range(k + 1):
                if self.coefficients[j].numer and other.coefficients[k - j].numer:
                    total += self.coefficients[j] * other.coefficients[k - j]
            out.append(total)
        return TSeries(tuple(out))

    def __pow__(self, exponent: int) -> TSeries:
        result = TSeries.from_list([1], self.order)
        for _ in range(exponent):
            result = result * self
        return result

    def inverse(self) -> TSeries:
        c0 = self.coefficients[0]
        if is_zero(c0):
            raise ZeroDivisionError("serie non inversible")
        out = [1 / c0]
        for k in range(1, self.order + 1):
            total = SYMBOL_FIELD.zero
            for j in range(1, k + 1):
                total += self.coefficients[j] * out[k - j]
            out.append(-total / c0)
        return TSeries(tuple(out))

    def derivative(self) -> TSeries:
        return TSeries(tuple(k * self.coefficients[k] for k in range(1, self.order + 1)) or (SYMBOL_FIELD.zero,))

    def log(self) -> TSeries:
        """log f pour f(0) = 1."""
        if not is_zero(self.coefficients[0] - 1):
            raise ValueError("log exige un terme constant egal a 1")
        quotient = self.derivative() * self.inverse()
        out = [SYMBOL_FIELD.zero] + [quotient.coefficients[k - 1] / k for k in range(1, self.order + 1)]
        return TSeries(tuple(out))

    def sqrt(self) -> TSeries:
        """Racine carree de f pour f(0) = 1 (branche g(0) = 1)."""
        if not is_zero(self.coefficients[0] - 1):
            raise ValueError("sqrt exige un terme constant egal a 1")
        out = [SYMBOL_FIELD.one]
        for k in range(1, self.order + 1):
            total = self.coefficients[k]
            for j in range(1, k):
                total -= out[j] * out[k - j]
            out.append(total / 2)
        return TSeries(tuple(out))

    def shift_down(self) -> TSeries:
        """f / t pour f(0) = 0 (l'ordre baisse de 1)."""
        if not is_zero(self.coefficients[0]):
            raise ValueError("terme constant non nul")
        return TSeries(self.coefficients[1:])

    def truncate(self, order: int) -> TSeries:
        return TSeries(self.coefficients[: order + 1])

    def equals(self, other: TSeries) -> bool:
        M = min(self.order, other.order)
        return all(is_zero(self.coefficients[k] - other.coefficients[k]) for k in range(M + 1))

    def first_difference(self, other: TSeries) -> Optional[int]:
        M = min(self.order, other.order)
        for k in range(M + 1):
            if not is_zero(self.coefficients[k] - other.coefficients[k]):
                return k
        return None


class CheckReport(BaseModel):
    """Rapport d'une verification exacte."""

    name: str
    N: int
    holds: bool
    passed: int
    total: int
    witness: list[str] = []
    details: dict = {}

    @property
    def summary(self) -> str:
        status = "PASS" if self.holds else "FAIL"
        return f"{status} {self.passed}/{self.total} sectors"


@dataclass
class GutzwillerSeries:
    """
    Developpement G = -d/dE log D en orbites periodiques primitives.

    Attributes:
        pt: G_pt tronque (A^{-+1} jusqu'a n_max)
        kernel: K tronque (unite non perturbative)
        np_part: G_np tronque (K jusqu'a m_max)
        identity_holds: -d log D = G_pt + G_np en forme close
        orbits: (etiquette, signe de Maslov) des orbites de K
    """

    sign: int
    n_max: int
    m_max: int
    pt: CycleSymbolExpr
    kernel: CycleSymbolExpr
    np_part: CycleSymbolExpr
    identity_holds: bool
    orbits: list[tuple[str, int]] = field(default_factory=list)
