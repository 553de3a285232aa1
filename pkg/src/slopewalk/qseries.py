"""Truncated q-expansions over exact rationals, with U_p, V_p and T_p.

A QSeries knows its coefficients a_0 .. a_{prec-1} and nothing beyond;
arithmetic never claims precision the operands do not justify. Coefficients
are Python ints whenever integral (all the standard constructors) and
Fractions otherwise, so the big integer paths stay fast.

Conventions for the constructors:

    E_k        = 1 - (2k/B_k) * sum sigma_{k-1}(n) q^n   (prefactors -24, 240, -504)
    Delta      = q * prod (1 - q^n)^24
    Theta      = 1 + 2 * sum q^(n^2)
    F_sigma_odd= sum over odd n of sigma_1(n) q^n
    A_level2   = 2 E_2(q^2) - E_2(q)
    Hauptmodul_f = q * prod (1 + q^n)^24     (equals Delta(q^2)/Delta(q))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from numbers import Rational

from .errors import InsufficientPrecision, NonUnitConstantTerm
from .serialize import rat_from_str, rat_to_str

Rat = int | Fraction


def _norm(x) -> Rat:
    """Collapse integral Fractions to int; reject non-rationals."""
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"expected a rational coefficient, got {type(x).__name__}")


@dataclass(frozen=True)
class QSeries:
    """Exact truncated power series in q: coeffs a_0..a_{prec-1}."""

    coeffs: tuple[Rat, ...]
    prec: int

    def __post_init__(self):
        if self.prec < 1:
            raise ValueError(f"prec must be >= 1, got {self.prec}")
        if len(self.coeffs) != self.prec:
            raise ValueError(f"{len(self.coeffs)} coefficients but prec={self.prec}")

    @classmethod
    def from_coeffs(cls, coeffs, prec: int | None = None) -> "QSeries":
        cs = [_norm(c) for c in coeffs]
        if prec is None:
            prec = len(cs)
        if prec < len(cs):
            cs = cs[:prec]
        else:
            cs.extend([0] * (prec - len(cs)))
        return cls(tuple(cs), prec)

    @classmethod
    def constant(cls, c, prec: int) -> "QSeries":
        return cls.from_coeffs([c], prec)

    @classmethod
    def zero(cls, prec: int) -> "QSeries":
        return cls.from_coeffs([], prec)

    @classmethod
    def one(cls, prec: int) -> "QSeries":
        return cls.from_coeffs([1], prec)

    @classmethod
    def monomial(cls, n: int, prec: int, c=1) -> "QSeries":
        if n >= prec:
            raise InsufficientPrecision(f"monomial q^{n} needs prec > {n}")
        return cls.from_coeffs([0] * n + [c], prec)

    def __getitem__(self, n: int) -> Rat:
        if not 0 <= n < self.prec:
            raise InsufficientPrecision(f"coefficient {n} beyond precision {self.prec}")
        return self.coeffs[n]

    def order(self) -> int:
        """Index of the first known nonzero coefficient; prec if none."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.prec

    def is_zero(self) -> bool:
        return self.order() == self.prec

    def truncate(self, prec: int) -> "QSeries":
        if prec > self.prec:
            raise InsufficientPrecision(f"cannot extend precision {self.prec} to {prec}")
        return QSeries(self.coeffs[:prec], prec)

    def agrees(self, other: "QSeries") -> bool:
        """Equality to shared precision (the only meaningful series equality)."""
        n = min(self.prec, other.prec)
        return self.coeffs[:n] == other.coeffs[:n]

    # -- ring operations ----------------------------------------------------

    def __neg__(self) -> "QSeries":
        return QSeries(tuple(-c for c in self.coeffs), self.prec)

    def __add__(self, other: "QSeries") -> "QSeries":
        p = min(self.prec, other.prec)
        return QSeries(tuple(a + b for a, b in zip(self.coeffs[:p], other.coeffs[:p])), p)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scalar_mul(self, c) -> "QSeries":
        c = _norm(c)
        return QSeries(tuple(_norm(c * a) for a in self.coeffs), self.prec)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scalar_mul(other)
        # product precision accounts for leading zeros in either factor
        p = min(self.prec + other.order(), other.prec + self.order())
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                n = i + j
                if n >= p:
                    break
                if b != 0:
                    out[n] += a * b
        return QSeries(tuple(_norm(c) for c in out), p)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            raise ValueError("negative powers: use invert_unit explicitly")
        result = QSeries.one(self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def invert_unit(self) -> "QSeries":
        """Multiplicative inverse; requires a_0 != 0. Same precision."""
        if self.prec < 1 or self.coeffs[0] == 0:
            raise NonUnitConstantTerm("cannot invert a series with a_0 = 0")
        a0 = Fraction(self.coeffs[0])
        inv0 = 1 / a0
        out: list[Rat] = [_norm(inv0)]
        for n in range(1, self.prec):
            acc = 0
            for i in range(1, n + 1):
                if self.coeffs[i] != 0:
                    acc += self.coeffs[i] * out[n - i]
            out.append(_norm(-inv0 * acc))
        return QSeries(tuple(out), self.prec)

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        """Line-oriented "n coefficient" form, one line per known index."""
        return "\n".join(f"{n} {rat_to_str(c)}" for n, c in enumerate(self.coeffs))

    @classmethod
    def from_text(cls, text: str) -> "QSeries":
        entries = {}
        for line in text.strip().splitlines():
            n_str, c_str = line.split()
            entries[int(n_str)] = rat_from_str(c_str)
        prec = max(entries) + 1
        if sorted(entries) != list(range(prec)):
            raise ValueError("text form must list every index 0..prec-1")
        return cls.from_coeffs([entries[n] for n in range(prec)])

    def to_json_obj(self) -> dict:
        return {"prec": self.prec, "coeffs": [rat_to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "QSeries":
        return cls.from_coeffs([rat_from_str(s) for s in obj["coeffs"]], int(obj["prec"]))

    def reduce_mod(self, n: int) -> tuple[int, ...]:
        """Coefficients mod n, for congruence checks. Requires integrality."""
        out = []
        for c in self.coeffs:
            if not isinstance(c, int):
                raise ValueError(f"non-integral coefficient {c} cannot be reduced mod {n}")
            out.append(c % n)
        return tuple(out)


# -- standard constructors ----------------------------------------------------

def _sigma_table(power: int, prec: int) -> list[int]:
    """sigma_power(n) for 0 <= n < prec via a divisor sieve (sigma(0) unused, 0)."""
    sig = [0] * prec
    for d in range(1, prec):
        dk = d**power
        for n in range(d, prec, d):
            sig[n] += dk
    return sig

_EISENSTEIN_PREFACTOR = {2: -24, 4: 240, 6: -504}


def eisenstein(k: int, prec: int) -> QSeries:
    """Level-1 Eisenstein series E_k, normalized with constant term 1."""
    if k not in _EISENSTEIN_PREFACTOR:
        raise ValueError(f"only E2, E4, E6 are provided; got k={k}")
    c = _EISENSTEIN_PREFACTOR[k]
    sig = _sigma_table(k - 1, prec)
    return QSeries.from_coeffs([1] + [c * sig[n] for n in range(1, prec)])


def _eta_style_product(sign: int, exponent: int, prec: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 + sign q^n)^exponent up to q^(prec-1)."""
    out = [0] * prec
    out[0] = 1
    for n in range(1, prec):
        nxt = [0] * prec
        for j in range(exponent + 1):
            e = j * n
            if e >= prec:
                break
            b = comb(exponent, j) * (sign**j)
            for i in range(prec - e):
                if out[i]:
                    nxt[i + e] += b * out[i]
        out = nxt
    return out


def delta(prec: int) -> QSeries:
    """The discriminant cusp form: q * prod (1 - q^n)^24."""
    prod = _eta_style_product(-1, 24, prec)
    return QSeries.from_coeffs([0] + prod[: prec - 1])


def theta(prec: int) -> QSeries:
    """Jacobi theta: 1 + 2 sum_{n>=1} q^(n^2)."""
    out = [0] * prec
    out[0] = 1
    for n in range(1, isqrt(prec - 1) + 1):
        out[n * n] = 2
    return QSeries.from_coeffs(out)


def sigma_odd_weight2(prec: int) -> QSeries:
    """sum over odd n of sigma_1(n) q^n, the second Gamma_1(4) generator."""
    sig = _sigma_table(1, prec)
    return QSeries.from_coeffs([sig[n] if n % 2 == 1 else 0 for n in range(prec)])


def eisenstein2_level2(prec: int) -> QSeries:
    """2 E_2(q^2) - E_2(q), the weight-2 form on Gamma_0(2)."""
    e2 = eisenstein(2, prec)
    return v_p(e2, 2).truncate(prec).scalar_mul(2) - e2


def hauptmodul_f(prec: int) -> QSeries:
    """The level-2 hauptmodul q * prod (1 + q^n)^24 = Delta(q^2)/Delta(q)."""
    prod = _eta_style_product(+1, 24, prec)
    return QSeries.from_coeffs([0] + prod[: prec - 1])


_STANDARD = {
    "E2": lambda prec: eisenstein(2, prec),
    "E4": lambda prec: eisenstein(4, prec),
    "E6": lambda prec: eisenstein(6, prec),
    "Delta": delta,
    "Theta": theta,
    "F_sigma_odd": sigma_odd_weight2,
    "A_level2": eisenstein2_level2,
    "Hauptmodul_f": hauptmodul_f,
}


def standard_series(name: str, prec: int) -> QSeries:
    """Named generator series; prec >= 2."""
    if prec < 2:
        raise InsufficientPrecision(f"standard_series needs prec >= 2, got {prec}")
    try:
        builder = _STANDARD[name]
    except KeyError:
        raise ValueError(f"unknown series {name!r}; choose from {sorted(_STANDARD)}") from None
    return builder(prec)


# -- Hecke-type operators -----------------------------------------------------

def u_p(a: QSeries, p: int) -> QSeries:
    """U_p: coefficient n of the output is a_{pn}. Output precision floor(prec/p)."""
    if a.prec < p:
        raise InsufficientPrecision(f"U_{p} needs prec >= {p}, got {a.prec}")
    out_prec = a.prec // p
    return QSeries(tuple(a.coeffs[p * n] for n in range(out_prec)), out_prec)


def v_p(a: QSeries, p: int) -> QSeries:
    """V_p: substitute q -> q^p. Coefficients off the p-grid are exact zeros."""
    out_prec = p * a.prec
    out = [0] * out_prec
    for n, c in enumerate(a.coeffs):
        out[p * n] = c
    return QSeries(tuple(out), out_prec)


def hecke_t_p(a: QSeries, k: int, p: int) -> QSeries:
    """T_p = U_p + p^(k-1) V_p on a weight-k level-1 (trivial character) form."""
    return u_p(a, p) + v_p(a, p).scalar_mul(Fraction(p) ** (k - 1))
