"""Arithmetic in the Eisenstein extension L = Q_p(pi_e), pi_e**e = -p.

Elements are stored as e coordinates over Q_p: x = sum(c[i] * pi_e**i).
Because v(c[i]) is an integer and v(pi_e**i) = i/e, the coordinate valuations
sit in distinct classes mod 1, so the valuation of x is exactly
min(v(c[i]) + i/e) whenever it is visible at the carried precision.

Precision is tracked per coordinate through :class:`~.padic.PadicScalar`;
``pi_precision`` converts that to an absolute precision in pi_e-digits.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CosetViolationError, PrecisionError
from .padic import INFINITY, PadicScalar

_ALLOWED_E = (3, 4, 6)


class EisensteinElement:
    """An element of L = Q_p(pi_e) with bounded-precision coordinates."""

    __slots__ = ("prime", "ram_index", "coords")

    def __init__(self, prime: int, ram_index: int, coords):
        if ram_index not in _ALLOWED_E:
            raise ValueError(f"ramification index must be one of {_ALLOWED_E}")
        coords = tuple(coords)
        if len(coords) != ram_index:
            raise ValueError(f"need {ram_index} coordinates, got {len(coords)}")
        for c in coords:
            if not isinstance(c, PadicScalar) or c.prime != prime:
                raise ValueError("coordinates must be PadicScalars over the same p")
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "ram_index", ram_index)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("EisensteinElement is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int, e: int) -> "EisensteinElement":
        return cls(p, e, [PadicScalar.exact_zero(p)] * e)

    @classmethod
    def from_scalar(cls, scalar: PadicScalar, e: int) -> "EisensteinElement":
        coords = [PadicScalar.exact_zero(scalar.prime)] * e
        coords[0] = scalar
        return cls(scalar.prime, e, coords)

    @classmethod
    def from_rational(cls, value, p: int, e: int, prec_p) -> "EisensteinElement":
        return cls.from_scalar(PadicScalar.from_rational(value, p, prec_p), e)

    @classmethod
    def pi_monomial(cls, scalar: PadicScalar, power: int, e: int) -> "EisensteinElement":
        """scalar * pi_e**power, any integer power (reduced via pi**e = -p)."""
        p = scalar.prime
        shift, index = divmod(power, e)
        # pi**(e*shift) = (-p)**shift
        scaled = scalar.shift(shift) if shift % 2 == 0 else (-scalar).shift(shift)
        coords = [PadicScalar.exact_zero(p)] * e
        coords[index] = scaled
        return cls(p, e, coords)

    # -- views ---------------------------------------------------------------

    def pi_precision(self):
        """Absolute precision in pi_e-digits: min over i of e*N_i + i."""
        e = self.ram_index
        out = INFINITY
        for i, c in enumerate(self.coords):
            if c.abs_precision != INFINITY:
                out = min(out, e * c.abs_precision + i)
        return out

    def valuation(self) -> Fraction:
        """Exact valuation in (1/e)Z; raises if not visible at this precision."""
        e = self.ram_index
        best = INFINITY
        floor = INFINITY
        for i, c in enumerate(self.coords):
            if c.unit:
                best = min(best, c.valuation + Fraction(i, e))
            else:
                floor = min(floor, c.valuation_floor() + Fraction(i, e))
        if best == INFINITY:
            if floor == INFINITY:
                return INFINITY
            raise PrecisionError(
                f"element is zero to precision; valuation only known >= {floor}"
            )
        if floor < best:
            raise PrecisionError(
                f"valuation ambiguous: visible term at {best}, precision floor {floor}"
            )
        return best

    def valuation_floor(self):
        """Provable lower bound on the valuation (never raises)."""
        e = self.ram_index
        out = INFINITY
        for i, c in enumerate(self.coords):
            out = min(out, c.valuation_floor() + Fraction(i, e))
        return out

    def is_zero_to_precision(self) -> bool:
        return all(c.unit == 0 for c in self.coords)

    @property
    def is_exact_zero(self) -> bool:
        return all(c.is_exact_zero for c in self.coords)

    def as_padic_scalar(self) -> PadicScalar:
        """Coordinate 0, provided every other coordinate vanishes to precision."""
        for i, c in enumerate(self.coords[1:], start=1):
            if c.unit:
                raise CosetViolationError(
                    f"pi_e**{i} component {c!r} does not cancel"
                )
        return self.coords[0]

    def truncate_pi(self, pi_digits: int) -> "EisensteinElement":
        """Reduce to absolute precision pi_e**pi_digits."""
        e = self.ram_index
        coords = []
        for i, c in enumerate(self.coords):
            # Coordinate i carries pi-precision e*N + i; invert that.
            need = -((i - pi_digits) // e)
            coords.append(c.reduce_abs_precision(need))
        return EisensteinElement(self.prime, e, coords)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "EisensteinElement"):
        if self.prime != other.prime or self.ram_index != other.ram_index:
            raise ValueError("mixed fields")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            other = _embed(other, self)
        if not isinstance(other, EisensteinElement):
            return NotImplemented
        self._check(other)
        return EisensteinElement(
            self.prime,
            self.ram_index,
            [a + b for a, b in zip(self.coords, other.coords)],
        )

    __radd__ = __add__

    def __neg__(self):
        return EisensteinElement(self.prime, self.ram_index, [-c for c in self.coords])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            other = _embed(other, self)
        if not isinstance(other, EisensteinElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            return EisensteinElement(
                self.prime, self.ram_index, [c * other for c in self.coords]
            )
        if not isinstance(other, EisensteinElement):
            return NotImplemented
        self._check(other)
        e = self.ram_index
        p = self.prime
        acc = [PadicScalar.exact_zero(p) for _ in range(e)]
        for i, a in enumerate(self.coords):
            if a.is_exact_zero:
                continue
            for j, b in enumerate(other.coords):
                if b.is_exact_zero:
                    continue
                k = i + j
                term = a * b
                if k >= e:
                    k -= e
                    term = (-term).shift(1)  # pi**e = -p
                acc[k] = acc[k] + term
        return EisensteinElement(p, e, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            return EisensteinElement(
                self.prime, self.ram_index, [c / other for c in self.coords]
            )
        if not isinstance(other, EisensteinElement):
            return NotImplemented
        if self.is_exact_zero:
            if other.is_exact_zero:
                raise ZeroDivisionError("0/0")
            return self
        return self * other.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = EisensteinElement.from_rational(1, self.prime, self.ram_index, INFINITY)
        base = self
        n = exponent
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def mul_pi_power(self, power: int) -> "EisensteinElement":
        """Multiply by pi_e**power exactly (any sign)."""
        e, p = self.ram_index, self.prime
        coords = [PadicScalar.exact_zero(p)] * e
        for i, c in enumerate(self.coords):
            if c.is_exact_zero:
                continue
            shift, index = divmod(i + power, e)
            moved = c.shift(shift)
            if shift % 2:
                moved = -moved
            coords[index] = moved  # distinct i land on distinct indices
        return EisensteinElement(p, e, coords)

    def inverse(self) -> "EisensteinElement":
        """Inverse via the leading monomial and a geometric tail.

        Requires the valuation to be visible at the carried precision; the
        relative precision of the result matches the input.
        """
        v = self.valuation()  # raises PrecisionError when ambiguous
        if v == INFINITY:
            raise ZeroDivisionError("inverting zero")
        e = self.ram_index
        lead_i = None
        for i, c in enumerate(self.coords):
            if c.unit and c.valuation + Fraction(i, e) == v:
                lead_i = i
                break
        lead = self.coords[lead_i]
        # self = lead * pi**lead_i * (1 + z), v(z) > 0
        inv_lead = EisensteinElement.pi_monomial(lead.inverse(), -lead_i, e)
        z = self * inv_lead - 1
        prec = z.pi_precision()
        if prec == INFINITY:
            if z.valuation() == INFINITY:
                return inv_lead  # exact monomial: no tail to sum
            raise PrecisionError("cannot invert an exact non-monomial")
        out = EisensteinElement.from_rational(1, self.prime, e, INFINITY)
        term = EisensteinElement.from_rational(1, self.prime, e, INFINITY)
        floor = z.valuation_floor()
        if floor <= 0:
            raise PrecisionError("tail not contracting; precision too low")
        steps = int(prec / (e * floor)) + 1
        for _ in range(steps):
            term = term * (-z)
            out = out + term
        return out * inv_lead

    # -- comparison ----------------------------------------------------------

    def is_congruent(self, other, pi_digits=None) -> bool:
        diff = self - other if isinstance(other, EisensteinElement) else self - _embed(other, self)
        if pi_digits is None:
            return diff.is_zero_to_precision()
        return diff.valuation_floor() >= Fraction(pi_digits, self.ram_index)

    def __eq__(self, other):
        try:
            return self.is_congruent(other)
        except (ValueError, PrecisionError):
            return NotImplemented

    __hash__ = None

    def __repr__(self):
        bits = []
        for i, c in enumerate(self.coords):
            if c.unit == 0 and not c.is_precision_zero:
                continue
            inner = repr(c)
            if " " in inner:
                inner = f"({inner})"
            bits.append(inner if i == 0 else f"{inner}*pi^{i}" if i > 1 else f"{inner}*pi")
        if not bits:
            return "0" if self.is_exact_zero else f"O(pi^{self.pi_precision()})"
        return " + ".join(bits)


def _embed(value, like: EisensteinElement) -> EisensteinElement:
    if isinstance(value, PadicScalar):
        return EisensteinElement.from_scalar(value, like.ram_index)
    target = INFINITY
    for c in like.coords:
        target = min(target, c.abs_precision)
    if target == INFINITY:
        return EisensteinElement.from_rational(
            value, like.prime, like.ram_index, INFINITY
        )
    return EisensteinElement.from_rational(value, like.prime, like.ram_index, target)
