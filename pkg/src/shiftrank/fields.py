"""Exact scalar fields: arbitrary-precision rationals and prime fields F_p.

Field elements are plain values supporting Python arithmetic operators:
``fractions.Fraction`` for the rationals and :class:`ModInt` for prime
fields.  A :class:`Field` object is the factory/metadata handle that the
rest of the library threads around; it never appears inside hot loops.

Serialization convention: rationals render as ``"p/q"`` (``"/q"`` omitted
when the denominator is 1), prime-field values as ``"r mod p"``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadConfig, DivisionByZero

_PRIME_BOUND = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class ModInt:
    """Residue in F_p with operator arithmetic; instances are immutable."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "value", value % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("ModInt is immutable")

    def _coerce(self, other) -> "ModInt":
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise BadConfig(f"mixing F_{self.p} with F_{other.p}")
            return other
        if isinstance(other, int):
            return ModInt(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ModInt(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ModInt(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ModInt(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ModInt(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.value == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return ModInt(self.value * pow(o.value, self.p - 2, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.value, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return (ModInt(1, self.p) / self) ** (-k)
        return ModInt(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"ModInt({self.value}, {self.p})"


class Field:
    """Common interface of the two concrete scalar fields."""

    name: str

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, fr: Fraction):
        raise NotImplementedError

    def render(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, fr: Fraction) -> Fraction:
        return fr

    def render(self, x: Fraction) -> str:
        return render_rational(x)

    def parse(self, text: str) -> Fraction:
        return parse_rational(text)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    """F_p for a prime p < 2^31 (residues stay in native machine words)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise BadConfig(f"{p} is not prime")
        if p >= _PRIME_BOUND:
            raise BadConfig(f"prime {p} exceeds the 2^31 bound")
        self.p = p
        self.name = f"F{p}"
        self.characteristic = p
        self.zero = ModInt(0, p)
        self.one = ModInt(1, p)

    def from_int(self, n: int) -> ModInt:
        return ModInt(n, self.p)

    def from_fraction(self, fr: Fraction) -> ModInt:
        den = fr.denominator % self.p
        if den == 0:
            raise DivisionByZero(f"denominator {fr.denominator} vanishes in F_{self.p}")
        return ModInt(fr.numerator * pow(den, self.p - 2, self.p), self.p)

    def render(self, x: ModInt) -> str:
        return f"{x.value} mod {self.p}"

    def parse(self, text: str) -> ModInt:
        text = text.strip()
        if text.endswith(f"mod {self.p}"):
            text = text[: -len(f"mod {self.p}")].strip()
        return self.from_fraction(parse_rational(text))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


QQ = RationalField()


def render_rational(fr: Fraction) -> str:
    if fr.denominator == 1:
        return str(fr.numerator)
    return f"{fr.numerator}/{fr.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        d = int(den)
        if d == 0:
            raise DivisionByZero(f"zero denominator in {text!r}")
        return Fraction(int(num), d)
    return Fraction(int(text))


def field_from_spec(spec: str) -> Field:
    """Parse a field spec string: ``"q"`` or ``"f:<prime>"``."""
    s = spec.strip().lower()
    if s == "q":
        return QQ
    if s.startswith("f:"):
        try:
            p = int(s[2:])
        except ValueError as exc:
            raise BadConfig(f"bad field spec {spec!r}") from exc
        return PrimeField(p)
    raise BadConfig(f"bad field spec {spec!r} (expected 'q' or 'f:<prime>')")
