"""Exact coefficient rings: Z/nZ with canonical residues, and Q.

Scalars are plain Python values (int residues in [0, n) for Z/nZ,
``fractions.Fraction`` for Q), so equality is representational equality
and everything hashes.  Ring objects carry the arithmetic table.
"""

from fractions import Fraction

from .errors import InputError, NotEnumerable


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Zmod:
    """The ring Z/nZ, n >= 2.  Composite moduli are supported."""

    kind = "Zmod"
    enumerable = True

    def __init__(self, n):
        n = int(n)
        if n < 2:
            raise InputError(f"Zmod modulus must be >= 2, got {n}")
        self.n = n
        self.is_field = _is_prime(n)
        self.zero = 0
        self.one = 1 % n

    def coerce(self, v):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise InputError(f"cannot coerce {v} into Z/{self.n}")
            v = v.numerator
        return int(v) % self.n

    def add(self, x, y):
        return (x + y) % self.n

    def sub(self, x, y):
        return (x - y) % self.n

    def mul(self, x, y):
        return (x * y) % self.n

    def neg(self, x):
        return (-x) % self.n

    def inv_opt(self, x):
        """Multiplicative inverse, or None when x is not a unit."""
        try:
            return pow(x % self.n, -1, self.n)
        except ValueError:
            return None

    def scalars(self):
        """All ring elements, ascending.  Deterministic."""
        return range(self.n)

    @property
    def size(self):
        return self.n

    def is_two_torsion_free(self):
        # 2x = 0 with x != 0 happens exactly when n is even (x = n/2).
        return self.n % 2 == 1

    def __eq__(self, other):
        return isinstance(other, Zmod) and other.n == self.n

    def __hash__(self):
        return hash(("Zmod", self.n))

    def __repr__(self):
        return f"Zmod({self.n})"

    def to_json(self):
        return {"kind": "Zmod", "n": self.n}


class Rationals:
    """The field Q with reduced-fraction scalars."""

    kind = "Q"
    enumerable = False
    is_field = True

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coerce(self, v):
        if isinstance(v, str):
            return Fraction(v)
        if isinstance(v, float):
            raise InputError("floating point is not accepted as a rational scalar")
        return Fraction(v)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv_opt(self, x):
        if x == 0:
            return None
        return 1 / x

    def scalars(self):
        raise NotEnumerable("the rationals cannot be enumerated")

    @property
    def size(self):
        return None

    def is_two_torsion_free(self):
        return True

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"

    def to_json(self):
        return {"kind": "Q"}


def parse_ring(obj):
    """Parse {"kind": "Zmod", "n": 3} or {"kind": "Q"}."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError(f"bad ring spec: {obj!r}")
    kind = obj["kind"]
    if kind == "Zmod":
        if "n" not in obj:
            raise InputError("Zmod ring spec needs a modulus 'n'")
        return Zmod(obj["n"])
    if kind == "Q":
        return Rationals()
    raise InputError(f"unknown ring kind {kind!r}")


def parse_ring_flag(text):
    """Parse CLI shorthand like 'zmod:3' or 'q'."""
    t = text.strip().lower()
    if t in ("q", "rationals"):
        return Rationals()
    if t.startswith("zmod:"):
        return Zmod(int(t.split(":", 1)[1]))
    raise InputError(f"cannot parse ring {text!r} (expected 'zmod:N' or 'q')")


def scalar_to_json(ring, x):
    if isinstance(ring, Zmod):
        return int(x)
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_json(ring, v):
    return ring.coerce(v)
