"""Truncated Laurent series in q over exact or mod-11^K integer coefficients.

Every series carries an explicit trusted precision: coefficients are
meaningful only for exponents strictly below ``prec``. All operations
propagate precision pessimistically and refuse to report coefficients
outside the trusted window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2


class RingMismatchError(TypeError):
    """Operands live over different coefficient rings."""


class NonUnitError(ArithmeticError):
    """Leading coefficient is not invertible in the coefficient ring."""


class PrecisionError(LookupError):
    """A coefficient beyond the trusted precision window was requested."""


class IntegralityError(ValueError):
    """The eta prefactor exponent sum is not divisible by 24."""


class ExactIntegers:
    """Arbitrary-precision integer coefficients."""

    kind = "exact"
    modulus = None
    valuation_cap = None

    def normalize(self, x: int) -> int:
        return x

    def normalize_vec(self, xs) -> list:
        return list(xs)

    def is_unit(self, x: int) -> bool:
        return x == 1 or x == -1

    def inv_unit(self, x: int) -> int:
        if x == 1 or x == -1:
            return x
        raise NonUnitError(f"{x} is not a unit over the integers")

    def valuation(self, x: int):
        """Largest e with 11^e | x; math.inf for zero."""
        if x == 0:
            return math.inf
        e = 0
        while x % 11 == 0:
            x //= 11
            e += 1
        return e

    def __eq__(self, other):
        return isinstance(other, ExactIntegers)

    def __hash__(self):
        return hash(ExactIntegers)

    def __repr__(self):
        return "ExactIntegers()"


class Mod11Power:
    """Coefficients in Z/11^K. Valuations are only meaningful up to K:
    a zero residue reports K, read as "at least K"."""

    kind = "mod-11^K"

    def __init__(self, K: int):
        if K < 1:
            raise ValueError("K must be at least 1")
        self.K = K
        self.modulus = 11**K
        self.valuation_cap = K

    def normalize(self, x: int) -> int:
        return x % self.modulus

    def normalize_vec(self, xs) -> list:
        m = self.modulus
        return [x % m for x in xs]

    def is_unit(self, x: int) -> bool:
        return x % 11 != 0

    def inv_unit(self, x: int) -> int:
        x %= self.modulus
        if x % 11 == 0:
            raise NonUnitError(f"{x} is divisible by 11, not a unit mod 11^{self.K}")
        return pow(x, -1, self.modulus)

    def valuation(self, x: int) -> int:
        x %= self.modulus
        if x == 0:
            return self.K
        e = 0
        while x % 11 == 0:
            x //= 11
            e += 1
        return e

    def __eq__(self, other):
        return isinstance(other, Mod11Power) and other.K == self.K

    def __hash__(self):
        return hash((Mod11Power, self.K))

    def __repr__(self):
        return f"Mod11Power(K={self.K})"


# Below this product size the plain double loop beats packing into big ints.
_SCHOOLBOOK_CUTOFF = 4096


def _poly_mul(a: list, b: list, n_out: int, ring) -> list:
    """First n_out coefficients of the polynomial product a*b.

    Dispatches between a schoolbook loop and Kronecker substitution (pack the
    coefficients into one big integer per operand, multiply once in GMP,
    unpack). Result length is min(n_out, len(a)+len(b)-1); trailing zero
    coefficients are implied, never stored here.
    """
    la, lb = min(len(a), n_out), min(len(b), n_out)
    a = a[:la]
    b = b[:lb]
    if la == 0 or lb == 0:
        return []
    if la * lb <= _SCHOOLBOOK_CUTOFF:
        out = [0] * min(n_out, la + lb - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            hi = min(lb, n_out - i)
            for j in range(hi):
                out[i + j] += x * b[j]
        if ring.modulus is not None:
            m = ring.modulus
            out = [c % m for c in out]
        return out
    if ring.modulus is not None:
        return _kron_mod(a, b, n_out, ring.modulus)
    return _kron_signed(a, b, n_out)


def _kron_mod(a, b, n_out, modulus):
    # coefficients are normalized residues, so the packed limbs never exceed
    # min(la,lb) * (modulus-1)^2
    T = min(len(a), len(b))
    bound = (modulus - 1) * (modulus - 1) * T + 1
    bits = bound.bit_length() + 1
    Z = gmpy2.pack(a, bits) * gmpy2.pack(b, bits)
    limbs = gmpy2.unpack(Z, bits)
    n = min(n_out, len(a) + len(b) - 1)
    out = [int(x) % modulus for x in limbs[:n]]
    out += [0] * (n - len(out))
    return out


def _kron_signed(a, b, n_out):
    # split into positive and negative parts so pack sees nonnegative limbs;
    # unpack with a half-range bias per limb to recover signed coefficients
    T = min(len(a), len(b))
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    bound = ma * mb * T + 1
    bits = bound.bit_length() + 2
    Apos = gmpy2.pack([x if x > 0 else 0 for x in a], bits)
    Aneg = gmpy2.pack([-x if x < 0 else 0 for x in a], bits)
    Bpos = gmpy2.pack([x if x > 0 else 0 for x in b], bits)
    Bneg = gmpy2.pack([-x if x < 0 else 0 for x in b], bits)
    Z = (Apos - Aneg) * (Bpos - Bneg)
    ntot = len(a) + len(b) - 1
    half = 1 << (bits - 1)
    bias = ((gmpy2.mpz(1) << (bits * ntot)) - 1) // ((1 << bits) - 1) * half
    limbs = gmpy2.unpack(Z + bias, bits)
    n = min(n_out, ntot)
    out = [int(x) - half for x in limbs[:n]]
    out += [0] * (n - len(out))
    return out


def _poly_inv(a: list, n_out: int, ring) -> list:
    """First n_out coefficients of 1/a(q) by Newton iteration g <- g(2 - ag).

    a[0] must be a unit. Doubling precision per step costs about four
    full-size multiplications in total.
    """
    g = [ring.inv_unit(a[0])]
    k = 1
    mod = ring.modulus
    while k < n_out:
        k = min(2 * k, n_out)
        ag = _poly_mul(a[:k], g, k, ring)
        if mod is not None:
            h = [(-c) % mod for c in ag]
            h[0] = (2 + h[0]) % mod
        else:
            h = [-c for c in ag]
            h[0] = 2 + h[0]
        g = _poly_mul(g, h, k, ring)
        g += [0] * (k - len(g))
    return g[:n_out]


class QSeries:
    """Truncated Laurent series: coeffs[i] holds the coefficient of
    q^(offset+i), trusted for exponents < prec. The canonical zero stores no
    coefficients and has offset == prec. Instances are treated as immutable."""

    __slots__ = ("ring", "offset", "coeffs", "prec")

    def __init__(self, ring, offset: int, coeffs, prec: int):
        coeffs = ring.normalize_vec(coeffs)
        if len(coeffs) != prec - offset:
            raise ValueError(
                f"coefficient vector length {len(coeffs)} does not match "
                f"window [{offset}, {prec})"
            )
        self.ring = ring
        self._store(offset, coeffs, prec)

    @classmethod
    def _raw(cls, ring, offset, coeffs, prec):
        # internal fast path: coefficients already normalized in the ring
        self = object.__new__(cls)
        self.ring = ring
        self._store(offset, coeffs, prec)
        return self

    def _store(self, offset, coeffs, prec):
        lead = 0
        n = len(coeffs)
        while lead < n and coeffs[lead] == 0:
            lead += 1
        if lead:
            offset += lead
            coeffs = coeffs[lead:]
        if not coeffs:
            offset = prec
        self.offset = offset
        self.coeffs = coeffs
        self.prec = prec

    # ---- constructors ----

    @classmethod
    def zero(cls, ring, prec: int) -> "QSeries":
        return cls._raw(ring, prec, [], prec)

    @classmethod
    def monomial(cls, ring, exp: int, prec: int, coeff=1) -> "QSeries":
        if exp >= prec:
            return cls.zero(ring, prec)
        return cls(ring, exp, [coeff] + [0] * (prec - exp - 1), prec)

    @classmethod
    def one(cls, ring, prec: int) -> "QSeries":
        return cls.monomial(ring, 0, prec)

    @classmethod
    def from_terms(cls, ring, terms: dict, prec: int) -> "QSeries":
        """Series with the given exponent -> coefficient terms, zero elsewhere
        below prec. Terms at exponents >= prec are rejected."""
        live = {e: c for e, c in terms.items() if c != 0}
        if not live:
            return cls.zero(ring, prec)
        lo = min(live)
        if max(live) >= prec:
            raise PrecisionError("term exponent at or beyond requested precision")
        coeffs = [0] * (prec - lo)
        for e, c in live.items():
            coeffs[e - lo] = c
        return cls(ring, lo, coeffs, prec)

    # ---- inspection ----

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def order(self):
        """Exponent of the first nonzero coefficient; +inf for the zero series."""
        return math.inf if not self.coeffs else self.offset

    def coeff(self, n: int):
        if n >= self.prec:
            raise PrecisionError(
                f"coefficient of q^{n} requested but precision ends at {self.prec}"
            )
        if n < self.offset:
            return 0
        return self.coeffs[n - self.offset]

    def coeff_range(self, start: int, stop: int) -> list:
        """Coefficients of q^start .. q^(stop-1) as a dense list."""
        if stop > self.prec:
            raise PrecisionError(
                f"window [{start}, {stop}) exceeds precision {self.prec}"
            )
        out = []
        for n in range(start, stop):
            out.append(self.coeffs[n - self.offset] if n >= self.offset else 0)
        return out

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.offset == other.offset
            and self.prec == other.prec
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs[:6]):
            if c:
                terms.append(f"{c}*q^{self.offset + i}")
        body = " + ".join(terms) if terms else "0"
        if len(self.coeffs) > 6:
            body += " + ..."
        return f"QSeries({body}; prec={self.prec}, {self.ring!r})"

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    # ---- arithmetic ----

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check_ring(other)
        prec = min(self.prec, other.prec)
        offset = min(self.offset, other.offset, prec)
        out = [0] * (prec - offset)
        for i, c in enumerate(self.coeffs):
            j = self.offset + i - offset
            if 0 <= j < len(out):
                out[j] = c
        for i, c in enumerate(other.coeffs):
            j = other.offset + i - offset
            if 0 <= j < len(out):
                out[j] += c
        return QSeries(self.ring, offset, out, prec)

    def __neg__(self) -> "QSeries":
        return QSeries._raw(
            self.ring,
            self.offset,
            self.ring.normalize_vec([-c for c in self.coeffs]),
            self.prec,
        )

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def mul(self, other: "QSeries") -> "QSeries":
        """Product; precision is min(a.prec + b.offset, b.prec + a.offset).

        The rule is what the unknown tails force: unknown coefficients of one
        factor (at exponents >= prec) first touch the product at that bound
        plus the other factor's leading exponent.
        """
        self._check_ring(other)
        prec = min(self.prec + other.offset, other.prec + self.offset)
        if not self.coeffs or not other.coeffs:
            return QSeries.zero(self.ring, prec)
        offset = self.offset + other.offset
        n_out = prec - offset
        if n_out <= 0:
            return QSeries.zero(self.ring, prec)
        cs = _poly_mul(self.coeffs, other.coeffs, n_out, self.ring)
        cs += [0] * (n_out - len(cs))
        return QSeries._raw(self.ring, offset, cs, prec)

    __mul__ = mul

    def inv(self) -> "QSeries":
        """Reciprocal series; requires a unit leading coefficient.

        Stripping the leading q^offset costs trusted terms twice over, so the
        result precision is prec - 2*offset.
        """
        if not self.coeffs:
            raise NonUnitError("the zero series has no reciprocal")
        if not self.ring.is_unit(self.coeffs[0]):
            raise NonUnitError(
                f"leading coefficient {self.coeffs[0]} is not a unit in {self.ring!r}"
            )
        n_out = self.prec - self.offset
        g = _poly_inv(self.coeffs, n_out, self.ring)
        return QSeries._raw(self.ring, -self.offset, g, n_out - self.offset)

    def int_pow(self, e: int) -> "QSeries":
        """a**e by square and multiply; negative e inverts first."""
        if e == 0:
            if not self.coeffs:
                return QSeries.one(self.ring, self.prec)
            return QSeries.one(self.ring, self.prec - self.offset)
        if e < 0:
            return self.inv().int_pow(-e)
        result = None
        base = self
        k = e
        while k:
            if k & 1:
                result = base if result is None else result.mul(base)
            k >>= 1
            if k:
                base = base.mul(base)
        return result

    __pow__ = int_pow

    def u_p(self, p: int) -> "QSeries":
        """Keep only exponents divisible by p and divide them by p.

        Output precision floor((prec-1)/p) + 1 is the largest T such that
        every kept exponent n < T has its preimage p*n inside the window.
        """
        if p < 2:
            raise ValueError("p must be at least 2")
        new_prec = (self.prec - 1) // p + 1
        if not self.coeffs:
            return QSeries.zero(self.ring, new_prec)
        n_min = -((-self.offset) // p)
        if n_min >= new_prec:
            return QSeries.zero(self.ring, new_prec)
        out = [self.coeffs[p * n - self.offset] for n in range(n_min, new_prec)]
        return QSeries._raw(self.ring, n_min, out, new_prec)

    def dilate(self, p: int) -> "QSeries":
        """Substitute q -> q^p; offset and precision both scale by p."""
        if p < 1:
            raise ValueError("p must be at least 1")
        if p == 1:
            return self
        new_prec = self.prec * p
        if not self.coeffs:
            return QSeries.zero(self.ring, new_prec)
        new_offset = self.offset * p
        out = [0] * (new_prec - new_offset)
        for i, c in enumerate(self.coeffs):
            out[i * p] = c
        return QSeries._raw(self.ring, new_offset, out, new_prec)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k (exact monomial, so precision shifts along)."""
        if k == 0:
            return self
        return QSeries._raw(self.ring, self.offset + k, self.coeffs, self.prec + k)


def equal_on_common_window(a: QSeries, b: QSeries) -> bool:
    """Coefficientwise equality over the exponents both series trust."""
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring!r} vs {b.ring!r}")
    stop = min(a.prec, b.prec)
    start = min(a.offset, b.offset, stop)
    return a.coeff_range(start, stop) == b.coeff_range(start, stop)


def euler_product(s: int, prec: int, ring) -> QSeries:
    """prod_{n>=1} (1 - q^{s n}) truncated below prec.

    Expanded by the pentagonal number theorem: the only surviving terms are
    (-1)^k q^{s k(3k-1)/2} and (-1)^k q^{s k(3k+1)/2}, about 2*sqrt(2N/3)
    of them, so construction is effectively free compared to multiplication.
    """
    if s < 1:
        raise ValueError("scale must be positive")
    if prec < 1:
        raise ValueError("precision must be at least 1")
    coeffs = [0] * prec
    coeffs[0] = 1
    k = 1
    while True:
        g1 = s * (k * (3 * k - 1) // 2)
        if g1 >= prec:
            break
        sign = -1 if k % 2 else 1
        coeffs[g1] = sign
        g2 = s * (k * (3 * k + 1) // 2)
        if g2 < prec:
            coeffs[g2] = sign
        k += 1
    return QSeries(ring, 0, coeffs, prec)


@dataclass
class EtaQuotientSpec:
    """A finite product of factors prod_{n>=1}(1 - q^{s n})^{e_s}, optionally
    multiplied by the fractional-exponent prefactor q^{sum(s*e_s)/24}."""

    factors: dict
    include_eta_prefactor: bool = False

    def __post_init__(self):
        for s, e in self.factors.items():
            if not isinstance(s, int) or s < 1:
                raise ValueError(f"scale {s!r} must be a positive integer")
            if not isinstance(e, int):
                raise ValueError(f"exponent {e!r} for scale {s} must be an integer")

    def prefactor_exponent(self) -> int:
        weighted = sum(s * e for s, e in self.factors.items())
        if weighted % 24 != 0:
            raise IntegralityError(
                f"sum of scale*exponent is {weighted}, not divisible by 24"
            )
        return weighted // 24


def eta_quotient(spec: EtaQuotientSpec, prec: int, ring) -> QSeries:
    """Expand the product described by spec, trusted below prec.

    Positive exponents multiply in directly; negative exponents are collected
    into one denominator which is inverted once (Newton), since inversions
    dominate the cost at tower precisions.
    """
    shift = spec.prefactor_exponent() if spec.include_eta_prefactor else 0
    window = prec - shift
    if window < 1:
        return QSeries.zero(ring, prec)
    num = QSeries.one(ring, window)
    den = None
    for s in sorted(spec.factors):
        e = spec.factors[s]
        if e == 0:
            continue
        base = euler_product(s, window, ring)
        if e > 0:
            num = num.mul(base.int_pow(e))
        else:
            piece = base.int_pow(-e)
            den = piece if den is None else den.mul(piece)
    out = num if den is None else num.mul(den.inv())
    return out.shift(shift)
