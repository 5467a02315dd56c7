"""Dense polynomials in one variable with exact integer coefficients."""

from .errors import InternalError


class IntPolynomial:
    """Coefficients stored low degree first, with no trailing zeros.

    The zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree, c=1):
        return cls([0] * degree + [c])

    @classmethod
    def from_terms(cls, terms):
        """Build from a mapping {degree: coefficient}."""
        if not terms:
            return cls()
        cs = [0] * (max(terms) + 1)
        for d, c in terms.items():
            cs[d] += c
        return cls(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _lift(self, other):
        return IntPolynomial([other]) if isinstance(other, int) else other

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result, base = IntPolynomial([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other):
        """Division with remainder by a polynomial with leading coefficient +-1."""
        if other.leading not in (1, -1):
            raise ValueError("divisor must be monic up to sign")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return IntPolynomial(), self
        quot = [0] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return IntPolynomial(quot), IntPolynomial(rem)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r.coeffs:
            raise InternalError(f"inexact division, remainder {r}")
        return q

    def halve(self):
        if any(c % 2 for c in self.coeffs):
            raise InternalError("halving a polynomial with an odd coefficient")
        return IntPolynomial(c // 2 for c in self.coeffs)

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def to_json(self):
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(int(c) for c in data["coeffs"])

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "t" if d == 1 else f"t^{d}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append((c < 0, body))
        neg, body = parts[0]
        out = ("-" if neg else "") + body
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


T = IntPolynomial([0, 1])
ONE = IntPolynomial([1])
