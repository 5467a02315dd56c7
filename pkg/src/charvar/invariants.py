"""Closed-form invariants of free group character varieties X_r(G).

G ranges over the linear families GL(n,C), SL(n,C), U(n), SU(n).  Every
answer is exact: polynomials carry Python ints and groups are reported in
invariant-factor form.
"""

from dataclasses import dataclass
from math import comb, factorial

from .algebra import TRIVIAL, FgAbelianGroup
from .errors import DomainError, InternalError, OutOfRange, UnsupportedFamily
from .polynomial import IntPolynomial

FAMILIES = ("GL", "SL", "U", "SU")


def family(name):
    """Normalize a family name ("gl", "SU", ...); reject anything else."""
    key = str(name).strip().upper()
    if key not in FAMILIES:
        raise UnsupportedFamily(f"unsupported group family {name!r}; "
                                f"expected one of {', '.join(FAMILIES)}")
    return key


def _check_nr(n, r):
    if n < 1 or r < 1:
        raise DomainError("n and r must be at least 1")


# -- Poincare polynomials for SU(2) -------------------------------------

def _binomial_power(r, step, sign=1):
    """(1 + sign*t^step)^r expanded with exact binomial coefficients."""
    return IntPolynomial.from_terms({step * k: comb(r, k) * sign ** k
                                     for k in range(r + 1)})


def baird_components(r):
    """The polynomials f_r, h_r and Q = t^2 f_r - h_r."""
    if r < 1:
        raise DomainError("r must be at least 1")
    plus = _binomial_power(r, 1) * IntPolynomial([1, 0, 1])
    minus = _binomial_power(r, 1, -1) * IntPolynomial([1, 0, -1])
    f = (plus - minus).halve()
    h = _binomial_power(r, 3)
    q = IntPolynomial.monomial(2) * f - h
    return {"f": f, "h": h, "Q": q}


ONE_MINUS_T4 = IntPolynomial([1, 0, 0, 0, -1])


def _poincare_rational(r):
    q = baird_components(r)["Q"]
    return IntPolynomial([1, 1]) + (IntPolynomial.monomial(1) * q).exact_div(ONE_MINUS_T4)


def _poincare_series(r):
    if r < 1:
        raise DomainError("r must be at least 1")
    terms = {0: 1}
    k = 1
    while 2 * k + 1 <= r:
        odd, even = comb(r, 2 * k + 1), comb(r, 2 * k + 2)
        for d in range(0, 4 * k, 4):
            terms[2 * k + 4 + d] = terms.get(2 * k + 4 + d, 0) + odd
            if even:
                terms[2 * k + 7 + d] = terms.get(2 * k + 7 + d, 0) + even
        k += 1
    return IntPolynomial.from_terms(terms)


def poincare_su2(r, method="both"):
    """Poincare polynomial of X_r(SU(2)).

    ``rational`` divides t*Q by 1 - t^4 exactly, ``series`` sums the two
    finite binomial series, ``both`` computes both and insists they agree.
    """
    if method not in ("rational", "series", "both"):
        raise ValueError(f"unknown method {method!r}")
    if r < 1:
        raise DomainError("r must be at least 1")
    p = _poincare_rational(r) if method != "series" else _poincare_series(r)
    if method == "both" and p != _poincare_series(r):
        raise InternalError(f"rational and series forms disagree for r={r}")
    if any(c < 0 for c in p.coeffs):
        raise InternalError("negative Betti number")
    return p


def degree_and_top(r):
    if r < 3:
        raise DomainError("degree law is stated for r >= 3")
    p = poincare_su2(r)
    n = 3 * r - 3
    if p.degree != n or p.leading != 1:
        raise InternalError(f"degree/top coefficient law fails at r={r}")
    return n, p.leading


@dataclass(frozen=True)
class DualityReport:
    r: int
    m: int
    mismatches: tuple     # (k, b_k, b_{m-k}) for k <= m/2

    @property
    def satisfies_duality(self):
        return not self.mismatches

    def to_json(self):
        return {"r": self.r, "m": self.m,
                "mismatches": [[k, str(a), str(b)] for k, a, b in self.mismatches]}


def duality_check(r):
    """Compare b_k against b_{m-k}, m = 3r - 3, for the SU(2) polynomial."""
    if r < 3:
        raise DomainError("duality check is stated for r >= 3")
    p = poincare_su2(r)
    m = 3 * r - 3
    bad = tuple((k, p[k], p[m - k]) for k in range(m // 2 + 1) if p[k] != p[m - k])
    return DualityReport(r, m, bad)


# -- homotopy groups ----------------------------------------------------

GROUP, FINITE_UNKNOWN, OUT_OF_RANGE = "GROUP", "FINITE_UNKNOWN", "OUT_OF_RANGE"


@dataclass(frozen=True)
class HomotopyAnswer:
    kind: str
    group: FgAbelianGroup = None
    range_note: str = ""

    def to_json(self):
        out = {"kind": self.kind, "range_note": self.range_note}
        if self.group is not None:
            out.update(self.group.to_json())
        return out

    def __str__(self):
        return str(self.group) if self.kind == GROUP else self.kind


def pi1_charvar(fam, n, r):
    """pi_1 of the whole character variety: Z^r for GL/U, trivial for SL/SU."""
    fam = family(fam)
    _check_nr(n, r)
    return FgAbelianGroup(r) if fam in ("GL", "U") else TRIVIAL


def pi1_irr_in_range(n, r):
    return r >= 3 or (r >= 2 and n - 1 >= 2)


def pi1_irr(fam, n, r):
    """pi_1 of the irreducible locus, which equals pi_1(G)^r for these groups."""
    fam = family(fam)
    _check_nr(n, r)
    if not pi1_irr_in_range(n, r):
        raise OutOfRange(f"needs r >= 3, or r >= 2 and rank(DG) = n-1 >= 2 "
                         f"(got n={n}, r={r})")
    return FgAbelianGroup(r) if fam in ("GL", "U") else TRIVIAL


def periodicity_window(n, r):
    """Exclusive upper bound 2(r-1)(n-1) - 1 on k."""
    return 2 * (r - 1) * (n - 1) - 1


def pi_k_irr(fam, n, r, k):
    """pi_k of the irreducible locus in the stable window 1 < k < 2(r-1)(n-1)-1."""
    fam = family(fam)
    _check_nr(n, r)
    w = periodicity_window(n, r)
    note = f"valid for 1 < k < {w}" if (r - 1) * (n - 1) >= 2 else \
        "needs (r-1)(n-1) >= 2"
    if fam in ("GL", "U"):
        note += f"; k >= 2 answer taken from {'SL' if fam == 'GL' else 'SU'}({n})"
    if (r - 1) * (n - 1) < 2 or not 1 < k < w:
        return HomotopyAnswer(OUT_OF_RANGE, None, note)
    if k == 2:
        g = FgAbelianGroup.from_orders(0, [n])
    elif k < 2 * n and k % 2:
        g = FgAbelianGroup(r)
    elif k < 2 * n:
        g = FgAbelianGroup(1)
    elif k == 2 * n:
        g = FgAbelianGroup.from_orders(1, [factorial(n)] * r)
    else:
        return HomotopyAnswer(FINITE_UNKNOWN, None, note + f"; finite for {2 * n} < k < {w}")
    return HomotopyAnswer(GROUP, g, note)


def pi2_full(fam, n, r):
    family(fam)
    _check_nr(n, r)
    return TRIVIAL


def h2_full(fam, n, r):
    """H_2 with integer coefficients where it follows from pi_2 = 0.

    For SL/SU the variety is simply connected, so Hurewicz gives H_2 = 0.
    GL/U are not simply connected and None is returned.
    """
    fam = family(fam)
    _check_nr(n, r)
    return TRIVIAL if fam in ("SL", "SU") else None


def codim_bounds(fam, n, r, dim_g=None, dim_pmax=None):
    """Codimension facts for the reducible and singular loci.

    ``singular`` is None where no value is known (r == 1, n == 1, or the
    compact (2, 2) cases).  ``general_bound`` evaluates
    (r-1)(dim G - dim P_max) when both dimensions are given.
    """
    fam = family(fam)
    _check_nr(n, r)
    out = {
        "reducible_lower_complex": (r - 1) * (n - 1),
        "reducible_lower_real": 2 * (r - 1) * (n - 1),
        "singular": None,
        "general_bound": None,
    }
    if (r >= 2 and n >= 3) or (r >= 3 and n >= 2):
        out["singular"] = 2 * (n - 1) * (r - 1) - 1
    elif (n, r) == (2, 2) and fam in ("GL", "SL"):
        out["singular"] = 5 if fam == "GL" else 3
    if dim_g is not None and dim_pmax is not None:
        out["general_bound"] = (r - 1) * (dim_g - dim_pmax)
    return out
