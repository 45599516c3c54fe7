"""Exact sparse Laurent polynomials in one and two variables, plus Gaussian integers.

One-variable polynomials carry a variable tag (``t``, ``q`` or ``A``) and store
exponents doubled so that half-integer powers of ``t`` (which occur in Jones
polynomials of even-component links) stay integer keys.  Coefficients are
arbitrary-precision integers throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from .errors import VariableMismatch


@dataclass(frozen=True)
class GaussianInt:
    """A Gaussian integer re + im*i with exact integer parts."""

    re: int
    im: int = 0

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def norm(self) -> int:
        """The multiplicative norm re^2 + im^2."""
        return self.re * self.re + self.im * self.im

    def abs_int(self) -> int:
        """Absolute value, defined when the value is purely real or imaginary."""
        if self.re == 0:
            return abs(self.im)
        if self.im == 0:
            return abs(self.re)
        raise ValueError(f"{self} is neither real nor purely imaginary")

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = GaussianInt(0, 1)
MINUS_I = GaussianInt(0, -1)

_I_POWERS = (GaussianInt(1), GaussianInt(0, 1), GaussianInt(-1), GaussianInt(0, -1))


def i_power(e: int) -> GaussianInt:
    """i**e for any integer e."""
    return _I_POWERS[e % 4]


class LaurentPoly:
    """Sparse one-variable Laurent polynomial with half-integer exponents.

    Exponents are stored doubled (`terms[2*e] = coeff`), so a term t^(5/2)
    has key 5.  The variable tag guards against mixing t, q = t^(1/2) and the
    bracket variable A.
    """

    __slots__ = ("var", "terms")

    def __init__(self, var: str, terms: Dict[int, int] | None = None):
        if var not in ("t", "q", "A"):
            raise VariableMismatch(f"unknown variable tag {var!r}")
        self.var = var
        self.terms: Dict[int, int] = {}
        if terms:
            for e2, c in terms.items():
                if c:
                    self.terms[e2] = self.terms.get(e2, 0) + c
            self.terms = {e: c for e, c in self.terms.items() if c}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, var: str) -> "LaurentPoly":
        return cls(var)

    @classmethod
    def const(cls, var: str, c: int) -> "LaurentPoly":
        return cls(var, {0: c})

    @classmethod
    def monomial(cls, var: str, exponent: int | Fraction, coeff: int = 1) -> "LaurentPoly":
        """coeff * var**exponent; exponent may be a Fraction with denominator 2."""
        e2 = Fraction(exponent) * 2
        if e2.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a half-integer")
        return cls(var, {int(e2): coeff})

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.var != other.var:
            raise VariableMismatch(f"cannot combine {self.var!r} with {other.var!r}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(self.var, terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.var, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms: Dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly(self.var, terms)

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly(self.var, {e: c * v for e, v in self.terms.items()})

    def shift(self, exponent: int | Fraction) -> "LaurentPoly":
        """Multiply by var**exponent."""
        e2 = Fraction(exponent) * 2
        if e2.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a half-integer")
        d = int(e2)
        return LaurentPoly(self.var, {e + d: c for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        out = LaurentPoly.const(self.var, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.var == other.var
            and self.terms == other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- conversions -------------------------------------------------------

    def retag(self, var: str, exponent_scale: Fraction) -> "LaurentPoly":
        """Substitute self's variable by var**exponent_scale (an exact monomial map)."""
        terms: Dict[int, int] = {}
        for e2, c in self.terms.items():
            new = Fraction(e2) * exponent_scale
            if new.denominator != 1:
                raise ValueError(
                    f"substitution produces non-half-integer exponent from key {e2}"
                )
            terms[int(new)] = terms.get(int(new), 0) + c
        return LaurentPoly(var, terms)

    def subst_negate(self) -> "LaurentPoly":
        """Substitute var -> -var (requires integer exponents)."""
        terms = {}
        for e2, c in self.terms.items():
            if e2 % 2:
                raise ValueError("var -> -var needs integer exponents")
            terms[e2] = c if (e2 // 2) % 2 == 0 else -c
        return LaurentPoly(self.var, terms)

    def eval_int(self, x: int) -> int:
        """Evaluate at an integer point (requires integer, nonnegative-or-unit base)."""
        total = 0
        for e2, c in self.terms.items():
            if e2 % 2:
                raise ValueError("evaluation needs integer exponents")
            e = e2 // 2
            if e < 0:
                if x in (1, -1):
                    total += c * (x ** (-e))
                    continue
                raise ValueError("negative exponent at non-unit point")
            total += c * (x ** e)
        return total

    # -- rendering ---------------------------------------------------------

    def sorted_terms(self) -> Iterable[Tuple[int, int]]:
        return sorted(self.terms.items())

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.var!r}, {self.terms!r})"


def eval_gaussian(p: LaurentPoly) -> GaussianInt:
    """Evaluate a q-polynomial at q = -i exactly.

    Since q = t^(1/2), this is the substitution t^(1/2) = -i.
    """
    if p.var != "q":
        raise VariableMismatch(f"eval_gaussian expects a q-polynomial, got {p.var!r}")
    total = GaussianInt(0)
    for e2, c in p.terms.items():
        if e2 % 2:
            raise ValueError("q-polynomial with non-integer exponent")
        e = e2 // 2
        total = total + GaussianInt(c) * i_power(-e)  # (-i)^e == i^(-e)
    return total


def _exp_str(e2: int) -> str:
    if e2 % 2 == 0:
        return str(e2 // 2)
    return f"({e2}/2)"


def render_poly(p: LaurentPoly, var: str | None = None) -> str:
    """Render with terms sorted by ascending exponent, e.g. ``-t^(1/2)-t^(5/2)``.

    ``var`` may be ``"t"`` to display a q-polynomial in the t variable
    (q = t^(1/2), so q-exponents are halved).
    """
    display = var or p.var
    items = p.sorted_terms()
    if display == "t" and p.var == "q":
        scale = Fraction(1, 2)  # doubled-q exponent -> doubled-t exponent
    elif display == p.var:
        scale = Fraction(1)
    else:
        raise VariableMismatch(f"cannot render {p.var!r} as {display!r}")

    if not p.terms:
        return "0"
    parts = []
    for e2, c in items:
        e2_shown = Fraction(e2) * scale
        if e2_shown.denominator != 1:
            raise ValueError("non-half-integer exponent in rendering")
        e2_int = e2_shown.numerator
        mag = abs(c)
        if e2_int == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else str(mag) + "*"
            power = "" if e2_int == 2 else f"^{_exp_str(e2_int)}"
            body = f"{head}{display}{power}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts)


def parse_poly(text: str, var: str) -> LaurentPoly:
    """Parse the output grammar of :func:`render_poly` (in the same variable)."""
    s = text.replace(" ", "").replace("**", "^")
    if s in ("", "0"):
        return LaurentPoly.zero(var)
    out: Dict[int, int] = {}
    i = 0
    n = len(s)
    while i < n:
        sign = 1
        while i < n and s[i] in "+-":
            if s[i] == "-":
                sign = -sign
            i += 1
        j = i
        while j < n and s[j].isdigit():
            j += 1
        coeff = int(s[i:j]) if j > i else 1
        i = j
        if i < n and s[i] == "*":
            i += 1
        e2 = 0
        if i < n and s[i] == var:
            i += 1
            e2 = 2
            if i < n and s[i] == "^":
                i += 1
                if i < n and s[i] == "(":
                    j = s.index(")", i)
                    num, den = s[i + 1 : j].split("/")
                    if int(den) != 2:
                        raise ValueError(f"unsupported exponent denominator in {text!r}")
                    e2 = int(num)
                    i = j + 1
                else:
                    j = i
                    if j < n and s[j] == "-":
                        j += 1
                    while j < n and s[j].isdigit():
                        j += 1
                    e2 = 2 * int(s[i:j])
                    i = j
        out[e2] = out.get(e2, 0) + sign * coeff
    return LaurentPoly(var, out)


class BiLaurent:
    """Sparse two-variable Laurent polynomial with integer exponents."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Tuple[int, int], int] | None = None):
        self.terms: Dict[Tuple[int, int], int] = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = self.terms.get(k, 0) + c
            self.terms = {k: c for k, c in self.terms.items() if c}

    @classmethod
    def zero(cls) -> "BiLaurent":
        return cls()

    @classmethod
    def const(cls, c: int) -> "BiLaurent":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, ex: int, ey: int, coeff: int = 1) -> "BiLaurent":
        return cls({(ex, ey): coeff})

    @classmethod
    def x(cls) -> "BiLaurent":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiLaurent":
        return cls({(0, 1): 1})

    def __add__(self, other: "BiLaurent") -> "BiLaurent":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return BiLaurent(terms)

    def __sub__(self, other: "BiLaurent") -> "BiLaurent":
        return self + (-other)

    def __neg__(self) -> "BiLaurent":
        return BiLaurent({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "BiLaurent") -> "BiLaurent":
        terms: Dict[Tuple[int, int], int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                terms[k] = terms.get(k, 0) + c1 * c2
        return BiLaurent(terms)

    def scale(self, c: int) -> "BiLaurent":
        return BiLaurent({k: c * v for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "BiLaurent":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = BiLaurent.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BiLaurent) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def term_count(self) -> int:
        """Number of stored nonzero monomials."""
        return len(self.terms)

    def exact_div(self, other: "BiLaurent") -> "BiLaurent":
        """Exact division (raises ValueError when the division is not exact)."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = BiLaurent(dict(self.terms))
        lead = max(other.terms)  # (ex, ey) lexicographic leading term
        lead_c = other.terms[lead]
        qterms: Dict[Tuple[int, int], int] = {}
        while not rem.is_zero():
            k = max(rem.terms)
            c = rem.terms[k]
            if c % lead_c:
                raise ValueError("division is not exact")
            mono = (k[0] - lead[0], k[1] - lead[1])
            qc = c // lead_c
            qterms[mono] = qterms.get(mono, 0) + qc
            rem = rem - BiLaurent.monomial(*mono, qc) * other
        return BiLaurent(qterms)

    def normalized(self) -> "BiLaurent":
        """Canonical unit normalization.

        Shift so the minimal x-degree and minimal y-degree are both 0, then
        choose the global sign so the term that is least in (y-degree,
        x-degree) lexicographic order has a positive coefficient.
        """
        if not self.terms:
            return BiLaurent()
        minx = min(k[0] for k in self.terms)
        miny = min(k[1] for k in self.terms)
        shifted = {(a - minx, b - miny): c for (a, b), c in self.terms.items()}
        anchor = min(shifted, key=lambda k: (k[1], k[0]))
        if shifted[anchor] < 0:
            shifted = {k: -c for k, c in shifted.items()}
        return BiLaurent(shifted)

    def __str__(self) -> str:
        return render_bipoly(self)

    def __repr__(self) -> str:
        return f"BiLaurent({self.terms!r})"


def render_bipoly(p: BiLaurent, xname: str = "x", yname: str = "y") -> str:
    """Render sorted by (x-degree, y-degree) ascending."""
    if not p.terms:
        return "0"
    parts = []
    for (a, b), c in sorted(p.terms.items()):
        mag = abs(c)
        factors = []
        if a:
            factors.append(xname if a == 1 else f"{xname}^{a}")
        if b:
            factors.append(yname if b == 1 else f"{yname}^{b}")
        if not factors:
            body = str(mag)
        else:
            head = "" if mag == 1 else str(mag) + "*"
            body = head + "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts)
