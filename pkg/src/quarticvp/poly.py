"""Sparse polynomials in x0..x3 over the Gaussian rationals.

A polynomial is a mapping from exponent 4-tuples to nonzero coefficients;
no zero coefficient is ever stored, so structural equality is semantic
equality.  The ring is deliberately fixed at four variables: everything in
this package lives in P^3.

The module also carries the handful of primitives the geometry needs:
weighted order, chart substitutions, exceptional-power extraction, order
along a coordinate line, and exact univariate gcd over Q(i).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PolyParseError
from .field import GaussianRational, ONE, ZERO, format_coeff

NVARS = 4
VAR_NAMES = ("x0", "x1", "x2", "x3")

Exponents = tuple  # 4-tuple of nonnegative ints


class Polynomial:
    """Immutable sparse polynomial over GaussianRational."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = GaussianRational.of(coeff)
                if coeff.is_zero():
                    continue
                if len(mono) != NVARS or any(e < 0 for e in mono):
                    raise ValueError(f"bad monomial {mono!r}")
                clean[tuple(mono)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def constant(c) -> "Polynomial":
        return Polynomial({(0, 0, 0, 0): GaussianRational.of(c)})

    @staticmethod
    def variable(i: int) -> "Polynomial":
        mono = tuple(1 if j == i else 0 for j in range(NVARS))
        return Polynomial({mono: ONE})

    @staticmethod
    def monomial(exponents, coeff=ONE) -> "Polynomial":
        return Polynomial({tuple(exponents): GaussianRational.of(coeff)})

    # -- predicates and views ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def coefficient(self, exponents) -> GaussianRational:
        return self.terms.get(tuple(exponents), ZERO)

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(m) for m in self.terms)

    def min_degree(self) -> int:
        """Order of vanishing at the origin."""
        if not self.terms:
            raise ValueError("zero polynomial has no order")
        return min(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(m) for m in self.terms}
        return len(degrees) <= 1

    def variables(self):
        """Indices of variables actually present."""
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, ZERO) + c
            if s.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = s
        return _raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        terms = {}
        for m1, c1 in small.items():
            for m2, c2 in big.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                s = terms.get(m, ZERO) + c1 * c2
                if s.is_zero():
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return _raw(terms)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = GaussianRational.of(c)
        if c.is_zero():
            return Polynomial.zero()
        return _raw({m: k * c for m, k in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus-flavoured helpers ----------------------------------------

    def homogeneous_component(self, d: int) -> "Polynomial":
        return _raw({m: c for m, c in self.terms.items() if sum(m) == d})

    def partial_derivative(self, var: int) -> "Polynomial":
        terms = {}
        for m, c in self.terms.items():
            e = m[var]
            if not e:
                continue
            m2 = list(m)
            m2[var] = e - 1
            terms[tuple(m2)] = c * e
        return _raw(terms)

    def evaluate(self, point) -> GaussianRational:
        """Value at a point given as 4 field elements."""
        point = [GaussianRational.of(p) for p in point]
        total = ZERO
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    v = v * point[i] ** e
            total = total + v
        return total

    # -- formatting ---------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<Polynomial {format_poly(self)}>"


def _raw(terms: dict) -> Polynomial:
    p = Polynomial.__new__(Polynomial)
    object.__setattr__(p, "terms", terms)
    return p


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction, GaussianRational)):
        return Polynomial.constant(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


# -- substitution ------------------------------------------------------------


def substitute(f: Polynomial, images: dict) -> Polynomial:
    """Ring-homomorphism image of ``f`` with ``images[i]`` replacing x_i.

    Variables absent from ``images`` map to themselves.  When every image
    is a monomial the exponent arithmetic is done directly, which keeps the
    blowup chart maps cheap.
    """
    images = {i: _as_poly(g) for i, g in images.items()}
    for i in range(NVARS):
        images.setdefault(i, Polynomial.variable(i))

    if all(len(g.terms) == 1 for g in images.values()):
        parts = {}
        for i, g in images.items():
            ((mono, coeff),) = g.terms.items()
            parts[i] = (mono, coeff)
        terms = {}
        for m, c in f.terms.items():
            out = [0, 0, 0, 0]
            coeff = c
            for i, e in enumerate(m):
                if not e:
                    continue
                mono, k = parts[i]
                for j in range(NVARS):
                    out[j] += mono[j] * e
                if not k.is_one():
                    coeff = coeff * k**e
            mono = tuple(out)
            s = terms.get(mono, ZERO) + coeff
            if s.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = s
        return _raw(terms)

    result = Polynomial.zero()
    power_cache = {i: {0: Polynomial.constant(1)} for i in images}
    for m, c in f.terms.items():
        part = Polynomial.constant(c)
        for i, e in enumerate(m):
            if not e:
                continue
            cache = power_cache[i]
            if e not in cache:
                cache[e] = images[i] ** e
            part = part * cache[e]
        result = result + part
    return result


def permute_variables(f: Polynomial, perm) -> Polynomial:
    """Relabel variables: variable i becomes variable perm[i]."""
    terms = {}
    for m, c in f.terms.items():
        out = [0, 0, 0, 0]
        for i, e in enumerate(m):
            out[perm[i]] = e
        terms[tuple(out)] = c
    return _raw(terms)


def linear_change(f: Polynomial, matrix) -> Polynomial:
    """Substitute x_i -> sum_j matrix[i][j] * x_j."""
    images = {}
    for i in range(NVARS):
        row = Polynomial.zero()
        for j in range(NVARS):
            c = GaussianRational.of(matrix[i][j])
            if not c.is_zero():
                row = row + Polynomial.variable(j).scale(c)
        images[i] = row
    return substitute(f, images)


# -- geometric primitives ------------------------------------------------------


def dehomogenize(f: Polynomial, var: int) -> Polynomial:
    """Set x_var = 1.  Requires ``f`` homogeneous."""
    if not f.is_homogeneous():
        raise ValueError("dehomogenize requires a homogeneous polynomial")
    terms = {}
    for m, c in f.terms.items():
        m2 = list(m)
        m2[var] = 0
        mono = tuple(m2)
        s = terms.get(mono, ZERO) + c
        if s.is_zero():
            terms.pop(mono, None)
        else:
            terms[mono] = s
    return _raw(terms)


def homogenize(f: Polynomial, var: int, degree: int) -> Polynomial:
    """Pad every term with x_var so that all terms reach ``degree``."""
    terms = {}
    for m, c in f.terms.items():
        d = sum(m)
        if d > degree or m[var]:
            raise ValueError("polynomial does not homogenize to that degree")
        m2 = list(m)
        m2[var] = degree - d
        terms[tuple(m2)] = c
    return _raw(terms)


def weighted_order(f: Polynomial, weights) -> int:
    """min over monomials of e1*w1 + e2*w2 + e3*w3.

    ``weights`` are assigned to (x1, x2, x3); the input must already be
    dehomogenized, i.e. free of x0.
    """
    if f.is_zero():
        raise ValueError("weighted order of the zero polynomial")
    w1, w2, w3 = weights
    best = None
    for m in f.terms:
        if m[0]:
            raise ValueError("weighted_order expects an x0-free polynomial")
        w = m[1] * w1 + m[2] * w2 + m[3] * w3
        if best is None or w < best:
            best = w
    return best


def var_power_content(f: Polynomial, var: int) -> int:
    """Largest k with x_var^k dividing f."""
    if f.is_zero():
        raise ValueError("content of the zero polynomial")
    return min(m[var] for m in f.terms)


def divide_var_power(f: Polynomial, var: int, k: int) -> Polynomial:
    """Exact division by x_var^k."""
    if k == 0:
        return f
    if f.is_zero():
        raise ValueError("division of the zero polynomial")
    terms = {}
    for m, c in f.terms.items():
        if m[var] < k:
            raise ValueError(f"x{var}^{k} does not divide {f}")
        m2 = list(m)
        m2[var] -= k
        terms[tuple(m2)] = c
    return _raw(terms)


def order_along(f: Polynomial, vars_: frozenset | set) -> int:
    """min over monomials of the combined exponent of ``vars_``.

    Order >= 1 says the coordinate subvariety lies on {f = 0}; for the
    line {x1 = x3 = 0} use vars_ = {1, 3}.
    """
    if f.is_zero():
        raise ValueError("order of the zero polynomial")
    return min(sum(m[i] for i in vars_) for m in f.terms)


# -- univariate layer ----------------------------------------------------------


def univariate_coeffs(f: Polynomial, var: int) -> list:
    """Dense coefficient list [c0, c1, ...] of a genuinely univariate input."""
    coeffs = []
    for m, c in f.terms.items():
        if any(e and i != var for i, e in enumerate(m)):
            raise ValueError(f"{f} is not univariate in x{var}")
        e = m[var]
        if e >= len(coeffs):
            coeffs.extend([ZERO] * (e + 1 - len(coeffs)))
        coeffs[e] = c
    return _trim(coeffs)


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def poly_from_univariate(coeffs, var: int) -> Polynomial:
    terms = {}
    for e, c in enumerate(coeffs):
        c = GaussianRational.of(c)
        if c.is_zero():
            continue
        mono = [0, 0, 0, 0]
        mono[var] = e
        terms[tuple(mono)] = c
    return _raw(terms)


def univariate_derivative(coeffs: list) -> list:
    return _trim([coeffs[e] * e for e in range(1, len(coeffs))])


def _uni_divmod(num: list, den: list):
    num = list(num)
    q = [ZERO] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    while len(num) >= len(den) and num:
        shift = len(num) - len(den)
        factor = num[-1] / lead
        q[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] = num[shift + i] - factor * c
        num = _trim(num)
    return _trim(q), num


def univariate_gcd(p: list, q: list) -> list:
    """Monic gcd over Q(i) by the Euclidean algorithm."""
    a, b = _trim(list(p)), _trim(list(q))
    while b:
        _, r = _uni_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def unique_multiple_root(p: list):
    """The unique multiple root of ``p``, exact in Q(i), or None.

    Repeated gcd with the derivative shrinks to a linear factor whenever
    the multiple root is unique, so no radicals are ever needed.
    """
    g = univariate_gcd(p, univariate_derivative(p))
    while len(g) > 2:
        g = univariate_gcd(g, univariate_derivative(g))
    if len(g) != 2:
        return None
    return -g[0] / g[1]


def squarefree_excess(p: list) -> int:
    """deg gcd(p, p'): the total excess multiplicity of the roots of p."""
    g = univariate_gcd(p, univariate_derivative(p))
    return len(g) - 1 if g else 0


# -- parsing --------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise PolyParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse_nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        return int(self.text[start : self.pos])

    def parse_rat(self) -> Fraction:
        num = self.parse_nat()
        if self.eat("/"):
            at = self.pos
            den = self.parse_nat()
            if den == 0:
                self.pos = at
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def parse_factor(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.eat("(")
            inner = self.parse_expr()
            if not self.eat(")"):
                self.error("expected ')'")
            return inner
        if ch.isdigit():
            q = self.parse_rat()
            # "4i" is accepted as tight shorthand for 4*i
            if self.pos < len(self.text) and self.text[self.pos] == "i":
                self.pos += 1
                return Polynomial.constant(GaussianRational(0, q))
            return Polynomial.constant(q)
        if ch == "i":
            save = self.pos
            self.pos += 1
            nxt = self.text[self.pos] if self.pos < len(self.text) else ""
            if nxt.isalnum() or nxt == "_":
                self.pos = save
                self.error("unknown name")
            return Polynomial.constant(GaussianRational(0, 1))
        if ch == "x":
            start = self.pos
            self.pos += 1
            if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
                self.pos = start
                self.error("unknown variable name")
            idx = self.text[self.pos]
            self.pos += 1
            nxt = self.text[self.pos] if self.pos < len(self.text) else ""
            if idx not in "0123" or nxt.isdigit():
                self.pos = start
                self.error("unknown variable name")
            var = Polynomial.variable(int(idx))
            if self.eat("^"):
                return var ** self.parse_nat()
            return var
        if ch == "":
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while self.eat("*"):
            result = result * self.parse_factor()
        return result

    def parse_expr(self) -> Polynomial:
        negate = False
        if self.eat("-"):
            negate = True
        term = self.parse_term()
        result = -term if negate else term
        while True:
            if self.eat("+"):
                result = result + self.parse_term()
            elif self.eat("-"):
                result = result - self.parse_term()
            else:
                return result


def parse(text: str) -> Polynomial:
    """Parse the polynomial grammar; see the package README for the EBNF."""
    parser = _Parser(text)
    result = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("trailing input")
    return result


# -- formatting -------------------------------------------------------------------


def _grlex_key(mono):
    return (-sum(mono), tuple(-e for e in mono))


def _format_monomial(mono) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(VAR_NAMES[i])
        elif e > 1:
            parts.append(f"{VAR_NAMES[i]}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial) -> str:
    """Canonical text: graded-lex term order, explicit '*', parenthesized
    mixed coefficients.  parse(format_poly(f)) == f."""
    if f.is_zero():
        return "0"
    pieces = []
    for mono in sorted(f.terms, key=_grlex_key):
        c = f.terms[mono]
        mono_text = _format_monomial(mono)
        negative = False
        if c.is_real():
            if c.re < 0:
                negative, c = True, -c
            body = format_coeff(c)
            if mono_text and body == "1":
                body = mono_text
            elif mono_text:
                body = f"{body}*{mono_text}"
        elif not c.re:
            if c.im < 0:
                negative, c = True, -c
            body = format_coeff(c)
            if mono_text:
                body = f"{body}*{mono_text}"
        else:
            if c.re < 0:
                negative, c = True, -c
            body = f"({format_coeff(c)})"
            if mono_text:
                body = f"{body}*{mono_text}"
        pieces.append((negative, body))
    first_neg, first = pieces[0]
    out = ("-" if first_neg else "") + first
    for negative, body in pieces[1:]:
        out += (" - " if negative else " + ") + body
    return out


def parse_coeff(text: str) -> GaussianRational:
    """Parse a bare coefficient in the grammar's coeff forms."""
    p = parse(text)
    if not p.is_constant():
        raise PolyParseError("expected a constant", 0)
    return p.coefficient((0, 0, 0, 0))
