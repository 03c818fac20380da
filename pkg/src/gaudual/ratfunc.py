"""Univariate rational functions with factored denominators.

The denominator of every value is a monic product ``prod (X - root)^mult``
held as a ``{root: mult}`` map with rational roots: poles always come from a
divisor, so the roots are known and no root finding is needed in the hot
path.  Numerator coefficients live in any commutative-enough coefficient
ring (Fraction, MultiPoly, WeylElement); the multiplication order of
numerator coefficients is preserved, which is what makes the same container
usable for ordered differential-operator coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotInvertible, ResidualPole, UnlistedPole, ZeroInverse

Poly = dict  # degree -> coefficient


def _trim(num: Poly) -> Poly:
    return {k: c for k, c in num.items() if c}


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for i, c in a.items():
        for j, d in b.items():
            s = out.get(i + j, 0) + c * d
            if s:
                out[i + j] = s
            else:
                out.pop(i + j, None)
    return out


def poly_scale(a: Poly, c) -> Poly:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def poly_eval(a: Poly, point: Fraction):
    """Evaluate at a rational point; result lives in the coefficient ring."""
    total = None
    for k, c in a.items():
        term = c * point**k if k else c
        total = term if total is None else total + term
    return 0 if total is None else total


def poly_derivative(a: Poly) -> Poly:
    return {k - 1: c * k for k, c in a.items() if k}


def poly_divide_linear(a: Poly, root: Fraction) -> Poly:
    """Exact division by (X - root); raises ValueError on nonzero remainder."""
    if not a:
        return {}
    deg = max(a)
    quot: Poly = {}
    carry = 0
    for k in range(deg, 0, -1):
        q = a.get(k, 0) + carry
        if q:
            quot[k - 1] = q
        carry = q * root
    rem = a.get(0, 0) + carry
    if rem:
        raise ValueError("linear factor does not divide exactly")
    return quot


def expand_factors(factors: dict[Fraction, int]) -> Poly:
    out: Poly = {0: Fraction(1)}
    for root, mult in factors.items():
        lin = {1: Fraction(1), 0: -root}
        for _ in range(mult):
            out = poly_mul(out, lin)
    return out


def rational_roots(a: Poly) -> tuple[dict[Fraction, int], Poly]:
    """Split off rational roots: returns ({root: mult}, non-splitting cofactor).

    Coefficients must be Fractions.
    """
    roots: dict[Fraction, int] = {}
    a = {k: Fraction(c) if isinstance(c, int) else c for k, c in a.items() if c}
    if not a:
        return roots, a
    while max(a) > 0:
        low = min(a)
        if low > 0:
            a = {k - 1: c for k, c in a.items()}
            roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
            continue
        scale = 1
        for c in a.values():
            scale = scale * c.denominator // _gcd(scale, c.denominator)
        ints = {k: int(c * scale) for k, c in a.items()}
        lead, tail = ints[max(ints)], ints[min(ints)]
        found = None
        for p in _divisors(abs(tail)):
            for q in _divisors(abs(lead)):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if poly_eval(a, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        a = poly_divide_linear(a, found)
        roots[found] = roots.get(found, 0) + 1
    return roots, a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int):
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


class RatFunc:
    """num / prod (X - root)^mult in the variable `var`."""

    __slots__ = ("var", "num", "den")

    def __init__(self, var: str, num: Poly, den: dict[Fraction, int] | None = None):
        self.var = var
        self.num = _trim(num)
        self.den = {r: m for r, m in (den or {}).items() if m}
        self._cancel()

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(var: str, c) -> RatFunc:
        return RatFunc(var, {0: c} if c else {})

    @staticmethod
    def variable(var: str) -> RatFunc:
        return RatFunc(var, {1: Fraction(1)})

    @staticmethod
    def linear(var: str, shift: Fraction) -> RatFunc:
        """X - shift."""
        return RatFunc(var, {1: Fraction(1), 0: -shift} if shift else {1: Fraction(1)})

    @staticmethod
    def pole(var: str, root: Fraction, order: int, coeff=Fraction(1)) -> RatFunc:
        """coeff / (X - root)^order."""
        return RatFunc(var, {0: coeff}, {root: order})

    # -- normalization ----------------------------------------------------

    def _cancel(self):
        if not self.num:
            self.den = {}
            return
        for root in list(self.den):
            while self.den.get(root, 0) > 0:
                if poly_eval(self.num, root) != 0:
                    break
                self.num = poly_divide_linear(self.num, root)
                self.den[root] -= 1
            if self.den.get(root) == 0:
                del self.den[root]

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: RatFunc):
        if self.var != other.var:
            raise ValueError(f"mixed variables {self.var!r} and {other.var!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(self.var, other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        self._check(other)
        roots = set(self.den) | set(other.den)
        den = {r: max(self.den.get(r, 0), other.den.get(r, 0)) for r in roots}
        lift_a = expand_factors({r: den[r] - self.den.get(r, 0) for r in roots})
        lift_b = expand_factors({r: den[r] - other.den.get(r, 0) for r in roots})
        num = poly_add(poly_mul(self.num, lift_a), poly_mul(other.num, lift_b))
        return RatFunc(self.var, num, den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.var, {k: -c for k, c in self.num.items()}, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(self.var, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.var, poly_scale(self.num, Fraction(other) if isinstance(other, int) else other), self.den)
        if not isinstance(other, RatFunc):
            # scalar from the coefficient ring, applied on the right
            return RatFunc(self.var, poly_scale(self.num, other), self.den)
        self._check(other)
        den = dict(self.den)
        for r, m in other.den.items():
            den[r] = den.get(r, 0) + m
        return RatFunc(self.var, poly_mul(self.num, other.num), den)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        # ring coefficient multiplied from the left
        return RatFunc(self.var, {k: other * c for k, c in self.num.items()}, self.den)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(self.var, other)
        elif not isinstance(other, RatFunc):
            return NotImplemented
        diff = self - other
        return not diff.num

    __hash__ = None

    def derivative(self) -> RatFunc:
        if not self.den:
            return RatFunc(self.var, poly_derivative(self.num))
        # d/dX [N / prod (X-r)^m] with the denominator kept factored
        den = {r: m + 1 for r, m in self.den.items()}
        all_lin = expand_factors({r: 1 for r in self.den})
        num = poly_mul(poly_derivative(self.num), all_lin)
        for r, m in self.den.items():
            others = expand_factors({q: 1 for q in self.den if q != r})
            num = poly_add(num, poly_scale(poly_mul(self.num, others), Fraction(-m)))
        return RatFunc(self.var, num, den)

    def invert(self) -> RatFunc:
        """Exact reciprocal; numerator must factor over rational roots."""
        if not self.num:
            raise ZeroInverse("cannot invert the zero rational function")
        for c in self.num.values():
            if not isinstance(c, (int, Fraction)):
                raise NotInvertible("reciprocal needs scalar numerator coefficients")
        roots, rest = rational_roots(self.num)
        if _trim(rest) and max(_trim(rest)) > 0:
            raise NotInvertible("numerator does not split over rational roots")
        lead = rest.get(0, Fraction(1))
        num = poly_scale(expand_factors(self.den), Fraction(1) / lead)
        return RatFunc(self.var, num, roots)

    def evaluate(self, point: Fraction):
        for r, m in self.den.items():
            if r == point and m > 0:
                raise ZeroDivisionError(f"evaluation at the pole {point}")
        value = poly_eval(self.num, point)
        scale = Fraction(1)
        for r, m in self.den.items():
            scale /= (point - r) ** m
        return value * scale

    def to_poly(self) -> Poly:
        """Numerator as a plain polynomial; raises ResidualPole otherwise."""
        if self.den:
            root = next(iter(sorted(self.den)))
            raise ResidualPole(root, self.den[root])
        return dict(self.num)

    def is_polynomial(self) -> bool:
        return not self.den

    def __repr__(self):
        den = "*".join(f"({self.var}-{r})^{m}" for r, m in sorted(self.den.items()))
        return f"({self.num})" + (f"/{den}" if den else "")


def ratfunc_invert(f: RatFunc) -> RatFunc:
    return f.invert()


def partial_fractions(f: RatFunc, poles: list[tuple[Fraction, int]]):
    """Decompose f into a polynomial part plus sum of coeff/(X-point)^order.

    Returns (poly_part: Poly, pieces: dict[(point, order) -> coefficient]).
    The reassembled function equals f exactly; a denominator root outside
    the listed poles raises UnlistedPole.
    """
    allowed = {p: o for p, o in poles}
    for r, m in f.den.items():
        if r not in allowed:
            raise UnlistedPole(f"pole at {r} not in the supplied list")
        if m > allowed[r]:
            raise UnlistedPole(f"pole order {m} at {r} exceeds stated maximum {allowed[r]}")
    num = dict(f.num)
    den = dict(f.den)
    pieces = {}
    while den:
        root = next(iter(sorted(den)))
        m = den[root]
        others = {q: k for q, k in den.items() if q != root}
        scale = Fraction(1)
        for q, k in others.items():
            scale *= (root - q) ** k
        coeff = poly_eval(num, root) * (Fraction(1) / scale)
        if coeff:
            pieces[(root, m)] = coeff
        num = poly_add(num, poly_scale(expand_factors(others), -coeff))
        num = poly_divide_linear(num, root)
        if m == 1:
            del den[root]
        else:
            den[root] = m - 1
    return num, pieces


def reassemble(var: str, poly_part: Poly, pieces: dict) -> RatFunc:
    out = RatFunc(var, poly_part)
    for (point, order), coeff in pieces.items():
        out = out + RatFunc(var, {0: coeff}, {point: order})
    return out
