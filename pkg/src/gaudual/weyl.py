"""Weyl algebra with exact normal ordering.

Generators come in canonical pairs.  A pair named ``"{a}_{i}"`` carries the
position generator ``x{a}_{i}`` and the derivative ``d{a}_{i}`` with
``[d, x] = 1``; the distinguished pair ``"z"`` carries the adjoined
spectral pair (z, Dz) with ``[Dz, z] = 1``.  Distinct pairs commute.

Elements are stored normal ordered: within every pair all x's stand to the
left of all derivatives (z to the left of Dz).  Products are re-normal
ordered with the closed form

    d^m x^n = sum_k k! C(m,k) C(n,k) x^(n-k) d^(m-k),

applied pair by pair, which avoids quadratic rewriting chains.

``OrderedDiffOp`` represents elements of U(z)[Dz] (side "z": rational in z,
ordered powers of Dz on the right) and of U(Dz)[z] (side "dz": rational in
Dz, powers of z on the right), the two one-sided algebras the duality
statement is computed in before both sides are normal ordered into the
common polynomial subalgebra.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, factorial

from .errors import ResidualPole
from .multipoly import MultiPoly
from .ratfunc import RatFunc

Z_PAIR = "z"

_PAIR_RE = re.compile(r"^(\d+)_(\d+)$")


def pair_sort_key(pair: str):
    m = _PAIR_RE.match(pair)
    if m:
        return (0, int(m.group(1)), int(m.group(2)), "")
    if pair == Z_PAIR:
        return (1, 0, 0, "")
    return (2, 0, 0, pair)


# monomial key: tuple of (pair, x_exp, d_exp), sorted by pair, no (0, 0)


def _mono_mul(m1: tuple, m2: tuple) -> list[tuple[tuple, Fraction]]:
    """All normal-ordered contributions of the product of two monomials."""
    d1 = {p: (x, d) for p, x, d in m1}
    d2 = {p: (x, d) for p, x, d in m2}
    results = [({}, Fraction(1))]
    for pair in set(d1) | set(d2):
        x1, e1 = d1.get(pair, (0, 0))
        x2, e2 = d2.get(pair, (0, 0))
        choices = []
        for k in range(min(e1, x2) + 1):
            c = Fraction(factorial(k) * comb(e1, k) * comb(x2, k))
            choices.append((x1 + x2 - k, e1 + e2 - k, c))
        nxt = []
        for acc, coef in results:
            for xx, dd, c in choices:
                step = dict(acc)
                step[pair] = (xx, dd)
                nxt.append((step, coef * c))
        results = nxt
    out = []
    for acc, coef in results:
        key = tuple(
            (p, x, d)
            for p, (x, d) in sorted(acc.items(), key=lambda kv: pair_sort_key(kv[0]))
            if x or d
        )
        out.append((key, coef))
    return out


class WeylElement:
    """Normal-ordered noncommutative polynomial over the rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {k: c for k, c in terms.items() if c}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c) -> WeylElement:
        c = Fraction(c) if isinstance(c, int) else c
        return WeylElement({(): c} if c else {})

    @staticmethod
    def zero() -> WeylElement:
        return WeylElement({})

    @staticmethod
    def x(a: int, i: int, power: int = 1) -> WeylElement:
        return WeylElement({((f"{a}_{i}", power, 0),): Fraction(1)})

    @staticmethod
    def d(a: int, i: int, power: int = 1) -> WeylElement:
        return WeylElement({((f"{a}_{i}", 0, power),): Fraction(1)})

    @staticmethod
    def z(power: int = 1) -> WeylElement:
        return WeylElement({((Z_PAIR, power, 0),): Fraction(1)})

    @staticmethod
    def dz(power: int = 1) -> WeylElement:
        return WeylElement({((Z_PAIR, 0, power),): Fraction(1)})

    @staticmethod
    def monomial(key: tuple, coeff=Fraction(1)) -> WeylElement:
        return WeylElement({key: coeff})

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.const(other)
        elif not isinstance(other, WeylElement):
            return NotImplemented
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return WeylElement(terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.const(other)
        elif not isinstance(other, WeylElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other) if isinstance(other, int) else other
            return WeylElement({k: v * c for k, v in self.terms.items()})
        if not isinstance(other, WeylElement):
            return NotImplemented
        terms: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                for key, w in _mono_mul(k1, k2):
                    s = terms.get(key, 0) + c1 * c2 * w
                    if s:
                        terms[key] = s
                    else:
                        terms.pop(key, None)
        return WeylElement(terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = WeylElement.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.const(other)
        elif not isinstance(other, WeylElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def num_terms(self) -> int:
        return len(self.terms)

    def is_scalar(self) -> bool:
        return all(k == () for k in self.terms)

    # -- views ------------------------------------------------------------

    def split_z(self) -> dict[tuple[int, int], WeylElement]:
        """Group terms by (z-exponent, Dz-exponent)."""
        out: dict[tuple[int, int], dict] = {}
        for key, c in self.terms.items():
            zx = zd = 0
            rest = []
            for p, x, d in key:
                if p == Z_PAIR:
                    zx, zd = x, d
                else:
                    rest.append((p, x, d))
            out.setdefault((zx, zd), {})[tuple(rest)] = c
        return {k: WeylElement(t) for k, t in out.items()}

    def classical_limit(self, z_name: str = "z", dz_name: str = "lam") -> MultiPoly:
        """Forget ordering: x^a_i -> x, d^a_i -> p, z -> z, Dz -> dz_name."""
        out = MultiPoly.zero()
        for key, c in self.terms.items():
            term = MultiPoly.const(c)
            for p, x, d in key:
                if p == Z_PAIR:
                    if x:
                        term = term * MultiPoly.var(z_name, x)
                    if d:
                        term = term * MultiPoly.var(dz_name, d)
                else:
                    if x:
                        term = term * MultiPoly.var(f"x{p}", x)
                    if d:
                        term = term * MultiPoly.var(f"p{p}", d)
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for key, c in sorted(self.terms.items()):
            words = []
            for p, x, d in key:
                xn, dn = (Z_PAIR, "Dz") if p == Z_PAIR else (f"x{p}", f"d{p}")
                if x:
                    words.append(f"{xn}^{x}" if x > 1 else xn)
                if d:
                    words.append(f"{dn}^{d}" if d > 1 else dn)
            mono = "*".join(words)
            bits.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(bits)


def weyl_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    return a * b


def weyl_commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return a * b - b * a


def from_multipoly(p: MultiPoly) -> WeylElement:
    """Embed a commutative polynomial in x/p variables, p{a}_{i} -> d{a}_{i}."""
    out = WeylElement.zero()
    for exps, c in p.terms.items():
        acc: dict[str, list[int]] = {}
        for name, e in zip(p.vars, exps):
            if not e:
                continue
            if name == "z":
                acc.setdefault(Z_PAIR, [0, 0])[0] += e
            elif name == "lam":
                acc.setdefault(Z_PAIR, [0, 0])[1] += e
            else:
                fam, pair = name[0], name[1:]
                slot = 0 if fam == "x" else 1
                acc.setdefault(pair, [0, 0])[slot] += e
        key = tuple(
            (p_, x, d)
            for p_, (x, d) in sorted(acc.items(), key=lambda kv: pair_sort_key(kv[0]))
        )
        out = out + WeylElement.monomial(key, c)
    return out


class OrderedDiffOp:
    """One-sidedly ordered differential operator in the spectral pair.

    side "z":  sum_k f_k(z) Dz^k   with f_k rational in z,
    side "dz": sum_k g_k(Dz) z^k   with g_k rational in Dz.

    Coefficients of the rational functions are WeylElements in the
    non-spectral pairs only.
    """

    __slots__ = ("side", "terms")

    def __init__(self, side: str, terms: dict[int, RatFunc]):
        if side not in ("z", "dz"):
            raise ValueError("side must be 'z' or 'dz'")
        self.side = side
        self.terms = {k: f for k, f in terms.items() if f}

    @staticmethod
    def from_ratfunc(side: str, f: RatFunc, power: int = 0) -> OrderedDiffOp:
        return OrderedDiffOp(side, {power: f})

    @staticmethod
    def zero(side: str) -> OrderedDiffOp:
        return OrderedDiffOp(side, {})

    def _check(self, other: OrderedDiffOp):
        if self.side != other.side:
            raise ValueError("mixed ordering sides")

    def __add__(self, other):
        if not isinstance(other, OrderedDiffOp):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for k, f in other.terms.items():
            s = terms.get(k)
            terms[k] = f if s is None else s + f
        return OrderedDiffOp(self.side, terms)

    def __neg__(self):
        return OrderedDiffOp(self.side, {k: -f for k, f in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, OrderedDiffOp):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Product, re-normalized to the side's canonical order.

        side "z":  Dz^m g(z) = sum_j C(m,j) g^(j)(z) Dz^(m-j)
        side "dz": z^m g(Dz) = sum_j (-1)^j C(m,j) g^(j)(Dz) z^(m-j)
        """
        if isinstance(other, (int, Fraction)):
            return OrderedDiffOp(self.side, {k: f * other for k, f in self.terms.items()})
        if not isinstance(other, OrderedDiffOp):
            return NotImplemented
        self._check(other)
        sign = 1 if self.side == "z" else -1
        out: dict[int, RatFunc] = {}
        for m, f in self.terms.items():
            for k, g in other.terms.items():
                deriv = g
                for j in range(m + 1):
                    if deriv:
                        piece = f * deriv * Fraction(comb(m, j) * sign**j)
                        key = m - j + k
                        cur = out.get(key)
                        out[key] = piece if cur is None else cur + piece
                    if j < m:
                        deriv = deriv.derivative()
                        if not deriv:
                            break
        return OrderedDiffOp(self.side, out)

    def scale_left(self, f: RatFunc) -> OrderedDiffOp:
        """Multiply on the left by a function of the side's own variable."""
        return OrderedDiffOp(self.side, {k: f * g for k, g in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, OrderedDiffOp):
            return NotImplemented
        self._check(other)
        diff = self - other
        return not any(f for f in diff.terms.values())

    __hash__ = None

    def to_polynomial(self) -> WeylElement:
        """Fully normal-ordered polynomial form; raises ResidualPole if a
        denominator survives cancellation."""
        out = WeylElement.zero()
        for k, f in self.terms.items():
            num = f.to_poly()  # raises ResidualPole
            for j, w in num.items():
                w = w if isinstance(w, WeylElement) else WeylElement.const(w)
                if self.side == "z":
                    out = out + w * WeylElement.z(j) * WeylElement.dz(k)
                else:
                    # w Dz^j z^k -> normal order (z before Dz)
                    for t in range(min(j, k) + 1):
                        c = Fraction(factorial(t) * comb(j, t) * comb(k, t))
                        out = out + (
                            w * WeylElement.z(k - t) * WeylElement.dz(j - t) * c
                        )
        return out

    def __repr__(self):
        op = "Dz" if self.side == "z" else "z"
        return " + ".join(f"[{f!r}]*{op}^{k}" for k, f in sorted(self.terms.items())) or "0"


def ordered_op_mul(a: OrderedDiffOp, b: OrderedDiffOp) -> OrderedDiffOp:
    return a * b


def to_polynomial(a: OrderedDiffOp) -> WeylElement:
    return a.to_polynomial()


def weyl_to_ordered(w: WeylElement, side: str, var: str) -> OrderedDiffOp:
    """View a polynomial WeylElement as a one-sidedly ordered operator."""
    terms: dict[int, RatFunc] = {}

    def put(power: int, degree: int, coeff: WeylElement):
        f = terms.get(power, RatFunc.const(var, 0))
        terms[power] = f + RatFunc(var, {degree: coeff})

    for (zx, zd), coeff in w.split_z().items():
        if side == "z":
            put(zd, zx, coeff)
        else:
            # W z^j Dz^k with every z moved right:
            # z^j Dz^k = sum_t (-1)^t t! C(j,t) C(k,t) Dz^(k-t) z^(j-t)
            for t in range(min(zx, zd) + 1):
                c = Fraction((-1) ** t * factorial(t) * comb(zx, t) * comb(zd, t))
                put(zx - t, zd - t, coeff * c)
    return OrderedDiffOp(side, terms)
