"""Sparse multivariate polynomials over exact rationals.

Variables are referred to by name.  Canonical variable names follow the
conventions used throughout the package:

* ``x{a}_{i}`` / ``p{a}_{i}`` -- canonically conjugate pairs, superscript
  ``a`` first, subscript ``i`` second,
* ``z``, ``lam``, ``mu``, ``w`` -- spectral parameters and the cyclotomic
  parameter.

Every polynomial keeps its variable table sorted by a fixed global order
(x's, then p's, then z, lam, mu, w, then anything else alphabetically), so
equal polynomials have identical internal representations and equality is a
dictionary comparison.
"""

from __future__ import annotations

import re
from fractions import Fraction

_PAIR_RE = re.compile(r"^([xp])(\d+)_(\d+)$")
_SPECIAL = {"z": 2, "lam": 3, "mu": 4, "w": 5}


def var_key(name: str) -> tuple:
    """Global sort key: x's first, then p's, then spectral parameters."""
    m = _PAIR_RE.match(name)
    if m:
        fam = 0 if m.group(1) == "x" else 1
        return (fam, int(m.group(2)), int(m.group(3)), "")
    if name in _SPECIAL:
        return (_SPECIAL[name], 0, 0, "")
    return (9, 0, 0, name)


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as a polynomial coefficient")


class MultiPoly:
    """Immutable sparse polynomial: map from exponent vectors to Fractions."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict):
        self.vars = vars
        self.terms = terms

    # -- constructors --------------------------------------------------

    @staticmethod
    def const(c) -> MultiPoly:
        c = _coerce(c)
        return MultiPoly((), {(): c} if c else {})

    @staticmethod
    def var(name: str, power: int = 1, coeff=1) -> MultiPoly:
        c = _coerce(coeff)
        if not c:
            return MultiPoly((), {})
        if power == 0:
            return MultiPoly.const(c)
        return MultiPoly((name,), {(power,): c})

    @staticmethod
    def zero() -> MultiPoly:
        return MultiPoly((), {})

    # -- table alignment ----------------------------------------------

    def lift_to(self, vars: tuple[str, ...]) -> MultiPoly:
        """Re-express over a larger variable table (must contain self.vars)."""
        if vars == self.vars:
            return self
        pos = {v: k for k, v in enumerate(vars)}
        idx = [pos[v] for v in self.vars]
        n = len(vars)
        terms = {}
        for exps, c in self.terms.items():
            row = [0] * n
            for j, e in zip(idx, exps):
                row[j] = e
            terms[tuple(row)] = c
        return MultiPoly(vars, terms)

    def _aligned(self, other: MultiPoly):
        if self.vars == other.vars:
            return self, other
        merged = tuple(sorted(set(self.vars) | set(other.vars), key=var_key))
        return self.lift_to(merged), other.lift_to(merged)

    def compact(self) -> MultiPoly:
        """Drop variables that no term actually uses."""
        if not self.terms:
            return MultiPoly((), {})
        used = [any(e[k] for e in self.terms) for k in range(len(self.vars))]
        if all(used):
            return self
        keep = [k for k, u in enumerate(used) if u]
        vars = tuple(self.vars[k] for k in keep)
        terms = {tuple(e[k] for k in keep): c for e, c in self.terms.items()}
        return MultiPoly(vars, terms)

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            if not c:
                return MultiPoly((), {})
            return MultiPoly(self.vars, {e: k * c for e, k in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return MultiPoly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    # -- structure ------------------------------------------------------

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def degree(self, name: str) -> int:
        if name not in self.vars or not self.terms:
            return 0
        k = self.vars.index(name)
        return max(e[k] for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def num_terms(self) -> int:
        return len(self.terms)

    def derivative(self, name: str) -> MultiPoly:
        if name not in self.vars:
            return MultiPoly((), {})
        k = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[k] == 0:
                continue
            e2 = e[:k] + (e[k] - 1,) + e[k + 1:]
            terms[e2] = terms.get(e2, 0) + c * e[k]
        return MultiPoly(self.vars, {e: c for e, c in terms.items() if c})

    def substitute(self, assignment: dict) -> MultiPoly:
        """Substitute Fractions or polynomials for some variables."""
        if not any(v in assignment for v in self.vars):
            return self
        values = {}
        for v in self.vars:
            if v in assignment:
                val = assignment[v]
                values[v] = val if isinstance(val, MultiPoly) else MultiPoly.const(val)
        out = MultiPoly((), {})
        powers: dict[tuple, MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(c)
            for v, k in zip(self.vars, e):
                if k == 0:
                    continue
                if v in values:
                    key = (v, k)
                    if key not in powers:
                        powers[key] = values[v] ** k
                    term = term * powers[key]
                else:
                    term = term * MultiPoly.var(v, k)
            out = out + term
        return out.compact()

    def split_by(self, names: tuple[str, ...]) -> dict[tuple, MultiPoly]:
        """Group terms by the exponents of `names`; values are polynomials
        in the remaining variables."""
        idx = [self.vars.index(n) if n in self.vars else None for n in names]
        rest = [k for k, v in enumerate(self.vars) if v not in names]
        rest_vars = tuple(self.vars[k] for k in rest)
        out: dict[tuple, dict] = {}
        for e, c in self.terms.items():
            key = tuple(0 if k is None else e[k] for k in idx)
            sub = tuple(e[k] for k in rest)
            out.setdefault(key, {})[sub] = c
        return {k: MultiPoly(rest_vars, t).compact() for k, t in out.items()}

    def coefficient(self, names: tuple[str, ...], exps: tuple[int, ...]) -> MultiPoly:
        return self.split_by(names).get(exps, MultiPoly.zero())

    def divide_linear(self, name: str, root: Fraction) -> MultiPoly:
        """Exact division by (name - root); raises if the remainder is nonzero."""
        by_deg: dict[int, MultiPoly] = {}
        for e, coeff in self.split_by((name,)).items():
            by_deg[e[0]] = coeff
        if not by_deg:
            return MultiPoly.zero()
        deg = max(by_deg)
        quot: dict[int, MultiPoly] = {}
        carry = MultiPoly.zero()
        for k in range(deg, 0, -1):
            q = by_deg.get(k, MultiPoly.zero()) + carry
            quot[k - 1] = q
            carry = q * root
        rem = by_deg.get(0, MultiPoly.zero()) + carry
        if rem:
            raise ValueError(f"{name} - {root} does not divide exactly")
        out = MultiPoly.zero()
        for k, q in quot.items():
            if q:
                out = out + q * MultiPoly.var(name, k) if k else out + q
        return out.compact()

    # -- display ----------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e)
                if k
            )
            bits.append(f"{c}" if not mono else (f"{c}*{mono}" if c != 1 else mono))
        return " + ".join(bits)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Named arithmetic entry point: op in {"add", "mul", "sub"}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "sub":
        return a - b
    raise ValueError(f"unknown op {op!r}")
