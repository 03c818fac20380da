"""Canonical Poisson bracket on polynomials in x{a}_{i}, p{a}_{i}.

The bracket is computed from formal partial derivatives,

    {f, g} = sum_(a,i) df/dp{a}_{i} dg/dx{a}_{i} - df/dx{a}_{i} dg/dp{a}_{i},

which reproduces {p^a_i, x^b_j} = delta_ij delta_ab on generators; all
other variables (z, lam, mu, w) are central spectators.  A recursive
Leibniz expansion is kept alongside as an independent oracle for tests.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .multipoly import MultiPoly

_P_RE = re.compile(r"^p(\d+)_(\d+)$")


def conjugate_pairs(f: MultiPoly, g: MultiPoly) -> list[tuple[str, str]]:
    names = set(f.vars) | set(g.vars)
    pairs = []
    for name in names:
        m = _P_RE.match(name)
        if m:
            pairs.append((f"x{m.group(1)}_{m.group(2)}", name))
    return sorted(pairs)


def poisson_bracket(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    out = MultiPoly.zero()
    for xv, pv in conjugate_pairs(f, g):
        out = out + f.derivative(pv) * g.derivative(xv)
        out = out - f.derivative(xv) * g.derivative(pv)
    return out


def _generator_bracket(u: str, v: str) -> Fraction:
    mu, mv = _P_RE.match(u), _P_RE.match(v)
    if mu and v == f"x{mu.group(1)}_{mu.group(2)}":
        return Fraction(1)
    if mv and u == f"x{mv.group(1)}_{mv.group(2)}":
        return Fraction(-1)
    return Fraction(0)


def poisson_bracket_leibniz(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Independent oracle: bilinear + Leibniz recursion from the generator
    bracket, never touching derivatives."""

    def mono_bracket(vars_f, ef, vars_g, eg) -> MultiPoly:
        # peel one variable off the first monomial
        first = next((k for k, e in enumerate(ef) if e), None)
        if first is None:
            return MultiPoly.zero()
        u = vars_f[first]
        rest = list(ef)
        rest[first] -= 1
        rest_mono = MultiPoly(vars_f, {tuple(rest): Fraction(1)}).compact()
        u_poly = MultiPoly.var(u)
        # {u*rest, G} = u*{rest, G} + {u, G}*rest
        out = u_poly * mono_bracket(vars_f, tuple(rest), vars_g, eg)
        out = out + single_bracket(u, vars_g, eg) * rest_mono
        return out

    def single_bracket(u: str, vars_g, eg) -> MultiPoly:
        first = next((k for k, e in enumerate(eg) if e), None)
        if first is None:
            return MultiPoly.zero()
        v = vars_g[first]
        rest = list(eg)
        rest[first] -= 1
        rest_mono = MultiPoly(vars_g, {tuple(rest): Fraction(1)}).compact()
        out = MultiPoly.var(v) * single_bracket(u, vars_g, tuple(rest))
        c = _generator_bracket(u, v)
        if c:
            out = out + rest_mono * c
        return out

    out = MultiPoly.zero()
    for ef, cf in f.terms.items():
        for eg, cg in g.terms.items():
            out = out + mono_bracket(f.vars, ef, g.vars, eg) * (cf * cg)
    return out
