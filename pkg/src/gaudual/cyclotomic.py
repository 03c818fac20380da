"""Z2-cyclotomic gl_M Gaudin model and its sp_2N dual.

The cyclotomic side lives over the invariants of the diagram automorphism
sigma(E_ab) = -E_ba extended to currents by eps -> -eps; the dual side is
the sp_2N Gaudin model with regular singularities at the lambda_a and a
double pole at infinity, its 2N x 2N matrices indexed by
I = (-N, ..., -1, 1, ..., N).

Everything here is classical: elements are polynomials in x^a_i, p^a_i
with the parameter mu either an exact rational or the spectator variable
"mu".

Note: at mu = 0 the cyclotomic model does NOT reduce to the non-cyclotomic
duality even where the finite divisors look alike -- the origin carries the
invariant-current structure and the dual side is sp_2N rather than gl_N.
This non-reduction is documented here rather than asserted by any check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadPoints,
    DivisorMismatch,
    DuplicateFrequency,
    IndexOutOfRange,
)
from .linalg import in_span
from .matrices import RingMatrix, _perm_expansion
from .multipoly import MultiPoly
from .poisson import poisson_bracket
from .weyl import WeylElement

Q = Fraction


# -- diagram automorphism on gl_M --------------------------------------------
# elements are maps (a, b) -> coefficient


def diagram_automorphism(x: dict) -> dict:
    """sigma(E_ab) = -E_ba, extended linearly."""
    out: dict = {}
    for (a, b), c in x.items():
        out[(b, a)] = out.get((b, a), 0) - c
    return {k: c for k, c in out.items() if c}


def projector(r: int, a: int, b: int) -> dict:
    """Pi_(r) E_ab = E_ab - (-1)^r E_ba."""
    sign = Q(-1) if r % 2 == 0 else Q(1)
    out = {(a, b): Q(1)}
    out[(b, a)] = out.get((b, a), Q(0)) + sign
    return {k: c for k, c in out.items() if c}


def gl_bracket(x: dict, y: dict) -> dict:
    """[E_ab, E_cd] = delta_bc E_ad - delta_ad E_cb, extended bilinearly."""
    out: dict = {}
    for (a, b), c1 in x.items():
        for (c, d), c2 in y.items():
            if b == c:
                out[(a, d)] = out.get((a, d), 0) + c1 * c2
            if a == d:
                out[(c, b)] = out.get((c, b), 0) - c1 * c2
    return {k: c for k, c in out.items() if c}


# -- divisors and generators ---------------------------------------------------


@dataclass(frozen=True)
class CycloDivisor:
    """2*tau0 . 0 + sum tau_i . z_i + sum tau_i . (-z_i) + 2 . infinity."""

    tau0: int
    points: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        if self.tau0 < 1:
            raise DivisorMismatch("tau_0 must be positive")
        locs = [loc for loc, _ in self.points]
        if any(loc == 0 for loc in locs):
            raise BadPoints("0 = z_i is not allowed")
        seen = set()
        for loc in locs:
            if loc in seen or -loc in seen:
                raise BadPoints("need 0 != z_i != +-z_j for i != j")
            seen.add(loc)
        if any(t < 1 for _, t in self.points):
            raise DivisorMismatch("Takiff degrees must be positive")

    @staticmethod
    def of(tau0: int, points) -> CycloDivisor:
        return CycloDivisor(int(tau0), tuple((Q(p), int(t)) for p, t in points))

    def total_degree(self) -> int:
        """tau_0 + sum tau_i (half the finite degree, the N of the dual)."""
        return self.tau0 + sum(t for _, t in self.points)

    def block_offsets(self) -> tuple[int, ...]:
        """nu_i for i = 0..n with nu_0 = 0, nu_1 = tau_0, ..."""
        offsets = [0]
        acc = self.tau0
        for _, t in self.points:
            offsets.append(acc)
            acc += t
        return tuple(offsets)


# generator encodings:
#   ("pt", i, r, a, b)   E^(z_i)_(ab, r)
#   ("or", s, a, b)      (Pi_(s) E_ab)^(0)_s, canonical: a < b (s even),
#                        a <= b (s odd)
#   ("inf", a, b)        E^+(inf)_(ab, 1), canonical a <= b


def reduce_origin(s: int, a: int, b: int):
    """Rewrite (Pi_(s) E_ab) on the canonical basis: Pi_(s)E_ba =
    -(-1)^s Pi_(s)E_ab and Pi_(s)E_aa = 0 for even s."""
    if a < b:
        return [(Q(1), ("or", s, a, b))]
    if a == b:
        return [] if s % 2 == 0 else [(Q(1), ("or", s, a, a))]
    sign = Q(-1) if s % 2 == 0 else Q(1)
    return [(sign, ("or", s, b, a))]


class CycloInstance:
    """One cyclotomic duality instance: gl_M with divisor C against sp_2N
    with simple poles at the lambda_a."""

    def __init__(self, M: int, C: CycloDivisor, lam_points, mu):
        self.M = M
        self.C = C
        self.N = C.total_degree()
        self.lam = [Q(p) for p in lam_points]
        if len(self.lam) != M:
            raise DivisorMismatch(f"need M = {M} points lambda_a, got {len(self.lam)}")
        if len(set(self.lam)) != M:
            raise BadPoints("lambda_a must be pairwise distinct")
        self.mu = mu if isinstance(mu, MultiPoly) else MultiPoly.const(Q(mu))

    # -- gl_M^C side ------------------------------------------------------

    def glMC_generators(self) -> list:
        gens = []
        M = self.M
        for i, (_, tau) in enumerate(self.C.points):
            for r in range(tau):
                for a in range(1, M + 1):
                    for b in range(1, M + 1):
                        gens.append(("pt", i, r, a, b))
        for s in range(2 * self.C.tau0):
            for a in range(1, M + 1):
                for b in range(a, M + 1):
                    if s % 2 == 0 and a == b:
                        continue
                    gens.append(("or", s, a, b))
        for a in range(1, M + 1):
            for b in range(a, M + 1):
                gens.append(("inf", a, b))
        return gens

    def glMC_bracket(self, g1, g2) -> list:
        """Structure constants of gl_M^C on the canonical generators."""
        if g1[0] == "inf" or g2[0] == "inf":
            return []
        if g1[0] == "pt" and g2[0] == "pt":
            _, i, r, a, b = g1
            _, j, s, c, d = g2
            if i != j or r + s >= self.C.points[i][1]:
                return []
            out = []
            if b == c:
                out.append((Q(1), ("pt", i, r + s, a, d)))
            if a == d:
                out.append((Q(-1), ("pt", i, r + s, c, b)))
            return out
        if g1[0] == "or" and g2[0] == "or":
            _, r, a, b = g1
            _, s, c, d = g2
            if r + s >= 2 * self.C.tau0:
                return []
            out = []
            if b == c:
                out += [(k, g) for k, g in reduce_origin(r + s, a, d)]
            if a == c:
                sgn = Q(-1) if s % 2 else Q(1)
                out += [(sgn * k, g) for k, g in reduce_origin(r + s, d, b)]
            if b == d:
                sgn = Q(-1) if r % 2 else Q(1)
                out += [(sgn * k, g) for k, g in reduce_origin(r + s, c, a)]
            if a == d:
                sgn = Q(-1) if (r + s) % 2 else Q(1)
                out += [(sgn * k, g) for k, g in reduce_origin(r + s, b, c)]
            merged: dict = {}
            for k, g in out:
                merged[g] = merged.get(g, Q(0)) + k
            return [(k, g) for g, k in merged.items() if k]
        return []  # pt against origin: disjoint points

    def realize_glMC(self, g, mutation: str | None = None) -> MultiPoly:
        M = self.M
        kind = g[0]
        if kind == "inf":
            _, a, b = g
            return MultiPoly.const(self.lam[a - 1] if a == b else Q(0))
        if kind == "pt":
            _, i, r, a, b = g
            if not (1 <= a <= M and 1 <= b <= M):
                raise IndexOutOfRange(f"{a},{b} exceed M={M}")
            nu = self.C.block_offsets()[i + 1]
            tau = self.C.points[i][1]
            total = MultiPoly.zero()
            for u in range(nu + 1, nu + tau - r + 1):
                total = total + MultiPoly.var(f"x{a}_{u + r}") * MultiPoly.var(f"p{b}_{u}")
            return -total if mutation == "flip-sign" else total
        _, s, a, b = g
        tau0 = self.C.tau0
        total = MultiPoly.zero()
        ysign = Q(-1) if (s % 2 == 0) == (mutation != "y-sign") else Q(1)
        # y part: sum_u x^a_(u+s) p^b_u - (-1)^s x^b_(u+s) p^a_u
        for u in range(1, tau0 - s + 1):
            total = total + MultiPoly.var(f"x{a}_{u + s}") * MultiPoly.var(f"p{b}_{u}")
            total = total + ysign * (
                MultiPoly.var(f"x{b}_{u + s}") * MultiPoly.var(f"p{a}_{u}")
            )
        # mu part: -mu sum_(u+v=s+1) (-1)^v x^a_u x^b_v
        for u in range(1, tau0 + 1):
            v = s + 1 - u
            if 1 <= v <= tau0:
                sgn = Q(-1) if v % 2 else Q(1)
                total = total - self.mu * sgn * (
                    MultiPoly.var(f"x{a}_{u}") * MultiPoly.var(f"x{b}_{v}")
                )
        return -total if mutation == "flip-sign" else total

    def lax_glMC_cleared(self) -> tuple[RingMatrix, MultiPoly]:
        """(lam D_C(z) 1 - D_C(z) tL~^C(z), D_C(z)) with polynomial entries."""
        z = MultiPoly.var("z")
        lam = MultiPoly.var("lam")
        dc = MultiPoly.var("z", 2 * self.C.tau0)
        for loc, tau in self.C.points:
            dc = dc * (z - loc) ** tau * (z + loc) ** tau
        entries = []
        for a in range(1, self.M + 1):
            row = []
            for b in range(1, self.M + 1):
                acc = self.realize_glMC(("inf", min(a, b), max(a, b))) * dc
                for s in range(2 * self.C.tau0):
                    img = MultiPoly.zero()
                    for k, gen in reduce_origin(s, a, b):
                        img = img + self.realize_glMC(gen) * k
                    if img:
                        acc = acc + img * _poly_div_power(dc, "z", Q(0), s + 1)
                for i, (loc, tau) in enumerate(self.C.points):
                    for r in range(tau):
                        img = self.realize_glMC(("pt", i, r, a, b))
                        if img:
                            acc = acc + img * _poly_div_power(dc, "z", loc, r + 1)
                        img_t = self.realize_glMC(("pt", i, r, b, a))
                        if img_t:
                            sgn = Q(1) if (r + 1) % 2 == 0 else Q(-1)
                            acc = acc + sgn * img_t * _poly_div_power(dc, "z", -loc, r + 1)
                row.append((lam * dc if a == b else MultiPoly.zero()) - acc)
            entries.append(row)
        return RingMatrix(entries, "commutative"), dc

    # -- sp_2N side --------------------------------------------------------

    def index_set(self) -> list[int]:
        N = self.N
        return list(range(-N, 0)) + list(range(1, N + 1))

    def pos(self, I: int) -> int:
        return I + self.N if I < 0 else self.N + I - 1

    def I2(self) -> list[tuple[int, int]]:
        N = self.N
        pairs = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
        pairs += [(i, -j) for i in range(1, N + 1) for j in range(i, N + 1)]
        pairs += [(-i, j) for i in range(1, N + 1) for j in range(i, N + 1)]
        return pairs

    def ebar(self, I: int, J: int) -> list[list[Fraction]]:
        """Defining matrix of Ebar_IJ = E~_IJ - sigma_I sigma_J E~_(-J,-I)."""
        n = 2 * self.N
        m = [[Q(0)] * n for _ in range(n)]
        m[self.pos(I)][self.pos(J)] += Q(1)
        sigma = Q(1) if (I > 0) == (J > 0) else Q(-1)
        m[self.pos(-J)][self.pos(-I)] -= sigma
        return m

    def ebar_dual(self, I: int, J: int) -> list[list[Fraction]]:
        """Dual basis matrices for half the fundamental trace form."""
        n = 2 * self.N
        m = [[Q(0)] * n for _ in range(n)]
        if J == -I:
            m[self.pos(-I)][self.pos(I)] += Q(1)
            return m
        m[self.pos(J)][self.pos(I)] += Q(1)
        sigma = Q(1) if (I > 0) == (J > 0) else Q(-1)
        m[self.pos(-I)][self.pos(-J)] -= sigma
        return m

    def sp_expand(self, x: list[list]) -> dict[tuple[int, int], Fraction]:
        """Coefficients of an sp_2N matrix on the basis {Ebar_IJ}, (I,J) in I2."""
        out = {}
        N = self.N
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                c = x[self.pos(i)][self.pos(j)]
                if c:
                    out[(i, j)] = c
        for i in range(1, N + 1):
            for j in range(i, N + 1):
                c = x[self.pos(i)][self.pos(-j)]
                if i == j:
                    c = c / 2
                if c:
                    out[(i, -j)] = c
                c = x[self.pos(-i)][self.pos(j)]
                if i == j:
                    c = c / 2
                if c:
                    out[(-i, j)] = c
        return out

    def sp_inf_matrix(self) -> list[list]:
        """The matrix whose -(J I) entries realize the sp generators at
        infinity: Jordan data of the cyclotomic divisor plus the mu term."""
        n = 2 * self.N
        rows: list[list] = [[Q(0)] * n for _ in range(n)]
        blocks = []
        for loc, tau in reversed(self.C.points):
            blocks.append((Q(-1), -loc, tau))  # -J_tau(-z_i)
        blocks.append((Q(-1), Q(0), self.C.tau0))  # -J_tau0(0)
        blocks.append((Q(1), Q(0), self.C.tau0))  # +J_tau0(0)
        for loc, tau in self.C.points:
            blocks.append((Q(1), -loc, tau))  # +J_tau(-z_i)
        base = 0
        for sign, diag, tau in blocks:
            for k in range(tau):
                rows[base + k][base + k] = sign * diag
                if k + 1 < tau:
                    rows[base + k + 1][base + k] = sign * Q(-1)
            base += tau
        mu_row, mu_col = self.pos(1), self.pos(-1)
        rows[mu_row][mu_col] = rows[mu_row][mu_col] + self.mu
        return rows

    def realize_sp(self, kind: str, a: int, I: int, J: int,
                   mutation: str | None = None) -> MultiPoly:
        """pibar_b on Ebar^(lambda_a)_IJ (kind "lam") / Ebar^(inf)_IJ."""
        if kind == "inf":
            entry = self.sp_inf_matrix()[self.pos(J)][self.pos(I)]
            entry = entry if isinstance(entry, MultiPoly) else MultiPoly.const(entry)
            return -entry
        if not (1 <= a <= self.M):
            raise IndexOutOfRange(f"point index {a} exceeds M={self.M}")
        sigma_j = 1 if J > 0 else -1

        def q(K: int) -> MultiPoly:
            return MultiPoly.var(f"x{a}_{K}" if K > 0 else f"p{a}_{-K}")

        img = q(I) * q(-J) * Q(sigma_j)
        if mutation == "flip-sign":
            img = -img
        return img

    def sp_generators(self) -> list:
        gens = [("lam", a, I, J) for a in range(1, self.M + 1) for I, J in self.I2()]
        gens += [("inf", 0, I, J) for I, J in self.I2()]
        return gens

    def sp_bracket(self, g1, g2) -> list:
        """[Ebar^(la)_IJ, Ebar^(lb)_KL] via matrix commutators, expanded on
        the I2 basis; infinity is central."""
        if g1[0] == "inf" or g2[0] == "inf" or g1[1] != g2[1]:
            return []
        m1 = self.ebar(g1[2], g1[3])
        m2 = self.ebar(g2[2], g2[3])
        n = 2 * self.N
        comm = [[Q(0)] * n for _ in range(n)]
        for r in range(n):
            for c in range(n):
                acc = Q(0)
                for k in range(n):
                    acc += m1[r][k] * m2[k][c] - m2[r][k] * m1[k][c]
                comm[r][c] = acc
        return [(coeff, ("lam", g1[1], I, J)) for (I, J), coeff in self.sp_expand(comm).items()]

    def lax_sp2N_cleared(self) -> tuple[RingMatrix, MultiPoly]:
        """(z Dbar(lam) 1 - Dbar(lam) L^Dbar(lam), Dbar) with polynomial
        entries, Dbar = prod (lam - lambda_a)."""
        lam = MultiPoly.var("lam")
        z = MultiPoly.var("z")
        dbar = MultiPoly.const(1)
        for la in self.lam:
            dbar = dbar * (lam - la)
        n = 2 * self.N
        acc = [[MultiPoly.zero() for _ in range(n)] for _ in range(n)]
        for I, J in self.I2():
            coeff_inf = self.realize_sp("inf", 0, I, J)
            pieces = []
            if coeff_inf:
                pieces.append(coeff_inf * dbar)
            for a in range(1, self.M + 1):
                img = self.realize_sp("lam", a, I, J)
                if img:
                    pieces.append(img * _poly_div_power(dbar, "lam", self.lam[a - 1], 1))
            if not pieces:
                continue
            total = pieces[0]
            for p in pieces[1:]:
                total = total + p
            mat = self.ebar_dual(I, J)
            for r in range(n):
                for c in range(n):
                    if mat[r][c]:
                        acc[r][c] = acc[r][c] + total * mat[r][c]
        entries = [
            [(z * dbar if r == c else MultiPoly.zero()) - acc[r][c] for c in range(n)]
            for r in range(n)
        ]
        return RingMatrix(entries, "commutative"), dbar


def _poly_div_power(poly: MultiPoly, var: str, root: Fraction, power: int) -> MultiPoly:
    out = poly
    for _ in range(power):
        out = out.divide_linear(var, root)
    return out


# -- verifiers -----------------------------------------------------------------


def verify_cyclotomic_homomorphisms(inst: CycloInstance, mutation: str | None = None) -> dict:
    """Exhaustive generator-pair checks for both realization maps."""
    checked = 0
    gens = inst.glMC_generators()
    images = {g: inst.realize_glMC(g, mutation) for g in gens}
    for g1 in gens:
        for g2 in gens:
            checked += 1
            got = poisson_bracket(images[g1], images[g2])
            want = MultiPoly.zero()
            for coeff, g3 in inst.glMC_bracket(g1, g2):
                want = want + images.get(g3, inst.realize_glMC(g3, mutation)) * coeff
            if got != want:
                return {
                    "status": "fail",
                    "pairs_checked": checked,
                    "witness": {"side": "glM-cyclotomic", "pair": (str(g1), str(g2))},
                }
    sp_gens = inst.sp_generators()
    sp_images = {g: inst.realize_sp(g[0], g[1], g[2], g[3], mutation) for g in sp_gens}
    for g1 in sp_gens:
        for g2 in sp_gens:
            checked += 1
            got = poisson_bracket(sp_images[g1], sp_images[g2])
            want = MultiPoly.zero()
            for coeff, g3 in inst.sp_bracket(g1, g2):
                want = want + sp_images[g3] * coeff
            if got != want:
                return {
                    "status": "fail",
                    "pairs_checked": checked,
                    "witness": {"side": "sp2N", "pair": (str(g1), str(g2))},
                }
    return {"status": "pass", "pairs_checked": checked}


def verify_cyclotomic_duality(inst: CycloInstance) -> dict:
    """Exact equality of the two spectral polynomials in P_b[z, lam]."""
    lhs_m, dc = inst.lax_glMC_cleared()
    det_l = _perm_expansion(lhs_m)
    for _ in range(2 * inst.C.tau0 * (inst.M - 1)):
        det_l = det_l.divide_linear("z", Q(0))
    for loc, tau in inst.C.points:
        for _ in range(tau * (inst.M - 1)):
            det_l = det_l.divide_linear("z", loc)
            det_l = det_l.divide_linear("z", -loc)
    rhs_m, dbar = inst.lax_sp2N_cleared()
    det_r = _perm_expansion(rhs_m)
    for la in inst.lam:
        for _ in range(2 * inst.N - 1):
            det_r = det_r.divide_linear("lam", la)
    equal = det_l == det_r
    report = {
        "status": "pass" if equal else "fail",
        "sizes": {"lhs_terms": det_l.num_terms(), "rhs_terms": det_r.num_terms()},
    }
    if equal:
        report["common_polynomial_terms"] = det_l.num_terms()
        report["common_polynomial"] = repr(det_l)
    else:
        diff = det_l - det_r
        exps = next(iter(sorted(diff.terms)))
        report["witness"] = {
            "monomial": {v: e for v, e in zip(diff.vars, exps) if e},
            "difference": str(diff.terms[exps]),
        }
    return report


def extract_cyclotomic_generators(inst: CycloInstance) -> list[MultiPoly]:
    lhs_m, _ = inst.lax_glMC_cleared()
    det_l = _perm_expansion(lhs_m)
    for _ in range(2 * inst.C.tau0 * (inst.M - 1)):
        det_l = det_l.divide_linear("z", Q(0))
    for loc, tau in inst.C.points:
        for _ in range(tau * (inst.M - 1)):
            det_l = det_l.divide_linear("z", loc)
            det_l = det_l.divide_linear("z", -loc)
    groups = det_l.split_by(("z", "lam"))
    return [groups[k] for k in sorted(groups)]


# -- Lax algebra (classical r-matrix) checks -----------------------------------


class _Frac2:
    """Unreduced fraction of commutative polynomials for two-spectral-variable
    identities; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        self.num = num
        self.den = den if den is not None else MultiPoly.const(1)

    def __add__(self, other):
        return _Frac2(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return _Frac2(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        return _Frac2(self.num * other.num, self.den * other.den)

    def __neg__(self):
        return _Frac2(-self.num, self.den)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return self.num * other.den == other.num * self.den

    __hash__ = None

    @staticmethod
    def zero():
        return _Frac2(MultiPoly.zero())


def _bracket_frac2(f: _Frac2, g: _Frac2) -> _Frac2:
    """Poisson bracket; denominators are spectral-only, hence central."""
    return _Frac2(poisson_bracket(f.num, g.num), f.den * g.den)


def _mat_mul_frac2(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    out = [[_Frac2.zero() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = _Frac2.zero()
            for t in range(k):
                if a[i][t] and b[t][j]:
                    acc = acc + a[i][t] * b[t][j]
            out[i][j] = acc
    return out


def _mat_sub_frac2(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def lax_algebra_check(inst: CycloInstance, which: str) -> dict:
    """Entrywise check of the classical Lax algebra as rational identities
    in two spectral parameters.

    which = "cyclotomic-glM": {L1(z), L2(w)} = [r12(z,w), L1] - [r21(w,z), L2]
    which = "sp2N":           {L1(lam), L2(w)} = [rbar12, L1 + L2]
    """
    if which == "cyclotomic-glM":
        size, lax_z = inst.M, _cyclo_lax_fractions(inst, "z")
        lax_w = _cyclo_lax_fractions(inst, "w")
        r12 = _cyclo_r_matrix(inst.M, "z", "w")
        r21 = _swap_legs(_cyclo_r_matrix(inst.M, "w", "z"), inst.M)
        lhs_pairs = None
    elif which == "sp2N":
        size, lax_z = 2 * inst.N, _sp_lax_fractions(inst, "lam")
        lax_w = _sp_lax_fractions(inst, "w")
        r12 = _sp_r_matrix(inst, "lam", "w")
        r21 = None
    else:
        raise ValueError(f"unknown Lax algebra family {which!r}")

    n2 = size * size
    L1 = [[_Frac2.zero() for _ in range(n2)] for _ in range(n2)]
    L2 = [[_Frac2.zero() for _ in range(n2)] for _ in range(n2)]
    for i in range(size):
        for j in range(size):
            for k in range(size):
                L1[i * size + k][j * size + k] = lax_z[i][j]
                L2[k * size + i][k * size + j] = lax_w[i][j]

    lhs = [[_Frac2.zero() for _ in range(n2)] for _ in range(n2)]
    for i in range(size):
        for j in range(size):
            for k in range(size):
                for l in range(size):
                    lhs[i * size + k][j * size + l] = _bracket_frac2(
                        lax_z[i][j], lax_w[k][l]
                    )

    def comm(A, B):
        return _mat_sub_frac2(_mat_mul_frac2(A, B), _mat_mul_frac2(B, A))

    if which == "cyclotomic-glM":
        rhs = _mat_sub_frac2(comm(r12, L1), comm(r21, L2))
    else:
        total = [[L1[i][j] + L2[i][j] for j in range(n2)] for i in range(n2)]
        rhs = comm(r12, total)

    for i in range(n2):
        for j in range(n2):
            if not lhs[i][j] == rhs[i][j]:
                return {"status": "fail", "witness": {"entry": (i, j)}}
    return {"status": "pass", "entries_checked": n2 * n2}


def _cyclo_lax_fractions(inst: CycloInstance, var: str):
    """Realized cyclotomic Lax matrix (honest, untransposed layout) with
    _Frac2 entries in the spectral variable `var`."""
    M = inst.M
    zv = MultiPoly.var(var)
    entries = [[_Frac2.zero() for _ in range(M)] for _ in range(M)]
    for a in range(1, M + 1):
        for b in range(1, M + 1):
            total = _Frac2(inst.realize_glMC(("inf", min(a, b), max(a, b))))
            for s in range(2 * inst.C.tau0):
                img = MultiPoly.zero()
                for k, gen in reduce_origin(s, a, b):
                    img = img + inst.realize_glMC(gen) * k
                if img:
                    total = total + _Frac2(img, zv ** (s + 1))
            for i, (loc, tau) in enumerate(inst.C.points):
                for r in range(tau):
                    img = inst.realize_glMC(("pt", i, r, a, b))
                    if img:
                        total = total + _Frac2(img, (zv - loc) ** (r + 1))
                    img_t = inst.realize_glMC(("pt", i, r, b, a))
                    if img_t:
                        sgn = Q(1) if (r + 1) % 2 == 0 else Q(-1)
                        total = total + _Frac2(sgn * img_t, (zv + loc) ** (r + 1))
            entries[b - 1][a - 1] = total  # E_ba carries the (ab) coefficient
    return entries


def _sp_lax_fractions(inst: CycloInstance, var: str):
    n = 2 * inst.N
    lamv = MultiPoly.var(var)
    entries = [[_Frac2.zero() for _ in range(n)] for _ in range(n)]
    for I, J in inst.I2():
        total = _Frac2(inst.realize_sp("inf", 0, I, J))
        for a in range(1, inst.M + 1):
            img = inst.realize_sp("lam", a, I, J)
            if img:
                total = total + _Frac2(img, lamv - inst.lam[a - 1])
        mat = inst.ebar_dual(I, J)
        for r in range(n):
            for c in range(n):
                if mat[r][c]:
                    entries[r][c] = entries[r][c] + total * _Frac2(MultiPoly.const(mat[r][c]))
    return entries


def _cyclo_r_matrix(M: int, u: str, v: str):
    """r12(u,v) = sum_ab (E_ba x E_ab / (v-u) - E_ba x E_ba / (v+u))."""
    uu, vv = MultiPoly.var(u), MultiPoly.var(v)
    n2 = M * M
    out = [[_Frac2.zero() for _ in range(n2)] for _ in range(n2)]
    for a in range(1, M + 1):
        for b in range(1, M + 1):
            # E_ba x E_ab: rows (b,a) block indexing (i k), cols (a, b)
            i, j = b - 1, a - 1
            k, l = a - 1, b - 1
            out[i * M + k][j * M + l] = out[i * M + k][j * M + l] + _Frac2(
                MultiPoly.const(1), vv - uu
            )
            k, l = b - 1, a - 1
            out[i * M + k][j * M + l] = out[i * M + k][j * M + l] - _Frac2(
                MultiPoly.const(1), vv + uu
            )
    return out


def _sp_r_matrix(inst: CycloInstance, u: str, v: str):
    """rbar12(u,v) = sum_(I,J) Ebar^IJ x Ebar_IJ / (v - u)."""
    n = 2 * inst.N
    n2 = n * n
    uu, vv = MultiPoly.var(u), MultiPoly.var(v)
    out = [[_Frac2.zero() for _ in range(n2)] for _ in range(n2)]
    pole = _Frac2(MultiPoly.const(1), vv - uu)
    for I, J in inst.I2():
        d = inst.ebar_dual(I, J)
        e = inst.ebar(I, J)
        for i in range(n):
            for j in range(n):
                if not d[i][j]:
                    continue
                for k in range(n):
                    for l in range(n):
                        if e[k][l]:
                            out[i * n + k][j * n + l] = out[i * n + k][j * n + l] + (
                                pole * _Frac2(MultiPoly.const(d[i][j] * e[k][l]))
                            )
    return out


def _swap_legs(r, size: int):
    n2 = size * size
    out = [[_Frac2.zero() for _ in range(n2)] for _ in range(n2)]
    for i in range(size):
        for k in range(size):
            for j in range(size):
                for l in range(size):
                    out[i * size + k][j * size + l] = r[k * size + i][l * size + j]
    return out


def sp_r_matrix_skew_symmetric(inst: CycloInstance) -> bool:
    """rbar12(u,v) = -rbar21(v,u)."""
    r12 = _sp_r_matrix(inst, "lam", "w")
    r21_swapped = _swap_legs(_sp_r_matrix(inst, "w", "lam"), 2 * inst.N)
    n2 = (2 * inst.N) ** 2
    for i in range(n2):
        for j in range(n2):
            if not r12[i][j] == -r21_swapped[i][j]:
                return False
    return True


# -- Neumann model ---------------------------------------------------------------


def neumann_artifacts(M: int, omegas) -> dict:
    """The Neumann instance: N = 1, mu = -1, frequencies omega_a with
    lambda_a = omega_a^2.

    Returns the M x M and 2 x 2 realized Lax matrices (as fraction-valued
    entry grids; the invariant content is their spectral relation), the
    Hamiltonian, and the verification results: the determinant relation,
    Poisson commutativity of H with every spectral coefficient, and the
    exact expression of H as a rational combination of those coefficients.
    """
    omegas = [Q(w) for w in omegas]
    lams = [w * w for w in omegas]
    if len(set(lams)) != len(lams):
        raise DuplicateFrequency("need pairwise distinct omega_a^2")
    inst = CycloInstance(M, CycloDivisor.of(1, []), lams, Q(-1))
    duality = verify_cyclotomic_duality(inst)

    coeffs = extract_cyclotomic_generators(inst)
    # H = 1/4 sum_(a != b) (x_a p_b - x_b p_a)^2 + 1/2 sum omega_a^2 x_a^2
    H = MultiPoly.zero()
    for a in range(1, M + 1):
        for b in range(1, M + 1):
            if a == b:
                continue
            k = MultiPoly.var(f"x{a}_1") * MultiPoly.var(f"p{b}_1") - (
                MultiPoly.var(f"x{b}_1") * MultiPoly.var(f"p{a}_1")
            )
            H = H + k * k * Q(1, 4)
    for a in range(1, M + 1):
        H = H + MultiPoly.var(f"x{a}_1") ** 2 * lams[a - 1] * Q(1, 2)

    commute = all(not poisson_bracket(H, c) for c in coeffs)
    combo = in_span(H, coeffs)
    status = "pass" if (duality["status"] == "pass" and commute and combo is not None) else "fail"
    return {
        "status": status,
        "duality": duality,
        "hamiltonian_commutes": commute,
        "hamiltonian_combination": None if combo is None else [str(c) for c in combo],
        "spectral_coefficients": len(coeffs),
        "instance": inst,
        "hamiltonian": H,
        "lax_glM": _cyclo_lax_fractions(inst, "z"),
        "lax_sp2": _sp_lax_fractions(inst, "lam"),
    }


def sphere_constraint_is_angular_invariant(M: int) -> bool:
    """{sum x_a^2, x_a p_b - x_b p_a} = 0 for all a, b."""
    r2 = MultiPoly.zero()
    for a in range(1, M + 1):
        r2 = r2 + MultiPoly.var(f"x{a}_1") ** 2
    for a in range(1, M + 1):
        for b in range(1, M + 1):
            k = MultiPoly.var(f"x{a}_1") * MultiPoly.var(f"p{b}_1") - (
                MultiPoly.var(f"x{b}_1") * MultiPoly.var(f"p{a}_1")
            )
            if poisson_bracket(r2, k):
                return False
    return True


# -- quantum cyclotomic candidate (negative result) -------------------------------


def quantum_cyclotomic_candidate(inst: CycloInstance) -> RingMatrix:
    """The (M + 2N) x (M + 2N) block matrix behind the classical cyclotomic
    duality with momenta replaced by derivatives; it fails the Manin check."""
    M, N = inst.M, inst.N
    lam_c = WeylElement({(("sp_lam", 1, 0),): Q(1)})
    z_c = WeylElement({(("sp_z", 1, 0),): Q(1)})
    zero = WeylElement.zero()
    top = []
    for a in range(1, M + 1):
        row = [zero] * (a - 1) + [lam_c - WeylElement.const(inst.lam[a - 1])] + [zero] * (M - a)
        xrow = [WeylElement.d(a, i) for i in range(N, 0, -1)]
        xrow += [WeylElement.x(a, i) for i in range(1, N + 1)]
        top.append(row + xrow)
    bottom = []
    z_block = _cyclo_z_matrix(inst, z_c)
    for idx, I in enumerate(inst.index_set()):
        if I < 0:
            col = [-WeylElement.x(a, -I) for a in range(1, M + 1)]
        else:
            col = [WeylElement.d(a, I) for a in range(1, M + 1)]
        bottom.append(col + z_block[idx])
    return RingMatrix(top + bottom, "weyl")


def _cyclo_z_matrix(inst: CycloInstance, z_c: WeylElement):
    """blkdiag(-J(-z-z_i), -J_tau0(-z), J_tau0(z), J(z-z_i)) + mu E~_(1,-1)."""
    n = 2 * inst.N
    zero = WeylElement.zero()
    rows = [[zero for _ in range(n)] for _ in range(n)]
    blocks = []
    for loc, tau in reversed(inst.C.points):
        blocks.append((Q(1), loc, Q(1), tau))  # z + z_i diag, +1 below
    blocks.append((Q(1), Q(0), Q(1), inst.C.tau0))  # z diag, +1 below
    blocks.append((Q(1), Q(0), Q(-1), inst.C.tau0))  # z diag, -1 below
    for loc, tau in inst.C.points:
        blocks.append((Q(1), -loc, Q(-1), tau))  # z - z_i diag, -1 below
    base = 0
    for zscale, shift, below, tau in blocks:
        for k in range(tau):
            rows[base + k][base + k] = z_c * zscale + WeylElement.const(shift)
            if k + 1 < tau:
                rows[base + k + 1][base + k] = WeylElement.const(below)
        base += tau
    mu = inst.mu
    mu_val = mu.constant_value() if mu.is_constant() else None
    if mu_val is None:
        raise ValueError("quantum candidate needs a rational mu")
    rows[inst.pos(1)][inst.pos(-1)] = rows[inst.pos(1)][inst.pos(-1)] + WeylElement.const(mu_val)
    return rows
