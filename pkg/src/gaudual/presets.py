"""Built-in instance grids.

The acceptance grids instantiate marked points from the fixed rational
pools {1, 2, 3} (z side) and {5, 7, 11} (lambda side); divisor shapes are
partitions of the degree with bounded parts, one instance per shape pair.
"""

from __future__ import annotations

Z_POOL = ["1", "2", "3"]
LAM_POOL = ["5", "7", "11"]


def partitions(n: int, max_part: int) -> list[list[int]]:
    """Partitions of n with parts <= max_part, descending parts."""
    if n == 0:
        return [[]]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append([first] + rest)
    return out


def divisor_shapes(degree: int, max_degree: int, pool: list[str]) -> list[list]:
    shapes = []
    for parts in partitions(degree, max_degree):
        shapes.append([[pool[k], parts[k]] for k in range(len(parts))])
    return shapes


def classical_bosonic_grid(max_mn: int = 3, max_degree: int = 3) -> list[dict]:
    out = []
    for M in range(1, max_mn + 1):
        for N in range(1, max_mn + 1):
            for dz in divisor_shapes(N, max_degree, Z_POOL):
                for dl in divisor_shapes(M, max_degree, LAM_POOL):
                    out.append(
                        {
                            "kind": "classical-bosonic",
                            "M": M,
                            "N": N,
                            "divisor": dz,
                            "dual_divisor": dl,
                        }
                    )
    return out


def fermionic_grid() -> list[dict]:
    out = []
    for spec in classical_bosonic_grid(max_mn=2, max_degree=3):
        out.append(dict(spec, kind="classical-fermionic"))
    return out


def quantum_grid() -> list[dict]:
    out = []
    for M in (1, 2):
        for N in (1, 2):
            for dz in divisor_shapes(N, 2, Z_POOL):
                for dl in divisor_shapes(M, 2, LAM_POOL):
                    out.append(
                        {
                            "kind": "quantum-bosonic",
                            "M": M,
                            "N": N,
                            "divisor": dz,
                            "dual_divisor": dl,
                        }
                    )
    return out


def homomorphism_grid() -> list[dict]:
    """Every realization flavor over the full M, N <= 3, degree <= 3 grid,
    plus the cyclotomic maps over the cyclotomic grid."""
    out = []
    for flavor in ("classical-bosonic", "classical-fermionic", "quantum-bosonic"):
        for spec in classical_bosonic_grid():
            out.append(
                {
                    "kind": "homomorphism",
                    "realization": flavor,
                    "M": spec["M"],
                    "N": spec["N"],
                    "divisor": spec["divisor"],
                    "dual_divisor": spec["dual_divisor"],
                }
            )
    for spec in cyclotomic_grid():
        out.append(
            {
                "kind": "homomorphism",
                "realization": "cyclotomic",
                "M": spec["M"],
                "N": spec["N"],
                "tau0": spec["tau0"],
                "divisor": spec["divisor"],
                "lambda_points": spec["lambda_points"],
                "mu": spec["mu"],
            }
        )
    return out


def mutation_instances() -> list[dict]:
    """One deliberately broken realization per realization map; these must fail."""
    base = {
        "M": 2,
        "N": 2,
        "divisor": [["1", 1], ["2", 1]],
        "dual_divisor": [["5", 1], ["7", 1]],
    }
    out = []
    for realization, mutation in [
        ("classical-bosonic", "flip-sign"),
        ("classical-bosonic", "range-up"),
        ("classical-fermionic", "flip-sign"),
        ("quantum-bosonic", "flip-sign"),
        ("quantum-bosonic", "range-up"),
    ]:
        out.append(
            dict(
                base,
                kind="homomorphism",
                realization=realization,
                options={"mutation": mutation, "expect": "fail"},
            )
        )
    out.append(
        {
            "kind": "homomorphism",
            "realization": "cyclotomic",
            "M": 2,
            "N": 2,
            "tau0": 2,
            "divisor": [],
            "lambda_points": ["5", "7"],
            "mu": "-1",
            "options": {"mutation": "y-sign", "expect": "fail"},
        }
    )
    return out


def commutativity_grid() -> list[dict]:
    out = []
    for spec in classical_bosonic_grid():
        out.append(
            {
                "kind": "commutativity",
                "flavor": "classical",
                "M": spec["M"],
                "N": spec["N"],
                "divisor": spec["divisor"],
                "dual_divisor": spec["dual_divisor"],
            }
        )
    for spec in quantum_grid():
        out.append(
            {
                "kind": "commutativity",
                "flavor": "quantum",
                "M": spec["M"],
                "N": spec["N"],
                "divisor": spec["divisor"],
                "dual_divisor": spec["dual_divisor"],
            }
        )
    return out


def cyclotomic_grid() -> list[dict]:
    """(M, N) in {1,2}^2, tau0 in {1,2} where the degree constraint allows,
    mu in {0, -1, 3/2}."""
    out = []
    shapes = {
        1: [(1, [])],
        2: [(1, [["1", 1]]), (2, [])],
    }
    for M in (1, 2):
        for N in (1, 2):
            for tau0, pts in shapes[N]:
                for mu in ("0", "-1", "3/2"):
                    out.append(
                        {
                            "kind": "cyclotomic",
                            "M": M,
                            "N": N,
                            "tau0": tau0,
                            "divisor": pts,
                            "lambda_points": LAM_POOL[:M],
                            "mu": mu,
                        }
                    )
    out.append(
        {
            "kind": "cyclotomic",
            "M": 2,
            "N": 2,
            "tau0": 1,
            "divisor": [["1", 1]],
            "lambda_points": ["5", "7"],
            "mu": "0",
            "options": {"symbolic_mu": True},
        }
    )
    return out


def neumann_instances(M: int | None = None) -> list[dict]:
    omegas = {2: ["1", "2"], 3: ["1", "2", "3"]}
    sizes = [M] if M else [2, 3]
    return [{"kind": "neumann", "M": m, "omega": omegas[m]} for m in sizes]


def negative_manin_instance() -> dict:
    return {
        "kind": "cyclotomic",
        "M": 2,
        "N": 2,
        "tau0": 1,
        "divisor": [["1", 1]],
        "lambda_points": ["5", "7"],
        "mu": "-1",
        "options": {"quantum_candidate": True, "expect": "fail"},
    }


def lax_algebra_instances() -> list[dict]:
    base = {
        "M": 1,
        "N": 1,
        "tau0": 1,
        "divisor": [],
        "lambda_points": ["5"],
        "mu": "-1",
    }
    return [
        dict(base, kind="lax-algebra", which="cyclotomic-glM"),
        dict(base, kind="lax-algebra", which="sp2N"),
        {
            "kind": "lax-algebra",
            "which": "cyclotomic-glM",
            "M": 2,
            "N": 2,
            "tau0": 1,
            "divisor": [["1", 1]],
            "lambda_points": ["5", "7"],
            "mu": "3/2",
        },
    ]


PRESETS = {
    "classical-grid": classical_bosonic_grid,
    "fermionic-grid": fermionic_grid,
    "quantum-grid": quantum_grid,
    "homomorphism-grid": homomorphism_grid,
    "mutation-suite": mutation_instances,
    "commutativity-grid": commutativity_grid,
    "cyclotomic-grid": cyclotomic_grid,
    "neumann": neumann_instances,
    "lax-algebra": lax_algebra_instances,
}


def paper_core() -> list[dict]:
    """The full acceptance grid: criteria 1-8."""
    out = []
    out += classical_bosonic_grid()
    out += fermionic_grid()
    out += quantum_grid()
    out += homomorphism_grid()
    out += mutation_instances()
    out += commutativity_grid()
    out += cyclotomic_grid()
    out += neumann_instances()
    out += [negative_manin_instance()]
    out += lax_algebra_instances()
    return out


PRESETS["paper-core"] = paper_core
