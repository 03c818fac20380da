"""Instance validation and dispatch.

An instance is a plain JSON-compatible dict (see README for the schema);
rationals travel as "p/q" strings so exactness survives serialization.
Reports are deterministic dicts: no timestamps, sizes and witnesses only.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import (
    CycloDivisor,
    CycloInstance,
    extract_cyclotomic_generators,
    lax_algebra_check,
    neumann_artifacts,
    quantum_cyclotomic_candidate,
    sphere_constraint_is_angular_invariant,
    verify_cyclotomic_duality,
    verify_cyclotomic_homomorphisms,
)
from .errors import GaudualError, GuardExceeded, SpecValidationError
from .gaudin import (
    Divisor,
    DualityInstance,
    check_commutativity,
    extract_gaudin_generators,
    verify_classical_bosonic_duality,
    verify_classical_fermionic_duality,
    verify_homomorphism,
    verify_quantum_duality,
)
from .matrices import manin_check
from .multipoly import MultiPoly
from .scalars import rat

KINDS = {
    "classical-bosonic",
    "classical-fermionic",
    "quantum-bosonic",
    "cyclotomic",
    "neumann",
    "homomorphism",
    "commutativity",
    "lax-algebra",
}

SAMPLE_SEED = 8093  # fixed: sampled runs stay deterministic


def _points(raw) -> list[tuple[Fraction, int]]:
    return [(rat(p), int(t)) for p, t in raw]


def validate_instance(spec: dict) -> None:
    """Cheap divisor-constraint validation; raises SpecValidationError."""
    kind = spec.get("kind")
    if kind not in KINDS:
        raise SpecValidationError(f"unknown kind {kind!r}")
    try:
        if kind == "neumann":
            omegas = [rat(w) for w in spec["omega"]]
            if len(omegas) != int(spec["M"]):
                raise SpecValidationError("need M frequencies")
            if len({w * w for w in omegas}) != len(omegas):
                raise SpecValidationError("frequencies must have distinct squares")
            return
        M, N = int(spec["M"]), int(spec["N"])
        cyclo = "tau0" in spec
        if cyclo:
            tau0 = int(spec["tau0"])
            pts = _points(spec.get("divisor", []))
            total = tau0 + sum(t for _, t in pts)
            if total != N:
                raise SpecValidationError(
                    f"cyclotomic divisor violates τ_0 + Σ τ_i = N: {total} != {N}"
                )
            lams = [rat(p) for p in spec["lambda_points"]]
            if len(lams) != M or len(set(lams)) != M:
                raise SpecValidationError("need M distinct lambda points")
            CycloDivisor.of(tau0, pts)  # distinctness of +-z_i
        else:
            dz = _points(spec["divisor"])
            dl = _points(spec["dual_divisor"])
            if sum(t for _, t in dz) != N:
                raise SpecValidationError(
                    f"divisor violates Σ τ_i = N: {sum(t for _, t in dz)} != {N}"
                )
            if sum(t for _, t in dl) != M:
                raise SpecValidationError(
                    f"dual divisor violates Σ τ̃_a = M: {sum(t for _, t in dl)} != {M}"
                )
            Divisor.of(dz)
            Divisor.of(dl)
    except SpecValidationError:
        raise
    except (KeyError, ValueError, TypeError, GaudualError) as err:
        raise SpecValidationError(str(err)) from err


def _size_guard(spec: dict, max_terms: int) -> None:
    M = int(spec.get("M", 1))
    N = int(spec.get("N", 1))
    # crude desk-scale ceiling: the bivariate determinant has at most
    # (M + N)! * 4^(M + N) monomials before cancellation
    import math

    estimate = math.factorial(M + N) * 4 ** (M + N)
    if estimate > max_terms:
        raise GuardExceeded(
            f"instance estimate {estimate} exceeds --max-terms {max_terms}"
        )


def _build_duality(spec: dict) -> DualityInstance:
    return DualityInstance(
        int(spec["M"]),
        int(spec["N"]),
        Divisor.of(_points(spec["divisor"])),
        Divisor.of(_points(spec["dual_divisor"])),
    )


def _build_cyclo(spec: dict) -> CycloInstance:
    opts = spec.get("options", {})
    mu = MultiPoly.var("mu") if opts.get("symbolic_mu") else rat(spec["mu"])
    return CycloInstance(
        int(spec["M"]),
        CycloDivisor.of(int(spec["tau0"]), _points(spec.get("divisor", []))),
        [rat(p) for p in spec["lambda_points"]],
        mu,
    )


def run_instance(spec: dict, mode: str | None = None, max_terms: int = 10**7) -> dict:
    """Dispatch one instance; returns the deterministic report body."""
    opts = dict(spec.get("options", {}))
    if mode:
        opts["mode"] = mode
    expect = opts.get("expect", "pass")
    try:
        validate_instance(spec)
        _size_guard(spec, max_terms)
        report = _dispatch(spec, opts)
    except SpecValidationError:
        raise
    except GuardExceeded as err:
        return {"instance": spec, "status": "error", "witness": {"guard": str(err)}}
    except GaudualError as err:
        return {
            "instance": spec,
            "status": "error",
            "witness": {"error": type(err).__name__, "detail": str(err)},
        }
    if expect == "fail":
        inner = report.get("status")
        report["status"] = "pass" if inner == "fail" else "fail"
        report["expected"] = "fail"
        if report["status"] == "pass" and "witness" not in report:
            report["witness"] = {"note": "inner check failed as expected"}
    report["instance"] = spec
    return report


def _dispatch(spec: dict, opts: dict) -> dict:
    kind = spec["kind"]
    if kind == "classical-bosonic":
        inst = _build_duality(spec)
        seed = SAMPLE_SEED if opts.get("mode") == "sampled" else None
        return verify_classical_bosonic_duality(inst, sample_seed=seed)
    if kind == "classical-fermionic":
        return verify_classical_fermionic_duality(_build_duality(spec))
    if kind == "quantum-bosonic":
        return verify_quantum_duality(_build_duality(spec))
    if kind == "homomorphism":
        mutation = opts.get("mutation")
        realization = spec.get("realization", "classical-bosonic")
        if realization == "cyclotomic":
            return verify_cyclotomic_homomorphisms(_build_cyclo(spec), mutation)
        flavor = {
            "classical-bosonic": "classical",
            "classical-fermionic": "fermionic",
            "quantum-bosonic": "quantum",
        }[realization]
        return verify_homomorphism(_build_duality(spec), flavor, mutation)
    if kind == "commutativity":
        flavor = spec.get("flavor", "classical")
        if flavor == "cyclotomic":
            gens = extract_cyclotomic_generators(_build_cyclo(spec))
            report = check_commutativity(gens, "classical")
        else:
            inst = _build_duality(spec)
            gens = extract_gaudin_generators(inst, flavor)
            report = check_commutativity(gens, flavor)
        report["generators"] = len(gens)
        return report
    if kind == "cyclotomic":
        inst = _build_cyclo(spec)
        if opts.get("quantum_candidate"):
            ok, witness = manin_check(quantum_cyclotomic_candidate(inst))
            return {
                "status": "pass" if ok else "fail",
                "manin": ok,
                "witness": None if ok else {"manin_quadruple": list(witness)},
            }
        return verify_cyclotomic_duality(inst)
    if kind == "neumann":
        rep = neumann_artifacts(int(spec["M"]), [rat(w) for w in spec["omega"]])
        rep.pop("hamiltonian")
        rep.pop("instance")
        rep.pop("lax_glM")
        rep.pop("lax_sp2")
        rep["sphere_constraint_invariant"] = sphere_constraint_is_angular_invariant(
            int(spec["M"])
        )
        if not rep["sphere_constraint_invariant"]:
            rep["status"] = "fail"
        return rep
    if kind == "lax-algebra":
        return lax_algebra_check(_build_cyclo(spec), spec["which"])
    raise SpecValidationError(f"unknown kind {kind!r}")
