from fractions import Fraction

import pytest

from gaudual.errors import DivisorMismatch
from gaudual.gaudin import (
    Divisor,
    DualityInstance,
    _divide_out,
    _spectral_dets,
    quantum_block_matrix,
    quantum_classical_limits_agree,
    quantum_operator_sides,
    verify_classical_bosonic_duality,
    verify_classical_fermionic_duality,
    verify_quantum_duality,
)
from gaudual.matrices import manin_check
from gaudual.multipoly import MultiPoly
from gaudual.weyl import WeylElement

Q = Fraction
V = MultiPoly.var
W = WeylElement


def make(M, N, dz, dl):
    return DualityInstance(M, N, Divisor.of(dz), Divisor.of(dl))


def test_classical_one_one_hand_oracle():
    # both sides = (z - z1)(lam - lam1) - x p
    inst = make(1, 1, [(2, 1)], [(5, 1)])
    det_l, det_r, _, _ = _spectral_dets(inst, "classical")
    lhs = _divide_out(det_l, inst.div_z, "z", 0)
    rhs = _divide_out(det_r, inst.div_lam, "lam", 0)
    expected = (V("z") - 2) * (V("lam") - 5) - V("x1_1") * V("p1_1")
    assert lhs == expected
    assert rhs == expected


@pytest.mark.parametrize(
    "M,N,dz,dl",
    [
        (1, 1, [(2, 1)], [(5, 1)]),
        (2, 2, [(1, 2)], [(5, 1), (7, 1)]),
        (3, 2, [(1, 1), (2, 1)], [(5, 2), (7, 1)]),
        (2, 3, [(1, 3)], [(5, 1), (7, 1)]),
    ],
)
def test_classical_bosonic_duality(M, N, dz, dl):
    report = verify_classical_bosonic_duality(make(M, N, dz, dl))
    assert report["status"] == "pass"


def test_classical_duality_sampled_mode():
    report = verify_classical_bosonic_duality(
        make(2, 2, [(1, 2)], [(5, 2)]), sample_seed=8093
    )
    assert report["status"] == "pass"


def test_divisor_mismatch_raises():
    with pytest.raises(DivisorMismatch):
        make(1, 2, [(1, 1)], [(5, 1)])


def test_fermionic_one_one_cross_term_cancels():
    # product = (lam - lam1)(z - z1): pi psi pi psi = 0 kills the cross term
    inst = make(1, 1, [(2, 1)], [(5, 1)])
    report = verify_classical_fermionic_duality(inst)
    assert report["status"] == "pass"


@pytest.mark.parametrize(
    "M,N,dz,dl",
    [
        (2, 1, [(1, 1)], [(5, 2)]),
        (2, 2, [(1, 2)], [(5, 2)]),
        (2, 2, [(1, 1), (2, 1)], [(5, 1), (7, 1)]),
    ],
)
def test_fermionic_duality(M, N, dz, dl):
    assert verify_classical_fermionic_duality(make(M, N, dz, dl))["status"] == "pass"


def test_quantum_one_one_hand_oracle():
    # LHS (z-z1)(Dz-lam1) - xd and RHS (Dz-lam1)(z-z1) - dx agree after
    # normal ordering: (z-z1) Dz - lam1 z + lam1 z1 - x d
    inst = make(1, 1, [(2, 1)], [(5, 1)])
    left, right = quantum_operator_sides(inst)
    expected = (
        (W.z() - 2) * W.dz()
        - W.z() * 5
        + W.const(10)
        - W.x(1, 1) * W.d(1, 1)
    )
    assert left.to_polynomial() == expected
    assert right.to_polynomial() == expected


@pytest.mark.parametrize(
    "M,N,dz,dl",
    [
        (1, 1, [(2, 1)], [(5, 1)]),
        (1, 2, [(1, 2)], [(5, 1)]),  # irregular singularity against a Jordan block
        (2, 1, [(1, 1)], [(5, 2)]),
        (2, 2, [(1, 2)], [(5, 2)]),
    ],
)
def test_quantum_duality(M, N, dz, dl):
    report = verify_quantum_duality(make(M, N, dz, dl))
    assert report["status"] == "pass"
    assert report["manin"] is True


def test_quantum_block_matrix_is_manin():
    inst = make(2, 2, [(1, 2)], [(5, 2)])
    ok, witness = manin_check(quantum_block_matrix(inst))
    assert ok and witness is None


@pytest.mark.parametrize(
    "M,N,dz,dl",
    [
        (1, 2, [(1, 2)], [(5, 1)]),
        (2, 2, [(1, 2)], [(5, 1), (7, 1)]),
    ],
)
def test_classical_limit_reproduces_classical_polynomial(M, N, dz, dl):
    assert quantum_classical_limits_agree(make(M, N, dz, dl))
