from fractions import Fraction

import pytest

from gaudual.errors import RequiresRegularDivisor
from gaudual.gaudin import (
    Divisor,
    DualityInstance,
    build_quadratic_hamiltonians,
    check_commutativity,
    extract_gaudin_generators,
    glN_convention_generators,
    hamiltonians_in_commutant,
    weyl_same_span,
)
from gaudual.multipoly import MultiPoly
from gaudual.weyl import WeylElement, weyl_commutator

Q = Fraction
W = WeylElement


def make(M, N, dz, dl):
    return DualityInstance(M, N, Divisor.of(dz), Divisor.of(dl))


def test_quantum_extraction_one_one():
    # S_1 = z - z1 contributes {1, -z1}; S_0 = -lam1 z + lam1 z1 - x d
    inst = make(1, 1, [(2, 1)], [(5, 1)])
    gens = extract_gaudin_generators(inst, "quantum")
    assert len(gens) == 4
    assert W.const(10) - W.x(1, 1) * W.d(1, 1) in gens  # lam1 z1 - x d
    assert W.const(-5) in gens and W.const(1) in gens and W.const(-2) in gens


def test_classical_extraction_leading_term():
    # the lam^M z^N coefficient of the spectral polynomial is 1
    inst = make(2, 2, [(1, 1), (2, 1)], [(5, 1), (7, 1)])
    gens = extract_gaudin_generators(inst, "classical")
    det_l_coeffs = {repr(g) for g in gens}
    assert "1" in det_l_coeffs
    assert len(gens) == 9  # (deg z + 1)(deg lam + 1)


@pytest.mark.parametrize(
    "flavor,M,N,dz,dl",
    [
        ("classical", 2, 2, [(1, 2)], [(5, 1), (7, 1)]),
        ("classical", 2, 2, [(1, 1), (2, 1)], [(5, 2)]),
        ("quantum", 2, 2, [(1, 1), (2, 1)], [(5, 1), (7, 1)]),
        ("quantum", 1, 2, [(1, 2)], [(5, 1)]),
    ],
)
def test_generators_commute(flavor, M, N, dz, dl):
    gens = extract_gaudin_generators(make(M, N, dz, dl), flavor)
    report = check_commutativity(gens, flavor)
    assert report["status"] == "pass"
    assert report["pairs_checked"] >= 10


def test_single_generator_self_pair():
    g = W.x(1, 1) * W.d(1, 1)
    report = check_commutativity([g], "quantum")
    assert report["status"] == "pass"
    assert report["pairs_checked"] == 1


def test_commutativity_failure_witness():
    report = check_commutativity([W.x(1, 1), W.d(1, 1)], "quantum")
    assert report["status"] == "fail"
    assert report["witness"]["pair"] == (0, 1)


# -- quadratic Hamiltonians --------------------------------------------------


def test_hamiltonian_shape_n1():
    # N = 1: no pairwise term, H_1 = sum_a lam_a x^a d^a
    hams = build_quadratic_hamiltonians([Q(1)], [Q(5), Q(7)])
    assert len(hams) == 1
    expected = W.x(1, 1) * W.d(1, 1) * 5 + W.x(2, 1) * W.d(2, 1) * 7
    assert hams[0] == expected


def test_hamiltonian_explicit_m1_n2():
    hams = build_quadratic_hamiltonians([Q(1), Q(2)], [Q(5)])
    h1 = (W.x(1, 1) * W.d(1, 1)) * (W.x(1, 2) * W.d(1, 2)) * Q(1, 1 - 2) + (
        W.x(1, 1) * W.d(1, 1) * 5
    )
    assert hams[0] == h1


def test_hamiltonians_commute_with_gaudin_algebra():
    inst = make(2, 2, [(1, 1), (2, 1)], [(5, 1), (7, 1)])
    report = hamiltonians_in_commutant(inst)
    assert report["status"] == "pass"
    assert report["hamiltonians"] == 2


def test_hamiltonians_commute_with_total_number_operator():
    hams = build_quadratic_hamiltonians([Q(1), Q(2)], [Q(5), Q(7)])
    total = sum(
        (W.x(a, i) * W.d(a, i) for a in (1, 2) for i in (1, 2)),
        W.zero(),
    )
    h_sum = sum(hams, W.zero())
    assert weyl_commutator(h_sum, total) == 0


def test_hamiltonians_need_regular_divisor():
    inst = make(2, 2, [(1, 2)], [(5, 1), (7, 1)])
    with pytest.raises(RequiresRegularDivisor):
        hamiltonians_in_commutant(inst)


# -- the two cdet conventions generate the same algebra ------------------------


@pytest.mark.parametrize(
    "M,N,dz,dl",
    [
        (1, 1, [(2, 1)], [(5, 1)]),
        (2, 1, [(1, 1)], [(5, 1), (7, 1)]),
        (1, 2, [(1, 1), (2, 1)], [(5, 1)]),
        (2, 1, [(1, 1)], [(5, 2)]),
    ],
)
def test_cdet_conventions_span_equality(M, N, dz, dl):
    gens_plus, gens_minus = glN_convention_generators(make(M, N, dz, dl))
    one = WeylElement.const(1)
    assert weyl_same_span(gens_plus + [one], gens_minus + [one])
