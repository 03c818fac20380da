import pytest

from gaudual.gaudin import Divisor, DualityInstance, verify_homomorphism


def make(M, N, dz, dl):
    return DualityInstance(M, N, Divisor.of(dz), Divisor.of(dl))


GRID = [
    (1, 1, [(2, 1)], [(5, 1)]),
    (2, 2, [(1, 2)], [(5, 1), (7, 1)]),
    (2, 3, [(1, 2), (2, 1)], [(5, 1), (7, 1)]),
    (3, 2, [(1, 1), (2, 1)], [(5, 3)]),
    (2, 2, [(1, 2)], [(5, 2)]),
]


@pytest.mark.parametrize("M,N,dz,dl", GRID)
@pytest.mark.parametrize("flavor", ["classical", "fermionic", "quantum"])
def test_realizations_are_homomorphisms(M, N, dz, dl, flavor):
    report = verify_homomorphism(make(M, N, dz, dl), flavor)
    assert report["status"] == "pass"
    assert report["pairs_checked"] > 0


def test_exhaustive_pair_count():
    inst = make(2, 2, [(1, 2)], [(5, 1), (7, 1)])
    report = verify_homomorphism(inst, "classical")
    # glM side: 2 depths x 4 + 4 at infinity = 12; glN side: 2 points x 4 + 4
    assert report["pairs_checked"] == 12 * 12 + 12 * 12


@pytest.mark.parametrize("flavor", ["classical", "fermionic", "quantum"])
def test_sign_flip_mutation_fails_with_witness(flavor):
    inst = make(2, 2, [(1, 1), (2, 1)], [(5, 1), (7, 1)])
    report = verify_homomorphism(inst, flavor, mutation="flip-sign")
    assert report["status"] == "fail"
    assert "pair" in report["witness"]


@pytest.mark.parametrize("flavor", ["classical", "quantum"])
def test_range_off_by_one_mutation_fails(flavor):
    inst = make(2, 2, [(1, 2)], [(5, 2)])
    report = verify_homomorphism(inst, flavor, mutation="range-up")
    assert report["status"] == "fail"
    assert report["witness"]["pair"]


def test_mutation_on_abelian_instance_cannot_fail():
    # gl_1 Takiff algebras are abelian: documented boundary of the mutation test
    inst = make(1, 1, [(2, 1)], [(5, 1)])
    assert verify_homomorphism(inst, "classical", mutation="flip-sign")["status"] == "pass"
