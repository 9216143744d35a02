from __future__ import annotations

import numpy as np
import pytest

from modisom import grpalg, linalg
from modisom.catalog import builtin
from modisom.errors import InputError, PreconditionError, ResourceError
from modisom.pcgroup import burnside_basis, frattini, gamma, subgroup_frattini

import oracles

SMALL = ["heisenberg", "modular", "c_p2_x_cp", "maxclass_p4", "mini_1"]


def _alg(name, param=3):
    return grpalg.GroupAlgebra(builtin(name, param).presentation)


def test_cyclic_three_powers():
    A = _alg("cyclic", 3)
    assert [c.dim for c in grpalg.ideal_power_chain(A)] == [2, 1, 0]
    g = A.basis_element(1)
    x = (g - A.one()) % 3
    x3 = grpalg.algebra_multiply(A, grpalg.algebra_multiply(A, x, x), x)
    assert not x3.any()


def test_heisenberg_dimensions():
    A = _alg("heisenberg")
    G = A.G
    chain = grpalg.ideal_power_chain(A)
    assert [c.dim for c in chain] == [26, 24, 20, 16, 11, 7, 3, 1, 0]
    assert grpalg.relative_augmentation_ideal(A, gamma(G, 2)).dim == 18
    assert grpalg.commutator_subspace(A).dim == 16
    assert grpalg.algebra_center(A).dim == 11
    assert grpalg.small_group_algebra(A).dim == 10


@pytest.mark.parametrize("name", SMALL)
def test_power_chain_matches_jennings_formula(name):
    A = _alg(name)
    dims = [A.dim] + [c.dim for c in grpalg.ideal_power_chain(A)]
    layers = [dims[i] - dims[i + 1] for i in range(len(dims) - 1)]
    pred = grpalg.jennings_prediction(A.G)
    assert layers == pred[: len(layers)]
    assert sum(pred) == A.dim


@pytest.mark.parametrize("name", SMALL)
def test_commutator_subspace_against_all_pairs(name):
    A = _alg(name)
    M = A.mult
    rows = np.zeros((A.dim * A.dim, A.dim), dtype=np.int64)
    r = np.arange(A.dim * A.dim)
    rows[r, M.reshape(-1)] += 1
    rows[r, M.T.reshape(-1)] += A.p - 1
    ref = linalg.span(A.p, A.dim, rows % A.p)
    assert grpalg.commutator_subspace(A) == ref


@pytest.mark.parametrize("name", ["heisenberg", "modular", "maxclass_p4"])
def test_center_against_nullspace(name):
    A = _alg(name)
    # v central iff v g = g v for every generator: (R_g - L_g) acting on v
    blocks = []
    for g in A.gen_indices:
        e = np.eye(A.dim, dtype=np.int64)
        left = A.left_mul_gen(g, e)
        right = A.right_mul_gen(e, g)
        blocks.append(((right - left) % A.p).T)
    basis = oracles.nullspace_mod_p(np.vstack(blocks), A.p)
    assert grpalg.algebra_center(A) == linalg.span(A.p, A.dim, np.array(basis))


@pytest.mark.parametrize("name", ["heisenberg", "c_p2_x_cp"])
def test_ideal_product_general_vs_shortcut(name):
    A = _alg(name)
    I = grpalg.augmentation_ideal(A)
    I2 = grpalg.augmentation_times(A, I)
    assert grpalg.ideal_product(A, I, I) == I2
    # element-wise product of spanning sets as the independent oracle
    prods = [grpalg.algebra_multiply(A, u, v) for u in I.basis for v in I.basis]
    assert linalg.span(A.p, A.dim, np.array(prods)) == I2


@pytest.mark.parametrize("name", SMALL)
def test_frattini_from_algebra(name):
    A = _alg(name)
    assert grpalg.frattini_from_algebra(A) == frattini(A.G)


@pytest.mark.parametrize("name", SMALL)
def test_small_group_algebra_kernel(name):
    A = _alg(name)
    S = grpalg.small_group_algebra(A)
    img = grpalg.group_image(S, "S")
    assert img.kernel == subgroup_frattini(gamma(A.G, 2))
    assert img.kernel_matches


def test_quotient_algebra_is_homomorphic_image():
    A = _alg("maxclass_p4")
    S = grpalg.small_group_algebra(A)
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = rng.integers(0, 3, size=(2, A.dim))
        assert np.array_equal(S.project(grpalg.algebra_multiply(A, a, b)), S.multiply(S.project(a), S.project(b)))


def test_extreme_quotients():
    A = _alg("heisenberg")
    Q0 = grpalg.quotient_algebra(A, linalg.zero_subspace(3, A.dim))
    assert Q0.dim == A.dim
    Q1 = grpalg.quotient_algebra(A, grpalg.augmentation_ideal(A))
    assert Q1.dim == 1
    assert grpalg.unit_closure(Q1, [Q1.unit]).order == 1


def test_one_sided_modulus_rejected():
    A = _alg("heisenberg")
    # span of (g1 - 1) alone is not an ideal
    v = (A.basis_element(A.gen_indices[0]) - A.one()) % 3
    with pytest.raises(PreconditionError):
        grpalg.quotient_algebra(A, linalg.span(3, A.dim, v[None, :]))


def test_caps():
    G = builtin("heisenberg", 3).presentation
    with pytest.raises(ResourceError):
        grpalg.GroupAlgebra(G, max_dim=10)
    A = grpalg.GroupAlgebra(G)
    S = grpalg.small_group_algebra(A)
    with pytest.raises(ResourceError):
        grpalg.unit_closure(S, [S.image(1)], cap=100)
    with pytest.raises(InputError):
        grpalg.algebra_multiply(A, np.zeros(3), np.zeros(3))


@pytest.mark.parametrize("name", ["heisenberg", "modular"])
def test_unit_group_of_small_group_algebra(name):
    A = _alg(name)
    S = grpalg.small_group_algebra(A)
    burnside = burnside_basis(A.G)
    gens = [S.image(g) for g in burnside] + [a for _, a in grpalg.a_subgroup_generators(S, burnside)]
    V = grpalg.unit_closure(S, gens)
    assert V.order == 3 ** (S.dim - 1)
    derived = grpalg.derived_unit_subgroup(S, gens)
    img = grpalg.group_image(S)
    g2 = set(grpalg.encode(3, img.images[gamma(A.G, 2).element_indices()]).tolist())
    assert derived.code_set() == g2
    assert grpalg.check_a_commutator_law(S, burnside)


@pytest.mark.parametrize("name", SMALL)
def test_d_two_ways(name):
    from modisom.mip import d_invariant

    A = _alg(name)
    assert grpalg.compute_d_algebra(A) == d_invariant(A.G)
