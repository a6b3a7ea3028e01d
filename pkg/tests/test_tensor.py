import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quditinv.errors import ArgumentError, CapacityError
from quditinv.tensor import (
    CovariantTensor,
    LocalGroupElement,
    TensorState,
    basis_diagonal_state,
    compose,
    decomposable,
    dumps_state,
    evaluate,
    flat_index,
    loads_state,
    local_action,
    multi_index,
    permute_factors,
    random_rank_at_most,
    random_state,
    read_state,
    tensor_product,
    write_state,
)


def rng_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def test_flat_index_round_trip():
    for n, k in [(2, 1), (2, 3), (3, 2), (3, 3), (4, 2)]:
        for flat in range(n**k):
            multi = multi_index(flat, n, k)
            assert flat_index(multi, n) == flat
            assert flat == sum(p * n ** (k - 1 - i) for i, p in enumerate(multi))


def test_state_validation():
    with pytest.raises(ArgumentError):
        TensorState(np.zeros((2, 3)))
    with pytest.raises(ArgumentError):
        TensorState(np.zeros((1, 1)))
    with pytest.raises(ArgumentError):
        TensorState.from_components(2, 2, [1, 2, 3])
    u = TensorState.from_components(2, 2, [1, 2, 3, 4])
    assert u[0, 1] == 2 and u[1, 0] == 3
    with pytest.raises(ValueError):
        u.array[0, 0] = 5


def test_basis_diagonal_state():
    assert np.array_equal(basis_diagonal_state(2, 2).array, np.eye(2))
    assert np.array_equal(basis_diagonal_state(3, 2).array, np.eye(3))
    ghz = basis_diagonal_state(2, 3)
    assert ghz[0, 0, 0] == 1 and ghz[1, 1, 1] == 1
    assert np.count_nonzero(ghz.array) == 2


def test_decomposable():
    e1 = [1, 0, 0]
    u = decomposable(e1, e1, e1)
    assert u[0, 0, 0] == 1 and np.count_nonzero(u.array) == 1
    w1, w2 = np.array([1, 2j]), np.array([3, -1])
    assert np.allclose(decomposable(w1, w2).array, np.outer(w1, w2))
    with pytest.raises(ArgumentError):
        decomposable([1, 0], [1, 0, 0])


def test_random_rank_reproducible():
    a = random_rank_at_most(2, 3, 2, seed=5)
    b = random_rank_at_most(2, 3, 2, seed=5)
    assert a == b
    assert not a == random_rank_at_most(2, 3, 2, seed=6)
    one = random_rank_at_most(3, 2, 1, seed=0)
    assert np.linalg.matrix_rank(one.array) == 1


def test_local_action_identity_and_matrix_case():
    rng = np.random.default_rng(0)
    u = random_state(3, 3, 1)
    assert local_action(LocalGroupElement.identity(3, 3), u).allclose(u)
    m = random_state(2, 2, 2)
    g, h = rng_matrix(rng, 2), rng_matrix(rng, 2)
    out = local_action(LocalGroupElement([g, h]), m)
    assert np.allclose(out.array, g @ m.array @ h.T)


def test_local_action_composition():
    rng = np.random.default_rng(1)
    u = random_state(2, 4, 3)
    g = LocalGroupElement(rng_matrix(rng, 2) for _ in range(4))
    h = LocalGroupElement(rng_matrix(rng, 2) for _ in range(4))
    lhs = local_action(g, local_action(h, u))
    rhs = local_action(g @ h, u)
    assert np.allclose(lhs.array, rhs.array, rtol=1e-10, atol=1e-10)


def test_local_action_on_decomposable():
    rng = np.random.default_rng(2)
    ws = [rng.standard_normal(3) for _ in range(3)]
    gs = [rng_matrix(rng, 3) for _ in range(3)]
    out = local_action(LocalGroupElement(gs), decomposable(*ws))
    assert out.allclose(decomposable(*[g @ w for g, w in zip(gs, ws)]))


def test_local_action_shape_mismatch():
    with pytest.raises(ArgumentError):
        local_action(LocalGroupElement.identity(2, 3), random_state(2, 4, 0))


def test_permute_factors_basics():
    u = random_state(3, 2, 0)
    assert permute_factors((0, 1), u) == u
    assert np.array_equal(permute_factors((1, 0), u).array, u.array.T)
    with pytest.raises(ArgumentError):
        permute_factors((0, 0), u)


def test_permute_factors_moves_factor_i_to_slot_sigma_i():
    rng = np.random.default_rng(3)
    ws = [rng.standard_normal(2) for _ in range(4)]
    sigma = (2, 0, 3, 1)
    moved = permute_factors(sigma, decomposable(*ws))
    slots = [None] * 4
    for i, s in enumerate(sigma):
        slots[s] = ws[i]
    assert moved.allclose(decomposable(*slots))
    # componentwise formula
    u = random_state(2, 4, 9)
    v = permute_factors(sigma, u)
    for p in itertools.product(range(2), repeat=4):
        assert v[p] == u[tuple(p[sigma[i]] for i in range(4))]


@settings(max_examples=30)
@given(st.permutations(range(4)), st.permutations(range(4)), st.integers(0, 1000))
def test_permute_factors_is_left_action(sigma, tau, seed):
    u = random_state(2, 4, seed)
    assert permute_factors(sigma, permute_factors(tau, u)) == permute_factors(compose(sigma, tau), u)


def test_tensor_product():
    d = basis_diagonal_state(2, 2)
    dd = tensor_product(d, d)
    assert dd.k == 4 and np.count_nonzero(dd.array) == 4
    u = random_state(2, 2, 0)
    e1 = decomposable([1, 0])
    embedded = tensor_product(u, e1)
    assert np.array_equal(embedded.array[..., 0], u.array)
    assert not embedded.array[..., 1].any()
    with pytest.raises(ArgumentError):
        tensor_product(u, random_state(3, 1, 0))


def test_tensor_product_rank_bound():
    # rank(u (x) v) <= rank(u) rank(v): flattening along the first slot of each block
    u = random_rank_at_most(3, 2, 2, 1)
    v = random_rank_at_most(3, 2, 1, 2)
    w = tensor_product(u, v)
    flat = np.transpose(w.array, (0, 2, 1, 3)).reshape(9, 9)
    assert np.linalg.matrix_rank(flat) <= 2


def test_evaluate_covector_and_linearity():
    rng = np.random.default_rng(4)
    q = rng_matrix(rng, 2).reshape(-1)
    Q = CovariantTensor(q, n=2, d=1, k=2)
    u = random_state(2, 2, 5)
    assert np.isclose(evaluate(Q, u), np.dot(q, u.components))
    lam = 0.3 - 2j
    assert np.isclose(evaluate(Q.scaled(lam), u), lam * evaluate(Q, u))


def test_evaluate_brute_force_sum():
    rng = np.random.default_rng(6)
    Q = CovariantTensor(rng.standard_normal(2**6) + 0j, n=2, d=3, k=2)
    u = random_state(2, 2, 7)
    expected = 0j
    for idx in itertools.product(range(2), repeat=6):
        rows = [idx[2 * a : 2 * a + 2] for a in range(3)]
        expected += Q.array[idx] * np.prod([u[r] for r in rows])
    assert np.isclose(evaluate(Q, u), expected, rtol=1e-12)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_evaluate_homogeneity_and_symmetrization(d):
    rng = np.random.default_rng(d)
    Q = CovariantTensor(rng.standard_normal(2 ** (2 * d)) + 1j * rng.standard_normal(2 ** (2 * d)), n=2, d=d, k=2)
    u = random_state(2, 2, 10 + d)
    lam = 1.7 + 0.4j
    base = evaluate(Q, u)
    assert abs(evaluate(Q, u.scaled(lam)) - lam**d * base) <= 1e-9 * abs(lam**d * base)
    sym = Q.symmetrized()
    assert sym.is_row_symmetric(atol=1e-12)
    assert abs(evaluate(sym, u) - base) <= 1e-9 * abs(base)


def test_capacity_guard():
    with pytest.raises(CapacityError):
        CovariantTensor.zeros(2, 9, 3)
    with pytest.raises(CapacityError):
        CovariantTensor.zeros(3, 4, 5)


def test_file_round_trip_bit_exact(tmp_path):
    u = random_state(3, 3, 11).scaled(1 / 3)
    path = tmp_path / "u.json"
    write_state(u, path)
    back = read_state(path)
    assert back == u
    assert back.components.tobytes() == u.components.tobytes()
    assert loads_state(dumps_state(u)) == u


def test_file_errors():
    with pytest.raises(ArgumentError):
        loads_state("not json")
    with pytest.raises(ArgumentError):
        loads_state('{"n": 2, "k": 2, "components": [[1, 0]]}')
