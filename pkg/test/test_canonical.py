import numpy as np
import pytest

from app.core.errors import CutRangeError, SiteMismatchError
from app.linalg.dense import bit_reversal_permutation, frobenius_relative_error, operator_schmidt
from app.schemas.policy import EXACT, TruncationPolicy
from app.tn.canonical import (
    canonicalize,
    chain_add,
    compress,
    difference_norm,
    inner,
    move_center,
    norm,
    reverse_sites,
    scale,
    schmidt_spectrum_at,
    truncate_bond,
)
from app.tn.chain import Mps
from app.tn.convert import mpo_to_dense, mps_to_vector, product_mps, random_mps, vector_to_mps


def _assert_left_isometry(mat, tol=1e-10):
    m = mat.reshape(-1, mat.shape[2])
    np.testing.assert_allclose(m.conj().T @ m, np.eye(m.shape[1]), atol=tol)


def _assert_right_isometry(mat, tol=1e-10):
    m = mat.reshape(mat.shape[0], -1)
    np.testing.assert_allclose(m @ m.conj().T, np.eye(m.shape[0]), atol=tol)


def _ghz(n):
    first = np.zeros((1, 2, 2))
    first[0, 0, 0] = first[0, 1, 1] = 1.0
    middle = np.zeros((2, 2, 2))
    middle[0, 0, 0] = middle[1, 1, 1] = 1.0
    last = np.zeros((2, 2, 1))
    last[0, 0, 0] = last[1, 1, 0] = 1.0
    return Mps([first] + [middle] * (n - 2) + [last])


def _unnormalized_mps(rng, n, chi):
    bonds = [1] + [chi] * (n - 1) + [1]
    return Mps([rng.standard_normal((bonds[i], 2, bonds[i + 1])) for i in range(n)])


def test_left_canonical_isometries(rng):
    m = canonicalize(_unnormalized_mps(rng, 6, 4), "left")
    for mat in m.site_matrices()[:-1]:
        _assert_left_isometry(mat)
    assert m.canonical.kind == "left"
    assert m.canonical.center == 5


def test_right_canonical_isometries(rng):
    m = canonicalize(_unnormalized_mps(rng, 6, 4), "right")
    for mat in m.site_matrices()[1:]:
        _assert_right_isometry(mat)
    assert m.canonical.kind == "right"
    assert m.canonical.center == 0


def test_canonicalize_preserves_state(rng):
    m = _unnormalized_mps(rng, 6, 4)
    v = mps_to_vector(m)
    for direction in ("left", "right"):
        out = mps_to_vector(canonicalize(m, direction))
        assert np.linalg.norm(out - v) <= 1e-12 * np.linalg.norm(v)


def test_canonicalize_is_idempotent(rng):
    m = canonicalize(random_mps(6, 4, rng), "left")
    again = canonicalize(m, "left")
    np.testing.assert_allclose(mps_to_vector(again), mps_to_vector(m), atol=1e-12)


def test_canonicalize_rejects_unknown_direction(rng):
    with pytest.raises(ValueError):
        canonicalize(random_mps(3, 2, rng), "up")


def test_canonicalize_qft_mpo_preserves_operator(exact_qft_mpo, qn_dense):
    q = qn_dense(8)
    for direction in ("left", "right"):
        mpo = canonicalize(exact_qft_mpo(8), direction)
        assert frobenius_relative_error(mpo_to_dense(mpo), q) <= 1e-12


def test_move_center_gauge_invariance(rng):
    m = random_mps(7, 4, rng)
    v = mps_to_vector(m)
    for center in range(7):
        moved = move_center(m, center)
        assert moved.canonical.center == center
        for mat in moved.site_matrices()[:center]:
            _assert_left_isometry(mat)
        for mat in moved.site_matrices()[center + 1 :]:
            _assert_right_isometry(mat)
        np.testing.assert_allclose(mps_to_vector(moved), v, atol=1e-12)
    with pytest.raises(CutRangeError):
        move_center(m, 7)


def test_spectrum_of_product_state():
    m = product_mps([np.array([0.6, 0.8]), np.array([1.0, 0.0]), np.array([1.0, 1.0]) / np.sqrt(2)])
    for j in (1, 2):
        spectrum = schmidt_spectrum_at(m, j)
        np.testing.assert_allclose(spectrum.values, [1.0], atol=1e-14)
        assert not spectrum.operator


def test_spectrum_of_ghz_state():
    m = _ghz(5)
    for j in range(1, 5):
        np.testing.assert_allclose(schmidt_spectrum_at(m, j).values, [1 / np.sqrt(2)] * 2, atol=1e-14)


def test_state_spectrum_matches_dense(rng, random_vector):
    v = random_vector(6)
    m = vector_to_mps(v)
    for j in range(1, 6):
        s = np.linalg.svd(v.reshape(1 << j, -1), compute_uv=False)
        expected = s / np.linalg.norm(s)
        spectrum = schmidt_spectrum_at(m, j)
        np.testing.assert_allclose(spectrum.padded(len(expected)), expected, atol=1e-12)


def test_spectrum_is_gauge_invariant(rng):
    m = random_mps(6, 4, rng)
    reference = schmidt_spectrum_at(m, 3).values
    for center in (0, 5):
        np.testing.assert_allclose(schmidt_spectrum_at(move_center(m, center), 3).values, reference, atol=1e-12)


def test_qft_mpo_spectra_match_dense(exact_qft_mpo, qn_dense):
    q = qn_dense(6)
    mpo = exact_qft_mpo(6)
    for j in range(1, 6):
        dense = operator_schmidt(q, j)
        chain = schmidt_spectrum_at(mpo, j)
        assert chain.operator
        length = max(len(dense.sigmas), len(chain.sigmas))
        np.testing.assert_allclose(chain.padded(length), dense.padded(length), atol=1e-10)


def test_spectrum_cut_range(rng):
    m = random_mps(4, 2, rng)
    for j in (0, 4):
        with pytest.raises(CutRangeError):
            schmidt_spectrum_at(m, j)


def test_truncate_bond_exact_is_identity(rng):
    m = random_mps(6, 4, rng)
    out, weight = truncate_bond(m, 3, EXACT)
    assert weight == 0.0
    assert out.canonical.center == 3
    np.testing.assert_allclose(mps_to_vector(out), mps_to_vector(m), atol=1e-12)


@pytest.mark.parametrize("chi", [2, 4, 8, 16])
def test_truncate_bond_matches_dense_tail(chi, exact_qft_mpo, qn_dense):
    q = qn_dense(8)
    sigmas = operator_schmidt(q, 4).values
    tail = float(np.sum(sigmas[chi:] ** 2))
    out, weight = truncate_bond(exact_qft_mpo(8), 4, TruncationPolicy(max_chi=chi))
    assert out.bond_dims[4] <= chi
    assert weight == pytest.approx(tail, abs=1e-10)
    assert out.discarded_weight == pytest.approx(tail, abs=1e-10)
    assert frobenius_relative_error(mpo_to_dense(out), q) == pytest.approx(np.sqrt(tail), abs=1e-9)


def test_compress_respects_policy(rng, random_vector):
    v = random_vector(8)
    m = vector_to_mps(v)
    out = compress(m, TruncationPolicy(max_chi=4))
    assert out.max_bond <= 4
    assert out.canonical.kind == "right"
    for mat in out.site_matrices()[1:]:
        _assert_right_isometry(mat)
    error = np.linalg.norm(mps_to_vector(out) - v)
    assert error <= np.sqrt(out.discarded_weight) + 1e-12


def test_compress_exact_keeps_state(rng):
    m = random_mps(8, 6, rng)
    out = compress(m, EXACT)
    assert out.max_bond <= m.max_bond
    np.testing.assert_allclose(mps_to_vector(out), mps_to_vector(m), atol=1e-12)


def test_reverse_sites_of_product_state():
    factors = [np.array([1.0, 0.0]), np.array([0.0, 1.0]), np.array([0.6, 0.8])]
    reversed_state = reverse_sites(product_mps(factors))
    expected = mps_to_vector(product_mps(factors[::-1]))
    np.testing.assert_allclose(mps_to_vector(reversed_state), expected, atol=1e-15)


def test_reverse_sites_twice_restores_tensors(rng):
    m = random_mps(6, 4, rng)
    twice = reverse_sites(reverse_sites(m))
    for a, b in zip(m.tensors, twice.tensors):
        np.testing.assert_array_equal(a, b)
    assert twice.canonical == m.canonical


def test_reverse_sites_is_bit_reversal(rng):
    m = random_mps(8, 4, rng)
    v = mps_to_vector(m)
    np.testing.assert_allclose(mps_to_vector(reverse_sites(m)), v[bit_reversal_permutation(8)], atol=1e-14)


def test_reverse_sites_mirrors_flag(rng):
    m = move_center(random_mps(6, 4, rng), 1)
    assert reverse_sites(m).canonical.center == 4


def test_reverse_sites_mirrors_spectra(rng, exact_qft_mpo):
    for chain in (random_mps(8, 5, rng), exact_qft_mpo(6)):
        n = chain.n
        reversed_chain = reverse_sites(chain)
        for j in range(1, n):
            expected = schmidt_spectrum_at(chain, n - j)
            actual = schmidt_spectrum_at(reversed_chain, j)
            length = max(len(expected.sigmas), len(actual.sigmas))
            np.testing.assert_allclose(actual.padded(length), expected.padded(length), atol=1e-12)


def test_norm_and_inner(rng):
    a = random_mps(7, 4, rng)
    b = _unnormalized_mps(rng, 7, 3)
    va, vb = mps_to_vector(a), mps_to_vector(b)
    assert norm(a) == pytest.approx(1.0, abs=1e-12)
    assert norm(b) == pytest.approx(np.linalg.norm(vb), rel=1e-12)
    assert inner(a, b) == pytest.approx(np.vdot(va, vb), abs=1e-12)
    with pytest.raises(SiteMismatchError):
        inner(a, random_mps(6, 2, rng))


def test_norm_of_qft_mpo(exact_qft_mpo):
    assert norm(exact_qft_mpo(6)) == pytest.approx(8.0, rel=1e-12)


def test_scale_keeps_flag(rng):
    m = move_center(random_mps(5, 4, rng), 2)
    scaled = scale(m, 2.0 - 1.0j)
    assert scaled.canonical == m.canonical
    np.testing.assert_allclose(mps_to_vector(scaled), (2.0 - 1.0j) * mps_to_vector(m), atol=1e-12)


def test_chain_add_is_linear(rng):
    a = random_mps(6, 3, rng)
    b = random_mps(6, 2, rng)
    total = chain_add(a, b)
    assert total.bond_dims[3] == a.bond_dims[3] + b.bond_dims[3]
    np.testing.assert_allclose(mps_to_vector(total), mps_to_vector(a) + mps_to_vector(b), atol=1e-12)
    single = chain_add(random_mps(1, 1, rng), random_mps(1, 1, rng))
    assert single.n == 1
    with pytest.raises(SiteMismatchError):
        chain_add(a, random_mps(5, 2, rng))


def test_difference_norm(rng):
    a = random_mps(8, 4, rng)
    b = random_mps(8, 4, rng)
    expected = np.linalg.norm(mps_to_vector(a) - mps_to_vector(b))
    assert difference_norm(a, b) == pytest.approx(expected, rel=1e-10)
    assert difference_norm(a, a) <= 1e-12
