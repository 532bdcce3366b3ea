import numpy as np
import pytest

from app.core.errors import SizeLimitError
from app.linalg.dense import frobenius_relative_error, operator_schmidt
from app.qft.bounds import theorem_bound, truncation_tail_norm
from app.qft.mpo import QftMpoCache, build_qft_mpo, intermediate_excess, intermediate_spectra_report
from app.schemas.policy import EXACT, TruncationPolicy
from app.tn.canonical import compress, schmidt_spectrum_at
from app.tn.convert import mpo_to_dense


@pytest.mark.parametrize("n", range(2, 11))
def test_exact_mpo_reconstructs_qn(n, exact_qft_mpo, qn_dense):
    assert frobenius_relative_error(mpo_to_dense(exact_qft_mpo(n)), qn_dense(n)) <= 1e-12


def test_single_qubit_mpo_is_hadamard():
    mpo = build_qft_mpo(1, EXACT)
    np.testing.assert_allclose(mpo_to_dense(mpo), np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)


@pytest.mark.parametrize("chi", [2, 4, 8, 16])
def test_truncation_error_matches_dense_tails(chi, exact_qft_mpo, qn_dense):
    q = qn_dense(8)
    tails = np.array([truncation_tail_norm(operator_schmidt(q, j), chi) for j in range(1, 8)])
    compressed = compress(exact_qft_mpo(8), TruncationPolicy(max_chi=chi))
    assert compressed.max_bond <= chi
    error = frobenius_relative_error(mpo_to_dense(compressed), q)
    if np.count_nonzero(tails > 1e-12) <= 1:
        assert error == pytest.approx(float(tails.max()), abs=1e-9)
    else:
        assert float(tails.max()) - 1e-9 <= error <= float(np.sqrt(np.sum(tails**2))) + 1e-9


def test_truncated_build_respects_cap():
    mpo = build_qft_mpo(10, TruncationPolicy(max_chi=4))
    assert mpo.max_bond <= 4
    assert mpo.discarded_weight > 0


def test_report_first_fold_of_two_qubits():
    folds = intermediate_spectra_report(2, EXACT)
    assert folds[0].label == "H(1)"
    np.testing.assert_allclose(folds[0].spectrum_at(1).values, [1.0])


def test_report_final_spectra_match_dense(qn_dense):
    q = qn_dense(8)
    final = intermediate_spectra_report(8, EXACT)[-1]
    for j in range(1, 8):
        dense = operator_schmidt(q, j)
        recorded = final.spectrum_at(j)
        length = max(len(dense.sigmas), len(recorded.sigmas))
        np.testing.assert_allclose(recorded.padded(length), dense.padded(length), atol=1e-10)


def test_intermediate_excess_is_reported():
    folds = intermediate_spectra_report(8, EXACT)
    excess = intermediate_excess(folds, 2)
    assert np.isfinite(excess)
    assert excess >= 1.0 - 1e-9
    assert intermediate_excess(folds, 10_000) == 0.0


def test_report_needs_two_qubits():
    with pytest.raises(SizeLimitError):
        intermediate_spectra_report(1, EXACT)


def test_cache_reuses_builds():
    cache = QftMpoCache()
    policy = TruncationPolicy(cutoff=1e-10, max_chi=8)
    first = cache.get(6, policy)
    assert cache.get(6, TruncationPolicy(cutoff=1e-10, max_chi=8)) is first
    assert cache.build_time(6, policy) > 0
    assert cache.build_time(7, policy) is None
    assert len(cache) == 1
    cache.clear()
    assert len(cache) == 0


@pytest.mark.slow
def test_large_mpo_obeys_decay_bound():
    n = 100
    mpo = build_qft_mpo(n, TruncationPolicy(cutoff=1e-12, max_chi=16))
    assert mpo.max_bond <= 16
    for j in (1, 25, 50, 75, 99):
        sigmas = schmidt_spectrum_at(mpo, j).values
        for k in range(2, len(sigmas)):
            if sigmas[k] > 1e-12:
                assert sigmas[k] <= theorem_bound(k)
