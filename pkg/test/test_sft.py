import time

import numpy as np
import pytest

from app.core.errors import NumericalError, SiteMismatchError, SizeLimitError
from app.functions.encoders import encode, parse_function_spec, reference_vector
from app.linalg.dense import fft
from app.qft.mpo import build_qft_mpo
from app.schemas.function import FunctionSpec
from app.schemas.policy import EXACT, SftOptions, TruncationPolicy
from app.sft.pipeline import fft_reference, relative_error, sft
from app.tn.canonical import chain_add, norm
from app.tn.convert import mps_to_vector, random_mps
from app.tn.zipup import apply_mpo_zipup

CORE_FUNCTIONS = ["constant", "delta:p=7", "plane-wave:k=3", "plane-wave:k=3.5", "gaussian:mu=0.5,s=0.1"]


def test_delta_transforms_to_uniform():
    out = mps_to_vector(sft(encode(FunctionSpec(kind="delta", n=10, p=0))))
    np.testing.assert_allclose(out, np.full(1024, 1 / 32), atol=1e-9)
    assert relative_error(out, np.ones(1024)) <= 1e-8


def test_plane_wave_transforms_to_delta():
    n = 12
    out = mps_to_vector(sft(encode(FunctionSpec(kind="plane_wave", n=n, k=5))))
    expected = np.zeros(1 << n)
    expected[(1 << n) - 5] = 1.0
    assert np.argmax(np.abs(out)) == (1 << n) - 5
    assert relative_error(out, expected) <= 1e-8


def test_random_state_matches_fft(rng):
    state = random_mps(16, 4, rng)
    out = sft(state, SftOptions())
    assert relative_error(mps_to_vector(out), fft(mps_to_vector(state))) <= 1e-8


@pytest.mark.parametrize("n", [10, 13])
@pytest.mark.parametrize("text", CORE_FUNCTIONS)
def test_core_functions_match_fft(text, n):
    spec = parse_function_spec(text, n)
    out = sft(encode(spec, TruncationPolicy(cutoff=1e-10)))
    assert relative_error(mps_to_vector(out), fft(reference_vector(spec))) <= 1e-8


@pytest.mark.slow
@pytest.mark.parametrize("n", range(10, 21))
@pytest.mark.parametrize("text", CORE_FUNCTIONS)
def test_core_functions_match_fft_full_range(text, n):
    spec = parse_function_spec(text, n)
    out = sft(encode(spec, TruncationPolicy(cutoff=1e-10)))
    assert relative_error(mps_to_vector(out), fft(reference_vector(spec))) <= 1e-8


def test_transform_preserves_norm(rng):
    state = random_mps(12, 6, rng)
    assert norm(sft(state)) == pytest.approx(1.0, abs=1e-10)


def test_transform_is_unitary_without_truncation(rng):
    state = random_mps(9, 4, rng)
    out = sft(state, SftOptions(mpo_policy=EXACT, apply_policy=EXACT))
    assert norm(out) == pytest.approx(norm(state), abs=1e-12)


def test_norm_deficit_is_bounded_by_discarded_weight(rng):
    state = random_mps(10, 4, rng)
    out = sft(state, SftOptions(mpo_policy=EXACT, apply_policy=TruncationPolicy(cutoff=1e-10, max_chi=4)))
    assert out.max_bond <= 4
    assert out.discarded_weight > 1e-6
    deficit = 1.0 - norm(out) ** 2
    assert deficit <= out.discarded_weight + 1e-9


@pytest.mark.parametrize("n", [2, 4, 8, 12, 16])
def test_parseval_matches_fft(n, rng):
    state = random_mps(n, 4, rng)
    opts = SftOptions(
        mpo_policy=TruncationPolicy(cutoff=1e-14, max_chi=32), apply_policy=TruncationPolicy(cutoff=1e-14)
    )
    out = mps_to_vector(sft(state, opts))
    expected = fft(mps_to_vector(state))
    assert np.sum(np.abs(out) ** 2) == pytest.approx(np.sum(np.abs(expected) ** 2), abs=1e-9)


def test_discarded_weight_excludes_mpo_truncation(rng):
    mpo = build_qft_mpo(10, TruncationPolicy(cutoff=1e-10, max_chi=4))
    assert mpo.discarded_weight > 0
    state = random_mps(10, 4, rng)
    policy = TruncationPolicy(cutoff=1e-10)
    out = sft(state, SftOptions(apply_policy=policy), mpo=mpo)
    direct = apply_mpo_zipup(mpo, state, policy)
    assert out.discarded_weight == direct.discarded_weight


def test_transform_is_linear(rng):
    a = random_mps(10, 3, rng)
    b = random_mps(10, 3, rng)
    opts = SftOptions(apply_policy=EXACT)
    total = mps_to_vector(sft(chain_add(a, b), opts))
    separate = mps_to_vector(sft(a, opts)) + mps_to_vector(sft(b, opts))
    assert np.linalg.norm(total - separate) <= 1e-9


def test_without_reversal_applies_qn(rng, qn_dense):
    state = random_mps(8, 4, rng)
    out = sft(state, SftOptions(mpo_policy=EXACT, apply_policy=EXACT, reverse_output=False))
    np.testing.assert_allclose(mps_to_vector(out), qn_dense(8) @ mps_to_vector(state), atol=1e-11)


def test_prebuilt_mpo(rng):
    state = random_mps(6, 2, rng)
    mpo = build_qft_mpo(6, EXACT)
    out = sft(state, SftOptions(apply_policy=EXACT), mpo=mpo)
    assert relative_error(mps_to_vector(out), fft(mps_to_vector(state))) <= 1e-10
    with pytest.raises(SiteMismatchError):
        sft(random_mps(7, 2, rng), mpo=mpo)


def test_relative_error_ignores_global_phase(rng):
    a = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    assert relative_error(np.exp(0.7j) * 3.0 * a, a) <= 1e-14
    b = a.copy()
    b[0] += 1.0
    assert relative_error(b, a) > 0


def test_relative_error_rejects_bad_input():
    with pytest.raises(SizeLimitError):
        relative_error(np.ones(4), np.ones(8))
    with pytest.raises(NumericalError):
        relative_error(np.zeros(4), np.ones(4))


def test_fft_reference_agrees_with_fft(rng):
    v = rng.standard_normal(256) + 1j * rng.standard_normal(256)
    np.testing.assert_allclose(fft_reference(v), fft(v), atol=1e-12)


@pytest.mark.slow
def test_thirty_qubits_without_fft():
    start = time.perf_counter()
    out = sft(encode(FunctionSpec(kind="constant", n=30)))
    elapsed = time.perf_counter() - start
    assert out.n == 30
    assert norm(out) == pytest.approx(1.0, abs=1e-8)
    assert elapsed < 120.0
