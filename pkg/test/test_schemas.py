import numpy as np
import pytest
from pydantic import ValidationError

from app.schemas.bench import CSV_COLUMNS, BenchRecord
from app.schemas.circuit import GateLayer
from app.schemas.function import FunctionSpec
from app.schemas.policy import EXACT, SftOptions, TruncationPolicy
from app.schemas.spectrum import FoldDiagnostics, SchmidtSpectrum


def test_policy_validation():
    with pytest.raises(ValidationError):
        TruncationPolicy(cutoff=1.0)
    with pytest.raises(ValidationError):
        TruncationPolicy(cutoff=-0.1)
    with pytest.raises(ValidationError):
        TruncationPolicy(max_chi=0)


def test_policy_is_hashable_and_relaxes():
    policy = TruncationPolicy(cutoff=1e-10, max_chi=16)
    assert {policy: 1}[TruncationPolicy(cutoff=1e-10, max_chi=16)] == 1
    relaxed = policy.relaxed(10.0, 2)
    assert relaxed.cutoff == pytest.approx(1e-11)
    assert relaxed.max_chi == 32
    assert EXACT.relaxed(10.0, 2) == EXACT
    assert EXACT.is_exact
    assert not policy.is_exact


def test_sft_option_defaults():
    opts = SftOptions()
    assert opts.mpo_policy.max_chi == 16
    assert opts.apply_policy.max_chi is None
    assert opts.reverse_output


def test_spectrum_from_values_normalizes():
    spectrum = SchmidtSpectrum.from_values([1.0, 3.0, 0.0], n=4, j=2)
    np.testing.assert_allclose(spectrum.values, [3 / np.sqrt(10), 1 / np.sqrt(10), 0.0])
    assert spectrum.rank == 2
    np.testing.assert_allclose(spectrum.padded(5)[3:], [0.0, 0.0])
    assert len(spectrum.padded(1)) == 1


def test_spectrum_invariants():
    with pytest.raises(ValidationError):
        SchmidtSpectrum(n=4, j=2, sigmas=(0.6, 0.8))
    with pytest.raises(ValidationError):
        SchmidtSpectrum(n=4, j=2, sigmas=(0.9, 0.1))
    with pytest.raises(ValidationError):
        SchmidtSpectrum(n=4, j=4, sigmas=(1.0,))
    with pytest.raises(ValidationError):
        SchmidtSpectrum.from_values(np.ones(5), n=2, j=1)
    with pytest.raises(ValidationError):
        SchmidtSpectrum.from_values(np.ones(3), n=4, j=1, operator=False)


def test_fold_diagnostics_lookup():
    spectra = [SchmidtSpectrum.from_values([1.0], n=3, j=j) for j in (1, 2)]
    fold = FoldDiagnostics(index=0, label="H(1)", span=(1, 1), bond_dims=(1, 1, 1, 1), spectra=spectra)
    assert fold.spectrum_at(2).j == 2


def test_gate_layers():
    h = GateLayer.hadamard(2)
    cp = GateLayer.controlled_phase(1, 3, 3)
    assert str(h) == "H(2)"
    assert str(cp) == "CP(1,3,k=3)"
    assert h.angle == 0.0
    assert cp.angle == pytest.approx(np.pi / 4)
    assert cp.sites == (1, 3)
    with pytest.raises(ValidationError):
        GateLayer.controlled_phase(2, 2, 2)
    with pytest.raises(ValidationError):
        GateLayer(kind="hadamard")
    with pytest.raises(ValidationError):
        GateLayer.controlled_phase(1, 2, 1)


def test_function_spec_validation():
    with pytest.raises(ValidationError):
        FunctionSpec(kind="delta", n=3, p=8)
    with pytest.raises(ValidationError):
        FunctionSpec(kind="gaussian", n=3, mu=0.5, s=0.0)
    with pytest.raises(ValidationError):
        FunctionSpec(kind="step", n=3, e=1.0)
    with pytest.raises(ValidationError):
        FunctionSpec(kind="plane_wave", n=3)


def test_function_spec_labels():
    assert FunctionSpec(kind="plane_wave", n=4, k=3.5).label == "plane-wave:k=3.5"
    assert FunctionSpec(kind="gaussian", n=4, mu=0.5, s=0.1).label == "gaussian:mu=0.5,s=0.1"
    assert FunctionSpec(kind="constant", n=4).label == "constant"
    spec = FunctionSpec(kind="delta", n=4, p=7)
    assert spec.with_n(10).n == 10
    assert spec.with_n(10).p == 7


def test_bench_record():
    record = BenchRecord(method="fft", function="constant", n=4, wall_time=1e-3, timestamp="t")
    assert record.ok
    assert list(record.to_row()) == CSV_COLUMNS
    assert record.to_row()["apply_time_s"] == 1e-3
    failed = BenchRecord(method="sft", function="constant", n=4, timestamp="t", status="failed: boom")
    assert not failed.ok
    with pytest.raises(ValidationError):
        BenchRecord(method="sft", function="constant", n=4, timestamp="t")
    with pytest.raises(ValidationError):
        BenchRecord(method="sft", function="constant", n=4, wall_time=1.0, rel_error=-1.0, timestamp="t")
