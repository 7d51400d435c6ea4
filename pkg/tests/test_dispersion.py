import numpy as np
import pytest

from sropo import (
    CrystalParams,
    DegenerateDispersionError,
    DispersionKind,
    DispersionModel,
    FrequencyTriple,
    NoSignChangeError,
    OutOfRangeError,
    group_velocity,
    phase_match,
    refractive_index,
    transit_time_diff,
    wavenumber,
)
from conftest import C_LIGHT, constant_model

WIDE = (1e14, 1e16)

# Fused silica, Malitson 1965 (B1..B3, C1..C3 with C in um^2).
FUSED_SILICA = (
    0.6961663,
    0.4079426,
    0.8974794,
    0.0684043**2,
    0.1162414**2,
    9.896161**2,
)
FUSED_SILICA_RANGE = (5.1e14, 8.9e15)  # ~0.21 um to ~3.7 um

# n values evaluated independently from the three-pole formula before the
# build (wavelengths 0.5876, 1.064, 1.55 um).
FUSED_SILICA_ORACLE = [
    (3205669787795870.0, 1.4584623420532408),
    (1770349217395538.5, 1.4496309898590634),
    (1215259075683131.0, 1.4440236217032607),
]


def sellmeier_model() -> DispersionModel:
    return DispersionModel(DispersionKind.SELLMEIER, FUSED_SILICA, FUSED_SILICA_RANGE)


class TestRefractiveIndex:
    def test_constant(self):
        assert refractive_index(constant_model(1.8), 1.0e15) == 1.8

    def test_linear(self):
        model = DispersionModel(DispersionKind.LINEAR_IN_OMEGA, (1.7, 1.0e-16), WIDE)
        assert refractive_index(model, 1.0e15) == pytest.approx(1.8, rel=1e-15)

    def test_sellmeier_against_frozen_values(self):
        model = sellmeier_model()
        for omega, expected in FUSED_SILICA_ORACLE:
            assert refractive_index(model, omega) == pytest.approx(expected, rel=1e-12)

    def test_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            refractive_index(constant_model(1.8), 1e13)

    def test_index_above_one_enforced(self):
        with pytest.raises(ValueError):
            DispersionModel(DispersionKind.CONSTANT, (0.9,), WIDE)
        with pytest.raises(ValueError):
            # dips below 1 at the upper end of the range
            DispersionModel(DispersionKind.LINEAR_IN_OMEGA, (1.2, -3e-17), (1e15, 1e16))

    def test_parameter_count_enforced(self):
        with pytest.raises(ValueError):
            DispersionModel(DispersionKind.SELLMEIER, (1.0, 2.0), WIDE)


class TestGroupVelocity:
    def test_constant_is_c_over_n(self):
        assert group_velocity(constant_model(1.8), 1e15) == pytest.approx(
            166551365.55555555, rel=1e-15
        )

    def test_linear_closed_form(self):
        a, b = 1.7, 1.0e-16
        model = DispersionModel(DispersionKind.LINEAR_IN_OMEGA, (a, b), WIDE)
        omega = 1.0e15
        assert group_velocity(model, omega) == pytest.approx(
            C_LIGHT / (a + 2 * b * omega), rel=1e-15
        )

    @pytest.mark.parametrize(
        "model",
        [
            constant_model(1.8),
            DispersionModel(DispersionKind.LINEAR_IN_OMEGA, (1.7, 1.0e-16), WIDE),
            sellmeier_model(),
        ],
        ids=["constant", "linear", "sellmeier"],
    )
    def test_matches_finite_difference_of_wavenumber(self, model):
        rng = np.random.default_rng(20240817)
        lo, hi = model.validity_range
        omegas = rng.uniform(lo * 1.02, hi * 0.98, size=100)
        for omega in omegas:
            h = 1e-6 * omega
            slope = (wavenumber(model, omega + h) - wavenumber(model, omega - h)) / (
                2 * h
            )
            assert group_velocity(model, omega) == pytest.approx(
                1.0 / slope, rel=1e-6
            )


class TestFrequencyTriple:
    def test_exact_energy_conservation(self):
        f = FrequencyTriple.from_pump_and_signal(3.5e15, 2.0e15)
        assert f.omega_i == 1.5e15
        assert f.omega_s + f.omega_i == f.omega_p

    def test_rejects_inexact_triple(self):
        with pytest.raises(ValueError):
            FrequencyTriple(3.5e15, 2.0e15, 1.5e15 + 1000.0)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            FrequencyTriple.from_pump_and_signal(3.5e15, 3.6e15)


def make_crystal(signal, idler, pump=None) -> CrystalParams:
    return CrystalParams(
        length_l=0.01,
        chi=2e-12,
        cross_section_A=1e-8,
        dispersion_signal=signal,
        dispersion_idler=idler,
        dispersion_pump=pump if pump is not None else constant_model(1.85),
    )


class TestTransitTimeDiff:
    def test_equal_group_velocities_give_zero(self):
        crystal = make_crystal(constant_model(1.8), constant_model(1.8))
        freqs = FrequencyTriple.from_pump_and_signal(3.5e15, 2.0e15)
        assert transit_time_diff(crystal, freqs) == 0.0

    def test_frozen_value(self):
        crystal = make_crystal(constant_model(1.8), constant_model(1.9))
        freqs = FrequencyTriple.from_pump_and_signal(3.5e15, 2.0e15)
        # 0.01 * (1.9 - 1.8) / c
        assert transit_time_diff(crystal, freqs) == pytest.approx(
            3.3356409519815163e-12, rel=1e-12
        )

    def test_antisymmetric_under_model_exchange(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n_s, n_i = rng.uniform(1.4, 2.4, size=2)
            fwd = make_crystal(constant_model(n_s), constant_model(n_i))
            rev = make_crystal(constant_model(n_i), constant_model(n_s))
            freqs = FrequencyTriple.from_pump_and_signal(3.5e15, 2.0e15)
            # identical indices swapped: the signal/idler frequencies also swap
            swapped = FrequencyTriple(3.5e15, freqs.omega_i, freqs.omega_s)
            assert transit_time_diff(fwd, freqs) == pytest.approx(
                -transit_time_diff(rev, swapped), rel=1e-12, abs=1e-30
            )


class TestPhaseMatch:
    def linear(self, a, b):
        return DispersionModel(DispersionKind.LINEAR_IN_OMEGA, (a, b), WIDE)

    def test_degenerate_for_identical_constant_models(self):
        n = constant_model(1.8)
        crystal = make_crystal(n, n, n)
        with pytest.raises(DegenerateDispersionError):
            phase_match(crystal, 3.5e15, (1.5e15, 2.5e15))

    def test_no_sign_change(self):
        crystal = make_crystal(
            constant_model(1.8), constant_model(1.9), constant_model(1.85)
        )
        with pytest.raises(NoSignChangeError):
            phase_match(crystal, 3.5e15, (1.8e15, 2.2e15))

    def test_root_against_dense_scan(self):
        a_s, b_s = 1.70, 2.0e-17
        a_i, b_i = 1.75, 0.5e-17
        crystal = make_crystal(self.linear(a_s, b_s), self.linear(a_i, b_i))
        omega_p = 3.5e15
        n_p = (
            2.0e15 * (a_s + b_s * 2.0e15) + 1.5e15 * (a_i + b_i * 1.5e15)
        ) / omega_p
        crystal = make_crystal(
            self.linear(a_s, b_s),
            self.linear(a_i, b_i),
            constant_model(n_p),
        )
        bracket = (1.8e15, 2.2e15)
        triple = phase_match(crystal, omega_p, bracket)

        # independent dense scan of the mismatch, directly from the formula
        ws = np.linspace(bracket[0], bracket[1], 1_000_001)
        wi = omega_p - ws
        dk = (
            omega_p * n_p - ws * (a_s + b_s * ws) - wi * (a_i + b_i * wi)
        ) / C_LIGHT
        sign_change = np.nonzero(np.sign(dk[:-1]) != np.sign(dk[1:]))[0]
        assert sign_change.size >= 1
        step = ws[1] - ws[0]
        root_scan = ws[sign_change[0]]
        assert abs(triple.omega_s - root_scan) <= step

        # residual mismatch below tolerance
        k_p = wavenumber(crystal.dispersion_pump, omega_p)
        residual = (
            k_p
            - wavenumber(crystal.dispersion_signal, triple.omega_s)
            - wavenumber(crystal.dispersion_idler, triple.omega_i)
        )
        assert abs(residual) <= 1e-6 * abs(k_p)
        assert triple.omega_s + triple.omega_i == triple.omega_p

    def test_bad_bracket(self):
        crystal = make_crystal(constant_model(1.8), constant_model(1.9))
        with pytest.raises(ValueError):
            phase_match(crystal, 3.5e15, (2.2e15, 1.8e15))
