import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhadamard.qcore import (
    ComplementConvention,
    GateMatrix,
    NonUnitaryError,
    NormalizationError,
    QubitState,
    ValidationError,
    adjoint,
    apply,
    complement,
    equal_up_to_global_phase,
    inner_product,
    matmul,
    state_distance,
    unitarity_residual,
)
from qhadamard.gates import SQRT1_2, hadamard, polar_gate

A = ComplementConvention.A
B = ComplementConvention.B

KET0 = QubitState(1.0, 0.0)
KET1 = QubitState(0.0, 1.0)
PLUS = QubitState(SQRT1_2, SQRT1_2)


def normalized(re_a, im_a, re_b, im_b):
    norm = math.sqrt(re_a**2 + im_a**2 + re_b**2 + im_b**2)
    return QubitState(complex(re_a, im_a) / norm, complex(re_b, im_b) / norm)


amplitude = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
states = st.tuples(amplitude, amplitude, amplitude, amplitude).filter(
    lambda t: sum(v * v for v in t) > 1e-6
).map(lambda t: normalized(*t))


class TestQubitState:
    def test_rejects_non_normalized(self):
        with pytest.raises(NormalizationError) as exc:
            QubitState(1.0, 1.0)
        assert exc.value.residual == pytest.approx(1.0)

    def test_rejects_nan_and_inf(self):
        with pytest.raises(ValidationError):
            QubitState(complex(float("nan"), 0.0), 0.0)
        with pytest.raises(ValidationError):
            QubitState(0.0, complex(0.0, float("inf")))

    def test_tolerates_rounding_at_the_edge(self):
        a = math.sqrt(0.5)
        QubitState(complex(a, 0.0), complex(a, 0.0))  # 2a^2 - 1 ~ 2e-16


class TestInnerProduct:
    @given(states)
    def test_self_overlap_is_one(self, psi):
        assert inner_product(psi, psi) == pytest.approx(1.0, abs=1e-12)

    @given(states, st.sampled_from([A, B]))
    def test_complement_is_orthogonal_and_normalized(self, psi, conv):
        perp = complement(psi, conv)
        assert abs(inner_product(psi, perp)) < 1e-12
        assert abs(inner_product(perp, perp) - 1.0) < 1e-12

    @given(states, states)
    def test_conjugate_symmetry(self, psi, chi):
        assert inner_product(psi, chi) == pytest.approx(
            inner_product(chi, psi).conjugate(), abs=1e-12
        )

    def test_plus_with_zero(self):
        assert inner_product(PLUS, KET0) == pytest.approx(SQRT1_2)


class TestComplement:
    def test_basis_case(self):
        assert complement(KET0, A) == QubitState(0.0, -1.0)

    def test_family_form_convention_a(self):
        # (alpha + i beta)|0> + alpha|1>  ->  alpha|0> - (alpha - i beta)|1>
        alpha, beta = 0.3, math.sqrt(1 - 2 * 0.09)
        psi = QubitState(complex(alpha, beta), alpha)
        perp = complement(psi, A)
        assert perp.a == complex(alpha, 0.0)
        assert perp.b == -complex(alpha, -beta)

    def test_family_form_convention_b(self):
        # (alpha + i beta)|0> + i beta|1>  ->  i beta|0> + (alpha - i beta)|1>
        beta = 0.4
        alpha = math.sqrt(1 - 2 * beta * beta)
        psi = QubitState(complex(alpha, beta), complex(0.0, beta))
        perp = complement(psi, B)
        assert perp.a == complex(0.0, beta)
        assert perp.b == complex(alpha, -beta)

    @given(states)
    def test_conventions_differ_by_sign(self, psi):
        pa, pb = complement(psi, A), complement(psi, B)
        assert pb.a == -pa.a and pb.b == -pa.b

    @given(states)
    def test_double_complement_negates(self, psi):
        twice = complement(complement(psi, A), A)
        assert state_distance(twice, QubitState(-psi.a, -psi.b)) < 1e-12


class TestApply:
    def test_hadamard_on_basis(self):
        out = apply(hadamard(), KET0)
        assert state_distance(out, PLUS) < 1e-15

    @given(states)
    def test_identity(self, psi):
        assert state_distance(apply(GateMatrix(1, 0, 0, 1), psi), psi) == 0.0

    def test_hadamard_on_family_state(self):
        alpha, beta = 0.5, math.sqrt(0.5)
        psi = QubitState(complex(alpha, beta), alpha)
        perp = complement(psi, A)
        out = apply(hadamard(), psi)
        want = QubitState(
            SQRT1_2 * (psi.a + perp.a), SQRT1_2 * (psi.b + perp.b)
        )
        assert state_distance(out, want) < 1e-12

    def test_rejects_non_unitary(self):
        with pytest.raises(NonUnitaryError) as exc:
            apply(GateMatrix(1, 0, 0, 2), KET0)
        assert exc.value.residual == pytest.approx(3.0)
        assert "3.0" in str(exc.value)

    @given(states, states, st.floats(min_value=0.0, max_value=7.0))
    def test_preserves_inner_products(self, psi, chi, phi):
        gate = polar_gate(phi)
        before = inner_product(psi, chi)
        after = inner_product(apply(gate, psi), apply(gate, chi))
        assert abs(before - after) < 1e-12


class TestUnitarityResidual:
    def test_hadamard(self):
        assert unitarity_residual(hadamard()) < 1e-15

    def test_diagonal_stretch(self):
        assert unitarity_residual(GateMatrix(1, 0, 0, 2)) == pytest.approx(3.0)

    def test_polar_gate_closed_form(self):
        assert unitarity_residual(polar_gate(0.7)) < 1e-15

    def test_matmul_adjoint_consistency(self):
        h = hadamard()
        prod = matmul(adjoint(h), h)
        assert abs(prod.m00 - 1) < 1e-15 and abs(prod.m11 - 1) < 1e-15
        assert abs(prod.m01) < 1e-15 and abs(prod.m10) < 1e-15


class TestDistanceAndPhase:
    @given(states)
    def test_zero_self_distance(self, psi):
        assert state_distance(psi, psi) == 0.0

    @given(states)
    def test_phase_factor_detected(self, psi):
        phase = cmath.exp(1j * math.pi / 3)
        rotated = QubitState(phase * psi.a, phase * psi.b)
        assert equal_up_to_global_phase(psi, rotated)
        assert state_distance(psi, rotated) > 0.0

    def test_orthogonal_states_never_phase_equal(self):
        assert not equal_up_to_global_phase(KET0, KET1)

    @given(states, states)
    def test_phase_equality_bounded_by_exact(self, psi, chi):
        if state_distance(psi, chi) < 1e-13:
            assert equal_up_to_global_phase(psi, chi)
