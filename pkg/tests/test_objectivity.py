"""Per-check behavior: invariance residuals, variance corrections,
stress/traction machinery, constitutive laws."""

import numpy as np
import pytest

from framekit import (BodyForce, UsageError, cauchy_traction,
                      fourier_heat_flux, make_field, make_frame,
                      map_position_to_prime, newtonian_stress,
                      omega_from_alpha, pull_back_velocity)
from framekit import diffops, objectivity as obj
from framekit import tensor_core as tc

from conftest import builtin_flows, builtin_frames, builtin_scalars


def seeded():
    return np.random.default_rng(99)


class TestDivergenceInvariance:
    def test_taylor_green_under_wobble(self):
        r = obj.check_divergence_invariance(
            builtin_frames()["wobble"], builtin_flows()["taylor_green"],
            rng=seeded())
        assert r.passed and r.max_abs_err <= 1e-6

    def test_poly_linear_under_rotation_div_three(self):
        frame = builtin_frames()["constant_rotation"]
        flow = make_field("poly_linear")
        observed = pull_back_velocity(frame, flow)
        xp = map_position_to_prime(frame, np.array([0.3, -0.2, 0.5]), 0.7)
        div_obs = diffops.divergence(diffops.fd_jacobian(observed, xp, 0.7))
        assert div_obs == pytest.approx(3.0, abs=1e-9)

    def test_identity_frame_fd_noise_only(self):
        r = obj.check_divergence_invariance(
            make_frame("identity"), builtin_flows()["taylor_green"],
            rng=seeded())
        assert r.max_abs_err <= 1e-10


class TestScalarGradientInvariance:
    def test_linear_scalar_any_frame(self):
        r = obj.check_scalar_gradient_invariance(
            builtin_frames()["wobble"], builtin_scalars()["linear_T"],
            rng=seeded())
        assert r.max_abs_err <= 1e-11   # affine: stencils are exact

    def test_constant_scalar_both_gradients_zero(self):
        constant = make_field("linear_T", coeffs=[0.0, 0.0, 0.0], offset=5.0)
        r = obj.check_scalar_gradient_invariance(
            builtin_frames()["constant_rotation"], constant, rng=seeded())
        assert r.max_abs_err <= 1e-12

    def test_gaussian_under_screw(self):
        r = obj.check_scalar_gradient_invariance(
            builtin_frames()["screw"], builtin_scalars()["gaussian_T"],
            samples=100, rng=seeded())
        assert r.passed


class TestVelocityGradientRelation:
    def test_identity_frame_zero_correction(self):
        frame = make_frame("identity")
        assert np.max(np.abs(obj.velocity_gradient_correction(frame, 0.5))) == 0.0
        r = obj.check_velocity_gradient_relation(
            frame, builtin_flows()["taylor_green"], rng=seeded())
        assert r.passed and r.witness == 0.0

    def test_uniform_flow_rotating_frame_exact_cancellation(self):
        # grad v = 0, so the observed gradient equals minus the correction
        frame = builtin_frames()["constant_rotation"]
        flow = make_field("uniform", velocity=[1.0, 0, 0])
        observed = pull_back_velocity(frame, flow)
        t = 0.6
        alpha = frame.alpha(t)
        xp = map_position_to_prime(frame, np.array([0.2, 0.4, -0.1]), t)
        j_obs = diffops.fd_jacobian(observed, xp, t)
        corr = obj.velocity_gradient_correction(frame, t)
        assert np.max(np.abs(alpha @ j_obs @ alpha.T + corr)) <= 1e-10

    def test_wobble_taylor_green_variance_witnessed(self):
        r = obj.check_velocity_gradient_relation(
            builtin_frames()["wobble"], builtin_flows()["taylor_green"],
            rng=seeded())
        assert r.passed
        assert r.witness > 0.1

    def test_correction_is_minus_spin(self):
        # correction = alpha alpha_dot^T = -(alpha_dot alpha^T), rotational
        # content 2*omega
        frame = builtin_frames()["wobble"]
        t = 0.8
        corr = obj.velocity_gradient_correction(frame, t)
        omega = omega_from_alpha(frame, t).omega
        assert np.allclose(corr, tc.skew(-omega), atol=1e-12)
        assert np.allclose(diffops.curl(corr), 2 * omega, atol=1e-12)


class TestStrainRateInvariance:
    def test_shear_under_rotation_matches_transform(self):
        # oracle: transform_tensor2 of the hand-computed strain rate
        frame = builtin_frames()["constant_rotation"]
        flow = make_field("shear", rate=3.0)
        observed = pull_back_velocity(frame, flow)
        t = 0.45
        s_hand = np.zeros((3, 3))
        s_hand[0, 1] = s_hand[1, 0] = 1.5
        xp = map_position_to_prime(frame, np.array([0.3, 0.2, 0.0]), t)
        s_obs = diffops.strain_rate(diffops.fd_jacobian(observed, xp, t))
        assert np.max(np.abs(s_obs - tc.transform_tensor2(s_hand, frame.alpha(t)))) <= 1e-10

    def test_rigid_rotation_zero_strain_any_frame(self):
        r = obj.check_strain_rate_invariance(
            builtin_frames()["wobble"], builtin_flows()["rigid_rotation"],
            rng=seeded())
        assert r.max_abs_err <= 1e-9

    def test_identity_frame(self):
        r = obj.check_strain_rate_invariance(
            make_frame("identity"), builtin_flows()["taylor_green"],
            rng=seeded())
        assert r.max_abs_err <= 1e-10


class TestVorticityRelation:
    def test_corotating_rigid_rotation(self):
        # curl v = 2*Omega; observed curl is 0; correction supplies 2*omega
        r = obj.check_vorticity_relation(
            builtin_frames()["constant_rotation"],
            builtin_flows()["rigid_rotation"], rng=seeded())
        assert r.passed
        assert r.witness == pytest.approx(4.0, abs=1e-12)

    def test_irrotational_flow_sees_minus_two_omega(self):
        frame = builtin_frames()["constant_rotation"]
        flow = make_field("uniform", velocity=[1.0, 0, 0])
        observed = pull_back_velocity(frame, flow)
        t = 0.3
        omega = omega_from_alpha(frame, t).omega
        xp = map_position_to_prime(frame, np.array([0.5, -0.5, 0.2]), t)
        curl_obs = diffops.curl(diffops.fd_jacobian(observed, xp, t))
        assert np.allclose(frame.alpha(t) @ curl_obs, -2 * omega, atol=1e-10)

    def test_identity_frame_reduces_to_consistency(self):
        r = obj.check_vorticity_relation(
            make_frame("identity"), builtin_flows()["taylor_green"],
            rng=seeded())
        assert r.max_abs_err <= 1e-10 and r.witness == 0.0


class TestCauchyTraction:
    def test_coordinate_face_gives_column(self):
        tau = np.arange(9.0).reshape(3, 3)
        assert np.allclose(cauchy_traction(tau, [1, 0, 0]), tau[:, 0])

    def test_isotropic_stress(self):
        tau = -2.5 * np.eye(3)
        n = np.array([1.0, 2.0, 2.0]) / 3.0
        assert np.allclose(cauchy_traction(tau, n), -2.5 * n)

    def test_tau21_face_definition(self):
        tau = np.zeros((3, 3))
        tau[1, 0] = 5.0
        assert np.array_equal(cauchy_traction(tau, [1, 0, 0]), [0.0, 5.0, 0.0])

    def test_non_unit_normal_rejected(self):
        with pytest.raises(UsageError):
            cauchy_traction(np.eye(3), [1.0, 1.0, 0.0])

    def test_slightly_non_unit_normal_normalized_with_warning(self):
        n = np.array([1.0 + 5e-7, 0.0, 0.0])
        with pytest.warns(UserWarning):
            t = cauchy_traction(2 * np.eye(3), n)
        assert np.allclose(t, [2.0, 0.0, 0.0], atol=1e-6)


class TestStressTransform:
    def test_identity_rotation_zero_residual(self):
        tau = np.arange(9.0).reshape(3, 3)
        r = obj.check_stress_tensor_transform(tau, np.eye(3))
        assert r.max_abs_err == 0.0

    def test_diagonal_under_rz90(self):
        c, s = 0.0, 1.0
        alpha = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1.0]])
        tau = np.diag([1.0, 2.0, 3.0])
        r = obj.check_stress_tensor_transform(tau, alpha)
        assert r.passed
        assert np.allclose(tc.transform_tensor2(tau, alpha),
                           np.diag([2.0, 1.0, 3.0]), atol=1e-15)

    def test_random_symmetric_stresses(self):
        rng = seeded()
        frame = builtin_frames()["wobble"]
        r = obj.check_stress_transform_random(frame, samples=100, rng=rng)
        assert r.passed and r.max_abs_err <= 1e-12


class TestNewtonianStress:
    def test_static_fluid(self):
        st = newtonian_stress(2.0, 0.9, np.zeros((3, 3)))
        assert np.allclose(st.tau, -2.0 * np.eye(3))

    def test_shear_stress(self):
        j = make_field("shear", rate=3.0).jacobian(np.zeros(3), 0.0)
        st = newtonian_stress(0.0, 1.0, j)
        expected = np.zeros((3, 3))
        expected[0, 1] = expected[1, 0] = 3.0
        assert np.allclose(st.tau, expected)

    def test_rigid_rotation_no_viscous_stress(self):
        j = make_field("rigid_rotation", omega=[0, 0, 2.0]).jacobian(
            np.array([0.4, 0.1, 0.0]), 0.0)
        st = newtonian_stress(1.5, 7.0, j)
        assert np.allclose(st.tau, -1.5 * np.eye(3), atol=1e-14)

    def test_trace_identity(self):
        rng = seeded()
        j = rng.normal(size=(3, 3))
        st = newtonian_stress(0.8, 1.3, j)
        assert np.isclose(np.trace(st.tau), -3 * 0.8 + 2 * 1.3 * np.trace(j))
        assert np.max(np.abs(st.tau - st.tau.T)) <= 1e-12

    def test_negative_viscosity_rejected(self):
        with pytest.raises(UsageError):
            newtonian_stress(1.0, -0.1, np.zeros((3, 3)))


class TestFourierHeatFlux:
    def test_zero_gradient(self):
        assert np.all(fourier_heat_flux(3.0, np.zeros(3)) == 0.0)

    def test_direct_substitution(self):
        assert np.allclose(fourier_heat_flux(2.0, [1, 0, 0]), [-2.0, 0, 0])

    def test_negative_conductivity_rejected(self):
        with pytest.raises(UsageError):
            fourier_heat_flux(-1.0, [1, 0, 0])

    def test_frame_invariance_corollary(self):
        # q built from the primed gradient, transformed back, equals q from
        # the inertial gradient
        frame = builtin_frames()["screw"]
        scalar = builtin_scalars()["gaussian_T"]
        from framekit import pull_back_scalar
        observed = pull_back_scalar(frame, scalar)
        t, x = 0.35, np.array([0.3, -0.4, 0.2])
        xp = map_position_to_prime(frame, x, t)
        q_s = fourier_heat_flux(2.0, scalar.gradient(x, t))
        q_sp = fourier_heat_flux(2.0, diffops.fd_gradient(observed, xp, t))
        assert np.max(np.abs(q_s - frame.alpha(t) @ q_sp)) <= 1e-10


class TestConstitutiveInvariance:
    def test_identity_frame(self):
        r = obj.check_constitutive_frame_invariance(
            make_frame("identity"), builtin_flows()["taylor_green"],
            builtin_scalars()["gaussian_T"], 0.7, rng=seeded())
        assert r.max_abs_err <= 1e-9

    def test_shear_under_rotation(self):
        r = obj.check_constitutive_frame_invariance(
            builtin_frames()["constant_rotation"], builtin_flows()["shear"],
            builtin_scalars()["gaussian_T"], 0.7, rng=seeded())
        assert r.passed

    def test_rigid_rotation_under_wobble_gives_pressure_only(self):
        frame = builtin_frames()["wobble"]
        flow = builtin_flows()["rigid_rotation"]
        p_field = builtin_scalars()["gaussian_T"]
        observed = pull_back_velocity(frame, flow)
        t, x = 0.5, np.array([0.2, 0.3, -0.1])
        xp = map_position_to_prime(frame, x, t)
        j_obs = diffops.fd_jacobian(observed, xp, t)
        tau_sp = newtonian_stress(p_field.value(x, t), 4.0, j_obs).tau
        assert np.max(np.abs(tau_sp + p_field.value(x, t) * np.eye(3))) <= 1e-9


class TestAccelerationDecomposition:
    def test_fluid_at_rest_in_rotating_frame(self):
        # rigid-rotation flow seen co-rotating: everything reduces to the
        # centrifugal term omega x (omega x X) = (-4, 0, 0) at X=(1,0,0)
        flow = make_field("rigid_rotation", omega=[0, 0, 2.0])
        assert np.allclose(
            obj.inertial_acceleration(flow, np.array([1.0, 0, 0]), 0.0),
            [-4.0, 0.0, 0.0], atol=1e-14)
        r = obj.check_acceleration_decomposition(
            builtin_frames()["constant_rotation"], flow, rng=seeded())
        assert r.passed

    def test_galilean_degenerate_case(self):
        r = obj.check_acceleration_decomposition(
            make_frame("uniform_translation", velocity=[1.0, 0, 0]),
            make_field("uniform", velocity=[1.0, 0, 0]), rng=seeded())
        assert r.max_abs_err <= 1e-10

    def test_coriolis_case(self):
        r = obj.check_acceleration_decomposition(
            builtin_frames()["constant_rotation"],
            make_field("uniform", velocity=[1.0, 0, 0]),
            samples=100, rng=seeded())
        assert r.passed


class TestNsRhsEquivalence:
    FORCE = BodyForce(g=np.array([0.0, 0.0, -9.81]), rho=1.2)

    def test_identity_frame_fd_noise(self):
        r = obj.check_ns_rhs_equivalence(
            make_frame("identity"), builtin_flows()["taylor_green"],
            builtin_scalars()["gaussian_T"], self.FORCE, 0.7,
            samples=25, rng=seeded())
        assert r.max_abs_err <= 1e-5

    def test_poly_linear_reduces_to_pressure_gradient(self):
        # second derivatives vanish, so the check degenerates to
        # grad p = grad' p
        r = obj.check_ns_rhs_equivalence(
            builtin_frames()["wobble"], builtin_flows()["poly_linear"],
            builtin_scalars()["gaussian_T"], self.FORCE, 0.7,
            samples=25, rng=seeded())
        assert r.passed

    def test_taylor_green_under_rotation(self):
        r = obj.check_ns_rhs_equivalence(
            builtin_frames()["constant_rotation"],
            builtin_flows()["taylor_green"],
            builtin_scalars()["gaussian_T"], self.FORCE, 0.7,
            samples=50, rng=seeded())
        assert r.passed and r.max_abs_err <= 1e-4

    def test_body_force_needs_positive_density(self):
        with pytest.raises(UsageError):
            BodyForce(g=np.zeros(3), rho=0.0)


class TestConsistencyLadder:
    def test_constitutive_bounded_by_strain_residual(self):
        # the constitutive check is algebraically downstream of the
        # strain-rate check: residual <= 2 mu * strain residual + transform eps
        frame = builtin_frames()["wobble"]
        flow = builtin_flows()["taylor_green"]
        mu = 0.7
        r_s = obj.check_strain_rate_invariance(frame, flow, rng=seeded())
        r_c = obj.check_constitutive_frame_invariance(
            frame, flow, builtin_scalars()["gaussian_T"], mu, rng=seeded())
        assert r_c.max_abs_err <= 2 * mu * r_s.max_abs_err + 1e-10
