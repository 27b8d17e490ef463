#include "hawktele/qla.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "test_util.hpp"

using namespace hawktele;
using namespace hawktele::qla;
using hawktele::testutil::max_abs_diff;

namespace {

StateVector ket(const ModeLabels& modes, std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const auto& a : amps) v(i++) = a;
  return {modes, v};
}

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST(qla, make_complex_rejects_non_finite) {
  EXPECT_EQ(make_complex(1.0, -2.0), Complex(1.0, -2.0));
  EXPECT_THROW(make_complex(std::nan(""), 0.0), InvalidArgument);
  EXPECT_THROW(make_complex(0.0, std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST(qla, state_vector_invariants) {
  EXPECT_THROW(StateVector({"a", "b"}, Vector::Zero(2)), InvalidArgument);
  EXPECT_THROW(StateVector({"a", "a"}, Vector::Zero(4)), InvalidArgument);
  Vector bad = Vector::Zero(2);
  bad(0) = std::nan("");
  EXPECT_THROW(StateVector({"a"}, bad), InvalidArgument);

  const StateVector s = ket({"a"}, {3.0, Complex(0.0, 4.0)});
  EXPECT_DOUBLE_EQ(s.norm_weight(), 25.0);
  EXPECT_FALSE(s.is_normalized());
  EXPECT_TRUE(s.normalized().is_normalized());
  EXPECT_NEAR(std::abs(s.normalized().amplitude(1) - Complex(0.0, 0.8)), 0.0, 1e-15);
}

TEST(qla, density_matrix_rejects_invalid) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 0.5;
  EXPECT_THROW(DensityMatrix({"a"}, m), InvalidArgument);  // not Hermitian
  EXPECT_THROW(DensityMatrix({"a"}, diag2(1.5, -0.5)), InvalidArgument);  // not PSD
  EXPECT_THROW(DensityMatrix({"a"}, Matrix::Identity(4, 4)), InvalidArgument);  // wrong side
  EXPECT_NO_THROW(DensityMatrix({"a"}, diag2(1.0, -1e-12)));  // inside PSD tolerance
}

TEST(qla, tensor_product_basis_and_superposition) {
  const StateVector zero = StateVector::basis({"x"}, 0);
  const StateVector r = tensor_product(zero, StateVector::basis({"y"}, 0));
  EXPECT_EQ(r.modes(), (ModeLabels{"x", "y"}));
  Vector expect = Vector::Zero(4);
  expect(0) = 1.0;
  EXPECT_EQ(r.amplitudes(), expect);

  const double s = 1.0 / std::numbers::sqrt2;
  const StateVector plus = ket({"x"}, {s, s});
  const StateVector r2 = tensor_product(plus, StateVector::basis({"y"}, 1));
  expect << 0.0, s, 0.0, s;
  EXPECT_LT(max_abs_diff(r2.amplitudes(), expect), 1e-16);
}

TEST(qla, tensor_product_input_times_epr_pair) {
  // (|0> + |1>)/sqrt2 on "in" times (|00> + |11>)/sqrt2 on (A, B):
  // amplitude 1/2 on |000>, |011>, |100>, |111>.
  const double s = 1.0 / std::numbers::sqrt2;
  const StateVector in = ket({"in"}, {s, s});
  const StateVector epr = ket({"A", "B"}, {s, 0.0, 0.0, s});
  const StateVector r = tensor_product(in, epr);
  Vector expect = Vector::Zero(8);
  expect(0b000) = expect(0b011) = expect(0b100) = expect(0b111) = 0.5;
  EXPECT_LT(max_abs_diff(r.amplitudes(), expect), 1e-15);
  EXPECT_EQ(r.modes(), (ModeLabels{"in", "A", "B"}));
}

TEST(qla, tensor_product_norm_weights_multiply_and_labels_disjoint) {
  const StateVector a = ket({"x"}, {2.0, 0.0});
  const StateVector b = ket({"y"}, {1.0, 1.0});
  EXPECT_DOUBLE_EQ(tensor_product(a, b).norm_weight(), 8.0);
  EXPECT_THROW(tensor_product(a, ket({"x"}, {1.0, 0.0})), InvalidArgument);
}

TEST(qla, apply_local_pauli_x_on_second_mode) {
  const StateVector s = StateVector::basis({"in", "A"}, 0);
  const StateVector r = apply_local(pauli_x(), {"A"}, s);
  EXPECT_EQ(r.modes(), s.modes());
  EXPECT_EQ(r.amplitude(0b01), Complex(1.0));
  EXPECT_DOUBLE_EQ(r.norm_weight(), 1.0);
}

TEST(qla, apply_local_identity_strength_zero) {
  const StateVector s = testutil::random_state({"a", "b", "c"});
  const Matrix m0 = diag2(1.0, 1.0);  // pre-weak element at p = 0
  EXPECT_LT(max_abs_diff(apply_local(m0, {"b"}, s).amplitudes(), s.amplitudes()), 1e-16);
}

TEST(qla, apply_local_weak_element_on_epr_half) {
  // diag(sqrt(1-p), 1) on B of (alpha|0> + beta|1>)(|00> + |11>)/sqrt2,
  // renormalized: (alpha|0>+beta|1>)(sqrt(1-p)|00> + |11>)/sqrt(2-p).
  const double p = 0.75;
  const double alpha = std::cos(0.4);
  const Complex beta = std::polar(std::sin(0.4), 1.1);
  const double s = 1.0 / std::numbers::sqrt2;
  const StateVector psi1 = tensor_product(ket({"in"}, {alpha, beta}), ket({"A", "B"}, {s, 0.0, 0.0, s}));
  const StateVector r = apply_local(diag2(std::sqrt(1 - p), 1.0), {"B"}, psi1);
  EXPECT_FALSE(r.is_normalized());
  EXPECT_NEAR(r.norm_weight(), (2.0 - p) / 2.0, 1e-15);

  const double k = 1.0 / std::sqrt(2.0 - p);
  Vector expect = Vector::Zero(8);
  expect(0b000) = k * alpha * std::sqrt(1 - p);
  expect(0b011) = k * alpha;
  expect(0b100) = k * beta * std::sqrt(1 - p);
  expect(0b111) = k * beta;
  EXPECT_LT(max_abs_diff(r.normalized().amplitudes(), expect), 1e-15);
}

TEST(qla, apply_local_errors) {
  const StateVector s = StateVector::basis({"a", "b"}, 0);
  EXPECT_THROW(apply_local(Matrix::Identity(4, 4), {"a"}, s), InvalidArgument);
  EXPECT_THROW(apply_local(pauli_x(), {"zz"}, s), InvalidArgument);
  EXPECT_THROW(apply_local(pauli_x(), {}, s), InvalidArgument);
  EXPECT_THROW(apply_local(Matrix::Identity(4, 2), {"a"}, s, ModeLabels{"b", "c"}), InvalidArgument);
}

TEST(qla, apply_local_isometry_and_projection_relabel_modes) {
  // |1> on "b" mapped into ("c", "d") by a 4x2 isometry, placed in b's slot.
  Matrix iso = Matrix::Zero(4, 2);
  iso(0, 0) = 1.0;
  iso(2, 1) = 1.0;
  const StateVector s = StateVector::basis({"a", "b", "e"}, 0b011);
  const StateVector r = apply_local(iso, {"b"}, s, ModeLabels{"c", "d"});
  EXPECT_EQ(r.modes(), (ModeLabels{"a", "c", "d", "e"}));
  EXPECT_EQ(r.amplitude(0b0101), Complex(1.0));

  // Projecting (a, b) onto <11| leaves only "e".
  Matrix bra = Matrix::Zero(1, 4);
  bra(0, 3) = 1.0;
  const StateVector t = apply_local(bra, {"a", "b"}, StateVector::basis({"a", "e", "b"}, 0b111), ModeLabels{});
  EXPECT_EQ(t.modes(), (ModeLabels{"e"}));
  EXPECT_EQ(t.amplitude(1), Complex(1.0));
}

TEST(qla, apply_local_target_order_sets_operator_bits) {
  // CNOT with control listed first.
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const StateVector s = StateVector::basis({"x", "y"}, 0b01);  // x=0, y=1
  EXPECT_EQ(apply_local(cnot, {"y", "x"}, s).amplitude(0b11), Complex(1.0));
  EXPECT_EQ(apply_local(cnot, {"x", "y"}, s).amplitude(0b01), Complex(1.0));
}

TEST(qla, apply_local_unitary_preserves_norm) {
  for (int trial = 0; trial < 200; ++trial) {
    const StateVector s = testutil::random_state({"a", "b", "c", "d"});
    const Matrix u = testutil::random_unitary(4);
    EXPECT_NEAR(apply_local(u, {"d", "b"}, s).norm_weight(), 1.0, 1e-12);
  }
}

TEST(qla, partial_trace_examples) {
  const DensityMatrix zz = DensityMatrix::from_state(StateVector::basis({"x", "y"}, 0));
  EXPECT_LT(max_abs_diff(partial_trace(zz, {"x"}).entries(), diag2(1.0, 0.0)), 1e-16);

  const double s = 1.0 / std::numbers::sqrt2;
  const DensityMatrix bell = DensityMatrix::from_state(ket({"x", "y"}, {s, 0.0, 0.0, s}));
  EXPECT_LT(max_abs_diff(partial_trace(bell, {"x"}).entries(), diag2(0.5, 0.5)), 1e-15);

  EXPECT_THROW(partial_trace(bell, {}), InvalidArgument);
  EXPECT_THROW(partial_trace(bell, {"q"}), InvalidArgument);
}

TEST(qla, partial_trace_keeps_trace_and_validity) {
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix rho = 3.7 * testutil::random_density(16);
    const DensityMatrix d({"a", "b", "c", "d"}, rho);
    for (const auto& keep : {ModeLabels{"a"}, ModeLabels{"c"}, ModeLabels{"b", "d"}}) {
      const DensityMatrix r = partial_trace(d, keep);  // constructor re-checks Hermitian + PSD
      EXPECT_NEAR(r.trace_weight(), d.trace_weight(), 1e-14 * d.trace_weight());
    }
  }
}

TEST(qla, partial_trace_uses_state_mode_order) {
  const DensityMatrix d = DensityMatrix::from_state(StateVector::basis({"a", "b", "c"}, 0b011));
  const DensityMatrix r = partial_trace(d, {"c", "a"});
  EXPECT_EQ(r.modes(), (ModeLabels{"a", "c"}));
  EXPECT_EQ(r.entry(0b01, 0b01), Complex(1.0));
}

TEST(qla, fidelity_pure_examples) {
  const StateVector zero = StateVector::basis({"x"}, 0);
  EXPECT_DOUBLE_EQ(fidelity_pure(zero, DensityMatrix({"x"}, diag2(1, 0))), 1.0);
  EXPECT_DOUBLE_EQ(fidelity_pure(zero, DensityMatrix({"x"}, diag2(0, 1))), 0.0);
  const double s = 1.0 / std::numbers::sqrt2;
  EXPECT_NEAR(fidelity_pure(ket({"x"}, {s, s}), DensityMatrix({"x"}, diag2(0.5, 0.5))), 0.5, 1e-15);
  EXPECT_THROW(fidelity_pure(zero, DensityMatrix({"x", "y"}, Matrix::Identity(4, 4) / 4.0)), InvalidArgument);
  EXPECT_THROW(fidelity_pure(ket({"x"}, {2.0, 0.0}), DensityMatrix({"x"}, diag2(1, 0))), InvalidArgument);
}

TEST(qla, fidelity_of_a_state_with_itself_is_one) {
  for (int trial = 0; trial < 200; ++trial) {
    const StateVector psi = testutil::random_state({"x"});
    EXPECT_NEAR(fidelity_pure(psi, DensityMatrix::from_state(psi)), 1.0, 1e-12);
  }
}

TEST(qla, concurrence_examples) {
  const double s = 1.0 / std::numbers::sqrt2;
  const DensityMatrix bell = DensityMatrix::from_state(ket({"x", "y"}, {s, 0.0, 0.0, s}));
  EXPECT_NEAR(concurrence_wootters(bell), 1.0, 1e-12);
  EXPECT_NEAR(concurrence_wootters(DensityMatrix({"x", "y"}, Matrix::Identity(4, 4) / 4.0)), 0.0, 1e-12);

  // Shared pair with no weak measurements at t -> infinity (zeta^2 = eta^2 = 1/2, N = 2).
  Matrix x = Matrix::Zero(4, 4);
  x(0, 0) = 0.5 / 2.0;
  x(1, 1) = 0.5 / 2.0;
  x(3, 3) = 1.0 / 2.0;
  x(0, 3) = x(3, 0) = s / 2.0;
  EXPECT_NEAR(concurrence_wootters(DensityMatrix({"A", "I"}, x)), s, 1e-12);
}

TEST(qla, concurrence_rejects_bad_inputs) {
  EXPECT_THROW(concurrence_wootters(DensityMatrix({"x"}, diag2(0.5, 0.5))), InvalidArgument);
  EXPECT_THROW(concurrence_wootters(DensityMatrix({"x", "y"}, Matrix::Identity(4, 4))), InvalidArgument);
}

TEST(qla, concurrence_matches_x_state_closed_form) {
  // 2 max(0, |rho14| - sqrt(rho22 rho33)), general X states and the
  // rho22 * rho33 = 0 shape of the shared pair.
  for (int trial = 0; trial < 500; ++trial) {
    const bool shared_pair_shape = trial % 2 == 0;
    const double d1 = testutil::uniform(0.0, 1.0);
    const double d2 = testutil::uniform(0.0, 1.0);
    const double d3 = shared_pair_shape ? 0.0 : testutil::uniform(0.0, 1.0);
    const double d4 = testutil::uniform(0.0, 1.0);
    const double tr = d1 + d2 + d3 + d4;
    const double bound = std::sqrt(d1 * d4) / tr;
    const Complex off = std::polar(testutil::uniform(0.0, bound), testutil::uniform(0.0, 6.28));
    Matrix x = Matrix::Zero(4, 4);
    x(0, 0) = d1 / tr;
    x(1, 1) = d2 / tr;
    x(2, 2) = d3 / tr;
    x(3, 3) = d4 / tr;
    x(0, 3) = off;
    x(3, 0) = std::conj(off);
    const double expect = 2.0 * std::max(0.0, std::abs(off) - std::sqrt(x(1, 1).real() * x(2, 2).real()));
    EXPECT_NEAR(concurrence_wootters(DensityMatrix({"A", "I"}, x)), expect, 1e-12) << "trial " << trial;
  }
}

TEST(qla, concurrence_of_random_pure_states) {
  // For pure a|00>+b|01>+c|10>+d|11>, C = 2|ad - bc|.
  for (int trial = 0; trial < 200; ++trial) {
    const StateVector psi = testutil::random_state({"x", "y"});
    const Vector& v = psi.amplitudes();
    const double expect = 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
    EXPECT_NEAR(concurrence_wootters(DensityMatrix::from_state(psi)), expect, 1e-7);
  }
}
