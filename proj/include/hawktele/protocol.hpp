#ifndef HAWKTELE_PROTOCOL_HPP
#define HAWKTELE_PROTOCOL_HPP

// Weak-measurement-assisted teleportation of one qubit to an observer hovering
// near a Schwarzschild horizon.
//
// Two independent routes are provided and are expected to agree to rounding:
//   * simulate_circuit() runs the protocol on explicit state vectors over the
//     modes (in, A, B) -> (in, A, I, II);
//   * the closed-form evaluators compute the same quantities from (p̄, q̄, zeta, eta).

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hawktele/error.hpp"
#include "hawktele/horizon.hpp"
#include "hawktele/numeric.hpp"
#include "hawktele/qla.hpp"
#include "hawktele/weakmeas.hpp"

namespace hawktele {

/// The qubit Alice teleports: cos(theta/2)|0> + sin(theta/2) e^{i delta}|1>.
class InputState {
 public:
  InputState(double theta, double delta) : theta_(theta), delta_(delta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw InvalidArgument("theta must lie in [0, pi]");
    if (!(delta >= 0.0 && delta < 2.0 * std::numbers::pi)) throw InvalidArgument("delta must lie in [0, 2pi)");
  }

  double theta() const { return theta_; }
  double delta() const { return delta_; }
  double alpha() const { return std::cos(theta_ / 2.0); }
  std::complex<double> beta() const { return std::polar(std::sin(theta_ / 2.0), delta_); }

  qla::StateVector state(const std::string& label = "in") const {
    qla::Vector v(2);
    v << alpha(), beta();
    return {{label}, std::move(v)};
  }

 private:
  double theta_;
  double delta_;
};

/// How the post-measurement strength q is chosen.
class QPolicy {
 public:
  enum class Kind { manual, type1, type2 };

  static QPolicy manual(double q) {
    (void)MeasurementStrength(q);
    return QPolicy(Kind::manual, q);
  }
  static QPolicy type1() { return QPolicy(Kind::type1, 0.0); }
  static QPolicy type2() { return QPolicy(Kind::type2, 0.0); }

  /// Accepts "type1", "type2", or "manual:<q>".
  static QPolicy parse(std::string_view text) {
    if (text == "type1") return type1();
    if (text == "type2") return type2();
    constexpr std::string_view prefix = "manual:";
    if (text.substr(0, prefix.size()) == prefix) {
      const std::string number(text.substr(prefix.size()));
      std::size_t used = 0;
      double q = 0.0;
      try {
        q = std::stod(number, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != number.size()) {
        throw InvalidArgument("bad q policy '" + std::string(text) + "'");
      }
      return manual(q);
    }
    throw InvalidArgument("unknown q policy '" + std::string(text) + "' (expected manual:<q>, type1, type2)");
  }

  Kind kind() const { return kind_; }
  double manual_q() const { return q_; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::type1: return "type1";
      case Kind::type2: return "type2";
      case Kind::manual: break;
    }
    return "manual:" + std::to_string(q_);
  }

 private:
  QPolicy(Kind kind, double q) : kind_(kind), q_(q) {}
  Kind kind_;
  double q_;
};

struct ProtocolConfig {
  MeasurementStrength p;
  QPolicy q_policy = QPolicy::manual(0.0);
  HawkingMode mode;
};

/// Normalization N = p̄ zeta^2 + q̄ + p̄ q̄ eta^2; twice the success probability.
inline double normalization(const MeasurementStrength& p, const MeasurementStrength& q,
                            const HawkingMode& mode) {
  const double pb = p.complement();
  const double qb = q.complement();
  return pb * mode.zeta2() + qb + pb * qb * mode.eta2();
}

/// Average fidelity over theta with (1/pi) d theta, as a function of the
/// complements p̄, q̄. Templated so the optimizer can evaluate it in extended precision.
template <typename Real = double>
Real average_fidelity_from(Real pbar, Real qbar, Real zeta, Real eta) {
  const Real z2 = zeta * zeta;
  const Real e2 = eta * eta;
  const Real n = pbar * z2 + qbar + pbar * qbar * e2;
  if (!(n > Real(0))) throw DegenerateProtocol("normalization N vanishes");
  using std::sqrt;
  return (Real(3) * (pbar * z2 + qbar) + pbar * qbar * e2 + Real(2) * sqrt(pbar * qbar) * zeta) /
         (Real(4) * n);
}

inline double average_fidelity(const MeasurementStrength& p, const MeasurementStrength& q,
                               const HawkingMode& mode) {
  return average_fidelity_from<double>(p.complement(), q.complement(), mode.zeta(), mode.eta());
}

inline void require_nondegenerate_p(const MeasurementStrength& p, const char* who) {
  if (p.complement() <= 0.0) {
    throw DegenerateProtocol(std::string(who) + ": p = 1 leaves nothing to reverse (N = 0)");
  }
}

/// Type-1 optimum q̄ = p̄ zeta^2: the post-measurement rebalances the no-jump branch.
inline MeasurementStrength q_type1(const MeasurementStrength& p, const HawkingMode& mode) {
  require_nondegenerate_p(p, "q_type1");
  return MeasurementStrength::from_complement(p.complement() * mode.zeta2());
}

/// Success probability at the type-1 optimum, (p̄ zeta^2 / 2)(2 + p̄ eta^2).
inline double success_prob_type1(const MeasurementStrength& p, const HawkingMode& mode) {
  const double pb = p.complement();
  return pb * mode.zeta2() / 2.0 * (2.0 + pb * mode.eta2());
}

/// Type-2 optimum: the stationary maximum of the average fidelity in q̄,
/// q̄ = p̄ zeta^2 (sqrt(r^4 + r^2 + 1) - r^2)^2 / (1 + r^2)^2 with r^2 = p̄ eta^2.
inline MeasurementStrength q_type2(const MeasurementStrength& p, const HawkingMode& mode) {
  require_nondegenerate_p(p, "q_type2");
  const double pb = p.complement();
  const double r2 = pb * mode.eta2();
  const double root = std::sqrt(r2 * r2 + r2 + 1.0) - r2;
  const double denom = 1.0 + r2;
  return MeasurementStrength::from_complement(pb * mode.zeta2() * root * root / (denom * denom));
}

/// Numerical maximizer of the average fidelity over q̄ in (0, 1].
///
/// A 1e-3 grid locates the best cell (first maximum wins, so on a plateau the
/// smallest q̄ is kept); golden-section search then refines inside the
/// neighbouring cells to 1e-10, evaluating in long double because the
/// maximum is quadratically flat.
inline MeasurementStrength optimize_q_numeric(const MeasurementStrength& p, const HawkingMode& mode) {
  require_nondegenerate_p(p, "optimize_q_numeric");
  using Real = long double;
  const Real pb = p.complement();
  const Real zeta = mode.zeta();
  const Real eta = mode.eta();
  auto objective = [&](Real qbar) { return average_fidelity_from<Real>(pb, qbar, zeta, eta); };

  constexpr int kCells = 1000;
  int best = 1;
  Real best_value = objective(Real(best) / kCells);
  for (int i = 2; i <= kCells; ++i) {
    const Real v = objective(Real(i) / kCells);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const Real lo = Real(best - 1) / kCells;
  const Real hi = Real(std::min(best + 1, kCells)) / kCells;
  const Real qbar = numeric::golden_section_maximize<Real>(objective, lo, hi, Real(1e-10));
  return MeasurementStrength::from_complement(static_cast<double>(qbar));
}

/// Resolves the configured policy to a concrete post-measurement strength.
inline MeasurementStrength resolve_q(const ProtocolConfig& config) {
  switch (config.q_policy.kind()) {
    case QPolicy::Kind::type1: return q_type1(config.p, config.mode);
    case QPolicy::Kind::type2: return q_type2(config.p, config.mode);
    case QPolicy::Kind::manual: break;
  }
  MeasurementStrength q(config.q_policy.manual_q());
  if (!(normalization(config.p, q, config.mode) > 0.0)) {
    throw DegenerateProtocol("p = 1 and q = 1 annihilate every branch (N = 0)");
  }
  return q;
}

inline double normalization(const ProtocolConfig& config) {
  return normalization(config.p, resolve_q(config), config.mode);
}

/// Kept-branch probability of both weak measurements, N/2.
inline double success_probability(const ProtocolConfig& config) { return normalization(config) / 2.0; }

inline double average_fidelity(const ProtocolConfig& config) {
  return average_fidelity(config.p, resolve_q(config), config.mode);
}

/// Bob's corrected state after tracing region II, in closed form.
inline qla::DensityMatrix closed_form_output(const InputState& input, const ProtocolConfig& config) {
  const MeasurementStrength q = resolve_q(config);
  const double pb = config.p.complement();
  const double qb = q.complement();
  const double z2 = config.mode.zeta2();
  const double e2 = config.mode.eta2();
  const double n = normalization(config.p, q, config.mode);
  const double a = input.alpha();
  const std::complex<double> b = input.beta();
  const double a2 = a * a;
  const double b2 = std::norm(b);

  qla::Matrix rho(2, 2);
  const std::complex<double> coherence = 2.0 * a * config.mode.zeta() * std::sqrt(pb * qb) * b;
  rho(0, 0) = a2 * pb * z2 + a2 * qb + b2 * e2 * pb * qb;
  rho(0, 1) = std::conj(coherence);
  rho(1, 0) = coherence;
  rho(1, 1) = b2 * pb * z2 + b2 * qb + a2 * e2 * pb * qb;
  return {{"I"}, rho / n};
}

/// Teleportation fidelity <phi_in|rho_out|phi_in> in closed form.
inline double fidelity_closed(const InputState& input, const ProtocolConfig& config) {
  const MeasurementStrength q = resolve_q(config);
  const double pb = config.p.complement();
  const double qb = q.complement();
  const double n = normalization(config.p, q, config.mode);
  const double a2 = input.alpha() * input.alpha();
  const double b2 = std::norm(input.beta());
  return ((a2 * a2 + b2 * b2) * (pb * config.mode.zeta2() + qb) + 2.0 * a2 * b2 * pb * qb * config.mode.eta2() +
          4.0 * a2 * b2 * std::sqrt(pb * qb) * config.mode.zeta()) /
         n;
}

/// (1/pi) ∫_0^pi F(theta) d theta by adaptive quadrature of fidelity_closed.
inline double average_fidelity_numeric(const ProtocolConfig& config, double delta = 0.0) {
  const double integral = numeric::integrate(
      [&](double theta) {
        // Quadrature nodes can overshoot pi by one ulp.
        return fidelity_closed(InputState(std::min(theta, std::numbers::pi), delta), config);
      },
      0.0, std::numbers::pi, 1e-12);
  return integral / std::numbers::pi;
}

/// Shared-pair state between Alice and Bob's region I after both weak measurements.
inline qla::DensityMatrix reduced_state_AI(const ProtocolConfig& config) {
  const MeasurementStrength q = resolve_q(config);
  const double pb = config.p.complement();
  const double qb = q.complement();
  const double n = normalization(config.p, q, config.mode);
  qla::Matrix rho = qla::Matrix::Zero(4, 4);
  rho(0, 0) = pb * config.mode.zeta2();
  rho(1, 1) = pb * qb * config.mode.eta2();
  rho(3, 3) = qb;
  rho(0, 3) = rho(3, 0) = std::sqrt(pb * qb) * config.mode.zeta();
  return {{"A", "I"}, rho / n};
}

/// Concurrence of reduced_state_AI, 2 sqrt(p̄ q̄) zeta / N.
inline double concurrence_closed(const ProtocolConfig& config) {
  const MeasurementStrength q = resolve_q(config);
  const double n = normalization(config.p, q, config.mode);
  return 2.0 * std::sqrt(config.p.complement() * q.complement()) * config.mode.zeta() / n;
}

// ---------------------------------------------------------------------------
// Circuit oracle

enum class BellOutcome { phi_plus, phi_minus, psi_plus, psi_minus };

inline std::string_view to_string(BellOutcome b) {
  switch (b) {
    case BellOutcome::phi_plus: return "Phi+";
    case BellOutcome::phi_minus: return "Phi-";
    case BellOutcome::psi_plus: return "Psi+";
    case BellOutcome::psi_minus: return "Psi-";
  }
  return "?";
}

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::phi_plus, BellOutcome::phi_minus, BellOutcome::psi_plus, BellOutcome::psi_minus};

/// <Bell| on two modes, as a 1x4 row.
inline qla::Matrix bell_bra(BellOutcome b) {
  const double s = 1.0 / std::numbers::sqrt2;
  qla::Matrix bra = qla::Matrix::Zero(1, 4);
  switch (b) {
    case BellOutcome::phi_plus: bra(0, 0) = s; bra(0, 3) = s; break;
    case BellOutcome::phi_minus: bra(0, 0) = s; bra(0, 3) = -s; break;
    case BellOutcome::psi_plus: bra(0, 1) = s; bra(0, 2) = s; break;
    case BellOutcome::psi_minus: bra(0, 1) = s; bra(0, 2) = -s; break;
  }
  return bra;
}

/// Pauli correction Bob applies for each announced outcome: I, Z, X, ZX.
inline qla::Matrix bell_correction(BellOutcome b) {
  switch (b) {
    case BellOutcome::phi_plus: return qla::identity2();
    case BellOutcome::phi_minus: return qla::pauli_z();
    case BellOutcome::psi_plus: return qla::pauli_x();
    case BellOutcome::psi_minus: return qla::pauli_z() * qla::pauli_x();
  }
  return qla::identity2();
}

struct BellBranch {
  BellOutcome outcome;
  qla::DensityMatrix state;  ///< corrected region-I state, normalized when weight > 0
  double weight;             ///< probability of the outcome given both weak measurements succeeded
};

struct ProtocolOutcome {
  MeasurementStrength q;
  qla::DensityMatrix rho_out;
  qla::DensityMatrix rho_ai;
  double fidelity;
  double success_probability;
  double pre_success;   ///< kept-branch probability of the pre-weak measurement
  double post_success;  ///< kept-branch probability of the post-weak measurement
  double concurrence_ai;
  std::vector<BellBranch> per_bell_outcome;
};

/// Runs the protocol on explicit state vectors.
///
/// (in) ⊗ EPR(A, B) -> pre-weak m0 on B -> B embedded into (I, II) ->
/// post-weak M0 on I -> Bell measurement on (in, A) with Pauli correction on I
/// -> trace of region II.
inline ProtocolOutcome simulate_circuit(const InputState& input, const ProtocolConfig& config) {
  const MeasurementStrength q = resolve_q(config);
  const qla::StateVector phi = input.state("in");

  qla::Vector epr = qla::Vector::Zero(4);
  epr(0) = epr(3) = 1.0 / std::numbers::sqrt2;
  const qla::StateVector psi1 = qla::tensor_product(phi, qla::StateVector({"A", "B"}, epr));

  auto [psi2, pre_prob] = apply_selective(pre_weak_operator(config.p), "B", psi1);
  const qla::StateVector psi3 = kruskal_embed(psi2, config.mode);
  auto [psi4, post_prob] = apply_selective(post_weak_operator(q), "I", psi3);

  const double kept = psi4.norm_weight();
  if (!(kept > 0.0)) throw DegenerateProtocol("simulate_circuit: no amplitude survives the weak measurements");

  const qla::DensityMatrix full = qla::DensityMatrix::from_state(psi4);
  qla::DensityMatrix rho_ai = qla::partial_trace(full, {"A", "I"}).normalized();

  qla::Matrix mixture = qla::Matrix::Zero(2, 2);
  std::vector<BellBranch> branches;
  branches.reserve(kBellOutcomes.size());
  for (const BellOutcome b : kBellOutcomes) {
    const qla::StateVector projected = qla::apply_local(bell_bra(b), {"in", "A"}, psi4, qla::ModeLabels{});
    const qla::StateVector corrected = qla::apply_local(bell_correction(b), {"I"}, projected);
    const qla::DensityMatrix bob = qla::partial_trace(qla::DensityMatrix::from_state(corrected), {"I"});
    mixture += bob.entries();
    const double weight = bob.trace_weight() / kept;
    branches.push_back({b, weight > 0.0 ? bob.normalized() : bob, weight});
  }
  qla::DensityMatrix rho_out({"I"}, mixture / kept);

  const double fidelity = qla::fidelity_pure(phi.normalized(), rho_out);
  const double concurrence = qla::concurrence_wootters(rho_ai);
  return ProtocolOutcome{q,
                         std::move(rho_out),
                         std::move(rho_ai),
                         fidelity,
                         kept / psi1.norm_weight(),
                         pre_prob,
                         post_prob,
                         concurrence,
                         std::move(branches)};
}

}  // namespace hawktele

#endif  // HAWKTELE_PROTOCOL_HPP
