#ifndef HAWKTELE_QLA_HPP
#define HAWKTELE_QLA_HPP

// Exact dense linear algebra over labeled two-level modes.
//
// Basis ordering: the leftmost mode label is the most significant bit of the
// amplitude index, so for modes (in, A, I, II) index 0b0110 is |0_in 1_A 1_I 0_II>.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hawktele/error.hpp"

namespace hawktele::qla {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using ModeLabels = std::vector<std::string>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

/// Complex amplitude with finite components.
inline Complex make_complex(double re, double im = 0.0) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw InvalidArgument("complex scalar must have finite components");
  }
  return {re, im};
}

namespace detail {

inline void require_unique(const ModeLabels& labels, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw InvalidArgument(std::string(what) + ": duplicate mode label '" + l + "'");
    }
  }
}

inline std::size_t dim_of(std::size_t modes) { return std::size_t{1} << modes; }

// Bit of `mode` (position in the label list) inside a basis index over `n` modes.
inline std::size_t bit_of(std::size_t index, std::size_t mode, std::size_t n) {
  return (index >> (n - 1 - mode)) & 1U;
}

inline std::optional<std::size_t> find_label(const ModeLabels& labels, const std::string& label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace detail

/// Pure or deliberately unnormalized state over labeled qubit modes.
///
/// Amplitudes are kept as produced; norm_weight() is their squared norm, which
/// is what selective measurements read success probabilities from.
class StateVector {
 public:
  StateVector(ModeLabels modes, Vector amplitudes)
      : modes_(std::move(modes)), amplitudes_(std::move(amplitudes)) {
    detail::require_unique(modes_, "StateVector");
    if (static_cast<std::size_t>(amplitudes_.size()) != detail::dim_of(modes_.size())) {
      throw InvalidArgument("StateVector: amplitude count must be 2^modes");
    }
    if (!amplitudes_.allFinite()) {
      throw InvalidArgument("StateVector: non-finite amplitude");
    }
    norm_weight_ = amplitudes_.squaredNorm();
  }

  /// Computational basis state |index> over `modes`.
  static StateVector basis(ModeLabels modes, std::size_t index) {
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(detail::dim_of(modes.size())));
    if (index >= static_cast<std::size_t>(amps.size())) {
      throw InvalidArgument("StateVector::basis: index out of range");
    }
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return {std::move(modes), std::move(amps)};
  }

  const ModeLabels& modes() const { return modes_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
  std::size_t num_modes() const { return modes_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

  double norm_weight() const { return norm_weight_; }
  bool is_normalized() const { return std::abs(norm_weight_ - 1.0) <= kNormTolerance; }

  std::optional<std::size_t> position(const std::string& label) const {
    return detail::find_label(modes_, label);
  }

  StateVector normalized() const {
    if (norm_weight_ <= 0.0) throw InvalidArgument("cannot normalize a zero state");
    return {modes_, amplitudes_ / std::sqrt(norm_weight_)};
  }

 private:
  ModeLabels modes_;
  Vector amplitudes_;
  double norm_weight_ = 0.0;
};

/// Hermitian positive semidefinite matrix over labeled modes, possibly with trace != 1.
class DensityMatrix {
 public:
  DensityMatrix(ModeLabels modes, Matrix entries)
      : modes_(std::move(modes)), entries_(std::move(entries)) {
    detail::require_unique(modes_, "DensityMatrix");
    const auto d = static_cast<Eigen::Index>(detail::dim_of(modes_.size()));
    if (entries_.rows() != d || entries_.cols() != d) {
      throw InvalidArgument("DensityMatrix: side must be 2^modes");
    }
    if (!detail::all_finite(entries_)) {
      throw InvalidArgument("DensityMatrix: non-finite entry");
    }
    trace_weight_ = entries_.trace().real();
    const double scale = std::max(1.0, std::abs(trace_weight_));
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance * scale) {
      throw InvalidArgument("DensityMatrix: not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTolerance * scale) {
      throw InvalidArgument("DensityMatrix: not positive semidefinite");
    }
  }

  /// |psi><psi| without renormalization; trace_weight equals psi.norm_weight().
  static DensityMatrix from_state(const StateVector& psi) {
    return {psi.modes(), psi.amplitudes() * psi.amplitudes().adjoint()};
  }

  const ModeLabels& modes() const { return modes_; }
  const Matrix& entries() const { return entries_; }
  Complex entry(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  std::size_t num_modes() const { return modes_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }

  double trace_weight() const { return trace_weight_; }
  bool is_normalized() const { return std::abs(trace_weight_ - 1.0) <= kNormTolerance; }

  DensityMatrix normalized() const {
    if (trace_weight_ <= 0.0) throw InvalidArgument("cannot normalize a zero-trace matrix");
    return {modes_, entries_ / trace_weight_};
  }

 private:
  ModeLabels modes_;
  Matrix entries_;
  double trace_weight_ = 0.0;
};

inline Matrix identity2() { return Matrix::Identity(2, 2); }

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// Kronecker product of two matrices, `a` most significant.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// a ⊗ b with a's modes first. The norm weights multiply.
inline StateVector tensor_product(const StateVector& a, const StateVector& b) {
  ModeLabels modes = a.modes();
  for (const auto& l : b.modes()) {
    if (a.position(l)) throw InvalidArgument("tensor_product: duplicate mode label '" + l + "'");
    modes.push_back(l);
  }
  Vector amps(static_cast<Eigen::Index>(a.dim() * b.dim()));
  const auto db = static_cast<Eigen::Index>(b.dim());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    amps.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
  }
  return {std::move(modes), std::move(amps)};
}

/// Applies `op` to `targets` (identity elsewhere).
///
/// `op` maps 2^|targets| columns to 2^|outputs| rows, so besides ordinary
/// local gates it can embed one mode into two (an isometry) or project modes
/// away (a bra, zero output modes). Target bits are read in the listed order,
/// first target most significant; output modes take the slot of the
/// earliest target in the state's ordering. Without `outputs`, the targets are
/// kept in place. The result is not renormalized.
inline StateVector apply_local(const Matrix& op, const ModeLabels& targets, const StateVector& s,
                               std::optional<ModeLabels> outputs = std::nullopt) {
  if (targets.empty()) throw InvalidArgument("apply_local: no target modes");
  detail::require_unique(targets, "apply_local targets");
  const ModeLabels out_labels = outputs.value_or(targets);
  detail::require_unique(out_labels, "apply_local outputs");
  if (static_cast<std::size_t>(op.cols()) != detail::dim_of(targets.size()) ||
      static_cast<std::size_t>(op.rows()) != detail::dim_of(out_labels.size())) {
    throw InvalidArgument("apply_local: operator shape does not match target/output modes");
  }
  if (!op.allFinite()) throw InvalidArgument("apply_local: non-finite operator");

  const std::size_t n = s.num_modes();
  std::vector<std::size_t> target_pos;
  target_pos.reserve(targets.size());
  for (const auto& t : targets) {
    const auto pos = s.position(t);
    if (!pos) throw InvalidArgument("apply_local: unknown mode label '" + t + "'");
    target_pos.push_back(*pos);
  }
  const std::size_t first_slot = *std::min_element(target_pos.begin(), target_pos.end());

  // Resulting label list and, for each source position, where it lands.
  ModeLabels result_modes;
  std::vector<std::size_t> rest_src;  // source positions of untouched modes, in order
  std::vector<std::size_t> rest_dst;
  std::size_t out_first = 0;
  for (std::size_t m = 0; m < n; ++m) {
    if (m == first_slot) {
      out_first = result_modes.size();
      result_modes.insert(result_modes.end(), out_labels.begin(), out_labels.end());
    }
    if (std::find(target_pos.begin(), target_pos.end(), m) != target_pos.end()) continue;
    if (std::find(out_labels.begin(), out_labels.end(), s.modes()[m]) != out_labels.end()) {
      throw InvalidArgument("apply_local: output label collides with mode '" + s.modes()[m] + "'");
    }
    rest_src.push_back(m);
    rest_dst.push_back(result_modes.size());
    result_modes.push_back(s.modes()[m]);
  }

  const std::size_t nr = result_modes.size();
  const std::size_t k = targets.size();
  const std::size_t mo = out_labels.size();
  Vector result = Vector::Zero(static_cast<Eigen::Index>(detail::dim_of(nr)));
  for (std::size_t idx = 0; idx < s.dim(); ++idx) {
    const Complex amp = s.amplitude(idx);
    if (amp == Complex{}) continue;
    std::size_t col = 0;
    for (std::size_t j = 0; j < k; ++j) col = (col << 1U) | detail::bit_of(idx, target_pos[j], n);
    std::size_t base = 0;
    for (std::size_t r = 0; r < rest_src.size(); ++r) {
      base |= detail::bit_of(idx, rest_src[r], n) << (nr - 1 - rest_dst[r]);
    }
    for (std::size_t row = 0; row < detail::dim_of(mo); ++row) {
      const Complex coeff = op(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
      if (coeff == Complex{}) continue;
      std::size_t dst = base;
      for (std::size_t j = 0; j < mo; ++j) {
        dst |= ((row >> (mo - 1 - j)) & 1U) << (nr - 1 - (out_first + j));
      }
      result(static_cast<Eigen::Index>(dst)) += coeff * amp;
    }
  }
  return {std::move(result_modes), std::move(result)};
}

/// Traces out every mode not in `keep`. Kept modes retain rho's ordering.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const ModeLabels& keep) {
  if (keep.empty()) throw InvalidArgument("partial_trace: empty keep set");
  detail::require_unique(keep, "partial_trace keep");
  const std::size_t n = rho.num_modes();
  std::vector<bool> kept(n, false);
  for (const auto& l : keep) {
    const auto pos = detail::find_label(rho.modes(), l);
    if (!pos) throw InvalidArgument("partial_trace: unknown mode label '" + l + "'");
    kept[*pos] = true;
  }
  ModeLabels out_modes;
  for (std::size_t m = 0; m < n; ++m) {
    if (kept[m]) out_modes.push_back(rho.modes()[m]);
  }

  // Split every full index into (kept bits, traced bits).
  const std::size_t d = rho.dim();
  std::vector<std::size_t> kidx(d), tidx(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t a = 0, b = 0;
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t bit = detail::bit_of(i, m, n);
      if (kept[m]) a = (a << 1U) | bit;
      else b = (b << 1U) | bit;
    }
    kidx[i] = a;
    tidx[i] = b;
  }
  const auto dk = static_cast<Eigen::Index>(detail::dim_of(out_modes.size()));
  Matrix out = Matrix::Zero(dk, dk);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (tidx[i] != tidx[j]) continue;
      out(static_cast<Eigen::Index>(kidx[i]), static_cast<Eigen::Index>(kidx[j])) += rho.entry(i, j);
    }
  }
  return {std::move(out_modes), std::move(out)};
}

/// <psi|rho|psi> for a normalized pure state and a normalized density matrix.
inline double fidelity_pure(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim()) throw InvalidArgument("fidelity_pure: dimension mismatch");
  if (!psi.is_normalized() || !rho.is_normalized()) {
    throw InvalidArgument("fidelity_pure: inputs must be normalized");
  }
  const Vector& v = psi.amplitudes();
  return (v.adjoint() * rho.entries() * v)(0, 0).real();
}

/// Wootters concurrence of a normalized two-qubit density matrix.
///
/// Eigenvalues of rho (Y⊗Y) rho* (Y⊗Y) at the rounding-noise level
/// (<= 64 eps of the largest) count as exact zeros; otherwise their square
/// roots (~1e-8) would swamp the result.
inline double concurrence_wootters(const DensityMatrix& rho) {
  if (rho.num_modes() != 2) throw InvalidArgument("concurrence_wootters: need exactly two modes");
  if (std::abs(rho.trace_weight() - 1.0) > kPsdTolerance) {
    throw InvalidArgument("concurrence_wootters: density matrix must be normalized");
  }
  const Matrix yy = kron(pauli_y(), pauli_y());
  const Matrix& r = rho.entries();
  const Matrix product = r * yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix> es(product, false);
  if (es.info() != Eigen::Success) throw Error("concurrence_wootters: eigen-solver failed");

  std::array<double, 4> mu{};
  for (Eigen::Index i = 0; i < 4; ++i) {
    mu[static_cast<std::size_t>(i)] = es.eigenvalues()(i).real();
  }
  const double largest = *std::max_element(mu.begin(), mu.end());
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::max(largest, 0.0);
  std::array<double, 4> lambda{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (mu[i] < -kPsdTolerance) throw InvalidArgument("concurrence_wootters: input is not PSD");
    lambda[i] = mu[i] <= noise ? 0.0 : std::sqrt(mu[i]);
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace hawktele::qla

#endif  // HAWKTELE_QLA_HPP
