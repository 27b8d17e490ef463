#ifndef HAWKTELE_WEAKMEAS_HPP
#define HAWKTELE_WEAKMEAS_HPP

#include <cmath>
#include <string>
#include <utility>

#include "hawktele/error.hpp"
#include "hawktele/qla.hpp"

namespace hawktele {

/// Strength of a weak measurement together with its complement 1 - value.
///
/// The complement is stored rather than recomputed so that strengths given
/// through their complement (q̄ = (1-p) zeta^2) keep it bit-exact.
class MeasurementStrength {
 public:
  explicit MeasurementStrength(double value = 0.0) : value_(value), complement_(1.0 - value) {
    check();
  }

  static MeasurementStrength from_complement(double complement) {
    MeasurementStrength s;
    s.value_ = 1.0 - complement;
    s.complement_ = complement;
    s.check();
    return s;
  }

  double value() const { return value_; }
  double complement() const { return complement_; }

 private:
  void check() const {
    if (!(value_ >= 0.0 && value_ <= 1.0) || !(complement_ >= 0.0 && complement_ <= 1.0)) {
      throw InvalidArgument("measurement strength must lie in [0, 1]");
    }
  }

  double value_;
  double complement_;
};

/// Kept element of the pre-weak measurement, diag(sqrt(1-p), 1).
inline qla::Matrix pre_weak_operator(const MeasurementStrength& p) {
  qla::Matrix m = qla::Matrix::Zero(2, 2);
  m(0, 0) = std::sqrt(p.complement());
  m(1, 1) = 1.0;
  return m;
}

/// Discarded element of the pre-weak measurement, diag(sqrt(p), 0).
inline qla::Matrix pre_weak_discard(const MeasurementStrength& p) {
  qla::Matrix m = qla::Matrix::Zero(2, 2);
  m(0, 0) = std::sqrt(p.value());
  return m;
}

/// Kept element of the post-weak (reversing) measurement, diag(1, sqrt(1-q)).
inline qla::Matrix post_weak_operator(const MeasurementStrength& q) {
  qla::Matrix m = qla::Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = std::sqrt(q.complement());
  return m;
}

inline qla::Matrix post_weak_discard(const MeasurementStrength& q) {
  qla::Matrix m = qla::Matrix::Zero(2, 2);
  m(1, 1) = std::sqrt(q.value());
  return m;
}

struct SelectiveResult {
  qla::StateVector state;  ///< unnormalized kept branch
  double success_probability;
};

/// Applies one measurement element and keeps that branch.
/// The success probability is the ratio of squared norms after/before.
inline SelectiveResult apply_selective(const qla::Matrix& op, const std::string& mode,
                                       const qla::StateVector& s) {
  if (op.rows() != 2 || op.cols() != 2) throw InvalidArgument("apply_selective: expected a 2x2 operator");
  Eigen::JacobiSVD<qla::Matrix> svd(op);
  if (svd.singularValues()(0) > 1.0 + qla::kNormTolerance) {
    throw InvalidArgument("apply_selective: operator norm exceeds 1, not a measurement element");
  }
  if (s.norm_weight() <= 0.0) throw InvalidArgument("apply_selective: zero input state");
  qla::StateVector out = qla::apply_local(op, {mode}, s);
  const double prob = out.norm_weight() / s.norm_weight();
  return {std::move(out), prob};
}

}  // namespace hawktele

#endif  // HAWKTELE_WEAKMEAS_HPP
