#ifndef HAWKTELE_HORIZON_HPP
#define HAWKTELE_HORIZON_HPP

// Hawking-channel coefficients and the Kruskal -> Schwarzschild embedding of
// a single Dirac mode. Temperatures are the dimensionless ratio t = T/omega.

#include <cmath>
#include <numbers>
#include <string>

#include "hawktele/error.hpp"
#include "hawktele/qla.hpp"

namespace hawktele {

/// Below this ratio the channel is treated as the exact zero-temperature limit.
inline constexpr double kZeroTemperatureCutoff = 1e-6;

struct ModeCoefficients {
  double zeta = 1.0;  ///< amplitude of |0>_I|0>_II in the Kruskal vacuum
  double eta = 0.0;   ///< amplitude of |1>_I|1>_II
};

/// zeta = (e^{-1/t} + 1)^{-1/2}, eta = (e^{1/t} + 1)^{-1/2}.
inline ModeCoefficients mode_coefficients(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw InvalidArgument("temperature ratio must be finite and >= 0");
  }
  if (t < kZeroTemperatureCutoff) return {1.0, 0.0};
  const double x = 1.0 / t;
  return {1.0 / std::sqrt(std::exp(-x) + 1.0), 1.0 / std::sqrt(std::exp(x) + 1.0)};
}

/// Hawking temperature 1/(8 pi M) in Planck units.
inline double temperature_from_mass(double mass) {
  if (!std::isfinite(mass) || mass <= 0.0) throw InvalidArgument("black-hole mass must be > 0");
  return 1.0 / (8.0 * std::numbers::pi * mass);
}

/// A single Dirac mode seen by an observer hovering outside the horizon.
class HawkingMode {
 public:
  explicit HawkingMode(double temperature_ratio = 0.0)
      : t_(temperature_ratio), c_(mode_coefficients(temperature_ratio)) {}

  double temperature_ratio() const { return t_; }
  double zeta() const { return c_.zeta; }
  double eta() const { return c_.eta; }
  double zeta2() const { return c_.zeta * c_.zeta; }
  double eta2() const { return c_.eta * c_.eta; }

  /// 4x2 isometry |0>_B -> zeta|00> + eta|11>, |1>_B -> |10> over (I, II).
  qla::Matrix isometry() const {
    qla::Matrix v = qla::Matrix::Zero(4, 2);
    v(0, 0) = c_.zeta;
    v(3, 0) = c_.eta;
    v(2, 1) = 1.0;
    return v;
  }

 private:
  double t_;
  ModeCoefficients c_;
};

/// Replaces mode `bob` with the region pair (`region_i`, `region_ii`) in place.
inline qla::StateVector kruskal_embed(const qla::StateVector& s, const HawkingMode& mode,
                                      const std::string& bob = "B",
                                      const std::string& region_i = "I",
                                      const std::string& region_ii = "II") {
  if (!s.position(bob)) throw InvalidArgument("kruskal_embed: state has no mode '" + bob + "'");
  return qla::apply_local(mode.isometry(), {bob}, s, qla::ModeLabels{region_i, region_ii});
}

}  // namespace hawktele

#endif  // HAWKTELE_HORIZON_HPP
