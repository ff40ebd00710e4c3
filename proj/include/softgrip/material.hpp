#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include "softgrip/errors.hpp"

namespace softgrip {

/// Any incompressible law usable by the chamber model: it only has to
/// provide the in-plane Cauchy stress difference sigma_tt - sigma_rr as a
/// function of the hoop and radial stretches (axial stretch fixed at 1).
template <class M>
concept PlaneStrainMaterial = requires(const M& m, double lt, double lr) {
  { m.stress_difference(lt, lr) } -> std::convertible_to<double>;
};

namespace detail {
inline void check_stretches(double lambda_theta, double lambda_r) {
  if (!(lambda_theta > 0.0) || !(lambda_r > 0.0)) {
    throw DomainError("stretches must be positive (got lambda_theta=" +
                      std::to_string(lambda_theta) +
                      ", lambda_r=" + std::to_string(lambda_r) + ")");
  }
}
}  // namespace detail

/// Incompressible neo-Hookean solid, W = C1 (I1 - 3), in plane strain.
/// Stresses and energy densities are in kPa.
class HyperelasticMaterial {
 public:
  static constexpr double kDefaultC1 = 119.0;

  explicit HyperelasticMaterial(double c1_kPa = kDefaultC1) : c1_(c1_kPa) {
    if (!(c1_kPa > 0.0) || !std::isfinite(c1_kPa)) {
      throw DomainError("material constant c1 must be > 0 kPa");
    }
  }

  double c1() const noexcept { return c1_; }

  /// W for principal stretches (lambda_theta, lambda_r, 1).
  double strain_energy_density(double lambda_theta, double lambda_r) const {
    detail::check_stretches(lambda_theta, lambda_r);
    const double i1 = lambda_theta * lambda_theta + lambda_r * lambda_r + 1.0;
    return c1_ * (i1 - 3.0);
  }

  /// sigma_tt - sigma_rr = lambda_t dW/dlambda_t - lambda_r dW/dlambda_r.
  double stress_difference(double lambda_theta, double lambda_r) const {
    detail::check_stretches(lambda_theta, lambda_r);
    return 2.0 * c1_ *
           (lambda_theta * lambda_theta - lambda_r * lambda_r);
  }

  friend bool operator==(const HyperelasticMaterial&,
                         const HyperelasticMaterial&) = default;

 private:
  double c1_;
};

static_assert(PlaneStrainMaterial<HyperelasticMaterial>);

inline double strain_energy_density(const HyperelasticMaterial& mat,
                                    double lambda_theta, double lambda_r) {
  return mat.strain_energy_density(lambda_theta, lambda_r);
}

template <PlaneStrainMaterial M>
double stress_difference(const M& mat, double lambda_theta, double lambda_r) {
  return mat.stress_difference(lambda_theta, lambda_r);
}

}  // namespace softgrip
