#ifndef GRAVDEPHASE_COLLISIONAL_HPP
#define GRAVDEPHASE_COLLISIONAL_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>

#include "gravdephase/dephasing.hpp"
#include "gravdephase/errors.hpp"
#include "gravdephase/units.hpp"

// The competing collisional-decoherence model in the small-separation limit,
// and the density at which gravitational dephasing overtakes it.

namespace gravdephase::collisional {

/// Thermal bath of scatterers. Zero density is allowed (vacuum: no
/// collisional decoherence at all); the other parameters must be positive.
struct CollisionalBath {
  double n;            // number density, m^-3
  double sigma;        // cross section, m^2
  double m_scatterer;  // kg
  double temperature;  // K

  CollisionalBath(double n_, double sigma_, double m_scatterer_,
                  double temperature_)
      : n(n_), sigma(sigma_), m_scatterer(m_scatterer_),
        temperature(temperature_) {
    if (!(n >= 0.0) || !std::isfinite(n)) {
      throw ValidationError("CollisionalBath: density must be >= 0");
    }
    if (!(sigma > 0.0) || !(m_scatterer > 0.0) || !(temperature > 0.0)) {
      throw ValidationError(
          "CollisionalBath: sigma, mass and temperature must be > 0");
    }
  }
};

struct CrossoverReport {
  double t_nd;                 // s
  double t_coll;               // s
  double n_crossover;          // m^-3
  double n_crossover_per_cm3;  // convenience rendering
  bool gravitational_dominates;
};

/// Thermal average <q^2 v> = 4 (m/pi)^{1/2} (2 k_B T)^{3/2} over a bath of
/// mass-m scatterers at temperature T.
inline double q2v_thermal(double mass, double temperature_k,
                          const units::PhysicalConstants& pc) {
  if (!(mass > 0.0) || !(temperature_k > 0.0)) {
    throw ValidationError("q2v_thermal: mass and temperature must be > 0");
  }
  const double two_kbt = 2.0 * units::thermal_energy(temperature_k, pc);
  return 4.0 * std::sqrt(mass / std::numbers::pi) * two_kbt * std::sqrt(two_kbt);
}

/// Localization rate Lambda = n sigma <q^2 v> / (3 hbar^2), in m^-2 s^-1.
inline double lambda_rate(const CollisionalBath& bath,
                          const units::PhysicalConstants& pc) {
  return bath.n * bath.sigma *
         q2v_thermal(bath.m_scatterer, bath.temperature, pc) /
         (3.0 * pc.hbar * pc.hbar);
}

/// Collisional decoherence timescale 1/(Lambda dx^2). Infinite when the
/// rate vanishes (empty bath): no decoherence.
inline double collisional_time(const CollisionalBath& bath, double delta_x,
                               const units::PhysicalConstants& pc) {
  if (!(std::abs(delta_x) > 0.0)) {
    throw ValidationError("collisional_time: |delta_x| must be > 0");
  }
  const double rate = lambda_rate(bath, pc);
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (rate * delta_x * delta_x);
}

/// exp(-t/t_coll): visibility decay normalized to 1 at t = 0. Strictly
/// decreasing towards 0, unlike the bounded gravitational case.
inline double collisional_visibility(double t, double t_coll) {
  if (!(t >= 0.0)) {
    throw ValidationError("collisional_visibility: t must be >= 0");
  }
  if (!(t_coll > 0.0)) {
    throw ValidationError("collisional_visibility: t_coll must be > 0");
  }
  return std::exp(-t / t_coll);
}

/// Scatterer density below which gravitational dephasing beats collisional
/// decoherence for N subsystems in equilibrium with the bath (per-subsystem
/// spread k_B T):
///   n* = 3 (N pi)^{1/2} / 16 * hbar g / (c^2 |dx| sigma (m k_B T)^{1/2}).
inline double crossover_density(std::size_t n_subsystems,
                                const dephasing::SuperpositionGeometry& geom,
                                double sigma, double mass,
                                double temperature_k,
                                const units::PhysicalConstants& pc) {
  if (n_subsystems == 0) {
    throw ValidationError("crossover_density: N must be >= 1");
  }
  if (!(sigma > 0.0) || !(mass > 0.0) || !(temperature_k > 0.0)) {
    throw ValidationError(
        "crossover_density: sigma, mass and temperature must be > 0");
  }
  if (!(std::abs(geom.g) > 0.0) || !(std::abs(geom.delta_x) > 0.0)) {
    throw ValidationError("crossover_density: g and delta_x must be nonzero");
  }
  const double root_n_pi =
      std::sqrt(static_cast<double>(n_subsystems) * std::numbers::pi);
  const double kbt = units::thermal_energy(temperature_k, pc);
  return 3.0 * root_n_pi / 16.0 * pc.hbar * std::abs(geom.g) /
         (pc.c * pc.c * std::abs(geom.delta_x) * sigma *
          std::sqrt(mass * kbt));
}

/// Gravitational vs collisional comparison. With no explicit spread the
/// object is taken to be in equilibrium with the bath, DeltaE = k_B T; an
/// explicit per-subsystem DeltaE rescales the crossover density by
/// DeltaE/(k_B T), which keeps t_coll(n*) = t_ND exact in both modes.
///
/// The boundary n = n* counts as not gravitational-dominated, and the flag
/// is decided by the density comparison (exact at the boundary); the
/// timescale comparison agrees to rounding everywhere else.
inline CrossoverReport compare_timescales(
    std::size_t n_subsystems, const dephasing::SuperpositionGeometry& geom,
    std::optional<double> delta_e_single, const CollisionalBath& bath,
    const units::PhysicalConstants& pc) {
  const double kbt = units::thermal_energy(bath.temperature, pc);
  const double delta_e = delta_e_single.value_or(kbt);
  if (!(delta_e > 0.0)) {
    throw ValidationError("compare_timescales: DeltaE must be > 0");
  }

  CrossoverReport report;
  report.t_nd = dephasing::n_subsystem_dephasing_time(delta_e, n_subsystems,
                                                      geom, pc);
  report.t_coll = collisional_time(bath, geom.delta_x, pc);
  report.n_crossover = crossover_density(n_subsystems, geom, bath.sigma,
                                         bath.m_scatterer, bath.temperature,
                                         pc) *
                       (delta_e / kbt);
  report.n_crossover_per_cm3 = units::per_m3_to_per_cm3(report.n_crossover);
  report.gravitational_dominates = bath.n < report.n_crossover;
  return report;
}

}  // namespace gravdephase::collisional

#endif  // GRAVDEPHASE_COLLISIONAL_HPP
