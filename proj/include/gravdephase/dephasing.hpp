#ifndef GRAVDEPHASE_DEPHASING_HPP
#define GRAVDEPHASE_DEPHASING_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gravdephase/errors.hpp"
#include "gravdephase/spectrum.hpp"
#include "gravdephase/units.hpp"

// Gravitational dephasing observables: level phases, off-diagonal evolution,
// visibility traces, the phase-evolution timescales, long-time averages and
// the lower bound for composite systems.

namespace gravdephase::dephasing {

/// Geometry of a two-branch superposition in a uniform field: acceleration g,
/// signed branch separation delta_x = x1 - x2, and the mean height used only
/// by the single-branch phase.
struct SuperpositionGeometry {
  double g = units::standard_gravity;  // m/s^2
  double delta_x = 0.0;                // m
  double reference_x = 0.0;            // m

  SuperpositionGeometry() = default;
  SuperpositionGeometry(double g_, double delta_x_, double reference_x_ = 0.0)
      : g(g_), delta_x(delta_x_), reference_x(reference_x_) {
    if (!std::isfinite(g) || !std::isfinite(delta_x) ||
        !std::isfinite(reference_x)) {
      throw ValidationError("SuperpositionGeometry: fields must be finite");
    }
  }

  /// Same separation, field turned upside down.
  SuperpositionGeometry reversed() const {
    return SuperpositionGeometry(-g, delta_x, reference_x);
  }
};

struct VisibilityTrace {
  std::vector<double> times;             // s, strictly increasing
  std::vector<double> visibility;        // exact, in [0,1]
  std::vector<double> small_time_approx; // max(0, 1 - t^2/t_D^2)
  double t_d = std::numeric_limits<double>::infinity();  // s
};

struct DephasingReport {
  double t_d;              // s, single subsystem
  double t_nd;             // s, N subsystems
  double purity_sum;       // long-time average of squared visibility
  double lower_bound_log;  // natural log of the N-subsystem bound, <= 0
};

namespace detail {

// Dephasing phase of level n at time t is rate_n * t with
// rate_n = (E_n/hbar) * (g*dx/c^2). The two rate factors are formed first:
// E/hbar (~1e15 1/s) and g*dx/c^2 (~1e-25) must not meet the time before
// being fused, or the small factor is lost to rounding.
inline double gravity_factor(const SuperpositionGeometry& geom,
                             const units::PhysicalConstants& pc) {
  return geom.g * geom.delta_x / (pc.c * pc.c);
}

// Phase rates about the mean energy. Centered rates keep the sin/cos
// arguments ~ DeltaE/Ebar smaller than the raw ones at identical modulus.
inline std::vector<double> centered_rates(
    const spectrum::GroupedSpectrum& gs, const SuperpositionGeometry& geom,
    const units::PhysicalConstants& pc) {
  const double mean = spectrum::mean_energy(gs);
  const double factor = gravity_factor(geom, pc);
  std::vector<double> rates;
  rates.reserve(gs.size());
  for (const auto& grp : gs.groups()) {
    rates.push_back((grp.energy - mean) / pc.hbar * factor);
  }
  return rates;
}

// |sum_n w_n e^{-i phi_n}| / sum_n w_n, clamped into [0,1]. Dividing by the
// weight sum keeps V(0) at exactly 1 regardless of residual rounding in the
// stored weights.
inline double modulus_of_phases(const spectrum::GroupedSpectrum& gs,
                                const std::vector<double>& phases) {
  double re = 0.0, im = 0.0, sw = 0.0;
  const auto& groups = gs.groups();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    re += groups[i].weight * std::cos(phases[i]);
    im += groups[i].weight * std::sin(phases[i]);
    sw += groups[i].weight;
  }
  const double v = std::hypot(re, im) / sw;
  return v > 1.0 ? 1.0 : v;
}

}  // namespace detail

/// Phase acquired by internal level E_n at height reference_x after time t:
/// E_n t (1 + g x / c^2) / hbar. The flat-space part and the gravitational
/// correction are accumulated as separate terms.
inline double internal_phase(double energy, const SuperpositionGeometry& geom,
                             double t, const units::PhysicalConstants& pc) {
  const double base_rate = energy / pc.hbar;
  const double correction = geom.g * geom.reference_x / (pc.c * pc.c);
  return base_rate * t + base_rate * correction * t;
}

/// Off-diagonal element of the center-of-mass density matrix,
/// (1/2) sum_n w_n exp(-i E_n t g dx / hbar c^2). Modulus is at most 1/2.
inline std::complex<double> offdiag_element(
    const spectrum::GroupedSpectrum& gs, const SuperpositionGeometry& geom,
    double t, const units::PhysicalConstants& pc) {
  const double factor = detail::gravity_factor(geom, pc);
  double re = 0.0, im = 0.0, sw = 0.0;
  for (const auto& grp : gs.groups()) {
    const double phase = grp.energy / pc.hbar * factor * t;
    re += grp.weight * std::cos(phase);
    im -= grp.weight * std::sin(phase);
    sw += grp.weight;
  }
  return {0.5 * re / sw, 0.5 * im / sw};
}

/// Interferometric visibility 2|rho_12(t)|, evaluated from mean-centered
/// phases (identical modulus, better conditioned).
inline double visibility(const spectrum::GroupedSpectrum& gs,
                         const SuperpositionGeometry& geom, double t,
                         const units::PhysicalConstants& pc) {
  const auto rates = detail::centered_rates(gs, geom, pc);
  std::vector<double> phases(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) phases[i] = rates[i] * t;
  return detail::modulus_of_phases(gs, phases);
}

/// Phase evolution timescale sqrt(2) hbar c^2 / (g DeltaE |dx|). Returns
/// +infinity when DeltaE, g or dx vanishes: no dephasing ever occurs.
inline double dephasing_time(double delta_e,
                             const SuperpositionGeometry& geom,
                             const units::PhysicalConstants& pc) {
  if (!(delta_e >= 0.0)) {
    throw ValidationError("dephasing_time: DeltaE must be >= 0");
  }
  const double denom = std::abs(geom.g) * delta_e * std::abs(geom.delta_x);
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return std::numbers::sqrt2 * pc.hbar * pc.c * pc.c / denom;
}

/// Clamped quadratic small-time approximation max(0, 1 - t^2/t_D^2).
inline double small_time_visibility(double t, double t_d) {
  if (!(t >= 0.0)) {
    throw ValidationError("small_time_visibility: t must be >= 0");
  }
  if (!(t_d > 0.0)) {
    throw ValidationError("small_time_visibility: t_D must be > 0");
  }
  const double x = t / t_d;
  const double v = 1.0 - x * x;
  return v < 0.0 ? 0.0 : v;
}

/// Exact N-th power of a visibility value (not the exponential shorthand).
inline double independent_power(double v, std::size_t n) {
  if (n == 1) return v;
  return std::pow(v, static_cast<double>(n));
}

/// Visibility of N identical independent subsystems: the pointwise N-th
/// power of the single-subsystem curve.
template <typename VisibilityFn>
auto compose_independent(VisibilityFn v_single, std::size_t n) {
  if (n == 0) {
    throw ValidationError("compose_independent: N must be >= 1");
  }
  return [v_single = std::move(v_single), n](double t) {
    return independent_power(v_single(t), n);
  };
}

/// Timescale for N independent subsystems: the single-subsystem spread is
/// effectively multiplied by sqrt(N).
inline double n_subsystem_dephasing_time(double delta_e_single, std::size_t n,
                                         const SuperpositionGeometry& geom,
                                         const units::PhysicalConstants& pc) {
  if (n == 0) {
    throw ValidationError("n_subsystem_dephasing_time: N must be >= 1");
  }
  return dephasing_time(std::sqrt(static_cast<double>(n)) * delta_e_single,
                        geom, pc);
}

/// Long-time average of the squared visibility for distinct group energies:
/// the sum of squared weights.
inline double time_average_analytic(const spectrum::GroupedSpectrum& gs) {
  return spectrum::purity_sum(gs);
}

/// Beat period of the slowest oscillation in |rho_12|^2, set by the smallest
/// gap between distinct group energies. Infinite for a single group.
inline double slowest_beat_period(const spectrum::GroupedSpectrum& gs,
                                  const SuperpositionGeometry& geom,
                                  const units::PhysicalConstants& pc) {
  const auto& groups = gs.groups();
  if (groups.size() < 2) return std::numeric_limits<double>::infinity();
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < groups.size(); ++i) {
    min_gap = std::min(min_gap, groups[i].energy - groups[i - 1].energy);
  }
  const double rate =
      min_gap / pc.hbar * std::abs(detail::gravity_factor(geom, pc));
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / rate;
}

/// Period of the fastest beat, set by the full spectral span.
inline double fastest_beat_period(const spectrum::GroupedSpectrum& gs,
                                  const SuperpositionGeometry& geom,
                                  const units::PhysicalConstants& pc) {
  const auto& groups = gs.groups();
  if (groups.size() < 2) return std::numeric_limits<double>::infinity();
  const double span = groups.back().energy - groups.front().energy;
  const double rate =
      span / pc.hbar * std::abs(detail::gravity_factor(geom, pc));
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / rate;
}

/// Composite-trapezoid average of the squared visibility over [0, window].
/// The grid is refined, if needed, to at least 20 samples per fastest beat
/// period so no oscillation aliases. Windows below 10 slowest-beat periods
/// are rejected: their averages are dominated by the unfinished beat.
inline double time_average_numeric(const spectrum::GroupedSpectrum& gs,
                                   const SuperpositionGeometry& geom,
                                   double window, std::size_t samples,
                                   const units::PhysicalConstants& pc) {
  if (!(window > 0.0) || !std::isfinite(window)) {
    throw ValidationError("time_average_numeric: window must be finite > 0");
  }
  if (samples < 2) {
    throw ValidationError("time_average_numeric: samples must be >= 2");
  }

  const double t_slow = slowest_beat_period(gs, geom, pc);
  if (std::isinf(t_slow)) {
    // Constant |rho_12|: single group or no field. The average is V(0)^2.
    const double v = visibility(gs, geom, 0.0, pc);
    return v * v;
  }
  if (window < 10.0 * t_slow) {
    std::ostringstream os;
    os.precision(6);
    os << "time_average_numeric: window " << window << " s is shorter than "
       << "10 slowest-beat periods (" << 10.0 * t_slow << " s)";
    throw NumericDomainError(os.str());
  }

  const double t_fast = fastest_beat_period(gs, geom, pc);
  const double needed = std::ceil(20.0 * window / t_fast) + 1.0;
  if (needed > 2e9) {
    throw NumericDomainError(
        "time_average_numeric: resolving the fastest beat over this window "
        "needs more than 2e9 samples");
  }
  const std::size_t n =
      std::max(samples, static_cast<std::size_t>(needed));

  const auto rates = detail::centered_rates(gs, geom, pc);
  const auto& groups = gs.groups();
  const std::size_t levels = groups.size();
  const double h = window / static_cast<double>(n - 1);

  // One phasor per level stepped by exp(-i rate h); magnitude drift over the
  // walk is ~n*eps and stays far below the quadrature error.
  std::vector<double> zr(levels, 1.0), zi(levels, 0.0);
  std::vector<double> mr(levels), mi(levels);
  double sw = 0.0;
  for (std::size_t k = 0; k < levels; ++k) {
    mr[k] = std::cos(rates[k] * h);
    mi[k] = -std::sin(rates[k] * h);
    sw += groups[k].weight;
  }

  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < levels; ++k) {
      re += groups[k].weight * zr[k];
      im += groups[k].weight * zi[k];
    }
    const double v2 = (re * re + im * im) / (sw * sw);
    acc += (i == 0 || i + 1 == n) ? 0.5 * v2 : v2;
    for (std::size_t k = 0; k < levels; ++k) {
      const double nr = zr[k] * mr[k] - zi[k] * mi[k];
      zi[k] = zr[k] * mi[k] + zi[k] * mr[k];
      zr[k] = nr;
    }
  }
  return acc * h / window;
}

/// Natural log of the N-subsystem long-time bound, N * ln(sum_n w_n^2).
/// Stays in log space; the bound itself underflows long before N = 1000.
inline double lower_bound_log(const spectrum::GroupedSpectrum& gs,
                              std::size_t n) {
  if (n == 0) {
    throw ValidationError("lower_bound_log: N must be >= 1");
  }
  return static_cast<double>(n) * std::log(spectrum::purity_sum(gs));
}

/// Visibility after piecewise evolution: each leg contributes rate * t to
/// every level's phase.
inline double visibility_after_segments(
    const spectrum::GroupedSpectrum& gs,
    std::span<const std::pair<SuperpositionGeometry, double>> segments,
    const units::PhysicalConstants& pc) {
  std::vector<double> phases(gs.size(), 0.0);
  for (const auto& [geom, t] : segments) {
    if (!(t >= 0.0)) {
      throw ValidationError("visibility_after_segments: t must be >= 0");
    }
    const auto rates = detail::centered_rates(gs, geom, pc);
    for (std::size_t i = 0; i < phases.size(); ++i) {
      phases[i] += rates[i] * t;
    }
  }
  return detail::modulus_of_phases(gs, phases);
}

/// Time t in the field, then time t in the reversed field. The phases cancel
/// leg by leg, so the returned visibility is 1: the effect is reversible.
inline double reversed_field_roundtrip(const spectrum::GroupedSpectrum& gs,
                                       const SuperpositionGeometry& geom,
                                       double t,
                                       const units::PhysicalConstants& pc) {
  const std::pair<SuperpositionGeometry, double> legs[] = {
      {geom, t}, {geom.reversed(), t}};
  return visibility_after_segments(gs, legs, pc);
}

/// Exact visibility and small-time approximation on a time grid. Grid points
/// are independent of each other.
inline VisibilityTrace trace(const spectrum::GroupedSpectrum& gs,
                             const SuperpositionGeometry& geom,
                             std::span<const double> t_grid,
                             const units::PhysicalConstants& pc) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || !std::isfinite(t_grid[i])) {
      throw ValidationError("trace: grid times must be finite and >= 0");
    }
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw ValidationError("trace: grid must be strictly increasing");
    }
  }
  VisibilityTrace out;
  out.t_d = dephasing_time(spectrum::energy_variance(gs), geom, pc);
  out.times.assign(t_grid.begin(), t_grid.end());
  out.visibility.reserve(t_grid.size());
  out.small_time_approx.reserve(t_grid.size());
  const auto rates = detail::centered_rates(gs, geom, pc);
  std::vector<double> phases(rates.size());
  for (const double t : t_grid) {
    for (std::size_t i = 0; i < rates.size(); ++i) phases[i] = rates[i] * t;
    out.visibility.push_back(detail::modulus_of_phases(gs, phases));
    out.small_time_approx.push_back(small_time_visibility(t, out.t_d));
  }
  return out;
}

/// Headline numbers for one spectrum/geometry/N combination.
inline DephasingReport dephasing_report(const spectrum::GroupedSpectrum& gs,
                                        const SuperpositionGeometry& geom,
                                        std::size_t n,
                                        const units::PhysicalConstants& pc) {
  const double delta_e = spectrum::energy_variance(gs);
  DephasingReport report;
  report.t_d = dephasing_time(delta_e, geom, pc);
  report.t_nd = n_subsystem_dephasing_time(delta_e, n, geom, pc);
  report.purity_sum = spectrum::purity_sum(gs);
  report.lower_bound_log = lower_bound_log(gs, n);
  return report;
}

}  // namespace gravdephase::dephasing

#endif  // GRAVDEPHASE_DEPHASING_HPP
