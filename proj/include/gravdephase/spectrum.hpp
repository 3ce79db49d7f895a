#ifndef GRAVDEPHASE_SPECTRUM_HPP
#define GRAVDEPHASE_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gravdephase/errors.hpp"
#include "gravdephase/units.hpp"

// Internal energy state models: pure superpositions, statistical mixtures and
// thermal ensembles, plus the statistics (mean, spread, sum of squared
// weights) that drive the dephasing formulas. Only |c_n|^2 is ever needed, so
// levels carry probability weights rather than amplitudes.

namespace gravdephase::spectrum {

inline constexpr double weight_sum_tolerance = 1e-12;

struct EnergyLevel {
  double energy;  // J
  double weight;  // |c_n|^2, dimensionless
};

namespace detail {

inline double weight_sum(const std::vector<EnergyLevel>& levels) {
  double s = 0.0;
  for (const auto& l : levels) s += l.weight;
  return s;
}

inline void check_levels(const std::vector<EnergyLevel>& levels,
                         const char* who) {
  if (levels.empty()) {
    throw ValidationError(std::string(who) + ": at least one level required");
  }
  for (const auto& l : levels) {
    if (!std::isfinite(l.energy)) {
      throw ValidationError(std::string(who) + ": energies must be finite");
    }
    if (!(l.weight >= 0.0) || !std::isfinite(l.weight)) {
      throw ValidationError(std::string(who) + ": weights must be >= 0");
    }
  }
  const double s = weight_sum(levels);
  if (std::abs(s - 1.0) > weight_sum_tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << who << ": weights sum to " << s << ", must be 1 within "
       << weight_sum_tolerance;
    throw ValidationError(os.str());
  }
}

// Divide out the residual weight sum so downstream sums of weights land on
// 1.0 to rounding.
inline void renormalize(std::vector<EnergyLevel>& levels) {
  const double s = weight_sum(levels);
  for (auto& l : levels) l.weight /= s;
}

}  // namespace detail

/// A superposition of internal energy eigenstates, stored as (E_n, |c_n|^2).
class InternalSpectrum {
public:
  explicit InternalSpectrum(std::vector<EnergyLevel> levels)
      : levels_(std::move(levels)) {
    detail::check_levels(levels_, "InternalSpectrum");
    detail::renormalize(levels_);
  }

  const std::vector<EnergyLevel>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }

private:
  std::vector<EnergyLevel> levels_;
};

/// Statistical mixture of internal states with probabilities p_alpha.
class MixtureEnsemble {
public:
  struct Component {
    double probability;
    InternalSpectrum spectrum;
  };

  explicit MixtureEnsemble(std::vector<Component> components)
      : components_(std::move(components)) {
    if (components_.empty()) {
      throw ValidationError("MixtureEnsemble: at least one component");
    }
    double s = 0.0;
    for (const auto& c : components_) {
      if (!(c.probability >= 0.0) || !std::isfinite(c.probability)) {
        throw ValidationError("MixtureEnsemble: probabilities must be >= 0");
      }
      s += c.probability;
    }
    if (std::abs(s - 1.0) > weight_sum_tolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "MixtureEnsemble: probabilities sum to " << s
         << ", must be 1 within " << weight_sum_tolerance;
      throw ValidationError(os.str());
    }
    for (auto& c : components_) c.probability /= s;
  }

  const std::vector<Component>& components() const { return components_; }

private:
  std::vector<Component> components_;
};

/// Energy levels merged over degeneracies: strictly increasing energies with
/// pairwise gaps above the grouping tolerance, each carrying the summed
/// weight of its cluster.
class GroupedSpectrum {
public:
  GroupedSpectrum(std::vector<EnergyLevel> groups, double tolerance)
      : groups_(std::move(groups)), tolerance_(tolerance) {
    detail::check_levels(groups_, "GroupedSpectrum");
    if (!(tolerance_ >= 0.0)) {
      throw ValidationError("GroupedSpectrum: tolerance must be >= 0");
    }
    for (std::size_t i = 1; i < groups_.size(); ++i) {
      if (!(groups_[i].energy - groups_[i - 1].energy > tolerance_)) {
        throw ValidationError(
            "GroupedSpectrum: group energies must be strictly increasing "
            "with gaps above the grouping tolerance");
      }
    }
    detail::renormalize(groups_);
  }

  const std::vector<EnergyLevel>& groups() const { return groups_; }
  std::size_t size() const { return groups_.size(); }
  double tolerance() const { return tolerance_; }

private:
  std::vector<EnergyLevel> groups_;
  double tolerance_;
};

namespace detail {

inline double mean_of(const std::vector<EnergyLevel>& levels) {
  double sw = 0.0, swe = 0.0;
  for (const auto& l : levels) {
    sw += l.weight;
    swe += l.weight * l.energy;
  }
  return swe / sw;
}

inline double variance_about(const std::vector<EnergyLevel>& levels,
                             double center) {
  double sw = 0.0, sv = 0.0;
  for (const auto& l : levels) {
    const double d = l.energy - center;
    sw += l.weight;
    sv += l.weight * d * d;
  }
  return sv / sw;
}

}  // namespace detail

inline double mean_energy(const InternalSpectrum& s) {
  return detail::mean_of(s.levels());
}

inline double mean_energy(const GroupedSpectrum& g) {
  return detail::mean_of(g.groups());
}

inline double mean_energy(const MixtureEnsemble& m) {
  double e = 0.0;
  for (const auto& c : m.components()) {
    e += c.probability * mean_energy(c.spectrum);
  }
  return e;
}

/// Returns the energy spread Delta E (standard deviation, J).
inline double energy_variance(const InternalSpectrum& s) {
  return std::sqrt(detail::variance_about(s.levels(), mean_energy(s)));
}

inline double energy_variance(const GroupedSpectrum& g) {
  return std::sqrt(detail::variance_about(g.groups(), mean_energy(g)));
}

/// Centering convention for mixtures. The grand mean makes the spread equal
/// to that of the effective weight distribution, which is what actually
/// drives the visibility of a mixture; per-component centering keeps only
/// the within-component fluctuations and is exposed for comparison.
enum class MixtureCentering { grand_mean, per_component };

inline double energy_variance(
    const MixtureEnsemble& m,
    MixtureCentering centering = MixtureCentering::grand_mean) {
  double var = 0.0;
  if (centering == MixtureCentering::grand_mean) {
    const double grand = mean_energy(m);
    for (const auto& c : m.components()) {
      var += c.probability * detail::variance_about(c.spectrum.levels(), grand);
    }
  } else {
    for (const auto& c : m.components()) {
      var += c.probability *
             detail::variance_about(c.spectrum.levels(),
                                    mean_energy(c.spectrum));
    }
  }
  return std::sqrt(var);
}

/// Sum of squared group weights. Equals the long-time average of the squared
/// visibility, and is bounded below by 1/L for L groups.
inline double purity_sum(const GroupedSpectrum& g) {
  double s = 0.0;
  for (const auto& grp : g.groups()) s += grp.weight * grp.weight;
  return s;
}

/// Relative machine-scale default so that only genuine degeneracies merge.
inline double default_grouping_tolerance(const InternalSpectrum& s) {
  double max_abs = 0.0;
  for (const auto& l : s.levels()) {
    max_abs = std::max(max_abs, std::abs(l.energy));
  }
  return 1e-12 * (max_abs + energy_variance(s));
}

/// Single-linkage clustering over energy-sorted levels: a level joins the
/// current cluster while its gap to the previous level is <= tol. Each
/// cluster is represented by its weight-weighted mean energy.
inline GroupedSpectrum group_degenerate(const InternalSpectrum& s,
                                        double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw ValidationError("group_degenerate: tolerance must be finite >= 0");
  }
  std::vector<EnergyLevel> sorted = s.levels();
  std::sort(sorted.begin(), sorted.end(),
            [](const EnergyLevel& a, const EnergyLevel& b) {
              return a.energy < b.energy;
            });

  std::vector<EnergyLevel> groups;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    const bool close =
        i < sorted.size() && sorted[i].energy - sorted[i - 1].energy <= tol;
    if (close) continue;
    double w = 0.0, we = 0.0;
    for (std::size_t k = begin; k < i; ++k) {
      w += sorted[k].weight;
      we += sorted[k].weight * sorted[k].energy;
    }
    // All-zero-weight cluster: fall back to the plain mean of its energies.
    double rep;
    if (w > 0.0) {
      rep = we / w;
    } else {
      rep = 0.0;
      for (std::size_t k = begin; k < i; ++k) rep += sorted[k].energy;
      rep /= static_cast<double>(i - begin);
    }
    groups.push_back({rep, w});
    begin = i;
  }
  return GroupedSpectrum(std::move(groups), tol);
}

/// Collapses a mixture to its effective weight distribution
/// w_n = sum_alpha p_alpha |c_n^alpha|^2, then groups degeneracies.
inline GroupedSpectrum effective_spectrum(const MixtureEnsemble& m,
                                          double tol) {
  std::vector<EnergyLevel> merged;
  for (const auto& c : m.components()) {
    for (const auto& l : c.spectrum.levels()) {
      merged.push_back({l.energy, c.probability * l.weight});
    }
  }
  return group_degenerate(InternalSpectrum(std::move(merged)), tol);
}

/// Truncated Boltzmann-weighted oscillator ladder E_k = k * hbar_omega with
/// w_k proportional to exp(-k hbar_omega / k_B T). Truncation keeps the
/// smallest K levels whose tail mass is below tail_eps, then renormalizes.
inline InternalSpectrum thermal_oscillator_spectrum(
    double hbar_omega, double temperature_k, double tail_eps,
    const units::PhysicalConstants& pc) {
  if (!(hbar_omega > 0.0)) {
    throw ValidationError("thermal_oscillator_spectrum: hbar_omega must be > 0");
  }
  if (!(temperature_k > 0.0)) {
    throw ValidationError(
        "thermal_oscillator_spectrum: temperature must be > 0");
  }
  if (!(tail_eps > 0.0 && tail_eps < 1.0)) {
    throw ValidationError(
        "thermal_oscillator_spectrum: tail_eps must be in (0, 1)");
  }
  const double beta = hbar_omega / units::thermal_energy(temperature_k, pc);
  // Tail mass after K levels of the geometric distribution is r^K = e^{-K beta};
  // solve in log space so frozen-out spectra never underflow.
  const double k_real = std::ceil(std::log(tail_eps) / (-beta));
  const double max_levels = 1e7;
  if (k_real > max_levels) {
    std::ostringstream os;
    os << "thermal_oscillator_spectrum: requested tail_eps needs "
       << std::scientific << k_real
       << " levels; raise tail_eps or hbar_omega";
    throw NumericDomainError(os.str());
  }
  const std::size_t count = static_cast<std::size_t>(std::max(1.0, k_real));

  std::vector<EnergyLevel> levels;
  levels.reserve(count);
  double sum = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double w = std::exp(-beta * static_cast<double>(k));
    levels.push_back({static_cast<double>(k) * hbar_omega, w});
    sum += w;
  }
  for (auto& l : levels) l.weight /= sum;
  return InternalSpectrum(std::move(levels));
}

/// Thermal spread sqrt(N) * k_B * T for N independent degrees of freedom.
inline double thermal_variance(std::size_t n_dof, double temperature_k,
                               const units::PhysicalConstants& pc) {
  if (n_dof == 0) {
    throw ValidationError("thermal_variance: N must be >= 1");
  }
  return std::sqrt(static_cast<double>(n_dof)) *
         units::thermal_energy(temperature_k, pc);
}

}  // namespace gravdephase::spectrum

#endif  // GRAVDEPHASE_SPECTRUM_HPP
