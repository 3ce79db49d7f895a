// Acceptance checks for the dephasing library: one line per criterion,
// exit code is the number of failures. Runs self-contained against the
// library, no command-line arguments.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gravdephase/gravdephase.hpp"

namespace gd = gravdephase;

namespace {

int failures = 0;

void report(int index, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", index,
              what.c_str(), detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

gd::spectrum::GroupedSpectrum grouped_from(
    std::vector<gd::spectrum::EnergyLevel> levels) {
  const gd::spectrum::InternalSpectrum s(std::move(levels));
  return gd::spectrum::group_degenerate(
      s, gd::spectrum::default_grouping_tolerance(s));
}

// Random spectrum with gaps base * u_i, u_i uniform in [1, 2.2]; the gap
// ratios are irrational almost surely.
gd::spectrum::GroupedSpectrum random_gap_spectrum(std::mt19937_64& rng,
                                                  std::size_t count,
                                                  double base) {
  std::uniform_real_distribution<double> gap_factor(1.0, 2.2);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::vector<gd::spectrum::EnergyLevel> levels;
  double e = 0.0, sum = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0) e += base * gap_factor(rng);
    levels.push_back({e, weight(rng)});
    sum += levels.back().weight;
  }
  for (auto& l : levels) l.weight /= sum;
  return grouped_from(std::move(levels));
}

// True when some pair of adjacent gaps is within 1e-3 of a small rational
// ratio p/q, q <= 10. Those draws get the looser ergodic tolerance.
bool near_commensurate(const gd::spectrum::GroupedSpectrum& gs) {
  const auto& groups = gs.groups();
  std::vector<double> gaps;
  for (std::size_t i = 1; i < groups.size(); ++i) {
    gaps.push_back(groups[i].energy - groups[i - 1].energy);
  }
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    for (std::size_t j = 0; j < gaps.size(); ++j) {
      if (i == j) continue;
      const double ratio = gaps[i] / gaps[j];
      for (int q = 1; q <= 10; ++q) {
        const double p = std::round(ratio * q);
        if (p >= 1.0 && std::abs(ratio - p / q) < 1e-3 * ratio) return true;
      }
    }
  }
  return false;
}

void criterion_1_2_3() {
  const auto start = std::chrono::steady_clock::now();
  const auto j = gd::cli::run_paper_repro();
  const double elapsed = seconds_since(start);

  const double n_cross = j.at("n_crossover_per_cm3").get<double>();
  const double rel = std::abs(n_cross - 1.2e-5) / 1.2e-5;
  report(1, rel <= 0.01 && elapsed < 1.0,
         "published crossover density reproduced within 1%",
         fmt("n = %.6e cm^-3, err %.3e", n_cross, rel) +
             fmt(", %.3f s", elapsed));

  const double ratio = j.at("atmospheric_ratio").get<double>();
  report(2, ratio >= 1e-25 && ratio <= 1e-23,
         "crossover sits near 1e-24 of atmospheric density",
         fmt("ratio = %.3e", ratio));

  const double bound = j.at("lower_bound_log").get<double>();
  const double expected = -1000.0 * std::log(3.0);
  report(3, std::abs(bound - expected) <= 1e-12 * std::abs(expected),
         "three-level cube bound equals -1000 ln 3",
         fmt("log bound = %.15f", bound));
}

void criterion_4() {
  const auto pc = gd::units::PhysicalConstants::codata();
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1004u);
  std::uniform_real_distribution<double> log_n(0.0, 6.0);
  std::uniform_real_distribution<double> log_dx(-10.0, -4.0);
  std::uniform_real_distribution<double> log_sigma(-20.0, -16.0);
  std::uniform_real_distribution<double> log_t(0.0, 3.0);
  std::uniform_real_distribution<double> log_m(-27.0, -24.0);

  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto n_sub =
        static_cast<std::size_t>(std::pow(10.0, log_n(rng)));
    const gd::dephasing::SuperpositionGeometry geom(
        9.81, std::pow(10.0, log_dx(rng)));
    const double sigma = std::pow(10.0, log_sigma(rng));
    const double temperature = std::pow(10.0, log_t(rng));
    const double mass = std::pow(10.0, log_m(rng));
    const double n_star = gd::collisional::crossover_density(
        n_sub, geom, sigma, mass, temperature, pc);
    const gd::collisional::CollisionalBath bath(n_star, sigma, mass,
                                                temperature);
    const double t_coll =
        gd::collisional::collisional_time(bath, geom.delta_x, pc);
    const double t_nd = gd::dephasing::n_subsystem_dephasing_time(
        gd::units::thermal_energy(temperature, pc), n_sub, geom, pc);
    worst = std::max(worst, std::abs(t_coll - t_nd) / t_nd);
  }
  const double elapsed = seconds_since(start);
  report(4, worst <= 1e-10 && elapsed < 5.0,
         "filling the bath to the crossover equalizes both timescales",
         fmt("worst rel diff %.3e over 1000 draws, %.3f s", worst, elapsed));
}

void criterion_5() {
  const auto pc = gd::units::PhysicalConstants::codata();
  const gd::dephasing::SuperpositionGeometry geom(9.81, 1e-6);
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1005u);
  std::uniform_int_distribution<int> level_count(3, 8);

  double worst = 0.0;
  bool all_ok = true;
  for (int rep = 0; rep < 100; ++rep) {
    const auto count = static_cast<std::size_t>(level_count(rng));
    const auto gs =
        random_gap_spectrum(rng, count, gd::units::ev_to_joule(0.1));
    const double t_slow = gd::dephasing::slowest_beat_period(gs, geom, pc);
    const double numeric = gd::dephasing::time_average_numeric(
        gs, geom, 1e4 * t_slow, 2, pc);
    const double analytic = gd::dephasing::time_average_analytic(gs);
    const double err = std::abs(numeric - analytic) / analytic;
    const double allowed = near_commensurate(gs) ? 0.05 : 0.02;
    worst = std::max(worst, err);
    if (err > allowed) all_ok = false;
  }
  const double elapsed = seconds_since(start);
  report(5, all_ok && elapsed < 60.0,
         "long-window averages land on the squared-weight sum",
         fmt("worst rel err %.3e over 100 spectra, %.1f s", worst, elapsed));
}

void criterion_6() {
  const auto pc = gd::units::PhysicalConstants::codata();
  const gd::dephasing::SuperpositionGeometry geom(9.81, 1e-6);
  std::mt19937_64 rng(1006u);
  std::uniform_int_distribution<int> level_count(2, 6);
  std::uniform_real_distribution<double> weight(0.02, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> gap_factor(1.0, 2.2);

  bool bound_ok = true, equality_ok = true, floor_ok = true;
  for (int rep = 0; rep < 10000; ++rep) {
    const int count = level_count(rng);
    const bool uniform = coin(rng) < 0.2;
    std::vector<gd::spectrum::EnergyLevel> levels;
    double e = 0.0, sum = 0.0;
    for (int k = 0; k < count; ++k) {
      if (k > 0) e += gd::units::ev_to_joule(0.1) * gap_factor(rng);
      levels.push_back(
          {e, uniform ? 1.0 / static_cast<double>(count) : weight(rng)});
      sum += levels.back().weight;
    }
    for (auto& l : levels) l.weight /= sum;
    const auto gs = grouped_from(std::move(levels));

    const double purity = gd::spectrum::purity_sum(gs);
    const double floor_value = 1.0 / static_cast<double>(gs.size());
    if (purity < floor_value - 1e-12) bound_ok = false;
    const bool at_floor = std::abs(purity - floor_value) <= 1e-12;
    if (at_floor != uniform) equality_ok = false;

    // The numeric long-time average must respect the same floor.
    if (rep % 10 == 0) {
      const double t_slow = gd::dephasing::slowest_beat_period(gs, geom, pc);
      const double numeric = gd::dephasing::time_average_numeric(
          gs, geom, 300.0 * t_slow, 2, pc);
      if (numeric < purity - 0.02) floor_ok = false;
    }
  }
  report(6, bound_ok && equality_ok && floor_ok,
         "squared-weight sums respect the 1/L floor, equality iff uniform",
         std::string("bound ") + (bound_ok ? "ok" : "violated") +
             ", equality " + (equality_ok ? "ok" : "violated") +
             ", numeric floor " + (floor_ok ? "ok" : "violated"));
}

void criterion_7() {
  const auto pc = gd::units::PhysicalConstants::codata();
  const gd::dephasing::SuperpositionGeometry geom(9.81, 1e-6);
  std::mt19937_64 rng(1007u);
  std::uniform_int_distribution<int> level_count(2, 8);

  bool ok = true;
  double worst_ratio = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto count = static_cast<std::size_t>(level_count(rng));
    const auto gs =
        random_gap_spectrum(rng, count, gd::units::ev_to_joule(0.2));
    const double t_d = gd::dephasing::dephasing_time(
        gd::spectrum::energy_variance(gs), geom, pc);
    auto remainder_rate = [&](double u) {
      const double t = u * t_d;
      const double v = gd::dephasing::visibility(gs, geom, t, pc);
      const double approx = gd::dephasing::small_time_visibility(t, t_d);
      return std::abs(v - approx) / (t * t * t);
    };
    // The cubic-normalized remainder must not grow as t shrinks.
    const double coarse = remainder_rate(1e-2);
    const double fine = remainder_rate(1e-3);
    const double ratio = fine / coarse;
    worst_ratio = std::max(worst_ratio, ratio);
    if (!(fine <= 4.0 * coarse)) ok = false;
  }
  report(7, ok, "small-time remainder stays cubic-order towards zero",
         fmt("worst fine/coarse ratio %.3f", worst_ratio));
}

void criterion_8() {
  const auto pc = gd::units::PhysicalConstants::codata();
  const auto s = gd::cli::builtin_scenario("two-level");
  const auto gs = gd::cli::build_grouped(s, pc);
  const auto times = gd::cli::build_time_grid(s, 1.0);

  bool ok = true;
  double worst = 0.0;
  for (const std::size_t n : {1u, 2u, 10u, 1000u}) {
    auto composed = gd::dephasing::compose_independent(
        [&](double t) {
          return gd::dephasing::visibility(gs, s.geometry, t, pc);
        },
        n);
    for (const double t : times) {
      const double v = gd::dephasing::visibility(gs, s.geometry, t, pc);
      const double got = composed(t);
      // Reference power evaluated in log space.
      const double expected =
          v > 0.0 ? std::exp(static_cast<double>(n) * std::log(v)) : 0.0;
      if (expected < 1e-280 || got < 1e-280) continue;
      const double err = std::abs(got - expected) / expected;
      worst = std::max(worst, err);
      if (err > 1e-12) ok = false;
    }
  }
  report(8, ok, "independent composition is an exact pointwise power",
         fmt("worst rel err %.3e", worst));
}

void criterion_9() {
  const auto pc = gd::units::PhysicalConstants::codata();
  const gd::dephasing::SuperpositionGeometry geom(9.81, 1e-6);
  std::mt19937_64 rng(1009u);
  std::uniform_int_distribution<int> level_count(2, 8);
  std::uniform_real_distribution<double> log_t(2.0, 10.0);

  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto count = static_cast<std::size_t>(level_count(rng));
    const auto gs =
        random_gap_spectrum(rng, count, gd::units::ev_to_joule(0.15));
    const double t = std::pow(10.0, log_t(rng));
    const double v = gd::dephasing::reversed_field_roundtrip(gs, geom, t, pc);
    worst = std::max(worst, std::abs(v - 1.0));
  }
  report(9, worst <= 1e-12, "field reversal restores full visibility",
         fmt("worst |V-1| = %.3e over 1000 draws", worst));
}

void criterion_10() {
  const auto pc = gd::units::PhysicalConstants::codata();
  std::mt19937_64 rng(1010u);
  std::uniform_int_distribution<int> level_count(2, 6);
  std::uniform_real_distribution<double> shift_factor(-100.0, 100.0);
  std::uniform_real_distribution<double> log_lambda(-3.0, 3.0);
  std::uniform_real_distribution<double> theta_scale(0.1, 3.0);
  const double scale = gd::units::ev_to_joule(0.2);

  double worst_shift = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto count = static_cast<std::size_t>(level_count(rng));
    const auto base = random_gap_spectrum(rng, count, scale);
    auto shifted_levels = base.groups();
    const double shift = shift_factor(rng) * scale;
    for (auto& l : shifted_levels) l.energy += shift;
    const auto shifted = grouped_from(std::move(shifted_levels));
    const gd::dephasing::SuperpositionGeometry geom(9.81, 1e-6);
    // Keep the largest phase near theta so rounding in the shifted mean
    // stays well under the tolerance being asserted.
    const double span = base.groups().back().energy -
                        base.groups().front().energy;
    const double rate = span / pc.hbar * 9.81 * 1e-6 / (pc.c * pc.c);
    const double t = theta_scale(rng) / rate;
    const double diff =
        std::abs(gd::dephasing::visibility(shifted, geom, t, pc) -
                 gd::dephasing::visibility(base, geom, t, pc));
    worst_shift = std::max(worst_shift, diff);
  }

  double worst_scaling = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto count = static_cast<std::size_t>(level_count(rng));
    const auto gs = random_gap_spectrum(rng, count, scale);
    const double lambda = std::pow(10.0, log_lambda(rng));
    const double span = gs.groups().back().energy -
                        gs.groups().front().energy;
    const double rate = span / pc.hbar * 9.81 * 1e-6 / (pc.c * pc.c);
    const double t = theta_scale(rng) / rate;
    const gd::dephasing::SuperpositionGeometry unit(9.81, 1e-6);
    const gd::dephasing::SuperpositionGeometry strong(9.81 * lambda, 1e-6);
    const gd::dephasing::SuperpositionGeometry wide(9.81, 1e-6 * lambda);
    const double reference = gd::dephasing::visibility(gs, unit, t, pc);
    const double via_g =
        gd::dephasing::visibility(gs, strong, t / lambda, pc);
    const double via_dx =
        gd::dephasing::visibility(gs, wide, t / lambda, pc);
    worst_scaling = std::max(worst_scaling, std::abs(via_g - reference));
    worst_scaling = std::max(worst_scaling, std::abs(via_dx - reference));
  }

  report(10, worst_shift <= 1e-12 && worst_scaling <= 1e-12,
         "energy-shift and field-separation-time scaling leave V unchanged",
         fmt("worst shift diff %.3e, worst scaling diff %.3e", worst_shift,
             worst_scaling));
}

}  // namespace

int main() {
  criterion_1_2_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", failures);
  }
  return failures;
}
