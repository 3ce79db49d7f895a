// Minimal library walkthrough: two internal levels an eV apart, cube held
// in a 1 micron superposition, visibility printed around the dephasing time.

#include <cstdio>
#include <vector>

#include "gravdephase/gravdephase.hpp"

namespace gd = gravdephase;

int main() {
  const auto pc = gd::units::PhysicalConstants::codata();

  gd::spectrum::InternalSpectrum two_level({
      {0.0, 0.5},
      {gd::units::ev_to_joule(1.0), 0.5},
  });
  const auto grouped = gd::spectrum::group_degenerate(
      two_level, gd::spectrum::default_grouping_tolerance(two_level));

  const gd::dephasing::SuperpositionGeometry geom(9.81, 1e-6);
  const double delta_e = gd::spectrum::energy_variance(grouped);
  const double t_d = gd::dephasing::dephasing_time(delta_e, geom, pc);
  std::printf("dephasing time: %.6e s\n", t_d);

  std::vector<double> times;
  for (int i = 0; i <= 10; ++i) {
    times.push_back(0.3 * t_d * i);
  }
  const auto tr = gd::dephasing::trace(grouped, geom, times, pc);
  std::printf("%14s %12s %12s\n", "t (s)", "visibility", "small-time");
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    std::printf("%14.6e %12.8f %12.8f\n", tr.times[i], tr.visibility[i],
                tr.small_time_approx[i]);
  }
  return 0;
}
