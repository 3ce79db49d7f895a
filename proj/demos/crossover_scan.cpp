// Scans the gas density below which gravitational dephasing outruns
// collisional decoherence, as a function of how many subsystems dephase
// independently. Uses the room-temperature nitrogen bath parameters.

#include <cstdio>

#include "gravdephase/gravdephase.hpp"

namespace gd = gravdephase;

int main() {
  const auto pc = gd::units::PhysicalConstants::codata();
  const gd::dephasing::SuperpositionGeometry geom(9.81,
                                                  gd::units::cm_to_m(1e-7));
  const double sigma = gd::units::cm2_to_m2(1e-14);
  const double mass = gd::units::mass_ev_per_c2_to_kg(14e9, pc);
  const double temperature = 293.0;

  std::printf("%10s %22s\n", "N", "crossover (cm^-3)");
  for (std::size_t n = 1; n <= 1000000; n *= 10) {
    const double n_star = gd::collisional::crossover_density(
        n, geom, sigma, mass, temperature, pc);
    std::printf("%10zu %22.6e\n", n,
                gd::units::per_m3_to_per_cm3(n_star));
  }
  return 0;
}
