#ifndef GRAVDEPHASE_GRAVDEPHASE_HPP
#define GRAVDEPHASE_GRAVDEPHASE_HPP

#include "gravdephase/collisional.hpp"
#include "gravdephase/dephasing.hpp"
#include "gravdephase/errors.hpp"
#include "gravdephase/scenario.hpp"
#include "gravdephase/spectrum.hpp"
#include "gravdephase/units.hpp"

#endif  // GRAVDEPHASE_GRAVDEPHASE_HPP
