#pragma once

// Umbrella header for the topobell simulator core.

#include "topobell/spinor_core.hpp"
#include "topobell/dirac_planar.hpp"
#include "topobell/phase_models.hpp"
#include "topobell/bell_measurement.hpp"
#include "topobell/chsh_analysis.hpp"
#include "topobell/mc_oracle.hpp"
