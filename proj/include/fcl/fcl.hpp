#pragma once

#include "fcl/complexity_measures.hpp"
#include "fcl/csv.hpp"
#include "fcl/errors.hpp"
#include "fcl/experiments.hpp"
#include "fcl/fock_oracle.hpp"
#include "fcl/gaussian_dynamics.hpp"
#include "fcl/lattice_model.hpp"
#include "fcl/parallel.hpp"
#include "fcl/quasiparticle.hpp"
#include "fcl/run_config.hpp"
#include "fcl/verification.hpp"

namespace fcl {
inline constexpr const char* kVersion = "0.1.0";
}
