#pragma once

#include <string>
#include <vector>

#include "ptlab/lattice.hpp"

namespace ptlab {

struct PresetInfo {
  std::string name;
  std::string description;
  std::size_t default_n;
};

/// Named one-parameter model families shared by the CLI, tests and bindings.
///   uKa8      local model, z = i·R
///   hc        T + R·V(ρ_c), five sites
///   h7        z = R, α_1 = R, β_{n−2} = β_{n−1} = R, seven sites by default
///   rho_a/b/c T + R·V(ρ) for the three named binary indices
///   rho:BITS  T + R·V(ρ) for an arbitrary index, e.g. "rho:11000" or "rho:10000+i01000"
///   laplacian all couplings zero (parameter ignored)
std::vector<PresetInfo> list_presets();
bool is_preset(const std::string& name);

/// n = 0 selects the preset's default size; fixed-size presets reject other sizes.
EndpointModel preset_model(const std::string& name, double parameter, std::size_t n = 0);

}  // namespace ptlab
