#include "ptlab/presets.hpp"

namespace ptlab {

std::vector<PresetInfo> list_presets() {
  return {
      {"uKa8", "local endpoint model with z = i*R", 4},
      {"hc", "T + R*V(rho_c), straight-line branches and a Jordan block at R = 1", 4},
      {"h7", "non-tridiagonal model with z = R, alpha_1 = R, beta_{n-2} = beta_{n-1} = R", 6},
      {"rho_a", "T + R*V(rho_a), rho_a = (0,0,0,0,1)", 4},
      {"rho_b", "T + R*V(rho_b), rho_b = (1,1,1,1,1)", 4},
      {"rho_c", "T + R*V(rho_c), rho_c = (1,1,0,0,0)", 4},
      {"laplacian", "all couplings zero", 4},
  };
}

bool is_preset(const std::string& name) {
  if (name.rfind("rho:", 0) == 0) return true;
  for (const auto& p : list_presets())
    if (p.name == name) return true;
  return false;
}

namespace {
std::size_t fixed_size(std::size_t requested, std::size_t fixed, const std::string& name) {
  if (requested != 0 && requested != fixed)
    throw Error(ErrorKind::configuration_error, "preset " + name + " has fixed n = " + std::to_string(fixed));
  return fixed;
}
}  // namespace

EndpointModel preset_model(const std::string& name, double r, std::size_t n) {
  if (name == "uKa8") return local_model(n ? n : 4, Complex(0.0, r));
  if (name == "laplacian") return local_model(n ? n : 4, 0.0);
  if (name == "h7") {
    const std::size_t size = n ? n : 6;
    if (size < 3) throw Error(ErrorKind::configuration_error, "h7 needs n >= 3");
    EndpointModel m = local_model(size, r);
    m.alpha[0] = r;
    m.beta[size - 3] = r;
    m.beta[size - 2] = r;
    return m;
  }
  if (name == "hc" || name == "rho_c") {
    fixed_size(n, 4, name);
    return rho_model(rho_c(), r);
  }
  if (name == "rho_a") {
    fixed_size(n, 4, name);
    return rho_model(rho_a(), r);
  }
  if (name == "rho_b") {
    fixed_size(n, 4, name);
    return rho_model(rho_b(), r);
  }
  if (name.rfind("rho:", 0) == 0) {
    const BinaryIndex rho = BinaryIndex::parse(name.substr(4));
    fixed_size(n, rho.dim() - 1, name);
    return rho_model(rho, r);
  }
  throw Error(ErrorKind::configuration_error, "unknown preset '" + name + "'");
}

}  // namespace ptlab
