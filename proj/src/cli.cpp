#include "ptlab/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ptlab/boundary.hpp"
#include "ptlab/metric.hpp"
#include "ptlab/model_io.hpp"
#include "ptlab/presets.hpp"
#include "ptlab/sweep.hpp"

namespace ptlab::cli {

namespace {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::configuration_error, what + ": '" + s + "' is not a number");
  }
}

/// "lo:hi" or "lo:hi:steps".
Range parse_range(const std::string& text, const std::string& what, bool need_steps) {
  const auto parts = split(text, ':');
  if (parts.size() != (need_steps ? 3u : 2u))
    throw Error(ErrorKind::configuration_error,
                what + " must look like " + (need_steps ? "lo:hi:steps" : "lo:hi") + ", got '" + text + "'");
  Range r;
  r.lo = parse_double(parts[0], what);
  r.hi = parse_double(parts[1], what);
  if (need_steps) {
    const double s = parse_double(parts[2], what);
    if (s < 1 || s != std::floor(s)) throw Error(ErrorKind::configuration_error, what + ": steps must be a positive integer");
    r.steps = static_cast<std::size_t>(s);
  }
  if (!(r.lo < r.hi) && !(need_steps && r.steps == 1 && r.lo == r.hi))
    throw Error(ErrorKind::configuration_error, what + ": need lo < hi");
  return r;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_double(p, what));
  return out;
}

/// A preset name, or a JSON model file whose couplings are scaled by the parameter.
struct ModelSource {
  std::string preset;
  std::optional<EndpointModel> file_model;
  std::size_t n = 0;

  EndpointModel at(double r) const {
    if (!file_model) return preset_model(preset, r, n);
    EndpointModel m = *file_model;
    m.z *= r;
    m.a *= r;
    m.b *= r;
    for (auto& v : m.alpha) v *= r;
    for (auto& v : m.beta) v *= r;
    return m;
  }
  ParameterFamily family() const {
    ModelSource copy = *this;
    return {preset.empty() ? "file" : preset, [copy](double r) { return build_endpoint_hamiltonian(copy.at(r)); }};
  }
};

ModelSource resolve_model(const std::string& name, std::size_t n) {
  ModelSource src;
  src.n = n;
  if (is_preset(name)) {
    src.preset = name;
    preset_model(name, 0.0, n);  // validates the size
    return src;
  }
  if (std::filesystem::exists(name)) {
    src.file_model = parse_model_file(name);
    return src;
  }
  throw Error(ErrorKind::configuration_error, "'" + name + "' is neither a preset nor a model file");
}

/// Writes to --out when given, else to the command's stdout.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::configuration_error, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

private:
  std::ofstream file_;
  std::ostream& fallback_;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::numerical_failure:
    case ErrorKind::not_an_eigenvalue:
    case ErrorKind::resolvent_pole:
    case ErrorKind::deficiency:
    case ErrorKind::singular_parameter:
    case ErrorKind::not_recurrently_solvable:
      return numerical_failure;
    default:
      return configuration_error;
  }
}

void print_certificate(std::ostream& out, const MetricCertificate& cert) {
  out << "theta\n";
  for (std::size_t i = 0; i < cert.theta.rows(); ++i) {
    for (std::size_t j = 0; j < cert.theta.cols(); ++j) {
      if (j) out << ',';
      const Complex v = cert.theta(i, j);
      out << format_number(v.real());
      if (v.imag() != 0.0) out << (v.imag() > 0 ? "+" : "") << format_number(v.imag()) << 'i';
    }
    out << '\n';
  }
  out << "residual," << format_number(cert.dieudonne_residual) << '\n';
  out << "min_eigenvalue," << format_number(cert.min_eigenvalue) << '\n';
  out << "classification," << to_string(cert.classification) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite PT-symmetric lattices with nonlocal endpoint interactions", "ptlab"};
  app.require_subcommand(1);

  std::string model_name = "hc", out_path, range_text, bracket_text, window_text, method = "diagonal",
              params_text, kappa_text, source = "band", xi_text = "-1:1:201";
  std::size_t n = 0;
  double r = 0.0, tol = 0.0, w = 0.1, t_fixed = 0.2;
  bool show_coalescence = false, optimize = false;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", model_name, "preset name or JSON model file")->capture_default_str();
    sub->add_option("--n", n, "site bound N for resizable presets (0 = preset default)");
  };

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues along a parameter range (CSV R,idx,re,im)");
  add_model(spectrum);
  spectrum->add_option("--range", range_text, "lo:hi:steps");
  spectrum->add_option("--tol", tol, "realness tolerance");
  spectrum->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* kep = app.add_subcommand("kep", "locate the boundary of the real-spectrum domain");
  add_model(kep);
  kep->add_option("--bracket", bracket_text, "lo:hi")->required();
  kep->add_option("--tol", tol, "bracket width");
  kep->add_flag("--coalescence", show_coalescence, "also report the merging pair");

  auto* bound = app.add_subcommand("bound-states", "real bound states from the 2x2 boundary system");
  add_model(bound);
  bound->add_option("--R", r, "coupling / parameter value");
  bound->add_option("--window", window_text, "energy grid lo:hi:steps (default: Gershgorin window, 4001 steps)");
  bound->add_option("--tol", tol, "energy deduplication tolerance");
  bound->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* metric = app.add_subcommand("metric", "construct and certify a metric");
  add_model(metric);
  metric->add_option("--R", r, "coupling / parameter value");
  metric->add_option("--method", method, "diagonal | spectral | closed-form | recurrent")->capture_default_str();
  metric->add_option("--params", params_text, "comma-separated free parameters for --method recurrent");
  metric->add_option("--kappa", kappa_text, "comma-separated weights for spectral / closed-form");
  metric->add_option("--out", out_path, "CSV output path for the matrix (i,j,re,im)");

  auto* pos = app.add_subcommand("positivity", "minimum metric eigenvalue along a parameter grid");
  pos->add_option("--source", source,
                  "band: H_c Θ(1−R,(1−R)w,0,0,0) | hc: H_c Θ(--params) | hc-u: H_c Θ(t,u,0,0,0) over u at --R | "
                  "h7: H7 family at x=e1 | diagonal | spectral")
      ->capture_default_str();
  add_model(pos);
  pos->add_option("--range", range_text, "lo:hi:steps")->required();
  pos->add_option("--w", w, "band ratio for --source band")->capture_default_str();
  pos->add_option("--t", t_fixed, "t for --source hc-u")->capture_default_str();
  pos->add_option("--R", r, "fixed R for --source hc-u");
  pos->add_option("--params", params_text, "t,u,z,q,p for --source hc");
  pos->add_option("--tol", tol, "classification tolerance");
  pos->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* pseudo = app.add_subcommand("pseudometric", "eigenvalues of the shifted pseudometric family of H7");
  pseudo->add_option("--R", r, "coupling of H7");
  pseudo->add_option("--xi-range", xi_text, "lo:hi:steps")->capture_default_str();
  pseudo->add_flag("--optimize", optimize, "print the conditioning-optimal shift at R = 0");
  pseudo->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* presets = app.add_subcommand("presets", "list the named model families");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return success;
  } catch (const CLI::ParseError& e) {
    err << "ptlab: " << e.what() << '\n';
    return configuration_error;
  }

  try {
    if (tol < 0) throw Error(ErrorKind::configuration_error, "--tol must be positive");
    if (*presets) {
      for (const auto& p : list_presets()) out << p.name << "  (n=" << p.default_n << ")  " << p.description << '\n';
      return success;
    }
    if (*spectrum) {
      const auto src = resolve_model(model_name, n);
      const double t = tol > 0 ? tol : 1e-8;
      std::vector<double> grid;
      if (range_text.empty()) {
        if (!src.file_model) throw Error(ErrorKind::configuration_error, "--range is required for presets");
        grid = {1.0};
      } else {
        const auto rg = parse_range(range_text, "--range", true);
        grid = make_grid(rg.lo, rg.hi, rg.steps);
      }
      const auto records = spectrum_sweep(src.family(), grid, t);
      Sink sink(out_path, out);
      write_spectrum_csv(sink.stream(), records);
      std::size_t failed = 0;
      for (const auto& rec : records)
        if (rec.failed) {
          ++failed;
          err << "ptlab: eigensolver failed at R=" << format_number(rec.parameter) << ": " << rec.error << '\n';
        }
      return failed ? numerical_failure : success;
    }
    if (*kep) {
      const auto src = resolve_model(model_name, n);
      const auto br = parse_range(bracket_text, "--bracket", false);
      const double t = tol > 0 ? tol : 1e-7;
      const auto fam = src.family();
      const double value = kep_locate(fam, br.lo, br.hi, t);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.10g", value);
      out << buf << '\n';
      if (show_coalescence) {
        // report on the real side of the transition
        const double side = spectrum_all_real(fam, br.lo) ? value - t : value + t;
        const auto c = coalescence_at(fam, side);
        out << "energy," << format_number(c.energy.real()) << '\n'
            << "pair_gap," << format_number(c.pair_gap) << '\n'
            << "algebraic," << c.defect.algebraic_multiplicity << '\n'
            << "geometric," << c.defect.geometric_multiplicity << '\n';
      }
      return success;
    }
    if (*bound) {
      const auto src = resolve_model(model_name, n);
      const EndpointModel m = src.at(src.file_model && r == 0.0 ? 1.0 : r);
      EnergyGrid grid = default_energy_window(m, 4001);
      if (!window_text.empty()) {
        const auto rg = parse_range(window_text, "--window", true);
        grid = {rg.lo, rg.hi, rg.steps};
      }
      const auto scan = bound_states(m, grid, tol > 0 ? tol : 1e-9);
      Sink sink(out_path, out);
      write_bound_states_csv(sink.stream(), scan);
      for (double p : scan.skipped_poles) err << "ptlab: skipped bulk pole at E=" << format_number(p) << '\n';
      return success;
    }
    if (*metric) {
      const auto src = resolve_model(model_name, n);
      const EndpointModel m = src.at(src.file_model && r == 0.0 ? 1.0 : r);
      const CMatrix h = build_endpoint_hamiltonian(m);
      const auto kappa = kappa_text.empty() ? std::vector<double>{} : parse_list(kappa_text, "--kappa");
      MetricCertificate cert;
      if (method == "diagonal") {
        const auto dm = diagonal_metric(m);
        if (!dm) {
          out << "no positive diagonal metric\n";
          return success;
        }
        cert = certify(h, dm->matrix(h.rows()));
      } else if (method == "spectral") {
        cert = metric_spectral(h, kappa);
      } else if (method == "closed-form") {
        cert = metric_from_kets(h, chi_kets(m), kappa);
      } else if (method == "recurrent") {
        std::vector<Seed> seeds;
        if (src.preset == "hc") seeds = {{2, 2, "t"}, {0, 1, "u"}, {0, 2, "z"}, {0, 3, "q"}, {0, 4, "p"}};
        const auto fam = recurrent_metric_family(h, seeds);
        std::vector<double> x(fam.arity(), 0.0);
        x[0] = 1.0;
        if (!params_text.empty()) x = parse_list(params_text, "--params");
        if (x.size() != fam.arity())
          throw Error(ErrorKind::configuration_error, "--params needs " + std::to_string(fam.arity()) + " values");
        cert = certify(h, fam.instantiate(x));
      } else {
        throw Error(ErrorKind::configuration_error, "unknown --method '" + method + "'");
      }
      print_certificate(out, cert);
      if (!out_path.empty()) {
        Sink sink(out_path, out);
        write_matrix_csv(sink.stream(), cert.theta);
      }
      return success;
    }
    if (*pos) {
      const auto rg = parse_range(range_text, "--range", true);
      const auto grid = make_grid(rg.lo, rg.hi, rg.steps);
      const double t = tol > 0 ? tol : 1e-10;
      std::function<CMatrix(double)> metric_source;
      if (source == "band") {
        metric_source = [w](double R) { return hc_band_metric(R, w); };
      } else if (source == "hc") {
        const auto x = parse_list(params_text.empty() ? "1,0,0,0,0" : params_text, "--params");
        if (x.size() != 5) throw Error(ErrorKind::configuration_error, "--params needs t,u,z,q,p");
        metric_source = [x](double R) { return hc_metric(R, x[0], x[1], x[2], x[3], x[4]); };
      } else if (source == "hc-u") {
        const double rr = r, tt = t_fixed;
        metric_source = [rr, tt](double u) { return hc_metric(rr, tt, u, 0.0, 0.0, 0.0); };
      } else if (source == "h7") {
        metric_source = [](double R) {
          const auto fam = recurrent_metric_family(build_endpoint_hamiltonian(preset_model("h7", R)));
          std::vector<double> x(fam.arity(), 0.0);
          x[0] = 1.0;
          return fam.instantiate(x);
        };
      } else if (source == "diagonal" || source == "spectral") {
        const auto src = resolve_model(model_name, n);
        const bool diag = source == "diagonal";
        metric_source = [src, diag](double R) {
          const EndpointModel m = src.at(R);
          if (!diag) return metric_spectral(build_endpoint_hamiltonian(m)).theta;
          const auto dm = diagonal_metric(m);
          if (!dm) throw Error(ErrorKind::singular_parameter, "no positive diagonal metric");
          return dm->matrix(m.dim());
        };
      } else {
        throw Error(ErrorKind::configuration_error, "unknown --source '" + source + "'");
      }
      const auto scan = positivity_domain(metric_source, grid, t);
      Sink sink(out_path, out);
      write_positivity_csv(sink.stream(), scan);
      return success;
    }
    if (*pseudo) {
      const auto rg = parse_range(xi_text, "--xi-range", true);
      const auto records = pseudometric_scan(r, make_grid(rg.lo, rg.hi, rg.steps));
      Sink sink(out_path, out);
      write_pseudometric_csv(sink.stream(), records);
      if (optimize) (out_path.empty() ? err : out) << "xi_opt," << format_number(xi_optimize(pseudometric_branches(), 0.0, 0.8)) << '\n';
      return success;
    }
  } catch (const Error& e) {
    err << "ptlab: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return configuration_error;
}

}  // namespace ptlab::cli
