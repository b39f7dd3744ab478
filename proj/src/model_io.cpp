#include "ptlab/model_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ptlab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw Error(ErrorKind::configuration_error, "model field '" + path + "': " + why);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "non-finite number");
  return d;
}

Complex complex_value(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object {\"re\": ..., \"im\": ...}");
  return {number(field(v, "re", path), path + ".re"), number(field(v, "im", path), path + ".im")};
}

CVector complex_array(const json& v, const std::string& name, std::size_t expected) {
  if (!v.is_array()) fail(name, "expected an array");
  if (v.size() != expected)
    fail(name, "expected " + std::to_string(expected) + " entries (n-1), got " + std::to_string(v.size()));
  CVector out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(complex_value(v[k], name + "[" + std::to_string(k) + "]"));
  return out;
}

ordered_json complex_json(Complex c) {
  ordered_json j;
  j["re"] = c.real();
  j["im"] = c.imag();
  return j;
}

}  // namespace

EndpointModel parse_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::configuration_error, std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("<root>", "expected an object");
  const json& nj = field(doc, "n", "");
  if (!nj.is_number_integer() || nj.get<long long>() < 2) fail("n", "expected an integer >= 2");
  EndpointModel m;
  m.n = nj.get<std::size_t>();
  m.z = complex_value(field(doc, "z", ""), "z");
  m.a = number(field(doc, "a", ""), "a");
  m.b = number(field(doc, "b", ""), "b");
  m.alpha = complex_array(field(doc, "alpha", ""), "alpha", m.n - 1);
  m.beta = complex_array(field(doc, "beta", ""), "beta", m.n - 1);
  return m;
}

EndpointModel parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::configuration_error, "cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_json(ss.str());
}

std::string serialize_model(const EndpointModel& model) {
  ordered_json j;
  j["n"] = model.n;
  j["z"] = complex_json(model.z);
  j["a"] = model.a;
  j["b"] = model.b;
  j["alpha"] = ordered_json::array();
  for (const auto& v : model.alpha) j["alpha"].push_back(complex_json(v));
  j["beta"] = ordered_json::array();
  for (const auto& v : model.beta) j["beta"].push_back(complex_json(v));
  return j.dump(2) + "\n";
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "R,idx,re,im\n";
  for (const auto& r : records) {
    if (r.failed) continue;
    for (std::size_t k = 0; k < r.spectrum.eigenvalues.size(); ++k) {
      const Complex e = r.spectrum.eigenvalues[k];
      os << format_number(r.parameter) << ',' << k << ',' << format_number(e.real()) << ','
         << format_number(e.imag()) << '\n';
    }
  }
}

void write_positivity_csv(std::ostream& os, const PositivityScan& scan) {
  os << "param,min_eig,classification\n";
  for (const auto& r : scan.records) {
    os << format_number(r.parameter) << ',';
    if (r.skipped || !r.min_eigenvalue)
      os << "nan,skipped\n";
    else
      os << format_number(*r.min_eigenvalue) << ',' << to_string(r.classification) << '\n';
  }
}

void write_pseudometric_csv(std::ostream& os, const std::vector<PseudometricRecord>& records) {
  os << "xi,idx,tau\n";
  for (const auto& r : records)
    for (std::size_t k = 0; k < r.tau.size(); ++k)
      os << format_number(r.xi) << ',' << k << ',' << format_number(r.tau[k]) << '\n';
}

void write_bound_states_csv(std::ostream& os, const BoundStateScan& scan) {
  os << "idx,energy,x_minus_re,x_minus_im,x_plus_re,x_plus_im,residual\n";
  for (std::size_t k = 0; k < scan.states.size(); ++k) {
    const auto& s = scan.states[k];
    os << k << ',' << format_number(s.energy.real()) << ',' << format_number(s.x_minus.real()) << ','
       << format_number(s.x_minus.imag()) << ',' << format_number(s.x_plus.real()) << ','
       << format_number(s.x_plus.imag()) << ',' << format_number(s.residual) << '\n';
  }
}

void write_matrix_csv(std::ostream& os, const CMatrix& m) {
  os << "i,j,re,im\n";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << i << ',' << j << ',' << format_number(m(i, j).real()) << ',' << format_number(m(i, j).imag()) << '\n';
}

}  // namespace ptlab
