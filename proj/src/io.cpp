#include "tnl/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace tnl {

using nlohmann::json;

namespace {

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Exponent exponent_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s != "inf") throw ParseError("exponent must be a number or \"inf\", got \"" + s + "\"");
    return Exponent::infinity();
  }
  if (!j.is_number()) throw ParseError("exponent must be a number or \"inf\"");
  try {
    return Exponent(j.get<double>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

json exponent_to_json(const Exponent& p) {
  if (p.is_infinite()) return "inf";
  const double v = p.value();
  if (v == std::floor(v) && v < 9.0e15) return static_cast<std::int64_t>(v);
  return v;
}

Vec vector_from_json(const json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string(field) + " must be an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(std::string(field) + " must be an array of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json real_to_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

template <class T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + name + "' has the wrong type");
  }
}

int positive_int(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw ParseError(std::string(what) + " must be a positive integer");
  }
  return j.get<int>();
}

}  // namespace

SequenceSpace TensorFile::space() const {
  return weights ? SequenceSpace(dim, exponent, *weights) : SequenceSpace(dim, exponent);
}

FullTensor TensorFile::tensor() const { return FullTensor(space(), order, coeffs); }

TensorFile TensorFile::from_tensor(const FullTensor& u, bool symmetric) {
  TensorFile f;
  f.order = u.order();
  f.dim = u.dim();
  f.exponent = u.space().exponent();
  if (!u.space().unit_weights()) f.weights = u.space().weights();
  f.symmetric = symmetric;
  f.coeffs = u.coeffs();
  return f;
}

TensorFile parse_tensor_file(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("tensor file must be a JSON object");
  static const std::set<std::string> allowed = {"order", "dim", "exponent", "weights",
                                                "symmetric", "coeffs"};
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ParseError("unknown field '" + key + "'");
  }
  TensorFile f;
  if (!j.contains("order") || !j.contains("dim")) throw ParseError("missing field 'order' or 'dim'");
  f.order = positive_int(j["order"], "order");
  f.dim = positive_int(j["dim"], "dim");
  if (!j.contains("exponent")) throw ParseError("missing field 'exponent'");
  f.exponent = exponent_from_json(j["exponent"]);
  if (j.contains("weights")) {
    f.weights = vector_from_json(j["weights"], "weights");
    if (f.weights->size() != f.dim) {
      throw ParseError("weights has " + std::to_string(f.weights->size()) + " entries, expected " +
                       std::to_string(f.dim));
    }
  }
  f.symmetric = j.contains("symmetric") ? field<bool>(j, "symmetric") : false;
  if (!j.contains("coeffs")) throw ParseError("missing field 'coeffs'");
  f.coeffs = vector_from_json(j["coeffs"], "coeffs");
  const double expected = std::pow(static_cast<double>(f.dim), f.order);
  if (expected > 1e8) throw ParseError("dim^order is too large");
  if (static_cast<double>(f.coeffs.size()) != expected) {
    throw ParseError("coeffs has " + std::to_string(f.coeffs.size()) +
                     " entries, expected dim^order = " +
                     std::to_string(static_cast<long long>(expected)));
  }
  FullTensor u = [&] {
    try {
      return f.tensor();
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }();
  if (f.symmetric) {
    try {
      SymmetricTensor::from_full(std::move(u), 1e-12);
    } catch (const std::invalid_argument&) {
      throw ParseError("symmetric is true but coeffs are not permutation-invariant");
    }
  }
  return f;
}

TensorFile load_tensor_file(const std::filesystem::path& path) {
  return parse_tensor_file(read_all(path));
}

std::string format_tensor_file(const TensorFile& file) {
  json j;
  j["order"] = file.order;
  j["dim"] = file.dim;
  j["exponent"] = exponent_to_json(file.exponent);
  if (file.weights) j["weights"] = vector_to_json(*file.weights);
  j["symmetric"] = file.symmetric;
  j["coeffs"] = vector_to_json(file.coeffs);
  return j.dump(2) + "\n";
}

void save_tensor_file(const TensorFile& file, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << format_tensor_file(file);
}

SuiteConfig parse_suite_config(const std::string& text, std::uint64_t default_seed) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("suite config must be a JSON object");
  static const std::set<std::string> allowed = {"checks",     "exponents", "dims",   "orders",
                                                "samples",    "seed",      "method", "starts",
                                                "tolerances", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ParseError("unknown field '" + key + "'");
  }
  SuiteConfig c;
  c.seed = default_seed;
  if (!j.contains("checks") || !j["checks"].is_array()) {
    throw ParseError("'checks' must be an array of check ids");
  }
  for (const json& id : j["checks"]) {
    if (!id.is_string()) throw ParseError("'checks' must be an array of check ids");
    const std::string name = id.get<std::string>();
    if (!is_known_check(name)) throw ParseError("unknown check id '" + name + "'");
    c.checks.push_back(name);
  }
  if (j.contains("exponents")) {
    if (!j["exponents"].is_array()) throw ParseError("'exponents' must be an array");
    c.exponents.clear();
    for (const json& p : j["exponents"]) c.exponents.push_back(exponent_from_json(p));
  }
  auto int_list = [&](const char* name, std::vector<int>& out) {
    if (!j.contains(name)) return;
    if (!j[name].is_array()) throw ParseError(std::string("'") + name + "' must be an array");
    out.clear();
    for (const json& v : j[name]) out.push_back(positive_int(v, name));
  };
  int_list("dims", c.dims);
  int_list("orders", c.orders);
  if (j.contains("samples")) {
    if (!j["samples"].is_number_integer() || j["samples"].get<long long>() < 0) {
      throw ParseError("'samples' must be a nonnegative integer");
    }
    c.samples = j["samples"].get<int>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParseError("'seed' must be a 64-bit unsigned integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("method")) {
    try {
      c.method = parse_method(field<std::string>(j, "method"));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  if (j.contains("starts")) c.starts = positive_int(j["starts"], "starts");
  if (j.contains("threads")) {
    if (!j["threads"].is_number_integer() || j["threads"].get<long long>() < 0) {
      throw ParseError("'threads' must be a nonnegative integer");
    }
    c.threads = j["threads"].get<int>();
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw ParseError("'tolerances' must be an object");
    for (const auto& [id, value] : j["tolerances"].items()) {
      if (!is_known_check(id)) throw ParseError("unknown check id '" + id + "' in tolerances");
      if (!value.is_number() || value.get<double>() < 0.0) {
        throw ParseError("tolerance for '" + id + "' must be a nonnegative number");
      }
      c.tolerances[id] = value.get<double>();
    }
  }
  return c;
}

SuiteConfig load_suite_config(const std::filesystem::path& path, std::uint64_t default_seed) {
  return parse_suite_config(read_all(path), default_seed);
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
  return buf;
}

void write_report_csv(std::ostream& out, const std::vector<CheckReport>& reports) {
  out << "check_id,p,m,n,seed,instance,quantities,passed\n";
  for (const CheckReport& r : reports) {
    out << r.check_id << ',' << r.instance.p << ',' << r.instance.m << ',' << r.instance.n << ','
        << r.instance.seed << ',' << r.instance.index << ',';
    for (std::size_t k = 0; k < r.quantities.size(); ++k) {
      if (k) out << ';';
      out << r.quantities[k].first << '=' << format_real(r.quantities[k].second);
    }
    out << ',' << (r.passed ? "true" : "false") << '\n';
  }
}

namespace {

json report_to_json(const CheckReport& r) {
  json j;
  j["check_id"] = r.check_id;
  j["instance"] = {{"p", r.instance.p},
                   {"m", r.instance.m},
                   {"n", r.instance.n},
                   {"seed", r.instance.seed},
                   {"index", r.instance.index},
                   {"tensor_hash", r.instance.tensor_hash}};
  json q = json::object();
  for (const auto& [name, value] : r.quantities) q[name] = real_to_json(value);
  j["quantities"] = q;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  json w = json::object();
  for (const auto& [name, values] : r.witnesses) {
    json arr = json::array();
    for (double v : values) arr.push_back(real_to_json(v));
    w[name] = arr;
  }
  j["witnesses"] = w;
  return j;
}

}  // namespace

std::string report_json(const std::vector<CheckReport>& reports, const SuiteSummary& summary) {
  json j;
  j["summary"] = {{"checks", summary.checks},
                  {"instances", summary.instances},
                  {"failures", summary.failures},
                  {"first_failure", summary.first_failure ? report_to_json(*summary.first_failure)
                                                          : json(nullptr)}};
  json list = json::array();
  for (const CheckReport& r : reports) list.push_back(report_to_json(r));
  j["reports"] = list;
  return j.dump(2) + "\n";
}

std::string check_report_json(const CheckReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

std::string estimate_json(const NormEstimate& estimate, const std::string& norm_name) {
  json j;
  j["norm"] = norm_name;
  j["value"] = real_to_json(estimate.value);
  j["method"] = to_string(estimate.method);
  j["rigor"] = to_string(estimate.rigor);
  j["iterations"] = estimate.iterations;
  j["starts"] = estimate.starts;
  j["gap"] = estimate.gap ? real_to_json(*estimate.gap) : json(nullptr);
  json certs = json::array();
  for (const Vec& c : estimate.certificates) certs.push_back(vector_to_json(c));
  j["certificates"] = certs;
  return j.dump(2) + "\n";
}

}  // namespace tnl
