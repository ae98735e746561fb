#include "tnl/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kParseError = 1;
constexpr int kIncompatible = 2;
constexpr int kUnknownCheck = 2;
constexpr int kCheckFailed = 3;

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(text, &used, 10);
  if (used != text.size() || text.front() == '-') throw std::invalid_argument("bad seed");
  return v;
}

// --seed, then TNL_SEED, then 0.
std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
  if (flag) return parse_seed(*flag);
  if (const char* env = std::getenv("TNL_SEED"); env && *env) return parse_seed(env);
  return 0;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

void print_vector(std::ostream& out, const tnl::Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << tnl::format_real(v[i]);
}

void print_report(std::ostream& out, const tnl::CheckReport& r) {
  out << r.check_id << ": " << (r.passed ? "PASS" : "FAIL") << "  (p=" << r.instance.p
      << " m=" << r.instance.m << " n=" << r.instance.n << " seed=" << r.instance.seed << ")\n";
  for (const auto& [name, value] : r.quantities) out << "  " << name << " = " << tnl::format_real(value) << '\n';
  out << "  tolerance = " << tnl::format_real(r.tolerance) << '\n';
  for (const auto& [name, values] : r.witnesses) {
    out << "  witness " << name << ":";
    for (double v : values) out << ' ' << tnl::format_real(v);
    out << '\n';
  }
}

struct NormArgs {
  std::string file;
  std::string norm = "eps";
  std::string method = "auto";
  int starts = 32;
  std::optional<std::string> seed;
  bool json = false;
};

int cmd_norm(const NormArgs& a) {
  tnl::EngineConfig config;
  tnl::TensorFile file;
  try {
    config.method = tnl::parse_method(a.method);
    config.starts = a.starts;
    config.seed = resolve_seed(a.seed);
    config.threads = 0;
    file = tnl::load_tensor_file(a.file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  }
  const tnl::FullTensor u = file.tensor();
  tnl::NormEstimate est;
  try {
    if (a.norm == "eps") {
      est = tnl::injective_norm(u, config);
    } else if (a.norm == "pos-eps") {
      est = tnl::positive_injective_norm(u, config);
    } else if (a.norm == "s-eps" || a.norm == "pos-s-eps") {
      const tnl::SymmetricTensor su =
          file.symmetric ? tnl::SymmetricTensor::from_full(u, 1e-12) : tnl::symmetrize(u);
      if (!file.symmetric) std::cerr << "note: tensor is not marked symmetric; using s(u)\n";
      est = a.norm == "s-eps" ? tnl::sym_injective_norm(su, config)
                              : tnl::positive_sym_injective_norm(su, config);
    } else {
      std::cerr << "error: unknown norm '" << a.norm << "'\n";
      return kParseError;
    }
  } catch (const tnl::IncompatibleMethod& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIncompatible;
  } catch (const tnl::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIncompatible;
  }
  if (a.json) {
    std::cout << tnl::estimate_json(est, a.norm);
    return kOk;
  }
  std::cout << "norm: " << a.norm << '\n'
            << "value: " << tnl::format_real(est.value) << '\n'
            << "rigor: " << tnl::to_string(est.rigor) << '\n'
            << "method: " << tnl::to_string(est.method) << '\n';
  if (est.gap) std::cout << "gap: " << tnl::format_real(*est.gap) << '\n';
  for (std::size_t k = 0; k < est.certificates.size(); ++k) {
    std::cout << "certificate[" << k << "]: ";
    print_vector(std::cout, est.certificates[k]);
    std::cout << '\n';
  }
  return kOk;
}

struct VerifyArgs {
  std::string check;
  std::string p = "1";
  int m = 2;
  int n = 2;
  std::optional<std::string> diag;
  std::optional<std::string> file;
  std::optional<std::string> seed;
  std::string method = "auto";
  int starts = 32;
  std::optional<double> tolerance;
  bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
  if (!tnl::is_known_check(a.check)) {
    std::cerr << "error: unknown check id '" << a.check << "'; known:";
    for (const auto& id : tnl::known_checks()) std::cerr << ' ' << id;
    std::cerr << '\n';
    return kUnknownCheck;
  }
  tnl::InstanceSpec spec;
  try {
    spec.p = tnl::parse_exponent(a.p);
    spec.m = a.m;
    spec.n = a.n;
    spec.seed = resolve_seed(a.seed);
    spec.options.engine.method = tnl::parse_method(a.method);
    spec.options.engine.starts = a.starts;
    spec.options.engine.threads = 0;
    spec.options.tolerance = a.tolerance;
    if (a.diag) {
      const std::vector<double> d = parse_list(*a.diag);
      spec.diagonal = Eigen::Map<const tnl::Vec>(d.data(), static_cast<Eigen::Index>(d.size()));
      spec.m = static_cast<int>(d.size());
    }
    if (a.file) {
      const tnl::TensorFile f = tnl::load_tensor_file(*a.file);
      spec.tensor = f.tensor();
      spec.p = f.exponent;
      spec.m = f.dim;
      spec.n = f.order;
      if (tnl::FullTensor u = *spec.tensor; u.is_diagonal() && !spec.diagonal) {
        spec.diagonal = tnl::diagonal_of(u);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  }
  tnl::CheckReport report;
  try {
    report = tnl::run_check(a.check, spec);
  } catch (const tnl::IncompatibleMethod& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIncompatible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  }
  if (a.json) {
    std::cout << tnl::check_report_json(report);
  } else {
    print_report(std::cout, report);
  }
  return report.passed ? kOk : kCheckFailed;
}

struct SuiteArgs {
  std::string config;
  std::string out = ".";
  std::optional<int> threads;
};

int cmd_suite(const SuiteArgs& a) {
  tnl::SuiteConfig config;
  try {
    config = tnl::load_suite_config(a.config, resolve_seed(std::nullopt));
  } catch (const std::exception& e) {
    std::cerr << "error: invalid config: " << e.what() << '\n';
    return kParseError;
  }
  if (a.threads) config.threads = *a.threads;
  std::vector<tnl::CheckReport> reports;
  try {
    reports = tnl::run_suite(config);
  } catch (const tnl::IncompatibleMethod& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIncompatible;
  }
  const tnl::SuiteSummary summary = tnl::summarize(reports);
  const std::filesystem::path dir(a.out);
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "report.csv", std::ios::binary);
    tnl::write_report_csv(csv, reports);
    std::ofstream json(dir / "report.json", std::ios::binary);
    json << tnl::report_json(reports, summary);
    if (!csv || !json) {
      std::cerr << "error: cannot write reports to '" << dir.string() << "'\n";
      return kParseError;
    }
  }
  std::cout << summary.checks << " checks, " << summary.instances << " instances, "
            << summary.failures << " failures\n";
  if (summary.first_failure) {
    std::cout << "first failure:\n";
    print_report(std::cout, *summary.first_failure);
  }
  return summary.failures == 0 ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Injective and positive injective norms of tensors over weighted l_p lattices"};
  app.require_subcommand(1);

  NormArgs norm;
  auto* norm_cmd = app.add_subcommand("norm", "Compute one norm of a tensor file");
  norm_cmd->add_option("file", norm.file, "tensor file (JSON)")->required();
  norm_cmd->add_option("--norm", norm.norm, "eps | s-eps | pos-eps | pos-s-eps")
      ->check(CLI::IsMember({"eps", "s-eps", "pos-eps", "pos-s-eps"}));
  norm_cmd->add_option("--method", norm.method, "auto | enumerate | svd | alternating | grid");
  norm_cmd->add_option("--starts", norm.starts, "multi-start count")->check(CLI::PositiveNumber);
  norm_cmd->add_option("--seed", norm.seed, "master seed (falls back to TNL_SEED)");
  norm_cmd->add_flag("--json", norm.json, "machine-readable output");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run one check on one instance");
  verify_cmd->add_option("--check", verify.check, "check id")->required();
  verify_cmd->add_option("--p", verify.p, "exponent, a number >= 1 or inf");
  verify_cmd->add_option("--m", verify.m, "dimension")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--n", verify.n, "order")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--diag", verify.diag, "diagonal coefficients, comma separated");
  verify_cmd->add_option("--file", verify.file, "tensor file for tensor-valued checks");
  verify_cmd->add_option("--seed", verify.seed, "instance seed (falls back to TNL_SEED)");
  verify_cmd->add_option("--method", verify.method, "norm engine");
  verify_cmd->add_option("--starts", verify.starts, "multi-start count")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tolerance", verify.tolerance, "override the check's tolerance");
  verify_cmd->add_flag("--json", verify.json, "machine-readable output");

  SuiteArgs suite;
  auto* suite_cmd = app.add_subcommand("suite", "Run a configured batch of checks");
  suite_cmd->add_option("config", suite.config, "suite config (JSON)")->required();
  suite_cmd->add_option("--out", suite.out, "directory for report.csv and report.json");
  suite_cmd->add_option("--threads", suite.threads, "worker threads, 0 for all cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  if (*norm_cmd) return cmd_norm(norm);
  if (*verify_cmd) return cmd_verify(verify);
  return cmd_suite(suite);
}
