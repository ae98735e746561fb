#pragma once

#include "tnl/theorems.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace tnl {

/// Malformed tensor file or suite config.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// On-disk tensor: JSON object with order, dim, exponent (number or "inf"),
/// optional weights, symmetric flag and row-major coeffs.
struct TensorFile {
  int order = 0;
  int dim = 0;
  Exponent exponent;
  std::optional<Vec> weights;
  bool symmetric = false;
  Vec coeffs;

  SequenceSpace space() const;
  FullTensor tensor() const;
  static TensorFile from_tensor(const FullTensor& u, bool symmetric);
};

/// Throws ParseError; a symmetric file must be permutation-invariant within 1e-12.
TensorFile parse_tensor_file(const std::string& text);
TensorFile load_tensor_file(const std::filesystem::path& path);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string format_tensor_file(const TensorFile& file);
void save_tensor_file(const TensorFile& file, const std::filesystem::path& path);

/// Throws ParseError for malformed JSON, wrong types or unknown check ids.
/// `default_seed` applies when the config has no seed field.
SuiteConfig parse_suite_config(const std::string& text, std::uint64_t default_seed = 0);
SuiteConfig load_suite_config(const std::filesystem::path& path, std::uint64_t default_seed = 0);

/// Columns: check_id,p,m,n,seed,instance,quantities,passed. The quantities cell
/// is "name=value;..." with %.17g values.
void write_report_csv(std::ostream& out, const std::vector<CheckReport>& reports);
std::string report_json(const std::vector<CheckReport>& reports, const SuiteSummary& summary);
std::string check_report_json(const CheckReport& report);
std::string estimate_json(const NormEstimate& estimate, const std::string& norm_name);

/// "%.17g"
std::string format_real(double x);

}  // namespace tnl
