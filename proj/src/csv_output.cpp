#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include "snrlab/experiment.hpp"

namespace snrlab {

namespace {

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string db_of(const std::optional<double>& linear) {
  if (!linear) return {};
  if (std::isinf(*linear)) return format_number(*linear);
  if (*linear <= 0.0) return format_number(-INFINITY);
  return format_number(to_db(*linear));
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string sweep_csv(const std::vector<SnrEstimate>& rows, std::uint64_t seed) {
  std::string out = "arch,n,trials,signal_power,noise_power,snr_linear,snr_db,theory_linear,theory_db,oracle_linear,"
                    "bound_linear,seed\n";
  for (const SnrEstimate& e : rows) {
    out += std::string(to_string(e.arch)) + ',' + std::to_string(e.n) + ',' + std::to_string(e.trials) + ',' +
           format_number(e.signal_power) + ',' + format_number(e.noise_power) + ',' + format_number(e.snr_linear) +
           ',' + format_number(e.snr_db) + ',' + format_optional(e.theory_linear) + ',' + db_of(e.theory_linear) +
           ',' + format_optional(e.oracle_linear) + ',' + format_optional(e.bound_linear) + ',' +
           std::to_string(seed) + '\n';
  }
  return out;
}

std::string theory_csv(const std::vector<TheoryRow>& rows) {
  std::string out = "n,lci_theory,lci_theory_db,lci_bound,lci_bound_db,pai_theory,pai_theory_db,lai_theory,"
                    "lai_theory_db,ratio_lci_pai,ratio_lci_lai\n";
  for (const TheoryRow& r : rows) {
    out += std::to_string(r.n) + ',' + format_optional(r.lci_theory) + ',' + db_of(r.lci_theory) + ',' +
           format_optional(r.lci_bound) + ',' + db_of(r.lci_bound) + ',' + format_optional(r.pai_theory) + ',' +
           db_of(r.pai_theory) + ',' + format_optional(r.lai_theory) + ',' + db_of(r.lai_theory) + ',' +
           format_optional(r.ratio_lci_pai) + ',' + format_optional(r.ratio_lci_lai) + '\n';
  }
  return out;
}

std::string oracle_csv(const std::vector<OracleRow>& rows) {
  std::string out = "n,trials,signal_power,oracle_variance,mc_noise_power,theory_linear,oracle_linear,mc_linear,"
                    "theory_oracle_snr_gap,mc_oracle_noise_gap\n";
  for (const OracleRow& r : rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.trials) + ',' + format_number(r.signal_power) + ',' +
           format_number(r.oracle_variance) + ',' + format_number(r.mc_noise_power) + ',' +
           format_optional(r.theory_linear) + ',' + format_number(r.oracle_linear) + ',' +
           format_number(r.mc_linear) + ',' + format_optional(r.gap_theory_oracle) + ',' +
           format_number(r.gap_mc_oracle) + '\n';
  }
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file " + path);
  out << content;
  out.close();
  if (!out) throw IoError("failed writing output file " + path);
}

}  // namespace snrlab
