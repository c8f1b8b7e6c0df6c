#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hilbert/equidist.hpp"

namespace hilbert::cli {

struct EquidistParams {
  int k_min = 3;
  int k_max = 12;
  double T0 = 2.0;
  double T1 = 4.0;
  double width = 0.5;
  double scale = 1.0;
  double rel_tol = 0.1;
  int discard = 2;
  int start_nodes = 0;
  int max_nodes = 0;
  bool svg = true;
};

/// Everything a command can read from --config. Missing keys keep defaults.
struct ExperimentConfig {
  int schema = 1;
  long field_d = 0;
  std::string kind;                   // eval/check kind
  std::string s;                      // complex literal, e.g. "1.3+0.5i"; empty: command default
  std::string s2;                     // second parameter (maass-selberg)
  std::vector<std::vector<double>> z; // one (x, y) or (Re x, Im x, y) row per place
  double T = 3.0;
  double norm_bound = 0.0;
  double fourier_terms = 40.0;
  std::optional<double> tolerance;
  std::uint64_t seed = 1;
  std::string output_path;
  EquidistParams equidist;
};

void to_json(nlohmann::json& j, const EquidistParams& p);
void from_json(const nlohmann::json& j, EquidistParams& p);
void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

Complex parse_complex(const std::string& text);
std::string format_double(double v);

/// RFC 4180 quoting.
std::string csv_field(const std::string& v);
std::string csv_row(const std::vector<std::string>& fields);

/// Field data as JSON.
nlohmann::json field_info_json(const FieldData& field);

int cmd_field_info(const ExperimentConfig& cfg, std::ostream& out);
int cmd_eval(const ExperimentConfig& cfg, std::ostream& out);
int cmd_check(const ExperimentConfig& cfg, std::ostream& out);
int cmd_equidist(const ExperimentConfig& cfg, std::ostream& out);

/// CSV table of a report, columns k, q, m_q, m, e, nodes.
std::string equidist_csv(const ExperimentReport& rep);
/// Log–log plot of e(q) with the fitted line and reference slopes ½ and ¾.
std::string equidist_svg(const ExperimentReport& rep);

/// Parses argv and dispatches. Returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hilbert::cli
