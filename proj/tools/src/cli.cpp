#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>

#include <CLI11.hpp>

#include "hilbert/errors.hpp"
#include "hilbertlab/cli.hpp"

namespace hilbert::cli {

using nlohmann::json;

void to_json(json& j, const EquidistParams& p) {
  j = json{{"k_min", p.k_min},     {"k_max", p.k_max},         {"T0", p.T0},
           {"T1", p.T1},           {"width", p.width},         {"scale", p.scale},
           {"rel_tol", p.rel_tol}, {"discard", p.discard},     {"start_nodes", p.start_nodes},
           {"max_nodes", p.max_nodes}, {"svg", p.svg}};
}

void from_json(const json& j, EquidistParams& p) {
  p.k_min = j.value("k_min", p.k_min);
  p.k_max = j.value("k_max", p.k_max);
  p.T0 = j.value("T0", p.T0);
  p.T1 = j.value("T1", p.T1);
  p.width = j.value("width", p.width);
  p.scale = j.value("scale", p.scale);
  p.rel_tol = j.value("rel_tol", p.rel_tol);
  p.discard = j.value("discard", p.discard);
  p.start_nodes = j.value("start_nodes", p.start_nodes);
  p.max_nodes = j.value("max_nodes", p.max_nodes);
  p.svg = j.value("svg", p.svg);
}

void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"schema", c.schema},
           {"field_d", c.field_d},
           {"kind", c.kind},
           {"s", c.s},
           {"s2", c.s2},
           {"z", c.z},
           {"T", c.T},
           {"norm_bound", c.norm_bound},
           {"fourier_terms", c.fourier_terms},
           {"seed", c.seed},
           {"output_path", c.output_path},
           {"equidist", c.equidist}};
  j["tolerance"] = c.tolerance ? json(*c.tolerance) : json(nullptr);
}

void from_json(const json& j, ExperimentConfig& c) {
  c.schema = j.value("schema", 1);
  if (c.schema != 1) throw DomainError("unsupported config schema " + std::to_string(c.schema));
  c.field_d = j.value("field_d", c.field_d);
  c.kind = j.value("kind", c.kind);
  c.s = j.value("s", c.s);
  c.s2 = j.value("s2", c.s2);
  if (j.contains("z")) c.z = j.at("z").get<std::vector<std::vector<double>>>();
  c.T = j.value("T", c.T);
  c.norm_bound = j.value("norm_bound", c.norm_bound);
  c.fourier_terms = j.value("fourier_terms", c.fourier_terms);
  if (j.contains("tolerance") && !j.at("tolerance").is_null()) c.tolerance = j.at("tolerance").get<double>();
  c.seed = j.value("seed", c.seed);
  c.output_path = j.value("output_path", c.output_path);
  if (j.contains("equidist")) c.equidist = j.at("equidist").get<EquidistParams>();
}

Complex parse_complex(const std::string& text) {
  // a, bi, a+bi, a-bi; "j" accepted for i.
  static const std::regex re(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$)");
  static const std::regex pure(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij]\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pure)) {
    const std::string b = m[1].str();
    const double im = b.empty() || b == "+" ? 1.0 : (b == "-" ? -1.0 : std::stod(b));
    return {0.0, im};
  }
  if (!std::regex_match(text, m, re) || text.find_first_not_of(" \t") == std::string::npos)
    throw DomainError("cannot parse complex number '" + text + "'");
  const double re_part = m[1].matched ? std::stod(m[1].str()) : 0.0;
  double im = 0.0;
  if (m[2].matched) {
    im = m[3].matched ? std::stod(m[3].str()) : 1.0;
    if (m[2].str() == "-") im = -im;
  }
  return {re_part, im};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\r\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out;
}

json field_info_json(const FieldData& f) {
  auto element = [](const FieldElement& e) {
    return json{{"text", e.to_string()}, {"a", e.a().str()}, {"b", e.b().str()}};
  };
  json j{{"d", f.d},
         {"signature", {f.r1, f.r2}},
         {"degree", f.n},
         {"discriminant", f.disc()},
         {"abs_discriminant", f.D},
         {"class_number", f.h},
         {"roots_of_unity", f.omega},
         {"regulator", f.R},
         {"integral_basis", {element(f.integral_basis[0]), element(f.integral_basis[1])}},
         {"different_generator", element(f.different_gen)}};
  j["fundamental_unit"] = f.fundamental_unit ? element(*f.fundamental_unit) : json(nullptr);
  return j;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"hilbertlab: Eisenstein series and horosphere equidistribution on Hilbert modular groups"};
  app.require_subcommand(1);

  std::optional<long> field_d;
  std::string s_text, config_path, out_path, kind;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--field-d", field_d, "squarefree d of K = Q(sqrt d); 0 for Q");
    sub->add_option("--config", config_path, "JSON config (schema 1)");
    sub->add_option("--out", out_path, "output path");
    sub->add_option("--seed", seed, "seed for randomized probes");
    sub->add_option("--tolerance", tolerance, "override the default tolerance");
  };
  CLI::App* info = app.add_subcommand("field-info", "print field data as JSON");
  common(info);
  CLI::App* eval = app.add_subcommand("eval", "evaluate zeta, completed-zeta, phi, eisenstein-direct, eisenstein-fourier");
  common(eval);
  eval->add_option("kind", kind)->required();
  eval->add_option("--s", s_text, "complex parameter, e.g. 1.3+0.5i");
  CLI::App* check = app.add_subcommand(
      "check", "functional-equation, maass-selberg, rankin-selberg, volume, residue, bessel, or all");
  common(check);
  check->add_option("kind", kind);
  check->add_option("--s", s_text, "complex parameter");
  CLI::App* equi = app.add_subcommand("equidist", "decay of horosphere averages m_q(f) - m(f)");
  common(equi);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw DomainError("cannot open config '" + config_path + "'");
      cfg = json::parse(in).get<ExperimentConfig>();
    }
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const MathError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
  if (field_d) cfg.field_d = *field_d;
  if (!s_text.empty()) cfg.s = s_text;
  if (!out_path.empty()) cfg.output_path = out_path;
  if (seed) cfg.seed = *seed;
  if (tolerance) cfg.tolerance = tolerance;
  if (!kind.empty()) cfg.kind = kind;

  try {
    if (info->parsed()) return cmd_field_info(cfg, out);
    if (eval->parsed()) return cmd_eval(cfg, out);
    if (check->parsed()) return cmd_check(cfg, out);
    return cmd_equidist(cfg, out);
  } catch (const MathError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace hilbert::cli
