#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hilbert/errors.hpp"
#include "hilbertlab/cli.hpp"
#include "support.hpp"

using namespace hilbert;
using namespace hilbert::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hilbertlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    v.push_back(l);
  }
  return v;
}

// Minimal RFC 4180 reader, enough to undo csv_row.
std::vector<std::string> split_csv(const std::string& row) {
  std::vector<std::string> out{""};
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"' && i + 1 < row.size() && row[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("config round-trips through json") {
  ExperimentConfig c;
  c.field_d = -1;
  c.kind = "eisenstein-direct";
  c.s = "1.3+0.5i";
  c.s2 = "1.1";
  c.z = {{0.1, -0.2, 1.4}};
  c.T = 2.5;
  c.norm_bound = 1e4;
  c.fourier_terms = 25;
  c.tolerance = 3e-7;
  c.seed = 99;
  c.output_path = "x.csv";
  c.equidist.k_min = 2;
  c.equidist.k_max = 7;
  c.equidist.scale = 0.0;
  c.equidist.svg = false;
  const json j = c;
  const ExperimentConfig back = j.get<ExperimentConfig>();
  CHECK(json(back) == j);
  CHECK(back.tolerance.value() == 3e-7);
  CHECK(back.z == c.z);

  ExperimentConfig plain;
  CHECK_FALSE(json(plain).get<ExperimentConfig>().tolerance.has_value());

  json bad = j;
  bad["schema"] = 2;
  CHECK_THROWS_AS(bad.get<ExperimentConfig>(), DomainError);

  // missing keys keep defaults
  const ExperimentConfig partial = json{{"field_d", 5}}.get<ExperimentConfig>();
  CHECK(partial.field_d == 5);
  CHECK(partial.seed == 1);
  CHECK(partial.equidist.k_max == 12);
}

TEST_CASE("complex literals") {
  CHECK(parse_complex("2") == Complex(2, 0));
  CHECK(parse_complex("1.3+0.5i") == Complex(1.3, 0.5));
  CHECK(parse_complex("1.7-2i") == Complex(1.7, -2));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("3j") == Complex(0, 3));
  CHECK(parse_complex(" 1e-3 + 2.5e1i ") == Complex(1e-3, 25));
  CHECK(parse_complex("0.5+i") == Complex(0.5, 1));
  for (const char* bad : {"", "abc", "1+", "1+2", "i2", "1..2"}) CHECK_THROWS_AS(parse_complex(bad), DomainError);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  const std::vector<std::string> row = {"x", "a,b", "q\"q", "", "est = |a - b|; ok"};
  CHECK(split_csv(csv_row(row)) == row);
}

TEST_CASE("field info") {
  const json golden = field_info_json(make_field(5));
  CHECK(golden["regulator"].get<double>() == doctest::Approx(0.4812118250596).epsilon(1e-12));
  CHECK(golden["abs_discriminant"] == 5);
  CHECK(golden["class_number"] == 1);
  CHECK(golden["fundamental_unit"]["text"].is_string());

  const json q = field_info_json(make_field(0));
  CHECK(q["abs_discriminant"] == 1);
  CHECK(q["degree"] == 1);
  CHECK(q["fundamental_unit"].is_null());

  const Outcome six = invoke({"field-info", "--field-d", "6"});
  CHECK(six.code == 0);
  CHECK(json::parse(six.out)["d"] == 6);

  const Outcome ten = invoke({"field-info", "--field-d", "10"});
  CHECK(ten.code != 0);
  CHECK(json::parse(ten.out)["error"] == "UnsupportedField");
}

TEST_CASE("eval rows") {
  const Outcome z = invoke({"eval", "zeta", "--field-d", "0", "--s", "2"});
  REQUIRE(z.code == 0);
  auto rows = lines(z.out);
  REQUIRE(rows.size() == 2);
  CHECK(split_csv(rows[0]).size() == 9);
  auto r = split_csv(rows[1]);
  CHECK(std::stod(r[4]) == doctest::Approx(1.6449340668).epsilon(1e-10));
  CHECK(r[8].empty());

  const Outcome pole = invoke({"eval", "phi", "--field-d", "0", "--s", "1"});
  CHECK(pole.code == 2);
  rows = lines(pole.out);
  REQUIRE(rows.size() == 2);
  CHECK(split_csv(rows[1])[8] == "ScatteringPole");

  // the direct sum reports its distance to the Fourier expansion
  const Outcome e = invoke({"eval", "eisenstein-direct", "--field-d", "0", "--s", "2"});
  REQUIRE(e.code == 0);
  r = split_csv(lines(e.out)[1]);
  CHECK(std::stod(r[7]) <= 1e-6);

  CHECK(invoke({"eval", "nonsense"}).code == 2);
}

TEST_CASE("check exit codes") {
  const Outcome ok = invoke({"check", "volume", "--field-d", "0"});
  CHECK(ok.code == 0);
  auto r = split_csv(lines(ok.out)[1]);
  CHECK(r.back() == "pass");
  CHECK(std::stod(r[3]) == doctest::Approx(std::numbers::pi / 3).epsilon(1e-3));

  const Outcome bessel = invoke({"check", "bessel"});
  CHECK(bessel.code == 0);

  // a tolerance nothing can meet must fail the run
  const Outcome strict = invoke({"check", "maass-selberg", "--field-d", "0", "--tolerance", "0"});
  CHECK(strict.code == 1);
  CHECK(split_csv(lines(strict.out)[1]).back() == "fail");

  const Outcome unknown = invoke({"check", "bogus"});
  CHECK(unknown.code == 2);
}

TEST_CASE("config file is read and flags override it") {
  const std::string path = "cli_test_config.json";
  std::ofstream(path) << json{{"schema", 1}, {"field_d", 0}, {"kind", "zeta"}, {"s", "3"}}.dump();
  Outcome o = invoke({"eval", "zeta", "--config", path});
  CHECK(std::stod(split_csv(lines(o.out)[1])[4]) == doctest::Approx(1.2020569031596).epsilon(1e-11));
  o = invoke({"eval", "zeta", "--config", path, "--s", "2"});
  CHECK(std::stod(split_csv(lines(o.out)[1])[4]) == doctest::Approx(1.6449340668482).epsilon(1e-11));

  std::ofstream(path) << json{{"schema", 7}}.dump();
  CHECK(invoke({"eval", "zeta", "--config", path}).code == 2);
  CHECK(invoke({"eval", "zeta", "--config", "does-not-exist.json"}).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("equidist output is deterministic") {
  ExperimentConfig cfg;
  cfg.equidist.k_min = 2;
  cfg.equidist.k_max = 6;
  std::ostringstream a, b;
  REQUIRE(cmd_equidist(cfg, a) == 0);
  REQUIRE(cmd_equidist(cfg, b) == 0);
  CHECK(a.str() == b.str());
  const auto rows = lines(a.str());
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "k,q,m_q,m,e,nodes");
  CHECK(a.str().find("\r\n") != std::string::npos);

  cfg.output_path = "cli_test_equidist.csv";
  std::ostringstream summary;
  REQUIRE(cmd_equidist(cfg, summary) == 0);
  std::ifstream csv(cfg.output_path, std::ios::binary);
  std::stringstream written;
  written << csv.rdbuf();
  CHECK(written.str() == a.str());
  std::ifstream svg(cfg.output_path + ".svg");
  std::stringstream plot;
  plot << svg.rdbuf();
  CHECK(plot.str().find("slope 0.5") != std::string::npos);
  CHECK(plot.str().find("slope 0.75") != std::string::npos);
  const json meta = json::parse(std::ifstream(cfg.output_path + ".json"));
  CHECK(meta["schema"] == 1);
  CHECK(meta["config"]["equidist"]["k_max"] == 6);
  for (const std::string suffix : {"", ".svg", ".json"}) std::remove((cfg.output_path + suffix).c_str());
}

TEST_CASE("zero bump gives a degenerate fit") {
  ExperimentConfig cfg;
  cfg.equidist.k_min = 2;
  cfg.equidist.k_max = 5;
  cfg.equidist.scale = 0.0;
  cfg.output_path = "cli_test_zero.csv";
  std::ostringstream out;
  REQUIRE(cmd_equidist(cfg, out) == 0);
  CHECK(out.str().find("degenerate") != std::string::npos);
  const json meta = json::parse(std::ifstream(cfg.output_path + ".json"));
  CHECK(meta["degenerate"] == true);
  for (const std::string suffix : {"", ".svg", ".json"}) std::remove((cfg.output_path + suffix).c_str());
}

TEST_CASE("installed binary honours the exit-code contract") {
  const char* bin = std::getenv("HILBERTLAB_BIN");
  if (!bin) return;
  const std::string quiet = " > /dev/null 2>&1";
  CHECK(std::system((std::string(bin) + " field-info --field-d 5" + quiet).c_str()) == 0);
  CHECK(std::system((std::string(bin) + " check maass-selberg --tolerance 0" + quiet).c_str()) != 0);
  CHECK(std::system((std::string(bin) + " frobnicate" + quiet).c_str()) != 0);
}
