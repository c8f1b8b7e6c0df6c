#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "hilbert/eisenstein.hpp"
#include "hilbert/errors.hpp"
#include "hilbert/specfun.hpp"
#include "hilbert/zeta.hpp"
#include "hilbertlab/cli.hpp"

namespace hilbert::cli {

using nlohmann::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

Complex s_or(const ExperimentConfig& cfg, const std::string& fallback) {
  return parse_complex(cfg.s.empty() ? fallback : cfg.s);
}

Point default_point(const FieldData& field) {
  if (field.is_rational()) return make_point(field, {{Complex(0.28, 0.0), 1.3}});
  if (field.is_real_quadratic()) return make_point(field, {{Complex(0.21, 0.0), 1.1}, {Complex(-0.33, 0.0), 0.9}});
  return make_point(field, {{Complex(0.21, 0.13), 1.1}});
}

Point config_point(const ExperimentConfig& cfg, const FieldData& field) {
  if (cfg.z.empty()) return default_point(field);
  if (cfg.z.size() != static_cast<std::size_t>(field.places())) throw DomainError("z needs one row per place");
  std::vector<PlaceCoord> coords;
  for (int i = 0; i < field.places(); ++i) {
    const auto& row = cfg.z[i];
    if (field.local_degree(i) == 1) {
      if (row.size() != 2) throw DomainError("real place expects [x, y]");
      coords.push_back({Complex(row[0], 0.0), row[1]});
    } else {
      if (row.size() != 3) throw DomainError("complex place expects [Re x, Im x, y]");
      coords.push_back({Complex(row[0], row[1]), row[2]});
    }
  }
  return make_point(field, coords);
}

// A point with all heights ≥ 1 picked from the seed; far enough from the
// cusp for the Fourier expansion, close enough for nontrivial modes.
Point random_point(const FieldData& field, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(1.0, 1.6);
  std::vector<PlaceCoord> coords;
  for (int i = 0; i < field.places(); ++i) {
    const Complex x = field.local_degree(i) == 1 ? Complex(ux(rng), 0.0) : Complex(ux(rng), ux(rng));
    coords.push_back({x, uy(rng)});
  }
  return make_point(field, coords);
}

struct CheckRow {
  std::string check, quantity;
  double value = 0.0, reference = 0.0, residual = 0.0, tolerance = 0.0;
  bool pass = false;
};

CheckRow make_row(const std::string& check, const std::string& quantity, double value, double reference,
                  double residual, double tolerance) {
  return {check, quantity, value, reference, residual, tolerance, residual <= tolerance};
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<CheckRow> check_functional_equation(const ZetaContext& ctx, double tol) {
  double worst = 0.0;
  for (double sigma : {0.1, 0.3, 0.7, 0.9})
    for (double t : {0.5, 2.0, 5.0, 10.0, 15.0}) {
      const Complex s(sigma, t);
      worst = std::max(worst, rel(completed_zeta(ctx, s), completed_zeta(ctx, 1.0 - s)));
    }
  return {make_row("functional-equation", "max rel |Lambda(s)-Lambda(1-s)| (20 pts)", worst, 0.0, worst, tol)};
}

std::vector<CheckRow> check_maass_selberg(const ExperimentConfig& cfg, const ZetaContext& ctx, double tol) {
  const Complex s = s_or(cfg, "1.5");
  const Complex s2 = parse_complex(cfg.s2.empty() ? "1.25" : cfg.s2);
  const Complex closed = maass_selberg_closed_form(ctx, s, s2, cfg.T);
  const Complex numeric = maass_selberg_numeric(ctx, s, s2, cfg.T);
  return {make_row("maass-selberg", "int E^T E'^T", numeric.real(), closed.real(), rel(numeric, closed), tol)};
}

std::vector<CheckRow> check_rankin_selberg(const ExperimentConfig& cfg, const ZetaContext& ctx,
                                           std::optional<double> tol) {
  const Complex s = s_or(cfg, "2");
  const double t = tol.value_or(ctx.field.is_rational() ? 1e-4 : 1e-3);
  const TestFunction f = standard_test_function(ctx.field);
  const RankinSelbergResult r = rankin_selberg_check(f, ctx, s);
  return {make_row("rankin-selberg", "C*M(f,s) vs int E f", r.lhs.real(), r.rhs.real(), rel(r.lhs, r.rhs), t)};
}

std::vector<CheckRow> check_volume(const ExperimentConfig& cfg, const ZetaContext& ctx, double tol) {
  if (ctx.field.is_rational()) {
    const double v = orbifold_volume(ctx), numeric = fundamental_domain_volume_numeric();
    return {make_row("volume", "vol(M) vs domain quadrature", v, numeric, std::abs(v - numeric) / numeric, tol)};
  }
  const Complex s = s_or(cfg, "2");
  const double T = cfg.T;
  const VolumeIdentity vi = volume_identity(ctx, s, T);
  return {make_row("volume", "truncated integral of E", vi.numeric.real(), vi.closed_form.real(),
                   rel(vi.numeric, vi.closed_form), tol)};
}

std::vector<CheckRow> check_residue(const ExperimentConfig& cfg, const ZetaContext& ctx, double tol) {
  std::vector<CheckRow> rows;
  const double res = residue_at_one(ctx);
  if (ctx.field.is_rational()) {
    const double ref = 3.0 / std::numbers::pi;
    rows.push_back(make_row("residue", "residue vs 3/pi", res, ref, std::abs(res - ref) / ref, tol));
  }
  std::mt19937_64 rng(cfg.seed);
  const Complex s(1.0 + 1e-4, 0.0);
  for (int probe = 0; probe < 2; ++probe) {
    const Point z = random_point(ctx.field, rng);
    const Complex v = (s - 1.0) * eisenstein_fourier(ctx, z, s, cfg.fourier_terms);
    rows.push_back(make_row("residue", "(s-1)E(z,s) probe " + std::to_string(probe + 1), v.real(), res,
                            std::abs(v - res) / res, tol));
  }
  return rows;
}

std::vector<CheckRow> check_bessel(double tol) {
  double worst = 0.0;
  for (double re : {0.0, 0.3, 1.7, 4.5})
    for (double im : {0.0, 2.0, 10.0})
      for (double y : {0.2, 1.0, 6.0}) {
        const Complex s(re, im);
        const Complex a = bessel_k(s, y), b = bessel_k(-s, y);
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
      }
  double half = 0.0;
  for (double y : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    const double exact = std::sqrt(std::numbers::pi / (2.0 * y)) * std::exp(-y);
    half = std::max(half, std::abs(bessel_k(Complex(0.5, 0.0), y) - exact) / exact);
  }
  return {make_row("bessel", "max rel |K_s - K_-s|", worst, 0.0, worst, tol),
          make_row("bessel", "max rel K_1/2 vs closed form", half, 0.0, half, 1e-8)};
}

}  // namespace

int cmd_field_info(const ExperimentConfig& cfg, std::ostream& out) {
  try {
    out << field_info_json(make_field(cfg.field_d)).dump(2) << '\n';
    return 0;
  } catch (const MathError& e) {
    out << json{{"error", e.kind()}, {"message", e.what()}}.dump(2) << '\n';
    return kExitError;
  }
}

int cmd_eval(const ExperimentConfig& cfg, std::ostream& out) {
  out << csv_row({"kind", "field_d", "s_re", "s_im", "value_re", "value_im", "method", "est_error", "error"}) << "\r\n";
  Complex s{};
  try {
    s = s_or(cfg, "2");
    const FieldData field = make_field(cfg.field_d);
    const ZetaContext ctx(field);
    Complex value;
    std::string method;
    double est = std::nan("");
    if (cfg.kind == "zeta") {
      value = dedekind_zeta(ctx, s, ZetaMethod::Factorized);
      est = std::abs(value - dedekind_zeta(ctx, s, ZetaMethod::IdealSeries));
      method = "factorized; est = |factorized - ideal-series|";
    } else if (cfg.kind == "completed-zeta") {
      value = completed_zeta(ctx, s);
      est = std::abs(value - completed_zeta(ctx, 1.0 - s));
      method = "gamma factor * zeta; est = |Lambda(s) - Lambda(1-s)|";
    } else if (cfg.kind == "phi") {
      value = phi(ctx, s);
      est = std::abs(value * phi(ctx, 1.0 - s) - 1.0);
      method = "ratio of completed zetas; est = |phi(s)phi(1-s) - 1|";
    } else if (cfg.kind == "eisenstein-direct" || cfg.kind == "eisenstein-fourier") {
      const Point z = config_point(cfg, field);
      EisensteinParams p;
      p.s = s;
      p.norm_bound = cfg.norm_bound;
      p.fourier_terms = cfg.fourier_terms;
      const Complex fourier = eisenstein_fourier(ctx, z, s, cfg.fourier_terms);
      if (cfg.kind == "eisenstein-direct") {
        value = eisenstein_direct(ctx, cusp_infinity(field), z, p);
        est = std::abs(value - fourier);
        method = "smoothed lattice sum; est = |direct - fourier|";
      } else {
        value = fourier;
        method = "fourier expansion";
        if (s.real() > 1.0) {
          est = std::abs(value - eisenstein_direct(ctx, cusp_infinity(field), z, p));
          method += "; est = |direct - fourier|";
        }
      }
    } else {
      throw DomainError("unknown eval kind '" + cfg.kind + "'");
    }
    out << csv_row({cfg.kind, std::to_string(cfg.field_d), format_double(s.real()), format_double(s.imag()),
                    format_double(value.real()), format_double(value.imag()), method,
                    std::isnan(est) ? "" : format_double(est), ""})
        << "\r\n";
    return 0;
  } catch (const MathError& e) {
    out << csv_row({cfg.kind, std::to_string(cfg.field_d), format_double(s.real()), format_double(s.imag()), "", "",
                    "", "", e.kind()})
        << "\r\n";
    return kExitError;
  }
}

int cmd_check(const ExperimentConfig& cfg, std::ostream& out) {
  out << csv_row({"check", "field_d", "quantity", "value", "reference", "residual", "tolerance", "status"}) << "\r\n";
  const std::vector<std::string> all = {"functional-equation", "maass-selberg", "rankin-selberg",
                                        "volume",              "residue",       "bessel"};
  std::vector<std::string> kinds;
  if (cfg.kind.empty() || cfg.kind == "all")
    kinds = all;
  else
    kinds = {cfg.kind};
  int code = 0;
  for (const std::string& kind : kinds) {
    try {
      const FieldData field = make_field(cfg.field_d);
      const ZetaContext ctx(field);
      std::vector<CheckRow> rows;
      if (kind == "functional-equation")
        rows = check_functional_equation(ctx, cfg.tolerance.value_or(1e-6));
      else if (kind == "maass-selberg")
        rows = check_maass_selberg(cfg, ctx, cfg.tolerance.value_or(1e-3));
      else if (kind == "rankin-selberg")
        rows = check_rankin_selberg(cfg, ctx, cfg.tolerance);
      else if (kind == "volume")
        rows = check_volume(cfg, ctx, cfg.tolerance.value_or(1e-3));
      else if (kind == "residue")
        rows = check_residue(cfg, ctx, cfg.tolerance.value_or(1e-3));
      else if (kind == "bessel")
        rows = check_bessel(cfg.tolerance.value_or(1e-10));
      else
        throw DomainError("unknown check kind '" + kind + "'");
      for (const CheckRow& r : rows) {
        out << csv_row({r.check, std::to_string(cfg.field_d), r.quantity, format_double(r.value),
                        format_double(r.reference), format_double(r.residual), format_double(r.tolerance),
                        r.pass ? "pass" : "fail"})
            << "\r\n";
        if (!r.pass) code = std::max(code, kExitFail);
      }
    } catch (const MathError& e) {
      out << csv_row({kind, std::to_string(cfg.field_d), e.what(), "", "", "", "", std::string("error:") + e.kind()})
          << "\r\n";
      code = kExitError;
    }
  }
  return code;
}

std::string equidist_csv(const ExperimentReport& rep) {
  std::ostringstream os;
  os << csv_row({"k", "q", "m_q", "m", "e", "nodes"}) << "\r\n";
  for (std::size_t i = 0; i < rep.k.size(); ++i)
    os << csv_row({std::to_string(rep.k[i]), format_double(rep.q_grid[i]), format_double(rep.m_q[i]),
                   format_double(rep.m), format_double(rep.e[i]), std::to_string(rep.nodes[i])})
       << "\r\n";
  return os.str();
}

std::string equidist_svg(const ExperimentReport& rep) {
  const double W = 640, H = 480, pad = 60;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rep.e.size(); ++i)
    if (rep.e[i] > 0.0) {
      lx.push_back(std::log10(rep.q_grid[i]));
      ly.push_back(std::log10(rep.e[i]));
    }
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (lx.empty()) {
    os << "<text x=\"" << pad << "\" y=\"" << H / 2 << "\">degenerate: e(q) = 0 on the whole grid</text>\n</svg>\n";
    return os.str();
  }
  double x0 = *std::min_element(lx.begin(), lx.end()), x1 = *std::max_element(lx.begin(), lx.end());
  double y0 = *std::min_element(ly.begin(), ly.end()), y1 = *std::max_element(ly.begin(), ly.end());
  if (x1 - x0 < 1e-9) x1 = x0 + 1.0;
  y0 -= 0.5;
  y1 += 0.5;
  auto X = [&](double v) { return pad + (v - x0) / (x1 - x0) * (W - 2 * pad); };
  auto Y = [&](double v) { return H - pad - (v - y0) / (y1 - y0) * (H - 2 * pad); };
  auto fmt = [](double v) { char b[32]; std::snprintf(b, sizeof b, "%.2f", v); return std::string(b); };
  auto line = [&](double slope, double ax, double ay, const char* color, const char* dash, const std::string& label) {
    const double ya = ay + slope * (x0 - ax), yb = ay + slope * (x1 - ax);
    os << "<line x1=\"" << fmt(X(x0)) << "\" y1=\"" << fmt(Y(ya)) << "\" x2=\"" << fmt(X(x1)) << "\" y2=\""
       << fmt(Y(yb)) << "\" stroke=\"" << color << "\" stroke-dasharray=\"" << dash << "\"/>\n";
    os << "<text x=\"" << fmt(X(x1) - 120) << "\" y=\"" << fmt(Y(yb) - 6) << "\" font-size=\"12\" fill=\"" << color
       << "\">" << label << "</text>\n";
  };
  os << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\"" << H - pad
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 - 40 << "\" y=\"" << H - 20 << "\" font-size=\"14\">log10 q</text>\n";
  os << "<text x=\"10\" y=\"" << pad - 20 << "\" font-size=\"14\">log10 |m_q(f) - m(f)|</text>\n";
  // Reference slopes pass through the rightmost point (largest q).
  const std::size_t anchor = static_cast<std::size_t>(std::max_element(lx.begin(), lx.end()) - lx.begin());
  line(0.5, lx[anchor], ly[anchor], "#1f77b4", "6,4", "slope 0.5");
  line(0.75, lx[anchor], ly[anchor], "#2ca02c", "2,3", "slope 0.75");
  if (!rep.degenerate) {
    const double xm = [&] {
      double s = 0;
      for (double v : lx) s += v;
      return s / double(lx.size());
    }();
    // Intercept from the fitted natural-log line, converted to log10.
    double ym = 0.0;
    std::size_t used = 0;
    for (std::size_t i = std::min<std::size_t>(rep.discarded, lx.size()); i < lx.size(); ++i, ++used) ym += ly[i];
    ym = used ? ym / double(used) : ly[anchor];
    double xf = 0.0;
    used = 0;
    for (std::size_t i = std::min<std::size_t>(rep.discarded, lx.size()); i < lx.size(); ++i, ++used) xf += lx[i];
    xf = used ? xf / double(used) : xm;
    line(rep.fitted_slope, xf, ym, "#d62728", "", "fit " + fmt(rep.fitted_slope));
  }
  for (std::size_t i = 0; i < lx.size(); ++i)
    os << "<circle cx=\"" << fmt(X(lx[i])) << "\" cy=\"" << fmt(Y(ly[i])) << "\" r=\"4\" fill=\""
       << (static_cast<int>(i) < rep.discarded ? "#999999" : "black") << "\"/>\n";
  os << "</svg>\n";
  return os.str();
}

int cmd_equidist(const ExperimentConfig& cfg, std::ostream& out) {
  try {
    const FieldData field = make_field(cfg.field_d);
    const ZetaContext ctx(field);
    const EquidistParams& p = cfg.equidist;
    TestFunction f = standard_test_function(field);
    f.profile = BumpProfile{p.T0, p.T1, p.width, p.scale};
    FitOptions fo;
    fo.discard = p.discard;
    fo.rel_tol = cfg.tolerance.value_or(p.rel_tol);
    fo.start_nodes = p.start_nodes;
    fo.max_nodes = p.max_nodes;
    const ExperimentReport rep = decay_exponent_fit(f, ctx, p.k_min, p.k_max, fo);
    const std::string csv = equidist_csv(rep);

    json meta = {{"schema", 1},
                 {"config", cfg},
                 {"m", rep.m},
                 {"fitted_slope", rep.fitted_slope},
                 {"slope_ci", {rep.slope_ci.first, rep.slope_ci.second}},
                 {"residuals", rep.residuals},
                 {"discarded", rep.discarded},
                 {"degenerate", rep.degenerate},
                 {"markers", {{"unconditional", 0.5}, {"riemann_hypothesis", 0.75}}},
                 {"runtime_seconds", rep.runtime}};
    if (cfg.output_path.empty()) {
      out << csv;
    } else {
      std::ofstream(cfg.output_path, std::ios::binary) << csv;
      std::ofstream(cfg.output_path + ".json") << meta.dump(2) << '\n';
      if (p.svg) std::ofstream(cfg.output_path + ".svg") << equidist_svg(rep);
    }
    std::ostream& summary = cfg.output_path.empty() ? std::clog : out;
    if (rep.degenerate)
      summary << "degenerate fit: e(q) vanishes on the grid\n";
    else
      summary << "fitted slope " << format_double(rep.fitted_slope) << " (95% CI " << format_double(rep.slope_ci.first)
              << " .. " << format_double(rep.slope_ci.second) << "); markers 0.5 unconditional, 0.75 under RH\n";
    return 0;
  } catch (const QuadratureBudgetExceeded& e) {
    out << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const MathError& e) {
    out << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace hilbert::cli
