#pragma once

// Command-line front end.
//
// Curve spec files are line based:
//
//   # lower half of a parabola
//   x  = "t"
//   y  = "t^2"
//   t0 = -1.5
//   t1 = -0.1
//   label   = "parabola"
//   family  = "circle"     # optional default for --family
//   samples = 100          # optional default for --samples
//
// Exit codes: 0 success, 1 usage, 2 input or parse error, 3 verification
// FAIL, 4 numerical failure.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tait/conics.hpp"
#include "tait/curves.hpp"
#include "tait/error.hpp"
#include "tait/expr.hpp"
#include "tait/family.hpp"
#include "tait/oracle.hpp"
#include "tait/osculate.hpp"
#include "tait/render.hpp"
#include "tait/report.hpp"
#include "tait/transforms.hpp"

namespace tait {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_input = 2, exit_fail = 3, exit_numerical = 4 };

struct CurveSpec {
  std::string x_expr;
  std::string y_expr;
  double t0 = 0.0;
  double t1 = 1.0;
  std::string label;
  std::optional<Family> family;
  std::optional<int> samples;

  ParamCurve curve() const { return make_curve(x_expr, y_expr, t0, t1, label); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Value part of a spec line: a quoted string (with \" and \\ escapes) or a
// bare token, optionally followed by a # comment.
inline std::string spec_value(std::string_view raw, int line) {
  const std::string v = trim(raw);
  auto fail = [&](const std::string& what) { return InputError("line " + std::to_string(line) + ": " + what); };
  if (v.empty()) throw fail("missing value");
  if (v.front() != '"') {
    const std::string bare = trim(v.substr(0, v.find('#')));
    if (bare.empty()) throw fail("missing value");
    return bare;
  }
  std::string out;
  std::size_t i = 1;
  for (; i < v.size() && v[i] != '"'; ++i) {
    if (v[i] == '\\' && i + 1 < v.size()) ++i;
    out += v[i];
  }
  if (i >= v.size()) throw fail("unterminated string");
  const std::string rest = trim(std::string_view(v).substr(i + 1));
  if (!rest.empty() && rest.front() != '#') throw fail("unexpected text after string: " + rest);
  return out;
}

inline double constant_value(const std::string& text, const std::string& key, int line) {
  try {
    const Expression e = parse_expression(text);
    if (!is_constant(e)) throw InputError("line " + std::to_string(line) + ": " + key + " must not depend on t");
    return evaluate(e, 0.0);
  } catch (const SyntaxError& err) {
    throw InputError("line " + std::to_string(line) + ": " + key + ": " + err.what());
  } catch (const DomainError& err) {
    throw InputError("line " + std::to_string(line) + ": " + key + ": " + err.what());
  }
}

}  // namespace detail

inline CurveSpec parse_curve_spec(std::istream& in, const std::string& source = "<input>") {
  CurveSpec spec;
  std::map<std::string, int> seen;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::string stripped = detail::trim(text);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    auto fail = [&](const std::string& what) { return InputError("line " + std::to_string(line) + ": " + what); };
    if (eq == std::string::npos) throw fail("expected key = value");
    const std::string key = detail::trim(std::string_view(stripped).substr(0, eq));
    const std::string value = detail::spec_value(std::string_view(stripped).substr(eq + 1), line);
    if (seen.count(key)) throw fail("duplicate key '" + key + "' (first on line " + std::to_string(seen[key]) + ")");
    seen[key] = line;

    if (key == "x" || key == "y") {
      try {
        parse_expression(value);
      } catch (const SyntaxError& err) {
        throw fail(key + ": " + err.what());
      }
      (key == "x" ? spec.x_expr : spec.y_expr) = value;
    } else if (key == "t0") {
      spec.t0 = detail::constant_value(value, key, line);
    } else if (key == "t1") {
      spec.t1 = detail::constant_value(value, key, line);
    } else if (key == "label") {
      spec.label = value;
    } else if (key == "family") {
      spec.family = family_from_name(value);
      if (!spec.family) throw fail("unknown family '" + value + "'");
    } else if (key == "samples") {
      std::size_t used = 0;
      int n = 0;
      try {
        n = std::stoi(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || n < 2) throw fail("samples must be an integer >= 2");
      spec.samples = n;
    } else {
      throw fail("unknown key '" + key + "'");
    }
  }
  for (const char* required : {"x", "y", "t0", "t1"})
    if (!seen.count(required)) throw InputError(source + ": missing required key '" + required + "'");
  if (!(spec.t0 < spec.t1))
    throw InputError("t0 < t1 required (t0 = " + detail::fmt9(spec.t0) + ", t1 = " + detail::fmt9(spec.t1) + ")");
  if (spec.label.empty()) spec.label = source;

  const ParamCurve c = spec.curve();
  try {
    check_regular(c);
  } catch (const PreconditionError& err) {
    throw InputError(std::string("curve validation failed: ") + err.what());
  } catch (const DomainError& err) {
    throw InputError(std::string("curve validation failed: ") + err.what());
  }
  return spec;
}

inline CurveSpec load_curve_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read curve spec '" + path + "'");
  return parse_curve_spec(in, path);
}

// ---------------------------------------------------------------------------
// Randomized predicate/oracle comparison

struct RandomPairReport {
  Family family = Family::circle;
  std::size_t pairs = 0;
  unsigned long long seed = 0;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t band_excluded = 0;  // |Q| within the tangency band
  std::size_t undetermined = 0;   // predicate gives no verdict (mixed or hyperbolic hooke pairs)
  std::size_t resolution_limited = 0;
  std::size_t oracle_intersecting = 0;  // hooke only: pairs with det(Δ) > 0 the oracle calls intersecting
  bool pass = false;
};

inline ConicElement random_conic(Family f, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> sym(-1.0, 1.0), pos(0.0, 2.0);
  for (;;) {
    ConicElement c{f, {}};
    switch (f) {
      case Family::circle: c.params = {2 * sym(rng), 2 * sym(rng), 3.0 * (1.0 - pos(rng) / 2.0)}; break;
      case Family::hooke: c.params = {2 * sym(rng), 2 * sym(rng), 2 * sym(rng)}; break;
      case Family::kepler: c.params = {sym(rng), sym(rng), 2.0 - pos(rng)}; break;
      case Family::vparabola: c.params = {sym(rng), sym(rng), sym(rng)}; break;
      case Family::flinear: c.params = {sym(rng), sym(rng), 2.0 - pos(rng)}; break;
    }
    try {
      validate_conic(c);
      if (f == Family::hooke && std::abs(hooke_determinant(c)) < 1e-3) continue;
      return c;
    } catch (const InvalidConic&) {
    }
  }
}

inline RandomPairReport random_pair_check(Family f, std::size_t pairs, unsigned long long seed) {
  RandomPairReport rep;
  rep.family = f;
  rep.pairs = pairs;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < pairs; ++k) {
    ConicElement c1 = random_conic(f, rng), c2 = random_conic(f, rng);
    if (f == Family::hooke) {
      // Same type and a positive determinant of the difference.
      while (classify_conic(c1) != classify_conic(c2) || hooke_determinant({f, difference(c1, c2)}) < 1e-9) {
        c1 = random_conic(f, rng);
        c2 = random_conic(f, rng);
      }
    }
    const SeparationVerdict v = separation_verdict(c1, c2);
    const Vec3 d = difference(c1, c2);
    const double norm2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    const OracleReport o = nested_oracle_report(c1, c2);
    if (f == Family::hooke && o.relation == OracleRelation::intersecting) ++rep.oracle_intersecting;
    if (norm2 > 0 && std::abs(v.interval.value / norm2) <= default_tolerance) {
      ++rep.band_excluded;
      continue;
    }
    if (v.relation == Relation::undetermined) {
      ++rep.undetermined;
      continue;
    }
    if (detail::oracle_matches(v.relation, o.relation))
      ++rep.agree;
    else if (o.resolution_limited)
      ++rep.resolution_limited;
    else
      ++rep.disagree;
  }
  rep.pass = rep.disagree == 0 && rep.oracle_intersecting == 0;
  return rep;
}

inline Json to_json(const RandomPairReport& r) {
  return Json{{"family", family_name(r.family)},
              {"pairs", r.pairs},
              {"seed", r.seed},
              {"agree", r.agree},
              {"disagree", r.disagree},
              {"band_excluded", r.band_excluded},
              {"undetermined", r.undetermined},
              {"resolution_limited", r.resolution_limited},
              {"oracle_intersecting", r.oracle_intersecting},
              {"result", r.pass ? "PASS" : "FAIL"}};
}

// ---------------------------------------------------------------------------
// Dispatch

namespace detail {

inline bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Writes to `path`, or to `out` when the path is empty or "-".
template <typename F>
void emit(const std::string& path, std::ostream& out, F&& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  write(f);
  if (!f) throw InputError("failed writing '" + path + "'");
}

inline Family resolve_family(const std::string& name, const CurveSpec& spec) {
  if (name.empty()) {
    if (spec.family) return *spec.family;
    throw InputError("no --family given and the curve spec sets no default");
  }
  const auto f = family_from_name(name);
  if (!f) throw InputError("unknown family '" + name + "'");
  return *f;
}

}  // namespace detail

inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Osculating conics, their parameter-space traces, and nesting checks", "tait"};
  app.require_subcommand(1);

  std::string curve_path, family_name_opt, out_path;
  int samples = 0;

  auto* osc = app.add_subcommand("osculate", "Table of osculating elements and trace tangents");
  osc->add_option("--curve", curve_path, "Curve spec file")->required();
  osc->add_option("--family", family_name_opt, "circle | hooke | kepler | vparabola | flinear");
  osc->add_option("--samples", samples, "Number of samples")->check(CLI::Range(2, 1000000));
  osc->add_option("--out", out_path, "Output .csv or .json (default: CSV on stdout)");

  auto* vtx = app.add_subcommand("vertices", "Hyper-osculation points of the curve");
  vtx->add_option("--curve", curve_path, "Curve spec file")->required();
  vtx->add_option("--family", family_name_opt, "Conic family");
  vtx->add_option("--out", out_path, "Output .json (default: stdout)");

  bool use_oracle = false;
  std::size_t random_pairs = 0;
  unsigned long long seed = 1;
  auto* ver = app.add_subcommand("verify", "Pairwise nesting of osculating conics");
  ver->add_option("--curve", curve_path, "Curve spec file");
  ver->add_option("--family", family_name_opt, "Conic family");
  ver->add_option("--samples", samples, "Number of samples")->check(CLI::Range(2, 100000));
  ver->add_flag("--oracle", use_oracle, "Cross-check every pair with the geometric oracle");
  ver->add_option("--random-pairs", random_pairs, "Compare predicate and oracle on random pairs instead");
  ver->add_option("--seed", seed, "Seed for --random-pairs");
  ver->add_option("--out", out_path, "Output .json (default: stdout)");

  int count = 12, width = 640, height = 480;
  bool axes = false;
  std::string title;
  auto* ren = app.add_subcommand("render", "SVG of the curve with a fan of osculating conics");
  ren->add_option("--curve", curve_path, "Curve spec file")->required();
  ren->add_option("--family", family_name_opt, "Conic family");
  ren->add_option("--count", count, "Number of osculating conics")->check(CLI::Range(0, 10000));
  ren->add_option("--width", width, "Width in pixels")->check(CLI::Range(64, 100000));
  ren->add_option("--height", height, "Height in pixels")->check(CLI::Range(64, 100000));
  ren->add_flag("--axes", axes, "Draw coordinate axes");
  ren->add_option("--title", title, "Caption text");
  ren->add_option("--out", out_path, "Output .svg (default: stdout)");

  double exponent = 2.0;
  std::optional<double> dual_of;
  auto* map = app.add_subcommand("map", "Complex power map of a curve, or the dual force law");
  auto* map_curve = map->add_option("--curve", curve_path, "Curve spec file");
  auto* map_exp = map->add_option("--exponent", exponent, "Power k in z -> z^k");
  auto* map_dual = map->add_option("--dual-of", dual_of, "Force exponent a; prints the dual law");
  map->add_option("--samples", samples, "Number of curve samples (default 512)")->check(CLI::Range(2, 10000000));
  map->add_option("--out", out_path, "Output .csv (default: stdout)");
  map_dual->excludes(map_curve)->excludes(map_exp);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "tait: " << e.what() << "\n" << "Run with --help for usage.\n";
    return exit_usage;
  }

  try {
    if (*osc) {
      const CurveSpec spec = load_curve_spec(curve_path);
      const Family f = detail::resolve_family(family_name_opt, spec);
      const int n = samples ? samples : spec.samples.value_or(100);
      const FamilyTrace tr = family_trace(spec.curve(), f, n);
      detail::emit(out_path, out, [&](std::ostream& os) {
        if (detail::ends_with(out_path, ".json"))
          os << to_json(tr).dump(2) << '\n';
        else
          write_csv(os, tr);
      });
      return exit_ok;
    }
    if (*vtx) {
      const CurveSpec spec = load_curve_spec(curve_path);
      const Family f = detail::resolve_family(family_name_opt, spec);
      const auto vs = find_vertices(spec.curve(), f);
      detail::emit(out_path, out, [&](std::ostream& os) { os << to_json(vs).dump(2) << '\n'; });
      return exit_ok;
    }
    if (*ver) {
      if (random_pairs > 0) {
        if (family_name_opt.empty()) throw InputError("--random-pairs needs --family");
        const auto f = family_from_name(family_name_opt);
        if (!f) throw InputError("unknown family '" + family_name_opt + "'");
        const RandomPairReport r = random_pair_check(*f, random_pairs, seed);
        detail::emit(out_path, out, [&](std::ostream& os) { os << to_json(r).dump(2) << '\n'; });
        return r.pass ? exit_ok : exit_fail;
      }
      if (curve_path.empty()) {
        err << "tait: verify needs --curve (or --random-pairs)\n";
        return exit_usage;
      }
      const CurveSpec spec = load_curve_spec(curve_path);
      const Family f = detail::resolve_family(family_name_opt, spec);
      const int n = samples ? samples : spec.samples.value_or(100);
      const FoliationReport r = verify_foliation(spec.curve(), f, n, use_oracle);
      detail::emit(out_path, out, [&](std::ostream& os) { os << to_json(r).dump(2) << '\n'; });
      if (!out_path.empty() && out_path != "-")
        out << (r.pass ? "PASS" : "FAIL") << ": " << r.pair_verdicts.nested << " nested pairs, "
            << r.vertices.size() << " vertices, " << r.violation_count << " violations\n";
      return r.pass ? exit_ok : exit_fail;
    }
    if (*ren) {
      const CurveSpec spec = load_curve_spec(curve_path);
      const Family f = detail::resolve_family(family_name_opt, spec);
      RenderStyle style;
      style.conic_count = count;
      style.width_px = width;
      style.height_px = height;
      style.axes = axes;
      style.title = title;
      const RenderResult r = render_fan(spec.curve(), f, style);
      for (const auto& w : r.warnings) err << "warning: " << w << '\n';
      detail::emit(out_path, out, [&](std::ostream& os) { os << r.svg; });
      return exit_ok;
    }
    if (*map) {
      if (dual_of) {
        const DualLawPair d = dual_exponent(*dual_of);
        out << "a = " << detail::fmt9(d.a) << "\nb = " << detail::fmt9(d.b) << "\nexponent = " << detail::fmt9(d.exponent)
            << '\n';
        return exit_ok;
      }
      if (curve_path.empty()) {
        err << "tait: map needs --curve or --dual-of\n";
        return exit_usage;
      }
      const CurveSpec spec = load_curve_spec(curve_path);
      const ParamCurve c = spec.curve();
      const int n = samples ? samples : 512;
      std::vector<Point2> pts;
      pts.reserve(n);
      for (int i = 0; i < n; ++i) pts.push_back(point_at(c, c.t0 + (c.t1 - c.t0) * i / (n - 1)));
      const auto mapped = power_map(pts, exponent);
      detail::emit(out_path, out, [&](std::ostream& os) { write_csv(os, pts, mapped); });
      return exit_ok;
    }
  } catch (const InputError& e) {
    err << "tait: input error: " << e.what() << '\n';
    return exit_input;
  } catch (const SyntaxError& e) {
    err << "tait: input error: " << e.what() << '\n';
    return exit_input;
  } catch (const Error& e) {
    err << "tait: numerical failure: " << e.what() << '\n';
    return exit_numerical;
  }
  return exit_usage;
}

inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_command(std::move(args), out, err);
}

}  // namespace tait
