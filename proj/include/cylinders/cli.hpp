#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cylinders/cylinders.hpp"
#include "cylinders/io.hpp"

namespace cylinders {

struct CliOptions {
  std::uint64_t seed = 42;
  int restarts = -1;
  double tol = 1e-12;
  std::string output;
  std::string format = "text";
  std::string file;
  int dim = 0;
  bool census = false;
  int samples = 200000;
};

namespace detail {

inline SimplexDoc read_simplex_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::invalid_argument, "cannot open input file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_simplex(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

inline SolverConfig solver_config(const CliOptions& o) {
  SolverConfig c;
  c.rng_seed = o.seed;
  c.restarts = o.restarts;
  c.newton_tol = o.tol;
  return c;
}

inline Json config_json(const CliOptions& o, int n = 0) {
  Json j;
  j["rng_seed"] = o.seed;
  if (n > 0) j["restarts"] = solver_config(o).restarts_for(n);
  j["tol"] = o.tol;
  return j;
}

inline Json bounds_json(int n) {
  const BezoutBounds b = bezout_bounds(n);
  Json j;
  if (n == 3) j["e3_system"] = b.e3_system;
  j["general"] = b.general;
  j["stirling"] = b.stirling;
  return j;
}

inline Json classification_json(const Simplex& s) {
  const SimplexClassE3 c = classify_e3(s);
  Json j;
  j["tag"] = std::string(to_string(c.tag));
  j["facet_areas"] = Json(std::vector<double>(c.areas.begin(), c.areas.end()));
  j["area_partition"] = c.area_partition;
  j["extrema_bound"] = c.extrema_bound;
  if (c.tag == SimplexTag::equifacial) {
    const BoxParams box = box_params(s);
    j["box_w"] = to_json(Vector(box.w));
    j["closed_form_min"] = radius_json(equifacial_min_cylinder(s).radius);
  }
  return j;
}

inline Json axis_json(const AxisLine& a) {
  Json j;
  j["point"] = to_json(a.u);
  j["direction"] = to_json(a.v);
  return j;
}

inline Json critical_points_json(const std::vector<CriticalPoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) {
    Json j;
    j["v"] = to_json(p.v);
    j["r"] = p.r;
    j["kind"] = std::string(to_string(p.kind));
    j["residual"] = p.residual;
    j["basin_count"] = p.basin_count;
    j["lambda1"] = p.lambda1;
    j["lambda2"] = p.lambda2;
    j["axis_point"] = to_json(p.u);
    arr.push_back(j);
  }
  return arr;
}

inline Json circumscribe_report(const SimplexDoc& doc, const CliOptions& o) {
  const Simplex& s = doc.simplex;
  Json rep;
  rep["command"] = "circumscribe";
  rep["input"] = simplex_json(s, doc.label);
  if (s.dim() == 3) rep["classification"] = classification_json(s);
  const auto pts = solve_all(s, solver_config(o));
  rep["critical_point_count"] = pts.size();
  rep["critical_points"] = critical_points_json(pts);
  const CriticalPoint& best = global_min_point(pts);
  Json gm = radius_json(best.r);
  gm["axis"] = axis_json(best.cylinder().axis);
  rep["global_min"] = gm;
  rep["bounds"] = bounds_json(s.dim());
  rep["config"] = config_json(o, s.dim());
  return rep;
}

inline Json enclose_report(const SimplexDoc& doc, const CliOptions& o) {
  const Simplex& s = doc.simplex;
  if (s.dim() != 3)
    throw Error(ErrorKind::dimension_mismatch, "enclose needs a tetrahedron (dim 3)");
  EnclosingOptions opt;
  opt.solver = solver_config(o);
  opt.oracle.samples = o.samples;
  opt.oracle.rng_seed = o.seed;
  const EnclosingResult res = smallest_enclosing_cylinder(s, opt);
  Json rep;
  rep["command"] = "enclose";
  rep["input"] = simplex_json(s, doc.label);
  rep["classification"] = classification_json(s);
  Json e = radius_json(res.cylinder.radius);
  e["witness"] = std::string(to_string(res.witness));
  e["support"] = res.support;
  e["axis"] = axis_json(res.cylinder.axis);
  if (res.witness != Witness::circumscribing_4pts) {
    e["pair"] = {res.family_pair[0], res.family_pair[1]};
    e["third"] = res.family_third;
  }
  e["circumscribing_r"] = res.circumscribing_r;
  e["family_candidates"] = res.candidates.size();
  rep["enclosing"] = e;
  Json orc;
  orc["r"] = res.oracle_r;
  orc["gap"] = res.oracle_gap;
  orc["samples"] = o.samples;
  rep["oracle"] = orc;
  rep["bounds"] = bounds_json(3);
  rep["config"] = config_json(o, 3);
  return rep;
}

inline Json oracle_report(const SimplexDoc& doc, const CliOptions& o) {
  OracleOptions opt;
  opt.samples = o.samples;
  opt.rng_seed = o.seed;
  const OracleResult res = oracle_min_enclosing(doc.simplex.vertices(), opt);
  Json rep;
  rep["command"] = "oracle";
  rep["input"] = simplex_json(doc.simplex, doc.label);
  Json j = radius_json(res.r);
  j["v"] = to_json(res.v);
  j["sampled_r"] = res.sampled_r;
  j["samples"] = opt.samples;
  j["refine_iters"] = opt.refine_iters;
  j["evaluations"] = res.evaluations;
  rep["oracle"] = j;
  rep["config"] = config_json(o);
  return rep;
}

inline Json regular_report(const CliOptions& o) {
  const int n = o.dim;
  const Census c = enumerate_all_critical(n);
  const RegularMinimum m = regular_min_radius(n, c);
  Json rep;
  rep["command"] = "regular";
  rep["dim"] = n;
  rep["edge"] = std::sqrt(2.0);
  Json mr = radius_json(m.r);
  mr["sigma4"] = m.sigma4;
  mr["v"] = to_json(m.v);
  mr["v_chart"] = to_json(m.v_chart);
  rep["min_radius"] = mr;
  Json cj;
  cj["total"] = c.total;
  cj["real"] = c.real_vectors;
  cj["complex"] = c.complex_vectors;
  cj["canonical_real_directions"] = c.canonical_real_directions;
  cj["stirling_bound"] = c.stirling_bound;
  Json shapes = Json::array();
  for (const auto& sh : c.shapes) {
    Json j;
    j["shape"] = sh.shape;
    j["solutions"] = sh.solutions;
    j["vectors"] = sh.vectors;
    if (sh.positive_dimensional) j["positive_dimensional"] = true;
    shapes.push_back(j);
  }
  cj["shapes"] = shapes;
  if (o.census) {
    Json entries = Json::array();
    for (const auto& e : c.entries) {
      Json j;
      j["shape"] = Json(std::vector<int>(e.shape.begin(), e.shape.end()));
      Json vals = Json::array();
      for (const auto& z : e.values) vals.push_back(to_json(z));
      j["values"] = vals;
      j["multiplicity"] = e.multiplicity;
      j["real"] = e.real;
      j["count"] = e.count;
      j["sigma4"] = to_json(e.sigma4);
      if (e.real) j["r"] = std::sqrt(std::max(0.0, e.r2));
      entries.push_back(j);
    }
    cj["entries"] = entries;
  }
  rep["census"] = cj;
  rep["bounds"] = bounds_json(n);
  return rep;
}

inline Json weissbach_report(const CliOptions& o) {
  const int n = o.dim;
  const WeissbachCensus c = enumerate_weissbach(n);
  Json rep;
  rep["command"] = "weissbach";
  rep["dim"] = n;
  rep["summary"] = fmt::format("{} solutions ({} + {})", c.total, c.lambda2_zero, c.lambda2_nonzero);
  rep["total"] = c.total;
  rep["lambda2_zero"] = c.lambda2_zero;
  rep["lambda2_nonzero"] = c.lambda2_nonzero;
  rep["lambda2_zero_closed_form"] = lambda2_zero_census(n);
  rep["complex"] = c.complex_count;
  rep["positive_dimensional"] = c.positive_dimensional;
  rep["on_family"] = c.on_family;
  Json orbits = Json::array();
  for (const auto& s : c.orbits) {
    Json j;
    Json vals = Json::array();
    for (const auto& z : s.values) vals.push_back(to_json(z));
    j["values"] = vals;
    j["multiplicity"] = s.multiplicity;
    j["lambda1"] = to_json(s.lambda1, 1e-12);
    j["lambda2"] = to_json(s.lambda2, 1e-12);
    j["count"] = s.count;
    j["residual"] = s.residual;
    if (s.on_family) j["on_family"] = true;
    orbits.push_back(j);
  }
  rep["orbits"] = orbits;
  if (n == 3 || n == 4) {
    Json tuples = Json::array();
    for (const auto& t : verify_explicit_tuples(n)) {
      Json j;
      j["u"] = t.label;
      j["lambda1"] = t.lambda1;
      j["lambda2"] = t.lambda2;
      j["permutations"] = t.permutations;
      j["residual"] = t.residual;
      tuples.push_back(j);
    }
    rep["explicit_tuples"] = tuples;
  }
  return rep;
}

}  // namespace detail

/// Runs one command line. Exit codes: 0 success, 1 input error, 2 numerical
/// failure.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Circumscribing and enclosing cylinders of simplices"};
  app.require_subcommand(1);
  app.fallthrough();
  CliOptions o;
  app.add_option("--seed", o.seed, "random seed for restarts and sampling");
  app.add_option("--restarts", o.restarts, "random Newton restarts (default 200 * 3^min(n,5))");
  app.add_option("--tol", o.tol, "Newton acceptance tolerance")->check(CLI::PositiveNumber);
  app.add_option("--output", o.output, "write the report to this path");
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}));

  auto* circ = app.add_subcommand("circumscribe", "critical circumscribing cylinders, any dimension");
  circ->add_option("file", o.file, "simplex JSON")->required();
  auto* enc = app.add_subcommand("enclose", "smallest enclosing cylinder of a tetrahedron");
  enc->add_option("file", o.file, "simplex JSON")->required();
  enc->add_option("--samples", o.samples, "oracle direction samples")->check(CLI::PositiveNumber);
  auto* reg = app.add_subcommand("regular", "regular simplex with edge sqrt(2)");
  reg->add_option("--dim", o.dim, "dimension n")->required();
  reg->add_flag("--census", o.census, "list every census orbit");
  auto* wb = app.add_subcommand("weissbach", "solutions of min sum u^4 on the sphere with sum u = 0");
  wb->add_option("--dim", o.dim, "dimension n")->required();
  auto* orc = app.add_subcommand("oracle", "direction-sampling enclosing-cylinder oracle");
  orc->add_option("file", o.file, "simplex JSON")->required();
  orc->add_option("--samples", o.samples, "direction samples")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    Json rep;
    if (*circ) rep = detail::circumscribe_report(detail::read_simplex_file(o.file), o);
    else if (*enc) rep = detail::enclose_report(detail::read_simplex_file(o.file), o);
    else if (*orc) rep = detail::oracle_report(detail::read_simplex_file(o.file), o);
    else if (*reg) rep = detail::regular_report(o);
    else rep = detail::weissbach_report(o);
    rep["timings"] = {{"total_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    const std::string text = o.format == "json" ? rep.dump(2) + "\n" : render_text(rep);
    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) throw Error(ErrorKind::invalid_argument, "cannot write '" + o.output + "'");
      f << text;
    }
    return 0;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.is_input_error() ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cylinders
