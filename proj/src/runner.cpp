#include "pseudopass/runner.hpp"

#include <cmath>

#include "pseudopass/certify.hpp"
#include "pseudopass/convert.hpp"
#include "pseudopass/geometry.hpp"
#include "pseudopass/io.hpp"
#include "pseudopass/svg.hpp"
#include "pseudopass/timedomain.hpp"

namespace pseudopass {

using nlohmann::json;

namespace {

json inputs_block(const json& options) {
  if (options.contains("inputs") && options["inputs"].is_object())
    return options["inputs"];
  return json::object();
}

double opt_number(const json& options, const char* key, double fallback) {
  if (options.contains(key) && options[key].is_number())
    return options[key].get<double>();
  return fallback;
}

bool opt_flag(const json& options, const char* key, bool fallback = false) {
  if (options.contains(key) && options[key].is_boolean())
    return options[key].get<bool>();
  return fallback;
}

std::string opt_string(const json& options, const char* key,
                       const std::string& fallback) {
  if (options.contains(key) && options[key].is_string())
    return options[key].get<std::string>();
  return fallback;
}

HalfPlaneGrid grid_from_options(const json& options) {
  HalfPlaneGrid grid;
  if (!options.contains("grid")) return grid;
  const json& g = options["grid"];
  if (!g.is_object()) throw ValidationError("options: 'grid' must be an object");
  grid.re_min = opt_number(g, "re_min", grid.re_min);
  grid.re_max = opt_number(g, "re_max", grid.re_max);
  grid.im_min = opt_number(g, "im_min", grid.im_min);
  grid.im_max = opt_number(g, "im_max", grid.im_max);
  grid.n_re = static_cast<int>(opt_number(g, "n_re", grid.n_re));
  grid.n_im = static_cast<int>(opt_number(g, "n_im", grid.n_im));
  if (opt_string(g, "spacing", "log") == "linear")
    grid.spacing = HalfPlaneGrid::Spacing::Linear;
  return grid;
}

json witness_to_json(const Witness& w) {
  return json{{"testfn", w.testfn_id}, {"horizon", w.horizon}, {"residual", w.residual}};
}

json region_to_json(const Region& r) {
  json j{{"shape", r.shape_name()}, {"case", r.case_label()}};
  if (r.shape == RegionShape::Disk || r.shape == RegionShape::DiskComplement ||
      r.shape == RegionShape::Point) {
    j["center"] = complex_to_json(r.center);
    j["radius"] = r.radius;
  }
  if (r.shape == RegionShape::HalfPlane) {
    j["bound"] = r.bound;
    j["side"] = r.side == HalfPlaneSide::GreaterEq ? ">=" : "<=";
  }
  return j;
}

ParamKind kind_from_options(const json& options) {
  const std::string kind = opt_string(options, "kind", "admittance");
  if (kind == "admittance") return ParamKind::Admittance;
  if (kind == "scattering") return ParamKind::Scattering;
  throw ValidationError("options: kind must be 'admittance' or 'scattering'");
}

}  // namespace

std::string run_verify(const std::string& kernel_json, const std::string& params_json,
                       const json& options) {
  const Kernel k = kernel_from_json(kernel_json);
  const Params p = params_from_json(params_json);
  const double tol = opt_number(options, "tol", kDefaultFalsifyTol);
  const int horizon_count = static_cast<int>(opt_number(options, "horizons", 17));
  const double t0 = opt_number(options, "causality_t0", 0.0);

  const std::vector<TestFunction> corpus = default_corpus();
  Verdict v;
  if (horizon_count == 17) {
    v = falsify(k, p, corpus, {}, tol);
  } else {
    // Horizon grids are per-probe; a non-default density means one falsify
    // call per probe with its own grid.
    Verdict acc;
    acc.min_residual = inf();
    for (const auto& phi : corpus) {
      std::vector<double> grid = default_horizons(phi, horizon_count);
      const TestFunction one[] = {phi};
      Verdict vi = falsify(k, p, one, grid, tol);
      acc.evaluations += vi.evaluations;
      for (auto& f : vi.numeric_failures) acc.numeric_failures.push_back(f);
      if (vi.evaluations > 0 && vi.min_residual < acc.min_residual) {
        acc.min_residual = vi.min_residual;
        acc.witness = vi.witness;
      }
    }
    if (acc.evaluations == 0) acc.min_residual = 0.0;
    acc.falsified = acc.min_residual < -tol;
    v = acc;
  }

  // Causality: bump probes shifted to start exactly at t0.
  std::vector<TestFunction> shifted;
  for (const auto& phi : default_bump_corpus())
    shifted.push_back(phi.shifted(t0 - phi.left()));
  const CausalityResult causal = causality_check(k, t0, shifted, tol);

  const double slb = support_lower_bound(k);

  json results;
  results["verdict"] = v.falsified ? "falsified" : "not-falsified";
  results["min_residual"] = v.min_residual;
  results["witness"] = v.witness ? witness_to_json(*v.witness) : json(nullptr);
  results["evaluations"] = v.evaluations;
  results["corpus_size"] = corpus.size();
  results["tol"] = tol;
  results["causal"] = causal.causal;
  json violations = json::array();
  for (const auto& viol : causal.violations)
    violations.push_back({{"testfn", viol.testfn_id},
                          {"xi", viol.xi},
                          {"psi", complex_to_json(viol.psi)}});
  results["causality_violations"] = violations;
  results["support_lower_bound"] = std::isfinite(slb) ? json(slb) : json("+inf");
  results["tempered"] = k.is_tempered();
  results["params"] = params_to_json(p);

  json inputs = inputs_block(options);
  inputs["kernel_digest"] = kernel_digest(k);
  json warnings = json::array();
  for (const auto& f : v.numeric_failures) warnings.push_back(f);
  return dump_report(report_envelope("verify", inputs, results, warnings));
}

SweepOutput run_sweep(const std::string& kernel_json, const std::string& params_json,
                      const json& options) {
  const Kernel k = kernel_from_json(kernel_json);
  const Params p = params_from_json(params_json);
  const HalfPlaneGrid grid = grid_from_options(options);

  const SweepResult sr = sweep(k, grid, p);

  json results;
  results["points"] = sr.points.size();
  results["skipped"] = sr.skipped;
  results["min_residual"] = sr.argmin >= 0 ? json(sr.min_residual) : json(nullptr);
  if (sr.argmin >= 0) {
    const SweepPoint& best = sr.points[sr.argmin];
    results["argmin"] = json{{"s", complex_to_json(best.s)},
                             {"w", complex_to_json(best.w)},
                             {"residual", best.residual}};
  } else {
    results["argmin"] = json(nullptr);
  }
  results["params"] = params_to_json(p);
  results["tempered"] = k.is_tempered();

  json inputs = inputs_block(options);
  inputs["kernel_digest"] = kernel_digest(k);
  json warnings = json::array();
  if (sr.skipped > 0)
    warnings.push_back(std::to_string(sr.skipped) +
                       " grid points skipped (transform divergent there)");

  SweepOutput out;
  out.csv = sweep_to_csv(sr);
  out.report = dump_report(report_envelope("sweep", inputs, results, warnings));
  return out;
}

ClassifyOutput run_classify(const json& options) {
  const ParamKind kind = kind_from_options(options);
  if (!options.contains("p1") || !options.contains("p2"))
    throw ValidationError("classify: need both parameters");
  const double p1 = options["p1"].get<double>();
  const double p2 = options["p2"].get<double>();

  const Region r = kind == ParamKind::Admittance ? classify_admittance(p1, p2)
                                                 : classify_scattering(p1, p2);

  std::string text = r.shape_name();
  switch (r.shape) {
    case RegionShape::HalfPlane:
      text += std::string(" Re ") + (r.side == HalfPlaneSide::GreaterEq ? ">= " : "<= ") +
              format_double(r.bound);
      break;
    case RegionShape::Disk:
    case RegionShape::DiskComplement:
      text += " center " + format_complex(r.center) + " radius " + format_double(r.radius);
      break;
    case RegionShape::Point:
      text += " at " + format_complex(r.center);
      break;
    default:
      break;
  }
  text += " (case " + r.case_label() + ")";

  json results = region_to_json(r);
  results["kind"] = kind == ParamKind::Admittance ? "admittance" : "scattering";
  results["p1"] = p1;
  results["p2"] = p2;

  ClassifyOutput out;
  out.text = text;
  if (opt_flag(options, "svg")) {
    const std::string label = (kind == ParamKind::Admittance ? "c=" : "F=") +
                              format_double(p1) +
                              (kind == ParamKind::Admittance ? " d=" : " G=") +
                              format_double(p2);
    out.svg = region_svg(r, label);
  }
  out.report =
      dump_report(report_envelope("classify", inputs_block(options), results, json::array()));
  return out;
}

std::string run_fit(const std::string& samples_csv, const json& options) {
  const std::vector<TransferSample> samples = samples_from_csv(samples_csv);
  const ParamKind kind = kind_from_options(options);
  const int N = static_cast<int>(opt_number(options, "N", 0));

  Box box;
  if (options.contains("box")) {
    const json& b = options["box"];
    if (!b.is_array() || b.size() != 2)
      throw ValidationError("options: 'box' must be [lo, hi]");
    box.lo = b[0].get<double>();
    box.hi = b[1].get<double>();
  }
  FitObjective obj = FitObjective::MaxMargin;
  const std::string obj_name = opt_string(options, "objective", "margin");
  if (obj_name == "c0")
    obj = FitObjective::MaxC0ZeroD;
  else if (obj_name == "d0")
    obj = FitObjective::MaxD0;
  else if (obj_name != "margin")
    throw ValidationError("options: objective must be margin, c0 or d0");

  const ConstraintSet cs = build_constraints(samples, N, kind);
  const FitResult fit = fit_max_margin(cs, box, obj);

  json results;
  results["status"] = fit.status == FitStatus::Optimal
                          ? "optimal"
                          : (fit.status == FitStatus::Infeasible ? "infeasible"
                                                                 : "degenerate");
  results["margin"] = fit.margin;
  results["objective"] = obj_name;
  results["objective_value"] = fit.objective;
  results["box"] = json::array({box.lo, box.hi});
  results["box_active"] = fit.box_active;
  results["active_rows"] = fit.active_rows;
  std::vector<double> first(fit.x.begin(), fit.x.begin() + (N + 1));
  std::vector<double> second(fit.x.begin() + (N + 1), fit.x.end());
  if (kind == ParamKind::Admittance)
    results["params"] = json{{"kind", "admittance"}, {"N", N}, {"c", first}, {"d", second}};
  else
    results["params"] = json{{"kind", "scattering"}, {"N", N}, {"F", first}, {"G", second}};
  results["samples"] = samples.size();

  json warnings = json::array();
  if (fit.status == FitStatus::Degenerate)
    warnings.push_back("no samples: every parameter vector is feasible");
  if (fit.box_active)
    warnings.push_back("solution clipped by the parameter box");

  if (opt_flag(options, "oracle")) {
    if (N != 0) throw ValidationError("fit: --oracle requires N = 0");
    OracleGrid og;
    og.lo1 = og.lo2 = std::max(box.lo, -2.0);
    og.hi1 = og.hi2 = std::min(box.hi, 2.0);
    og.step = opt_number(options, "oracle_step", 1e-3);
    const OracleResult oracle = brute_force_oracle(cs, og);
    const bool lp_in_cell =
        fit.status == FitStatus::Optimal && oracle.cell_near(fit.x[0], fit.x[1]);
    double coeff_norm = 0.0;
    for (const auto& row : cs.rows)
      coeff_norm = std::max(coeff_norm, std::abs(row[0]) + std::abs(row[1]));
    const double slack = og.step * std::max(1.0, coeff_norm);
    results["oracle"] = json{
        {"grid", json::array({og.lo1, og.hi1, og.lo2, og.hi2, og.step})},
        {"feasible_cells", oracle.feasible_count},
        {"best_margin", oracle.best_margin},
        {"best_cell", json::array({oracle.best_x1, oracle.best_x2})},
        {"lp_point_in_feasible_cell", lp_in_cell},
        {"margin_agreement",
         std::abs(oracle.best_margin - fit.margin) <= slack}};
  }

  return dump_report(report_envelope("fit", inputs_block(options), results, warnings));
}

ConvertOutput run_convert(const std::string& samples_csv, const json& options) {
  const std::vector<TransferSample> samples = samples_from_csv(samples_csv);
  const std::string dir_name = opt_string(options, "direction", "adm2scat");
  ConvertDirection dir;
  if (dir_name == "adm2scat")
    dir = ConvertDirection::AdmToScat;
  else if (dir_name == "scat2adm")
    dir = ConvertDirection::ScatToAdm;
  else
    throw ValidationError("options: direction must be adm2scat or scat2adm");
  const double tol = opt_number(options, "tol", kDefaultPoleTol);

  const ConversionReport conv = convert_samples(samples, dir, tol);

  json results;
  results["direction"] = dir_name;
  results["input_samples"] = samples.size();
  results["converted"] = conv.samples.size();
  results["excluded"] = conv.pole_warnings.size();
  json poles = json::array();
  for (const auto& pw : conv.pole_warnings)
    poles.push_back({{"index", pw.index},
                     {"s", complex_to_json(pw.s)},
                     {"w", complex_to_json(pw.w)}});
  results["pole_warnings"] = poles;
  results["pole_tol"] = tol;

  json warnings = json::array();
  if (!conv.pole_warnings.empty())
    warnings.push_back(std::to_string(conv.pole_warnings.size()) +
                       " samples within pole tolerance of w = -1 were excluded");

  ConvertOutput out;
  out.csv = samples_to_csv(conv.samples);
  out.report = dump_report(report_envelope("convert", inputs_block(options), results, warnings));
  return out;
}

std::string run_plot(const json& options) {
  (void)options;
  return admittance_grid_svg(default_taxonomy_panels());
}

}  // namespace pseudopass
