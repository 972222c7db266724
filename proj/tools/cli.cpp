#include "cli.hpp"

#include "recip/census.hpp"
#include "recip/equidist.hpp"
#include "recip/lowlying.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace recip::cli {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "recip.summary.v1";

struct Common {
  std::string group = "psl2z";
  std::string out;
  std::string format = "both";
  int threads = 1;
  std::size_t max_points = 50'000'000;
  double max_seconds = 0.0;
  std::uint64_t seed = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class Scalar>
std::string scalar_text(const Scalar& v) {
  if constexpr (is_exact_v<Scalar>) {
    return v.str();
  } else {
    return fmt(v);
  }
}

template <class Scalar>
json scalar_json(const Scalar& v) {
  if constexpr (is_exact_v<Scalar>) {
    return v.str();
  } else {
    return number(v);
  }
}

OrbitOptions orbit_options(const Common& c) {
  OrbitOptions o;
  o.threads = c.threads;
  o.max_points = c.max_points;
  if (c.max_seconds > 0.0)
    o.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(c.max_seconds));
  return o;
}

json common_config(const std::string& command, const Common& c) {
  return {{"command", command}, {"group", c.group},           {"threads", c.threads},
          {"max_points", c.max_points}, {"max_seconds", c.max_seconds}, {"seed", c.seed},
          {"out", c.out},               {"format", c.format}};
}

json summary_head(const json& config) {
  return {{"schema", kSchema}, {"command", config.at("command")}, {"status", "complete"}, {"config", config}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("out", "cannot write '" + path + "'");
  f << text;
}

void emit(const Common& c, const json& summary, const std::vector<std::pair<std::string, std::string>>& csvs,
          std::ostream& out) {
  const std::string text = summary.dump(2) + "\n";
  if (!c.out.empty()) {
    if (c.format != "json")
      for (const auto& [suffix, body] : csvs) write_file(c.out + suffix + ".csv", body);
    if (c.format != "csv") write_file(c.out + ".json", text);
  }
  out << text;
}

AnyGroupSpec resolve_group(const std::string& name) {
  if (name == "psl2z" || name == "triangle237") return builtin_group(name);
  return load_group(name);
}

Point<Rational> parse_point(const std::string& text, const std::string& field) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError(field + ": expected x,y");
  try {
    return Point<Rational>(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
  } catch (const Error& e) {
    throw UsageError(field + ": " + e.what());
  }
}

template <class Scalar>
Point<Scalar> convert_point(const Point<Rational>& p) {
  if constexpr (is_exact_v<Scalar>) {
    return p;
  } else {
    return to_floating(p);
  }
}

template <class Scalar>
std::string completeness(const GroupSpec<Scalar>& spec) {
  if constexpr (is_exact_v<Scalar>) {
    if (is_full_modular(spec)) return "proven";
    const auto& p = spec.involution_classes.front().fixed_point;
    if (modular_filter_applies(spec, p, p)) return "proven";
  }
  return "validated, not proven";
}

constexpr const char* kCaveat =
    "classes are counted relative to the declared involution classes; completeness of that list is not verified";

// ---------------------------------------------------------------- census

struct CensusArgs {
  double L = 0.0;
  std::string max_trace;
  bool primitive = false;
};

template <class Scalar>
json run_census(const GroupSpec<Scalar>& spec, const CensusArgs& a, const Common& c, json config,
                std::vector<std::pair<std::string, std::string>>& csvs) {
  std::optional<Rational> X;
  if (!a.max_trace.empty()) {
    try {
      X = parse_rational(a.max_trace);
    } catch (const Error& e) {
      throw UsageError(std::string("--max-trace: ") + e.what());
    }
    if (!(*X > 2)) throw UsageError("--max-trace must exceed 2");
  }
  const Radius radius = X ? Radius::from_trace(*X) : Radius::from_length(a.L);
  const auto cen = census(spec, radius, orbit_options(c));

  std::ostringstream csv;
  csv << "key,length,trace,maximal,fiber_count,sigma_idx,sigmabar_idx\n";
  std::size_t reported = 0;
  for (const auto& cls : cen.classes) {
    if (a.primitive && !cls.maximal) continue;
    ++reported;
    csv << cls.key << ',' << fmt(cls.length) << ',' << scalar_text(cls.trace) << ','
        << (cls.maximal ? "true" : "false") << ',' << cls.fiber_count << ',' << cls.sigma_idx << ','
        << cls.sigmabar_idx << '\n';
  }
  csvs.emplace_back("", csv.str());

  const double L = radius.length();
  const auto bounds = census_bounds(cen);
  json s = summary_head(config);
  s["group"] = spec.name;
  s["mode"] = std::string(to_string(spec.mode));
  s["L"] = number(L);
  if (X) s["max_trace"] = X->str();
  s["primitive_only"] = a.primitive;
  s["count"] = reported;
  s["class_count"] = cen.classes.size();
  s["maximal_count"] = cen.maximal_count();
  s["raw_preimages"] = cen.raw_preimages;
  s["bounds"] = {{"lower", number(bounds.lower)}, {"upper", bounds.upper}, {"maximal_upper", number(bounds.maximal_upper)}};
  s["approximate"] = cen.approximate;
  s["near_ties"] = cen.near_ties;
  s["orbit_completeness"] = completeness(spec);
  s["caveat"] = kCaveat;
  if (spec.is_lattice()) {
    const auto C = constant_C(spec);
    s["C"] = C.square_form.str();
    s["slope"] = C.slope->str();
    const double slope = C.slope->template convert_to<double>();
    s["ratio"] = number(static_cast<double>(reported) / (slope * std::exp(L)));
    if (X) s["trace_ratio"] = number(static_cast<double>(reported) / (slope * X->template convert_to<double>()));
  }
  return s;
}

// ---------------------------------------------------------------- delsarte

struct DelsarteArgs {
  double R = 0.0;
  std::string p, q;
  double curve_step = 0.5;
};

template <class Scalar>
json run_delsarte(const GroupSpec<Scalar>& spec, const DelsarteArgs& a, const Common& c, json config,
                  std::vector<std::pair<std::string, std::string>>& csvs) {
  if (!spec.is_lattice() && !spec.covolume) throw ValidationError("group", "Delsarte prediction needs a lattice");
  const Point<Scalar> base = spec.involution_classes.front().fixed_point;
  const Point<Scalar> p = a.p.empty() ? base : convert_point<Scalar>(parse_point(a.p, "--p"));
  const Point<Scalar> q = a.q.empty() ? base : convert_point<Scalar>(parse_point(a.q, "--q"));
  const auto pts = orbit_ball(spec, p, q, a.R, false, orbit_options(c));
  std::vector<double> lengths;
  for (const auto& op : pts) lengths.push_back(op.length());
  std::vector<double> radii;
  for (double r = a.curve_step; r < a.R - 1e-9; r += a.curve_step) radii.push_back(r);
  radii.push_back(a.R);
  const auto curve = count_curve(lengths, radii);
  std::ostringstream csv;
  csv << "L,count\n";
  for (const auto& [L, n] : curve) csv << fmt(L) << ',' << n << '\n';
  csvs.emplace_back("", csv.str());

  const int stab = stabilizer_order(spec, p);
  const double predicted = ball_volume(a.R) / (stab * spec.covolume_value());
  json s = summary_head(config);
  s["group"] = spec.name;
  s["mode"] = std::string(to_string(spec.mode));
  s["R"] = a.R;
  s["count"] = pts.size();
  s["predicted"] = number(predicted);
  s["ratio"] = number(static_cast<double>(pts.size()) / predicted);
  s["stab_order"] = stab;
  s["covolume"] = number(spec.covolume_value());
  s["orbit_completeness"] = completeness(spec);
  return s;
}

// ---------------------------------------------------------------- constant

template <class Scalar>
json run_constant(const GroupSpec<Scalar>& spec, json config, std::vector<std::pair<std::string, std::string>>& csvs) {
  const auto C = constant_C(spec);
  json s = summary_head(config);
  s["group"] = spec.name;
  s["C"] = C.square_form.str();
  s["C_double_sum"] = C.double_sum_form.str();
  s["C_value"] = number(C.square_value);
  s["forms_agree"] = C.square_form == C.double_sum_form;
  std::ostringstream csv;
  csv << "form,value\nsquare," << C.square_form.str() << "\ndouble_sum," << C.double_sum_form.str() << '\n';
  if (C.slope) {
    s["slope"] = C.slope->str();
    csv << "slope," << C.slope->str() << '\n';
  } else {
    s["slope"] = nullptr;
  }
  csvs.emplace_back("", csv.str());
  return s;
}

// ---------------------------------------------------------------- lowlying

struct LowLyingArgs {
  std::vector<int> ks{1, 2, 3};
  double L = 0.0;
  std::string window;
  double height_step = 0.05;
};

json run_lowlying(const LowLyingArgs& a, const Common& c, json config,
                  std::vector<std::pair<std::string, std::string>>& csvs) {
  LowLyingOptions opt;
  opt.orbit = orbit_options(c);
  opt.height_step = a.height_step;
  if (!a.window.empty()) {
    double lo = 0, hi = 0;
    char comma = 0;
    std::istringstream is(a.window);
    if (!(is >> lo >> comma >> hi) || comma != ',' || !(lo < hi)) throw UsageError("--window: expected lo,hi");
    opt.window = std::make_pair(lo, hi);
  }
  std::ostringstream csv;
  csv << "k,L,class_count,height_bound,delta_hat\n";
  json reports = json::array();
  std::vector<int> ks = a.ks;
  std::sort(ks.begin(), ks.end());
  for (int k : ks) {
    if (k < 1) throw UsageError("--k values must be at least 1");
    const auto r = lowlying_census(k, a.L, opt);
    csv << r.k << ',' << fmt(r.L) << ',' << r.class_count << ',' << fmt(r.height_bound) << ','
        << (r.delta_hat ? fmt(*r.delta_hat) : std::string("nan")) << '\n';
    reports.push_back({{"k", r.k},
                       {"L", r.L},
                       {"class_count", r.class_count},
                       {"gamma_k_class_count", r.gamma_k_class_count},
                       {"height_bound", number(r.height_bound)},
                       {"delta_hat", r.delta_hat ? number(*r.delta_hat) : json(nullptr)},
                       {"orbit_points", r.orbit_points}});
  }
  csvs.emplace_back("", csv.str());
  json s = summary_head(config);
  s["group"] = "gamma_k";
  s["L"] = a.L;
  s["reports"] = reports;
  s["orbit_completeness"] = "proven";
  return s;
}

// ---------------------------------------------------------------- equidist

struct EquidistArgs {
  std::vector<double> Ls;
  std::string bins = "12x12x8";
  double step = 0.02;
  std::string orientation = "forward";
  std::string measure = "mu";
  std::string x = "0,1", y = "0,1";
  double y_max = 10.0;
};

json run_equidist(const EquidistArgs& a, const Common& c, json config,
                  std::vector<std::pair<std::string, std::string>>& csvs) {
  if (c.group != "psl2z") throw UsageError("equidist supports only --group psl2z");
  EquidistOptions opt;
  try {
    opt.grid = parse_grid(a.bins);
    opt.orientation = parse_orientation(a.orientation);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  opt.grid.y_max = a.y_max;
  opt.step = a.step;
  opt.orbit = orbit_options(c);
  const Point<Rational> x = parse_point(a.x, "--x"), y = parse_point(a.y, "--y");
  std::vector<double> Ls = a.Ls;
  std::sort(Ls.begin(), Ls.end());
  json runs = json::array();
  for (double L : Ls) {
    const Histogram3D h = a.measure == "segment" ? segment_histogram(x, y, L, opt) : mu_L_histogram(L, opt);
    std::ostringstream csv;
    csv << "x_lo,x_hi,y_lo,y_hi,ang_lo,ang_hi,mass,ref_mass\n";
    for (const auto& b : h.bins)
      csv << fmt(b.x_lo) << ',' << fmt(b.x_hi) << ',' << fmt(b.y_lo) << ',' << (b.cusp ? "inf" : fmt(b.y_hi)) << ','
          << fmt(b.ang_lo) << ',' << fmt(b.ang_hi) << ',' << fmt(b.mass) << ',' << fmt(b.ref_mass) << '\n';
    std::ostringstream suffix;
    if (Ls.size() > 1) suffix << "_L" << L;
    csvs.emplace_back(suffix.str(), csv.str());
    runs.push_back({{"L", L},
                    {"total_mass", number(h.total_mass)},
                    {"discrepancy", h.total_mass > 0 ? number(discrepancy(h)) : json(nullptr)}});
  }
  json s = summary_head(config);
  s["group"] = "psl2z";
  s["measure"] = a.measure;
  s["runs"] = runs;
  s["L"] = runs.back()["L"];
  s["total_mass"] = runs.back()["total_mass"];
  s["discrepancy"] = runs.back()["discrepancy"];
  return s;
}

int default_threads() {
  const char* env = std::getenv("RECIP_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw UsageError("RECIP_THREADS must be a positive integer");
  return static_cast<int>(v);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Common common;
  try {
    common.threads = default_threads();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App app{"Reciprocal geodesics and dihedral subgroup counting for Fuchsian groups", "recip"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub, bool with_group) {
    if (with_group) sub->add_option("--group", common.group, "psl2z, triangle237 or a group spec file");
    sub->add_option("--out", common.out, "output prefix for PREFIX.csv and PREFIX.json");
    sub->add_option("--format", common.format, "files to write")->check(CLI::IsMember({"csv", "json", "both"}));
    sub->add_option("--threads", common.threads, "worker threads (default $RECIP_THREADS or 1)")
        ->check(CLI::Range(1, 1024));
    sub->add_option("--max-points", common.max_points, "orbit point budget")->check(CLI::PositiveNumber);
    sub->add_option("--max-seconds", common.max_seconds, "time budget, 0 for none")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", common.seed, "seed recorded for randomized validation");
  };

  CensusArgs census_args;
  auto* census_cmd = app.add_subcommand("census", "dihedral census by length or trace");
  add_common(census_cmd, true);
  auto* opt_L = census_cmd->add_option("--L", census_args.L, "length bound")->check(CLI::PositiveNumber);
  auto* opt_X = census_cmd->add_option("--max-trace", census_args.max_trace, "trace bound X > 2 (p/q allowed)");
  opt_L->excludes(opt_X);
  census_cmd->add_flag("--primitive", census_args.primitive, "count maximal classes only");

  DelsarteArgs del_args;
  auto* del_cmd = app.add_subcommand("delsarte", "orbit count against the Delsarte prediction");
  add_common(del_cmd, true);
  del_cmd->add_option("--R", del_args.R, "ball radius")->required()->check(CLI::PositiveNumber);
  del_cmd->add_option("--p", del_args.p, "orbit base point x,y (default first involution fixed point)");
  del_cmd->add_option("--q", del_args.q, "ball center x,y (default first involution fixed point)");
  del_cmd->add_option("--curve-step", del_args.curve_step, "radius spacing of the count curve")
      ->check(CLI::PositiveNumber);

  LowLyingArgs low_args;
  auto* low_cmd = app.add_subcommand("lowlying", "dihedral classes of the subgroups Gamma_k");
  add_common(low_cmd, false);
  low_cmd->add_option("--k", low_args.ks, "one or more k >= 1")->delimiter(',');
  low_cmd->add_option("--L", low_args.L, "length bound")->required()->check(CLI::PositiveNumber);
  low_cmd->add_option("--window", low_args.window, "fit window lo,hi (default L-4,L)");
  low_cmd->add_option("--height-step", low_args.height_step, "axis sample spacing")->check(CLI::PositiveNumber);

  EquidistArgs eq_args;
  auto* eq_cmd = app.add_subcommand("equidist", "histograms of mu_L or arc measures against Liouville");
  add_common(eq_cmd, true);
  eq_cmd->add_option("--L", eq_args.Ls, "one or more length bounds")->required()->check(CLI::PositiveNumber);
  eq_cmd->add_option("--bins", eq_args.bins, "grid NXxNYxNA");
  eq_cmd->add_option("--step", eq_args.step, "arc-length step")->check(CLI::Range(1e-6, 0.1));
  eq_cmd->add_option("--orientation", eq_args.orientation)->check(CLI::IsMember({"forward", "reverse", "symmetric"}));
  eq_cmd->add_option("--measure", eq_args.measure)->check(CLI::IsMember({"mu", "segment"}));
  eq_cmd->add_option("--x", eq_args.x, "segment measure orbit point x,y");
  eq_cmd->add_option("--y", eq_args.y, "segment measure base point x,y");
  eq_cmd->add_option("--y-max", eq_args.y_max, "cusp cutoff height")->check(CLI::Range(1.0001, 1e6));

  auto* const_cmd = app.add_subcommand("constant", "the counting constant C and its slope");
  add_common(const_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  json config = common_config(command, common);
  std::vector<std::pair<std::string, std::string>> csvs;
  try {
    json summary;
    if (command == "census") {
      if (census_args.max_trace.empty() && !(census_args.L > 0))
        throw UsageError("census needs --L or --max-trace");
      config["L"] = census_args.L > 0 ? json(census_args.L) : json(nullptr);
      config["max_trace"] = census_args.max_trace.empty() ? json(nullptr) : json(census_args.max_trace);
      config["primitive"] = census_args.primitive;
      const auto spec = resolve_group(common.group);
      summary = std::visit([&](const auto& s) { return run_census(s, census_args, common, config, csvs); }, spec);
    } else if (command == "delsarte") {
      config["R"] = del_args.R;
      config["p"] = del_args.p;
      config["q"] = del_args.q;
      config["curve_step"] = del_args.curve_step;
      const auto spec = resolve_group(common.group);
      summary = std::visit([&](const auto& s) { return run_delsarte(s, del_args, common, config, csvs); }, spec);
    } else if (command == "constant") {
      const auto spec = resolve_group(common.group);
      summary = std::visit([&](const auto& s) { return run_constant(s, config, csvs); }, spec);
    } else if (command == "lowlying") {
      config["k"] = low_args.ks;
      config["L"] = low_args.L;
      config["window"] = low_args.window;
      config["height_step"] = low_args.height_step;
      summary = run_lowlying(low_args, common, config, csvs);
    } else {
      config["L"] = eq_args.Ls;
      config["bins"] = eq_args.bins;
      config["step"] = eq_args.step;
      config["orientation"] = eq_args.orientation;
      config["measure"] = eq_args.measure;
      config["x"] = eq_args.x;
      config["y"] = eq_args.y;
      config["y_max"] = eq_args.y_max;
      summary = run_equidist(eq_args, common, config, csvs);
    }
    emit(common, summary, csvs, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    json s = summary_head(config);
    s["status"] = "incomplete";
    s["message"] = e.what();
    try {
      emit(common, s, {}, out);
    } catch (const Error&) {
    }
    err << "incomplete: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }
}

}  // namespace recip::cli
