#include "modchar/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "modchar/error.hpp"

namespace modchar {
namespace {

Json complex_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json double_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::vector<double> geometric_grid(std::uint64_t x_max, double ratio) {
  std::vector<double> out;
  for (auto x : make_checkpoints(CheckpointRule{CheckpointRule::Kind::Geometric, ratio, 1}, x_max)) {
    out.push_back(static_cast<double>(x));
  }
  return out;
}

Json series_summary(const PartialSumSeries& s) {
  Json j;
  j["digest"] = s.digest;
  j["x_max"] = s.x_max;
  j["checkpoints"] = s.checkpoints.size();
  j["exact_integer_accumulator"] = s.exact;
  double max_abs = 0.0;
  for (double w : s.window_max_abs) max_abs = std::max(max_abs, w);
  j["final_sum"] = complex_json(s.sums.back());
  if (s.exact) j["final_sum_exact"] = s.exact_sums.back();
  j["max_abs_partial_sum"] = max_abs;
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string partial_sums_csv(const PartialSumSeries& series) {
  std::string out = "x,re_sum,im_sum\n";
  for (std::size_t i = 0; i < series.checkpoints.size(); ++i) {
    out += std::to_string(series.checkpoints[i]) + "," + format_double(series.sums[i].real()) + "," +
           format_double(series.sums[i].imag()) + "\n";
  }
  return out;
}

std::string riesz_csv(const RieszRecord& record) {
  std::string out = "x,k,re_value,im_value\n";
  for (std::size_t c = 0; c < record.checkpoints.size(); ++c) {
    for (std::size_t o = 0; o < record.orders.size(); ++o) {
      out += format_double(record.checkpoints[c]) + "," + std::to_string(record.orders[o]) + "," +
             format_double(record.values[o][c].real()) + "," + format_double(record.values[o][c].imag()) + "\n";
    }
  }
  return out;
}

std::string pole_series_csv(const PoleSeriesTrace& trace) {
  std::string out = "n,term,partial_sum\n";
  for (const auto& r : trace.rows) {
    out += std::to_string(r.n) + "," + format_double(r.term) + "," + format_double(r.partial_sum) + "\n";
  }
  return out;
}

std::string gnuplot_script(const std::string& title, const std::string& partial_sums_file,
                           const std::string& riesz_file) {
  std::ostringstream g;
  g << "set datafile separator ','\n"
    << "set key top left\n"
    << "set logscale x\n"
    << "set xlabel 'x'\n"
    << "set ylabel 'M_f(x)'\n"
    << "set title '" << title << "'\n"
    << "plot '" << partial_sums_file << "' using 1:2 every ::1 with lines lc rgb 'blue' title 'Re M_f(x)'\n";
  if (!riesz_file.empty()) {
    g << "pause -1\n"
      << "set ylabel 'Riesz mean'\n"
      << "plot '" << riesz_file << "' using 1:3 every ::1 with lines title 'Re R_k(x)'\n";
  }
  return g.str();
}

Json describe_json(const ModifiedCharacter& mc) {
  const Character& chi = mc.base();
  Json j;
  j["character"] = {{"modulus", chi.modulus()},
                    {"exponents", chi.exponents()},
                    {"label", chi.label()},
                    {"parity", chi.parity()},
                    {"conductor", chi.conductor()},
                    {"primitive", chi.is_primitive()},
                    {"order", chi.order()}};
  j["S"] = Json::array();
  for (const auto& m : mc.modifications()) {
    j["S"].push_back({{"p", m.prime}, {"f", m.value.to_string()}, {"chi", chi.value(m.prime).to_string()}});
  }
  j["T"] = mc.T();
  j["N"] = mc.N();
  j["trusted"] = mc.trusted();
  j["warnings"] = mc.warnings();
  j["digest"] = mc.digest();
  return j;
}

Json leading_coefficient_json(const LeadingCoefficient& lc) {
  Json j;
  j["N"] = lc.N;
  j["k"] = lc.k;
  j["T"] = lc.T;
  j["pole_order"] = lc.pole_order;
  j["c_chi"] = complex_json(lc.c_chi);
  if (!lc.c_chi_exact.empty()) j["c_chi_exact"] = lc.c_chi_exact;
  j["factors"] = Json::array();
  for (const auto& f : lc.factors) {
    j["factors"].push_back({{"p", f.prime},
                            {"group", to_string(f.group)},
                            {"f", f.f.to_string()},
                            {"chi", f.chi.to_string()},
                            {"value", complex_json(f.value)}});
  }
  j["a_N_plus_k"] = complex_json(lc.value);
  j["effective_degree"] = lc.effective_degree;
  j["effective_value"] = complex_json(lc.effective_value);
  j["degree_mismatch"] = lc.degree_mismatch;
  j["trusted"] = lc.trusted;
  j["c_chi_route_gap"] = lc.c_chi_route_gap;
  return j;
}

Json fit_json(const PolyFit& fit) {
  Json j;
  j["degree"] = fit.degree;
  j["u_range"] = {fit.u_min, fit.u_max};
  j["coefficients"] = fit.coefficients;
  j["leading"] = fit.leading;
  j["residual_max"] = fit.residual_max;
  j["residual_rms"] = fit.residual_rms;
  j["condition"] = fit.condition;
  j["instability"] = double_or_null(fit.instability);
  if (fit.theory) {
    j["theory"] = *fit.theory;
    j["ratio_to_theory"] = double_or_null(fit.ratio_to_theory);
    j["gap_to_theory"] = fit.gap_to_theory;
  }
  j["warnings"] = fit.warnings;
  return j;
}

Json growth_json(const GrowthReport& r) {
  Json j;
  j["label"] = r.label;
  j["digest"] = r.digest;
  j["exponent"] = r.exponent;
  j["mode"] = r.mode == GrowthMode::Omega ? "omega" : "upper";
  j["windows"] = r.checkpoints.size();
  j["sup"] = r.sup;
  j["tail_inf"] = r.tail_inf;
  j["verdict"] = to_string(r.verdict);
  return j;
}

Json convergents_json(const ConvergentTable& t) {
  Json j;
  j["p"] = t.p;
  j["q"] = t.q;
  j["bits"] = t.bits;
  j["partial_quotients"] = Json::array();
  for (const auto& a : t.partial_quotients) j["partial_quotients"].push_back(a.get_str());
  j["convergents"] = Json::array();
  for (const auto& c : t.convergents) {
    j["convergents"].push_back({{"h", c.numerator.get_str()},
                                {"b", c.denominator.get_str()},
                                {"error", c.error},
                                {"quality", double_or_null(c.quality)},
                                {"within_dirichlet_bound", c.within_dirichlet_bound}});
  }
  j["truncated"] = t.truncated;
  j["warnings"] = t.warnings;
  return j;
}

Json pole_series_json(const PoleSeriesTrace& t) {
  Json j;
  j["anchor"] = t.anchor;
  j["k"] = t.k;
  j["n_max"] = t.n_max;
  j["total"] = t.total;
  j["max_term"] = t.max_term;
  j["argmax"] = t.argmax;
  j["spike_exponent"] = t.spike_exponent;
  j["last_decade_change"] = t.last_decade_change;
  j["converges"] = t.converges;
  j["tail_estimate"] = double_or_null(t.tail_estimate);
  j["verdict"] = t.verdict;
  j["spikes"] = Json::array();
  for (const auto& s : t.spikes) j["spikes"].push_back({{"n", s.n}, {"factor", s.factor}});
  return j;
}

ReportBundle run_verify(const RunConfig& config, const VerifyOptions& options) {
  ReportBundle bundle;
  bundle.config = config;
  const ModifiedCharacter mc = build_modified(config);
  const std::uint64_t x_max = options.x_max.value_or(config.x_max);
  std::vector<int> orders = options.orders.value_or(resolve_orders(config, mc));
  const RieszOrderThreshold kmin = min_riesz_order(mc, config.gamma);

  Json& r = bundle.report;
  r["describe"] = describe_json(mc);
  r["x_max"] = x_max;
  r["gamma"] = config.gamma;
  r["min_riesz_order"] = {{"k", kmin.k}, {"gamma", kmin.gamma}, {"raw", kmin.raw}, {"note", kmin.note}};
  r["notes"] = config.notes;

  bundle.series = partial_sums(mc, x_max, config.checkpoints, options.sieve);
  r["partial_sums"] = series_summary(bundle.series);

  const PartialSumSeries dyadic = partial_sums(mc, x_max, CheckpointRule{CheckpointRule::Kind::Dyadic, 2.0, 1},
                                               options.sieve);
  r["growth"] = Json::array();
  const auto growth = [&](int exponent, GrowthMode mode) {
    try {
      r["growth"].push_back(growth_json(growth_check(dyadic, exponent, mode)));
    } catch (const Error& e) {
      r["growth"].push_back({{"label", "heuristic"}, {"exponent", exponent}, {"error", e.what()}});
    }
  };
  growth(static_cast<int>(mc.size_S()), GrowthMode::Upper);
  growth(mc.N(), GrowthMode::Omega);

  RieszOptions ropts;
  ropts.sieve = options.sieve;
  bundle.riesz = riesz_means(mc, orders, geometric_grid(x_max, options.riesz_ratio), ropts);
  r["riesz"] = Json::array();
  for (int k : orders) {
    Json entry;
    entry["k"] = k;
    std::optional<double> theory;
    try {
      const LeadingCoefficient lc = leading_coefficient(mc, k);
      entry["leading_coefficient"] = leading_coefficient_json(lc);
      theory = lc.value.real();
    } catch (const Error& e) {
      entry["leading_coefficient"] = {{"error", e.what()}};
    }
    try {
      FitOptions fo;
      fo.theory = theory;
      fo.min_riesz_order = kmin.k;
      const PolyFit fit = fit_riesz_polynomial(*bundle.riesz, k, mc.N(), fo);
      entry["fit"] = fit_json(fit);
      try {
        const double ratio = residual_decade_ratio(fit, *bundle.riesz, k);
        entry["residual_decade_ratio"] = double_or_null(ratio);
        entry["residual_bounded"] = ratio <= 1.5;
      } catch (const Error& e) {
        entry["residual_decade_ratio"] = {{"error", e.what()}};
      }
    } catch (const Error& e) {
      entry["fit"] = {{"error", e.what()}};
    }
    entry["label"] = "heuristic";
    r["riesz"].push_back(entry);
  }
  return bundle;
}

int preset_expected_N(const std::string& name) {
  if (name == "fig1") return 4;
  if (name == "fig2") return 3;
  if (name == "fig3") return 0;
  if (name == "bcc") return 1;
  throw Error(ErrorCode::Config, "unknown preset \"" + name + "\"");
}

ReportBundle run_preset(const std::string& name, const SieveOptions& options) {
  ReportBundle bundle;
  bundle.config = preset_config(name);
  const ModifiedCharacter mc = build_modified(bundle.config);
  bundle.series = partial_sums(mc, bundle.config.x_max, bundle.config.checkpoints, options);
  Json& r = bundle.report;
  r["preset"] = name;
  r["describe"] = describe_json(mc);
  r["N"] = mc.N();
  r["expected_N"] = preset_expected_N(name);
  r["N_matches_caption"] = mc.N() == preset_expected_N(name);
  r["notes"] = bundle.config.notes;
  r["partial_sums"] = series_summary(bundle.series);
  r["growth"] = Json::array();
  const auto growth = [&](int exponent) {
    r["growth"].push_back(growth_json(growth_check(bundle.series, exponent, GrowthMode::Upper)));
  };
  growth(static_cast<int>(mc.size_S()));
  return bundle;
}

std::string emit_report(const ReportBundle& bundle, const std::string& format, const std::string& partial_sums_file) {
  if (format == "json") return bundle.report.dump(2) + "\n";
  if (format == "csv") return partial_sums_csv(bundle.series);
  if (format == "riesz-csv") {
    if (!bundle.riesz) throw Error(ErrorCode::Config, "this report has no Riesz means");
    return riesz_csv(*bundle.riesz);
  }
  if (format == "gnuplot") {
    std::string title = "partial sums";
    if (bundle.report.contains("preset")) title += " (" + bundle.report["preset"].get<std::string>() + ")";
    return gnuplot_script(title, partial_sums_file);
  }
  throw Error(ErrorCode::Config, "unknown report format \"" + format + "\"");
}

void write_outputs(const ReportBundle& bundle, const std::string& base_dir) {
  namespace fs = std::filesystem;
  std::string csv_name = "partial_sums.csv";
  for (const auto& o : bundle.config.outputs) {
    if (o.format == "csv") csv_name = o.path;
  }
  for (const auto& o : bundle.config.outputs) {
    fs::path path = base_dir.empty() ? fs::path(o.path) : fs::path(base_dir) / o.path;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Config, "cannot write " + path.string());
    out << emit_report(bundle, o.format, csv_name);
  }
}

}  // namespace modchar
