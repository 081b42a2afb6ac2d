#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "modchar/analysis.hpp"
#include "modchar/characters.hpp"
#include "modchar/config.hpp"
#include "modchar/diophantine.hpp"
#include "modchar/error.hpp"
#include "modchar/lfunctions.hpp"
#include "modchar/report.hpp"

using namespace modchar;

namespace {

std::uint64_t parse_count(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 1.0) || v != std::floor(v) || v > 1e18) {
    throw Error(ErrorCode::Config, std::string(what) + " must be a positive integer, got \"" + text + "\"");
  }
  return static_cast<std::uint64_t>(v);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error(ErrorCode::Config, "cannot write " + path);
  out << text;
}

std::string cplx(std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.15g %c %.15gi", z.real(), z.imag() < 0 ? '-' : '+', std::fabs(z.imag()));
  return buf;
}

Character character_arg(std::uint64_t modulus, const std::string& label, const std::vector<std::uint64_t>& exps) {
  CharacterSpec spec;
  spec.modulus = modulus;
  spec.exponents = exps;
  if (!label.empty()) spec.label = label;
  if (label.empty() && exps.empty()) throw Error(ErrorCode::Config, "give --label or --exponents");
  return resolve_character(spec);
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::InvalidModulus:
    case ErrorCode::InvalidCharacter:
    case ErrorCode::Primitivity:
    case ErrorCode::InvalidPrime:
    case ErrorCode::InvalidModification:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modchar: modified Dirichlet characters, partial sums, Riesz means and L-values"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: MODCHAR_THREADS or all cores)");
  bool as_json = false;

  // characters list
  auto* characters = app.add_subcommand("characters", "Dirichlet characters");
  auto* chars_list = characters->add_subcommand("list", "List the characters of a modulus");
  characters->require_subcommand(1);
  std::uint64_t list_modulus = 0;
  chars_list->add_option("--modulus", list_modulus, "Modulus q")->required();
  chars_list->add_flag("--json", as_json);

  std::string config_path;
  auto* describe = app.add_subcommand("describe", "Print S, T, N, parity and conductor");
  describe->add_option("config", config_path)->required();
  describe->add_flag("--json", as_json);

  std::string xmax_text, checkpoints_text, out_path;
  auto* simulate = app.add_subcommand("simulate", "Partial sums of f as CSV");
  simulate->add_option("config", config_path)->required();
  simulate->add_option("--xmax", xmax_text, "Largest x (default from config)");
  simulate->add_option("--checkpoints", checkpoints_text, "every:n, geometric:r or dyadic");
  simulate->add_option("--out", out_path, "CSV path (default stdout)");

  std::vector<int> orders;
  double riesz_ratio = 1.02;
  bool normalize = false;
  auto* riesz = app.add_subcommand("riesz", "Riesz means as CSV");
  riesz->add_option("config", config_path)->required();
  riesz->add_option("--k", orders, "Orders (repeatable; default from config)");
  riesz->add_option("--xmax", xmax_text);
  riesz->add_option("--ratio", riesz_ratio, "Geometric checkpoint ratio")->check(CLI::Range(1.000001, 100.0));
  riesz->add_flag("--normalize", normalize, "Divide by k!");
  riesz->add_option("--out", out_path);

  int coeff_k = 0;
  auto* coeff = app.add_subcommand("coeff", "Leading coefficient a_{N+k} with factor breakdown");
  coeff->add_option("config", config_path)->required();
  coeff->add_option("--k", coeff_k)->required()->check(CLI::Range(0, kMaxRieszOrder));
  coeff->add_flag("--json", as_json);

  std::uint64_t lf_modulus = 0;
  std::string lf_label;
  std::vector<std::uint64_t> lf_exps;
  double s_re = 0.5, s_im = 0.0, eps = 1e-10;
  bool special = false;
  auto* lfun = app.add_subcommand("lfun", "L(s, chi) and the functional-equation residual");
  lfun->add_option("--modulus", lf_modulus)->required();
  lfun->add_option("--label", lf_label, "Conrey label q.m");
  lfun->add_option("--exponents", lf_exps);
  lfun->add_option("--s", s_re, "Real part of s");
  lfun->add_option("--t", s_im, "Imaginary part of s");
  lfun->add_option("--eps", eps, "Target accuracy");
  lfun->add_flag("--special", special, "Also print L(0, chi) or L'(0, chi)");
  lfun->add_flag("--json", as_json);

  std::uint64_t dp = 2, dq = 3;
  unsigned depth = 40, bits = 256;
  auto* dioph = app.add_subcommand("dioph", "Continued fraction of log p / log q");
  dioph->add_option("--p", dp)->check(CLI::Range(2ULL, 1ULL << 62));
  dioph->add_option("--q", dq)->check(CLI::Range(2ULL, 1ULL << 62));
  dioph->add_option("--depth", depth)->check(CLI::Range(1u, 200u));
  dioph->add_option("--bits", bits)->check(CLI::Range(128u, 1u << 20));
  dioph->add_flag("--json", as_json);

  double gamma = -1.0;
  auto* kmin = app.add_subcommand("kmin", "Riesz-order threshold");
  kmin->add_option("config", config_path)->required();
  kmin->add_option("--gamma", gamma, "Constant gamma (default from config); not an effective Baker constant");

  std::uint64_t anchor = 0;
  int pole_k = 0;
  std::string nmax_text = "100000";
  auto* poleseries = app.add_subcommand("poleseries", "Trace of the pole series for an anchor prime");
  poleseries->add_option("config", config_path)->required();
  poleseries->add_option("--anchor", anchor)->required();
  poleseries->add_option("--k", pole_k)->required();
  poleseries->add_option("--nmax", nmax_text);
  poleseries->add_option("--out", out_path, "CSV trace path");
  poleseries->add_flag("--json", as_json);

  std::string k_text, out_dir;
  auto* verify = app.add_subcommand("verify", "Full pipeline: N, threshold, sieve, Riesz, fit, growth checks");
  verify->add_option("config", config_path)->required();
  verify->add_option("--xmax", xmax_text);
  verify->add_option("--k", k_text, "auto or a comma-separated list");
  verify->add_option("--ratio", riesz_ratio)->check(CLI::Range(1.000001, 100.0));
  verify->add_option("--out-dir", out_dir, "Write report.json, CSV traces and plot.gp here");

  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "Reproduction presets fig1, fig2, fig3, bcc");
  preset->add_option("name", preset_name)->required()->check(CLI::IsMember(preset_names()));
  preset->add_option("--out-dir", out_dir, "Write report.json, partial_sums.csv and plot.gp here");
  preset->add_flag("--print-config", normalize, "Print the preset configuration instead of running it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  SieveOptions sieve;
  sieve.threads = threads;

  try {
    if (chars_list->parsed()) {
      const auto chars = enumerate_characters(list_modulus);
      if (as_json) {
        Json j = Json::array();
        for (const auto& c : chars) {
          j.push_back({{"label", c.label()},
                       {"exponents", c.exponents()},
                       {"order", c.order()},
                       {"parity", c.parity()},
                       {"conductor", c.conductor()},
                       {"primitive", c.is_primitive()}});
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("%-12s %-16s %6s %7s %10s %9s\n", "label", "exponents", "order", "parity", "conductor", "primitive");
        for (const auto& c : chars) {
          std::string e;
          for (auto x : c.exponents()) e += (e.empty() ? "" : ",") + std::to_string(x);
          std::printf("%-12s %-16s %6llu %7s %10llu %9s\n", c.label().c_str(), ("[" + e + "]").c_str(),
                      static_cast<unsigned long long>(c.order()), c.parity() == 1 ? "even" : "odd",
                      static_cast<unsigned long long>(c.conductor()), c.is_primitive() ? "yes" : "no");
        }
      }
      return 0;
    }

    if (describe->parsed()) {
      const Json d = describe_json(build_modified(load_config(config_path)));
      if (as_json) {
        std::cout << d.dump(2) << "\n";
        return 0;
      }
      std::cout << "character  " << d["character"]["label"].get<std::string>() << "  parity "
                << (d["character"]["parity"].get<int>() == 1 ? "even" : "odd") << "  conductor "
                << d["character"]["conductor"] << "\n";
      std::cout << "S          ";
      for (const auto& m : d["S"]) {
        std::cout << "f(" << m["p"] << ")=" << m["f"].get<std::string>() << " [chi=" << m["chi"].get<std::string>()
                  << "]  ";
      }
      std::cout << "\nT          " << d["T"] << "\nN          " << d["N"] << "\n";
      for (const auto& w : d["warnings"]) std::cout << "warning: " << w.get<std::string>() << "\n";
      return 0;
    }

    if (simulate->parsed()) {
      const RunConfig cfg = load_config(config_path);
      const auto mc = build_modified(cfg);
      const std::uint64_t x = xmax_text.empty() ? cfg.x_max : parse_count(xmax_text, "--xmax");
      const CheckpointRule rule = checkpoints_text.empty() ? cfg.checkpoints : CheckpointRule::parse(checkpoints_text);
      write_text(out_path, partial_sums_csv(partial_sums(mc, x, rule, sieve)));
      return 0;
    }

    if (riesz->parsed()) {
      const RunConfig cfg = load_config(config_path);
      const auto mc = build_modified(cfg);
      const std::uint64_t x = xmax_text.empty() ? cfg.x_max : parse_count(xmax_text, "--xmax");
      if (orders.empty()) orders = resolve_orders(cfg, mc);
      std::vector<double> cps;
      for (auto c : make_checkpoints(CheckpointRule{CheckpointRule::Kind::Geometric, riesz_ratio, 1}, x)) {
        cps.push_back(static_cast<double>(c));
      }
      RieszOptions ro;
      ro.normalize = normalize;
      ro.sieve = sieve;
      write_text(out_path, riesz_csv(riesz_means(mc, orders, cps, ro)));
      return 0;
    }

    if (coeff->parsed()) {
      const auto mc = build_modified(load_config(config_path));
      const LeadingCoefficient lc = leading_coefficient(mc, coeff_k);
      if (as_json) {
        std::cout << leading_coefficient_json(lc).dump(2) << "\n";
        return 0;
      }
      std::printf("N = %d  T = %d  k = %d  degree N+k = %d\n", lc.N, lc.T, lc.k, lc.N + lc.k);
      std::printf("c_chi = %s%s\n", cplx(lc.c_chi).c_str(),
                  lc.c_chi_exact.empty() ? "" : ("  (" + lc.c_chi_exact + ")").c_str());
      std::printf("%-6s %-10s %-12s %-12s %s\n", "p", "group", "f(p)", "chi(p)", "factor");
      for (const auto& f : lc.factors) {
        std::printf("%-6llu %-10s %-12s %-12s %s\n", static_cast<unsigned long long>(f.prime), to_string(f.group),
                    f.f.to_string().c_str(), f.chi.to_string().c_str(), cplx(f.value).c_str());
      }
      std::printf("a_{N+k} = %s\n", cplx(lc.value).c_str());
      if (lc.degree_mismatch) {
        std::printf("note: F vanishes at 0; the Riesz polynomial has degree %d with top coefficient %s\n",
                    lc.effective_degree, cplx(lc.effective_value).c_str());
      }
      if (!lc.trusted) std::printf("note: imprimitive base character, output untrusted\n");
      return 0;
    }

    if (lfun->parsed()) {
      const Character chi = character_arg(lf_modulus, lf_label, lf_exps);
      const LContext ctx(chi, eps);
      const std::complex<double> s(s_re, s_im);
      Json j;
      j["character"] = chi.label();
      j["s"] = {{"re", s_re}, {"im", s_im}};
      const LValue L = L_value(ctx, s);
      j["L"] = {{"re", L.value.real()}, {"im", L.value.imag()}};
      j["error_bound"] = L.error_bound;
      if (chi.is_primitive() && !chi.is_principal()) {
        const auto fe = functional_equation_check(ctx, s);
        j["root_number"] = {{"re", fe.root_number.real()}, {"im", fe.root_number.imag()}};
        j["functional_equation_residual"] = fe.residual;
      }
      if (special) {
        if (chi.parity() == -1) {
          const L0Exact l0 = L0_exact(chi);
          j["L0_exact"] = l0.to_string();
          j["L0"] = {{"re", l0.numeric.real()}, {"im", l0.numeric.imag()}};
        } else {
          const Lprime0Result d = Lprime0(chi);
          j["Lprime0"] = {{"re", d.value.real()}, {"im", d.value.imag()}};
          j["Lprime0_route_gap"] = d.gap;
        }
      }
      if (as_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("L(%s, %s) = %s  (bound %.3g)\n", cplx(s).c_str(), chi.label().c_str(), cplx(L.value).c_str(),
                    L.error_bound);
        if (j.contains("functional_equation_residual")) {
          std::printf("functional-equation residual = %.3g\n", j["functional_equation_residual"].get<double>());
        }
        if (j.contains("L0_exact")) std::printf("L(0, chi) = %s\n", j["L0_exact"].get<std::string>().c_str());
        if (j.contains("Lprime0")) {
          std::printf("L'(0, chi) = %.15g %+.15gi  (route gap %.3g)\n", j["Lprime0"]["re"].get<double>(),
                      j["Lprime0"]["im"].get<double>(), j["Lprime0_route_gap"].get<double>());
        }
      }
      return 0;
    }

    if (dioph->parsed()) {
      const ConvergentTable t = continued_fraction(dp, dq, depth, bits);
      if (as_json) {
        std::cout << convergents_json(t).dump(2) << "\n";
        return 0;
      }
      std::printf("log %llu / log %llu, %u bits\n", static_cast<unsigned long long>(dp),
                  static_cast<unsigned long long>(dq), t.bits);
      std::printf("%4s %12s %24s %24s %12s %10s\n", "i", "a_i", "h", "b", "|err|", "quality");
      for (std::size_t i = 0; i < t.convergents.size(); ++i) {
        const auto& c = t.convergents[i];
        std::printf("%4zu %12s %24s %24s %12.4e %10.4f\n", i, t.partial_quotients[i].get_str().c_str(),
                    c.numerator.get_str().c_str(), c.denominator.get_str().c_str(), c.error, c.quality);
      }
      for (const auto& w : t.warnings) std::printf("warning: %s\n", w.c_str());
      return 0;
    }

    if (kmin->parsed()) {
      const RunConfig cfg = load_config(config_path);
      const auto mc = build_modified(cfg);
      const auto th = min_riesz_order(mc, gamma > 0 ? gamma : cfg.gamma);
      std::printf("k_min = %d  (gamma = %g, raw %.6f)\n", th.k, th.gamma, th.raw);
      if (!th.note.empty()) std::printf("note: %s\n", th.note.c_str());
      return 0;
    }

    if (poleseries->parsed()) {
      const auto mc = build_modified(load_config(config_path));
      const auto trace = pole_series_diagnostic(mc, anchor, pole_k, parse_count(nmax_text, "--nmax"), sieve);
      if (!out_path.empty()) write_text(out_path, pole_series_csv(trace));
      if (as_json || out_path.empty()) {
        std::cout << pole_series_json(trace).dump(2) << "\n";
      } else {
        std::printf("total %.17g  max term %.6g at n=%llu  %s\n", trace.total, trace.max_term,
                    static_cast<unsigned long long>(trace.argmax), trace.verdict.c_str());
      }
      return 0;
    }

    if (verify->parsed()) {
      const RunConfig cfg = load_config(config_path);
      VerifyOptions vo;
      vo.sieve = sieve;
      vo.riesz_ratio = riesz_ratio;
      if (!xmax_text.empty()) vo.x_max = parse_count(xmax_text, "--xmax");
      if (!k_text.empty() && k_text != "auto") {
        std::vector<int> ks;
        std::stringstream ss(k_text);
        for (std::string item; std::getline(ss, item, ',');) {
          const auto k = parse_count(item.empty() ? "x" : item, "--k");
          if (k > static_cast<std::uint64_t>(kMaxRieszOrder)) throw Error(ErrorCode::Config, "--k above the maximum order");
          ks.push_back(static_cast<int>(k));
        }
        vo.orders = ks;
      } else if (k_text == "auto") {
        RunConfig autocfg = cfg;
        autocfg.orders.reset();
        vo.orders = resolve_orders(autocfg, build_modified(autocfg));
      }
      const ReportBundle b = run_verify(cfg, vo);
      if (!out_dir.empty()) {
        write_text(out_dir + "/report.json", emit_report(b, "json"));
        write_text(out_dir + "/partial_sums.csv", emit_report(b, "csv"));
        write_text(out_dir + "/riesz.csv", emit_report(b, "riesz-csv"));
        write_text(out_dir + "/plot.gp", gnuplot_script("verify", "partial_sums.csv", "riesz.csv"));
      }
      write_outputs(b);
      std::cout << emit_report(b, "json");
      return 0;
    }

    if (preset->parsed()) {
      if (normalize) {
        std::cout << serialize_config(preset_config(preset_name));
        return 0;
      }
      const ReportBundle b = run_preset(preset_name, sieve);
      if (!out_dir.empty()) {
        write_text(out_dir + "/report.json", emit_report(b, "json"));
        write_text(out_dir + "/partial_sums.csv", emit_report(b, "csv"));
        write_text(out_dir + "/plot.gp", emit_report(b, "gnuplot"));
      }
      std::cout << emit_report(b, "json");
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
