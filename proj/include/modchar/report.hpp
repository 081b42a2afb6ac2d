#pragma once

// Serialization of results (CSV, JSON, gnuplot) and the end-to-end pipelines
// behind the preset and verify commands.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modchar/analysis.hpp"
#include "modchar/config.hpp"
#include "modchar/diophantine.hpp"
#include "modchar/lfunctions.hpp"

namespace modchar {

/// Fixed 17-significant-digit rendering used by every CSV writer.
std::string format_double(double v);

std::string partial_sums_csv(const PartialSumSeries& series);
std::string riesz_csv(const RieszRecord& record);
std::string pole_series_csv(const PoleSeriesTrace& trace);
std::string gnuplot_script(const std::string& title, const std::string& partial_sums_file,
                           const std::string& riesz_file = "");

Json describe_json(const ModifiedCharacter& mc);
Json leading_coefficient_json(const LeadingCoefficient& lc);
Json fit_json(const PolyFit& fit);
Json growth_json(const GrowthReport& report);
Json convergents_json(const ConvergentTable& table);
Json pole_series_json(const PoleSeriesTrace& trace);

struct ReportBundle {
  RunConfig config;
  Json report;
  PartialSumSeries series;
  std::optional<RieszRecord> riesz;
};

struct VerifyOptions {
  std::optional<std::uint64_t> x_max;
  std::optional<std::vector<int>> orders;
  /// Riesz means are sampled on a geometric grid with this ratio.
  double riesz_ratio = 1.02;
  SieveOptions sieve;
};

ReportBundle run_verify(const RunConfig& config, const VerifyOptions& options = {});

/// Expected N for each preset.
int preset_expected_N(const std::string& name);
ReportBundle run_preset(const std::string& name, const SieveOptions& options = {});

/// format: json, csv (partial sums), riesz-csv or gnuplot.
std::string emit_report(const ReportBundle& bundle, const std::string& format,
                        const std::string& partial_sums_file = "partial_sums.csv");
/// Writes every configured output; relative paths resolve against `base_dir`.
void write_outputs(const ReportBundle& bundle, const std::string& base_dir = "");

}  // namespace modchar
