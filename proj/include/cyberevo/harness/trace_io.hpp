#pragma once

#include "cyberevo/evo/evolution.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace cyberevo::harness {

inline constexpr std::string_view kTraceColumns = "trial,iteration,side,algorithm,best,mean,episodes_used,wall_time";
inline constexpr std::string_view kSummaryColumns = "algorithm,side,iteration,trials,best,mean";

/// Trace CSV: '#' header lines (schema version plus `header_lines`), the
/// column line, one row per record. Numbers use the shortest exact form.
std::string trace_csv(const evo::FitnessTrace& trace, const std::vector<std::string>& header_lines = {});
evo::FitnessTrace parse_trace_csv(std::string_view text, std::string_view origin = "<trace>");
evo::FitnessTrace read_trace(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct SummaryRow {
    std::string algorithm;
    Side side = Side::Blue;
    int iteration = 0;
    std::size_t trials = 0;
    /// Cross-trial means.
    double best = 0.0;
    double mean = 0.0;

    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

/// Per (algorithm, side, iteration): mean over trials of best and of mean fitness.
std::vector<SummaryRow> summarize(const std::vector<evo::FitnessTrace>& traces);
std::string summary_csv(const std::vector<SummaryRow>& rows);

struct DampeningEntry {
    std::string coevolved;
    std::string one_sided;
    Side side = Side::Blue;
    /// Highest cross-trial mean best fitness over the run.
    double coevolved_best = 0.0;
    double one_sided_best = 0.0;
    bool dampened = false;
};

/// Pairs every coevolution label (`X-C...`) with its one-sided runs
/// (`X-R...` for red, `X-B...` for blue) present in the summary.
std::vector<DampeningEntry> dampening(const std::vector<SummaryRow>& rows);
std::string dampening_report(const std::vector<DampeningEntry>& entries);

} // namespace cyberevo::harness
