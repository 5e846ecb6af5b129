#pragma once

#include <string>
#include <vector>

namespace wmark {

/// Parsed bench configuration (flat key=value file, one `attack=` line per
/// attack spec string).
struct BenchConfig {
    std::string host_path;
    std::string wm_path;
    double alpha = 0.0;
    std::vector<std::string> attack_specs;
    std::string out_dir;
    std::string format = "csv"; // csv | markdown
};

struct BenchRow {
    std::string attack;
    std::string params;
    double psnr_db = 0.0;
    double max_nc = 0.0;
    int best_quadrant = 0;
    bool failed = false;
    std::string error;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::string report;      // full report text, also written to out_dir
    std::string report_path;
    bool ok = false;         // true when every row succeeded
};

BenchConfig parse_bench_config(const std::string& path);

/// Embeds once, then for each attack: attack the watermarked image,
/// extract, and record PSNR(host, attacked) plus the best-quadrant NC
/// against the reference watermark. Rows keep config order; a failing row
/// is recorded and the remaining rows still run.
BenchResult run_bench(const BenchConfig& cfg);

/// Formats a double with 6 significant digits; infinity prints as "inf".
std::string format_g6(double v);

} // namespace wmark
