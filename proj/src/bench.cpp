#include "wmark/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wmark/attacks.hpp"
#include "wmark/metrics.hpp"
#include "wmark/watermark.hpp"

namespace wmark {

std::string format_g6(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& key) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad value for '" + key + "': '" + value + "'");
    }
    if (used != value.size())
        throw std::invalid_argument("bad value for '" + key + "': '" + value + "'");
    return parsed;
}

} // namespace

BenchConfig parse_bench_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");

    BenchConfig cfg;
    bool have_alpha = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value, got '" + text + "'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));

        if (key == "host") {
            cfg.host_path = value;
        } else if (key == "watermark") {
            cfg.wm_path = value;
        } else if (key == "alpha") {
            cfg.alpha = parse_double(value, key);
            have_alpha = true;
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "format") {
            if (value != "csv" && value != "markdown")
                throw std::invalid_argument("format must be csv or markdown, got '" + value + "'");
            cfg.format = value;
        } else if (key == "attack") {
            cfg.attack_specs.push_back(value);
        } else {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        }
    }

    if (cfg.host_path.empty()) throw std::invalid_argument("config missing 'host'");
    if (cfg.wm_path.empty()) throw std::invalid_argument("config missing 'watermark'");
    if (cfg.out_dir.empty()) throw std::invalid_argument("config missing 'out_dir'");
    if (!have_alpha || !(cfg.alpha > 0.0))
        throw std::invalid_argument("alpha must be > 0");
    if (cfg.attack_specs.empty()) throw std::invalid_argument("no attacks configured");
    return cfg;
}

namespace {

std::string render_report(const std::vector<BenchRow>& rows, const std::string& format) {
    std::ostringstream out;
    const bool md = format == "markdown";
    if (md) {
        out << "| attack | params | psnr_db | max_nc | best_quadrant |\n";
        out << "| --- | --- | --- | --- | --- |\n";
    } else {
        out << "attack,params,psnr_db,max_nc,best_quadrant\n";
    }
    for (const auto& row : rows) {
        // keep the params cell comma-free so the csv stays single-token per column
        std::string params = row.params;
        std::replace(params.begin(), params.end(), ',', ';');
        const std::string psnr = row.failed ? "" : format_g6(row.psnr_db);
        const std::string nc = row.failed ? "" : format_g6(row.max_nc);
        const std::string quadrant = row.failed ? "" : std::to_string(row.best_quadrant);
        if (md) {
            out << "| " << row.attack << " | " << params << " | " << psnr << " | " << nc
                << " | " << quadrant << " |\n";
        } else {
            out << row.attack << "," << params << "," << psnr << "," << nc << ","
                << quadrant << "\n";
        }
    }
    return out.str();
}

} // namespace

BenchResult run_bench(const BenchConfig& cfg) {
    if (cfg.attack_specs.empty()) throw std::invalid_argument("no attacks configured");
    if (!(cfg.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");

    const GrayImage host = load_pgm(cfg.host_path);
    const GrayImage wm = load_pgm(cfg.wm_path);
    // one embedding shared by every attack row
    const EmbedResult embedded = embed(host, wm, cfg.alpha);

    BenchResult result;
    result.ok = true;
    for (const std::string& text : cfg.attack_specs) {
        BenchRow row;
        const auto colon = text.find(':');
        row.attack = trim(text.substr(0, colon));
        row.params = colon == std::string::npos ? "" : trim(text.substr(colon + 1));
        try {
            const AttackSpec spec = parse_attack_spec(text);
            const GrayImage attacked = apply_attack(embedded.watermarked, spec);
            row.psnr_db = psnr(host, attacked);
            const ExtractionResult extracted = extract(attacked, embedded.key);
            const BestCandidate best = best_candidate(extracted, wm);
            row.max_nc = best.nc;
            row.best_quadrant = best.quadrant;
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
            result.ok = false;
        }
        result.rows.push_back(std::move(row));
    }

    result.report = render_report(result.rows, cfg.format);
    std::filesystem::create_directories(cfg.out_dir);
    const std::string filename = cfg.format == "markdown" ? "report.md" : "report.csv";
    result.report_path = (std::filesystem::path(cfg.out_dir) / filename).string();
    std::ofstream out(result.report_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report '" + result.report_path + "'");
    out << result.report;
    return result;
}

} // namespace wmark
