// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Thresholds and tolerances are pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "support/temp_dir.hpp"
#include "wmark/attacks.hpp"
#include "wmark/bench.hpp"
#include "wmark/metrics.hpp"
#include "wmark/samples.hpp"
#include "wmark/transforms.hpp"
#include "wmark/watermark.hpp"

using namespace wmark;

namespace {

int g_failures = 0;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int criterion, const char* name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("criterion %d: %s  %s (%s) [%.2f s]\n", criterion,
                pass ? "PASS" : "FAIL", name, detail.c_str(), seconds);
    if (!pass) ++g_failures;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

// --- criterion 1: transform round trips ---------------------------------

void criterion_transform_round_trips() {
    Timer timer;
    double worst_dwt = 0.0, worst_dct = 0.0;
    bool zigzag_exact = true;
    for (int i = 0; i < 200; ++i) {
        const int size = 2 * (i % 32 + 1); // even sizes 2..64
        const Matrix m =
            testsupport::random_matrix(size, size, 1000 + std::uint64_t(i), -100.0, 100.0);
        worst_dwt = std::max(worst_dwt, max_abs_diff(idwt2(dwt2(m)), m));
        worst_dct = std::max(worst_dct, max_abs_diff(idct2(dct2(m)), m));
        const Matrix back = quadrants_to_matrix(zigzag_to_quadrants(m));
        zigzag_exact = zigzag_exact && bits_equal(back.data, m.data);
    }
    const double elapsed = timer.seconds();
    const bool pass =
        worst_dwt <= 1e-9 && worst_dct <= 1e-9 && zigzag_exact && elapsed < 5.0;
    std::ostringstream detail;
    detail << "200 matrices <=64x64: max dwt err " << worst_dwt << ", max dct err "
           << worst_dct << ", zigzag " << (zigzag_exact ? "bit-exact" : "MISMATCH");
    report(1, "transform round trips", pass, detail.str(), elapsed);
}

// --- criterion 2: svd correctness ----------------------------------------

void criterion_svd() {
    Timer timer;
    double worst_residual = 0.0, worst_oracle = 0.0;
    bool ordered = true;
    for (int i = 0; i < 100; ++i) {
        const int size = i % 32 + 1; // 1..32
        const Matrix m =
            testsupport::random_matrix(size, size, 2000 + std::uint64_t(i), -5.0, 5.0);
        const SvdFactors f = svd(m);

        for (std::size_t k = 0; k < f.s.size(); ++k) {
            if (f.s[k] < 0.0) ordered = false;
            if (k + 1 < f.s.size() && f.s[k] < f.s[k + 1]) ordered = false;
        }

        Matrix diff = svd_reconstruct(f.u, f.s, f.vt);
        for (std::size_t k = 0; k < diff.data.size(); ++k) diff.data[k] -= m.data[k];
        worst_residual = std::max(
            worst_residual, frobenius_norm(diff) / std::max(1.0, frobenius_norm(m)));

        if (size <= 8) {
            const std::vector<double> oracle = testsupport::singular_values_bruteforce(m);
            for (std::size_t k = 0; k < oracle.size(); ++k)
                worst_oracle = std::max(
                    worst_oracle,
                    std::abs(f.s[k] - oracle[k]) / std::max(1.0, oracle[0]));
        }
    }
    const double elapsed = timer.seconds();
    const bool pass = worst_residual <= 1e-8 && ordered && worst_oracle <= 1e-7 &&
                      elapsed < 10.0;
    std::ostringstream detail;
    detail << "100 matrices <=32x32: max residual " << worst_residual
           << ", max oracle gap " << worst_oracle << ", ordering "
           << (ordered ? "ok" : "VIOLATED");
    report(2, "svd correctness", pass, detail.str(), elapsed);
}

// --- criteria 3-5, 8: fidelity pipeline at full size ----------------------

struct PipelineRun {
    GrayImage host, wm;
    EmbedResult embedded;
    double psnr_db = 0.0;
    double max_nc = 0.0;
};

PipelineRun run_pipeline() {
    PipelineRun run;
    run.host = sample_host(512, 7);
    run.wm = sample_watermark(256, 8);
    run.embedded = embed(run.host, run.wm, 0.05);
    run.psnr_db = psnr(run.host, run.embedded.watermarked);
    const ExtractionResult extracted = extract(run.embedded.watermarked, run.embedded.key);
    run.max_nc = best_candidate(extracted, run.wm).nc;
    return run;
}

void criterion_no_attack_fidelity(const PipelineRun& run, double seconds) {
    const bool pass = run.psnr_db >= 40.0 && run.max_nc >= 0.999 && seconds < 5.0;
    std::ostringstream detail;
    detail << "512x512 host, alpha 0.05: psnr " << format_g6(run.psnr_db) << " dB, max nc "
           << format_g6(run.max_nc);
    report(3, "no-attack fidelity", pass, detail.str(), seconds);
}

void criterion_alpha_zero(const PipelineRun& run) {
    Timer timer;
    const EmbedResult result = embed(run.host, run.wm, 0.0);
    const bool pass = result.watermarked.pixels == run.host.pixels;
    report(4, "alpha 0 identity", pass,
           pass ? "watermarked output equals the host pixel for pixel"
                : "pixel mismatch against the host",
           timer.seconds());
}

void criterion_band_isolation(const PipelineRun& run) {
    Timer timer;
    const SubbandSet host_bands = dwt2(to_matrix(run.host));
    const SubbandSet out_bands = dwt2(to_matrix(run.embedded.watermarked_real));
    const bool pass = bits_equal(host_bands.ll.data, out_bands.ll.data) &&
                      bits_equal(host_bands.hl.data, out_bands.hl.data) &&
                      bits_equal(host_bands.lh.data, out_bands.lh.data);
    report(5, "band isolation", pass,
           pass ? "ll/hl/lh of the pre-quantization output match the host bit for bit"
                : "untouched sub-bands differ",
           timer.seconds());
}

void criterion_key_round_trip(const PipelineRun& run) {
    Timer timer;
    testsupport::TempDir dir;
    const std::string path = dir.file("acceptance.wmk");
    save_key(run.embedded.key, path);
    const WatermarkKey loaded = load_key(path);

    bool fields_equal = std::memcmp(&loaded.alpha, &run.embedded.key.alpha, 8) == 0 &&
                        loaded.host_side == run.embedded.key.host_side &&
                        loaded.wm_side == run.embedded.key.wm_side;
    for (int i = 0; i < 4; ++i)
        fields_equal = fields_equal && bits_equal(loaded.s_host[std::size_t(i)],
                                                  run.embedded.key.s_host[std::size_t(i)]);
    fields_equal = fields_equal && bits_equal(loaded.u_w.data, run.embedded.key.u_w.data) &&
                   bits_equal(loaded.vt_w.data, run.embedded.key.vt_w.data) &&
                   bits_equal(loaded.wm_ll.data, run.embedded.key.wm_ll.data) &&
                   bits_equal(loaded.wm_hl.data, run.embedded.key.wm_hl.data) &&
                   bits_equal(loaded.wm_lh.data, run.embedded.key.wm_lh.data);

    const ExtractionResult a = extract(run.embedded.watermarked, run.embedded.key);
    const ExtractionResult b = extract(run.embedded.watermarked, loaded);
    bool extraction_equal = true;
    for (int q = 0; q < 4; ++q)
        extraction_equal =
            extraction_equal && bits_equal(a.candidates[std::size_t(q)].pixels,
                                           b.candidates[std::size_t(q)].pixels);

    const bool pass = fields_equal && extraction_equal;
    std::ostringstream detail;
    detail << "key fields " << (fields_equal ? "bit-exact" : "MISMATCH")
           << ", reloaded-key extraction " << (extraction_equal ? "bit-identical" : "MISMATCH");
    report(8, "key round trip", pass, detail.str(), timer.seconds());
}

// --- criterion 6: robustness trend ----------------------------------------

void criterion_robustness_trend(const PipelineRun& run) {
    Timer timer;
    const EmbedResult embedded = embed(run.host, run.wm, 0.1);

    auto nc_for = [&](const std::string& spec) {
        const GrayImage attacked =
            apply_attack(embedded.watermarked, parse_attack_spec(spec));
        return best_candidate(extract(attacked, embedded.key), run.wm).nc;
    };

    const double nc_blur = nc_for("gaussian_blur:k=5,sigma=1.0");
    const double nc_resize = nc_for("resize_cycle:s=256");
    const double nc_pixelate = nc_for("pixelate:b=2");

    const double nc_noise_1 = nc_for("gaussian_noise:var=0.0001,seed=101");
    const double nc_noise_2 = nc_for("gaussian_noise:var=0.001,seed=102");
    const double nc_noise_3 = nc_for("gaussian_noise:var=0.01,seed=103");

    const bool survive = nc_blur >= 0.90 && nc_resize >= 0.90 && nc_pixelate >= 0.90;
    // non-increasing with 0.005 of upward tolerance between adjacent points
    const bool monotone =
        nc_noise_2 <= nc_noise_1 + 0.005 && nc_noise_3 <= nc_noise_2 + 0.005;

    std::ostringstream detail;
    detail << "alpha 0.1: blur " << format_g6(nc_blur) << ", resize "
           << format_g6(nc_resize) << ", pixelate " << format_g6(nc_pixelate)
           << "; noise sweep " << format_g6(nc_noise_1) << " -> " << format_g6(nc_noise_2)
           << " -> " << format_g6(nc_noise_3);
    report(6, "robustness trend", survive && monotone, detail.str(), timer.seconds());
}

// --- criterion 7: bench determinism ---------------------------------------

void criterion_bench_determinism(const PipelineRun& run) {
    Timer timer;
    testsupport::TempDir dir;
    const std::string host_path = dir.file("host.pgm");
    const std::string wm_path = dir.file("wm.pgm");
    save_pgm(run.host, host_path);
    save_pgm(run.wm, wm_path);

    const char* roster[] = {
        "gaussian_blur:k=5,sigma=1.0",
        "jpeg_like:q=30",
        "sharpen:s=0.8",
        "gaussian_noise:var=0.3,seed=11",
        "pixelate:b=2",
        "rotate:deg=20",
        "crop:f=0.25",
        "resize_cycle:s=256",
        "contrast:k=0.8",
        "hist_eq",
        "gamma:g=0.6",
        "salt_pepper:d=0.05,seed=12",
        "poisson:seed=13",
        "speckle:v=0.04,seed=14",
    };

    auto write_config = [&](const std::string& name, const std::string& out_dir) {
        const std::string path = dir.file(name);
        std::ofstream out(path);
        out << "host=" << host_path << "\nwatermark=" << wm_path
            << "\nalpha=0.05\nformat=csv\nout_dir=" << dir.file(out_dir) << "\n";
        for (const char* attack : roster) out << "attack=" << attack << "\n";
        return path;
    };

    const Timer single_run;
    const BenchResult first = run_bench(parse_bench_config(write_config("c1.cfg", "r1")));
    const double single_seconds = single_run.seconds();
    const BenchResult second = run_bench(parse_bench_config(write_config("c2.cfg", "r2")));

    const bool identical = first.report == second.report &&
                           read_file(first.report_path) == read_file(second.report_path);
    const bool pass = identical && first.ok && second.ok &&
                      first.rows.size() == 14 && single_seconds < 60.0;
    std::ostringstream detail;
    detail << "14-attack roster: reports " << (identical ? "byte-identical" : "DIFFER")
           << ", rows " << first.rows.size() << ", single run "
           << format_g6(single_seconds) << " s";
    report(7, "bench determinism", pass, detail.str(), timer.seconds());
}

// --- criterion 9: metric formulas ------------------------------------------

void criterion_metric_formulas() {
    Timer timer;
    const GrayImage zero(1, 1, 0.0);
    const GrayImage one(1, 1, 1.0);
    const double psnr_unit = psnr(zero, one);

    GrayImage w(2, 2);
    w.pixels = {3, 1, 4, 2};
    GrayImage twice(2, 2);
    twice.pixels = {6, 2, 8, 4};
    const double nc_double = nc(w, twice);

    const bool pass = std::abs(psnr_unit - 48.1308) <= 1e-3 &&
                      std::abs(nc_double - 2.0) <= 1e-12;
    std::ostringstream detail;
    detail << "psnr(mse=1) = " << format_g6(psnr_unit) << " dB, nc(w, 2w) = "
           << format_g6(nc_double);
    report(9, "metric formulas", pass, detail.str(), timer.seconds());
}

} // namespace

int main() {
    criterion_transform_round_trips();
    criterion_svd();

    Timer pipeline_timer;
    const PipelineRun run = run_pipeline();
    const double pipeline_seconds = pipeline_timer.seconds();
    criterion_no_attack_fidelity(run, pipeline_seconds);
    criterion_alpha_zero(run);
    criterion_band_isolation(run);
    criterion_robustness_trend(run);
    criterion_bench_determinism(run);
    criterion_key_round_trip(run);
    criterion_metric_formulas();

    std::printf("ACCEPTANCE: %d/9 criteria passed\n", 9 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
