#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wmark/attacks.hpp"
#include "wmark/bench.hpp"
#include "wmark/metrics.hpp"
#include "wmark/samples.hpp"
#include "wmark/watermark.hpp"

namespace {

int cmd_embed(const std::string& host_path, const std::string& wm_path, double alpha,
              const std::string& out_image, const std::string& out_key) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    const wmark::GrayImage host = wmark::load_pgm(host_path);
    const wmark::GrayImage wm = wmark::load_pgm(wm_path);
    const wmark::EmbedResult result = wmark::embed(host, wm, alpha);
    wmark::save_pgm(result.watermarked, out_image);
    wmark::save_key(result.key, out_key);
    std::cout << "psnr_db=" << wmark::format_g6(wmark::psnr(host, result.watermarked))
              << "\n";
    return 0;
}

int cmd_extract(const std::string& marked_path, const std::string& key_path,
                const std::string& out_dir, const std::string& reference_path) {
    const wmark::GrayImage marked = wmark::load_pgm(marked_path);
    const wmark::WatermarkKey key = wmark::load_key(key_path);
    const wmark::ExtractionResult result = wmark::extract(marked, key);

    std::filesystem::create_directories(out_dir);
    for (int i = 0; i < 4; ++i) {
        const auto path = std::filesystem::path(out_dir) /
                          ("candidate_q" + std::to_string(i + 1) + ".pgm");
        wmark::save_pgm(wmark::quantize(result.candidates[std::size_t(i)]), path.string());
    }
    if (!reference_path.empty()) {
        const wmark::GrayImage reference = wmark::load_pgm(reference_path);
        const wmark::BestCandidate best = wmark::best_candidate(result, reference);
        std::cout << "best_quadrant=" << best.quadrant
                  << " nc=" << wmark::format_g6(best.nc) << "\n";
    }
    return 0;
}

int cmd_attack(const std::string& image_path, const std::string& spec_text,
               const std::string& out_path) {
    const wmark::AttackSpec spec = wmark::parse_attack_spec(spec_text);
    const wmark::GrayImage image = wmark::load_pgm(image_path);
    const wmark::GrayImage attacked = wmark::apply_attack(image, spec);
    wmark::save_pgm(attacked, out_path);
    std::cout << "psnr_db=" << wmark::format_g6(wmark::psnr(image, attacked)) << "\n";
    return 0;
}

int cmd_metrics(const std::string& a_path, const std::string& b_path) {
    const wmark::GrayImage a = wmark::load_pgm(a_path);
    const wmark::GrayImage b = wmark::load_pgm(b_path);
    std::cout << "mse=" << wmark::format_g6(wmark::mse(a, b)) << "\n";
    std::cout << "psnr_db=" << wmark::format_g6(wmark::psnr(a, b)) << "\n";
    std::cout << "nc=" << wmark::format_g6(wmark::nc(a, b)) << "\n";
    return 0;
}

int cmd_bench(const std::string& config_path) {
    const wmark::BenchConfig cfg = wmark::parse_bench_config(config_path);
    const wmark::BenchResult result = wmark::run_bench(cfg);
    std::cout << result.report;
    for (const auto& row : result.rows)
        if (row.failed)
            std::cerr << "bench row '" << row.attack << "' failed: " << row.error << "\n";
    return result.ok ? 0 : 1;
}

int cmd_gen(const std::string& host_out, const std::string& wm_out, int side,
            std::uint64_t seed) {
    if (side < 8 || side % 4 != 0)
        throw std::invalid_argument("side must be a multiple of 4, at least 8");
    wmark::save_pgm(wmark::sample_host(side, seed), host_out);
    wmark::save_pgm(wmark::sample_watermark(side / 2, seed + 1), wm_out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-blind grayscale image watermarking toolkit"};
    app.require_subcommand(1);

    std::string host_path, wm_path, out_image, out_key;
    double alpha = 0.0;
    auto* embed = app.add_subcommand("embed", "embed a watermark into a host image");
    embed->add_option("host", host_path, "host PGM (square, side divisible by 4)")->required();
    embed->add_option("watermark", wm_path, "watermark PGM (half the host side)")->required();
    embed->add_option("alpha", alpha, "embedding strength (> 0)")->required();
    embed->add_option("out-image", out_image, "output watermarked PGM")->required();
    embed->add_option("out-key", out_key, "output key file")->required();

    std::string marked_path, key_path, out_dir, reference_path;
    auto* extract = app.add_subcommand("extract", "extract watermark candidates");
    extract->add_option("watermarked", marked_path, "watermarked PGM")->required();
    extract->add_option("key", key_path, "key file written by embed")->required();
    extract->add_option("out-dir", out_dir, "directory for candidate PGMs")->required();
    extract->add_option("reference", reference_path, "reference watermark PGM (optional)");

    std::string attack_image, attack_spec, attack_out;
    auto* attack = app.add_subcommand("attack", "apply one attack to an image");
    attack->add_option("image", attack_image, "input PGM")->required();
    attack->add_option("spec", attack_spec, "attack spec, e.g. gaussian_noise:var=0.001,seed=7")
        ->required();
    attack->add_option("out", attack_out, "output PGM")->required();

    std::string metric_a, metric_b;
    auto* metrics = app.add_subcommand("metrics", "print mse/psnr/nc between two images");
    metrics->add_option("reference", metric_a, "reference PGM")->required();
    metrics->add_option("other", metric_b, "comparison PGM")->required();

    std::string config_path;
    auto* bench = app.add_subcommand("bench", "run an attack roster and report psnr/nc rows");
    bench->add_option("config", config_path, "bench config file")->required();

    std::string gen_host, gen_wm;
    int gen_side = 512;
    std::uint64_t gen_seed = 7;
    auto* gen = app.add_subcommand("gen", "write synthetic sample host/watermark images");
    gen->add_option("host-out", gen_host, "output host PGM")->required();
    gen->add_option("watermark-out", gen_wm, "output watermark PGM")->required();
    gen->add_option("--side", gen_side, "host side length (default 512)");
    gen->add_option("--seed", gen_seed, "generator seed (default 7)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (embed->parsed())
            return cmd_embed(host_path, wm_path, alpha, out_image, out_key);
        if (extract->parsed())
            return cmd_extract(marked_path, key_path, out_dir, reference_path);
        if (attack->parsed()) return cmd_attack(attack_image, attack_spec, attack_out);
        if (metrics->parsed()) return cmd_metrics(metric_a, metric_b);
        if (bench->parsed()) return cmd_bench(config_path);
        if (gen->parsed()) return cmd_gen(gen_host, gen_wm, gen_side, gen_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
