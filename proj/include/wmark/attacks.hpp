#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wmark/image.hpp"

namespace wmark {

/// Deterministic PRNG: SplitMix64 state transition, uniform doubles from
/// the top 53 bits, normals via Box-Muller (cosine branch) on consecutive
/// uniforms, Poisson deviates via Knuth's product method.
struct SeededRng {
    std::uint64_t state;

    explicit SeededRng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64();
    double next_double();             // uniform on [0, 1)
    double next_normal();             // standard normal
    std::uint64_t next_poisson(double mean);
};

enum class AttackKind {
    none,
    gaussian_blur,
    jpeg_like,
    gaussian_noise,
    salt_pepper,
    speckle,
    poisson,
    rotate,
    crop,
    resize_cycle,
    hist_eq,
    gamma,
    contrast,
    sharpen,
    pixelate,
    intensity_adjust,
};

/// One attack with its parameters. The textual form is
/// `kind:param=value,param=value[,seed=N]`, e.g.
/// `gaussian_noise:var=0.001,seed=7`. The seed is used only by the
/// stochastic kinds (gaussian_noise, salt_pepper, speckle, poisson).
struct AttackSpec {
    AttackKind kind = AttackKind::none;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;

    std::string name;        // kind token
    std::string params_text; // verbatim params portion, may be empty
};

/// Parses the textual attack grammar; failures name the offending token.
AttackSpec parse_attack_spec(const std::string& text);

std::string attack_kind_name(AttackKind kind);

/// Applies one attack to a quantized image and returns a quantized image.
GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec);

/// Embeds a second watermark into an already-watermarked image with the
/// standard pipeline; the fresh key is discarded.
GrayImage rewatermark_attack(const GrayImage& watermarked, const GrayImage& second_wm,
                             double alpha);

/// Pixelwise arithmetic mean of two or more same-size images, quantized.
GrayImage collusion_attack(const std::vector<GrayImage>& copies);

} // namespace wmark
