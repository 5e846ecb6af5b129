#pragma once

#include <array>
#include <string>
#include <vector>

#include "wmark/image.hpp"
#include "wmark/transforms.hpp"

namespace wmark {

/// Side information required to extract a watermark (semi-blind scheme).
///
/// Holds the embedding strength, the pre-embedding singular values of the
/// four host quadrants, the SVD bases of the watermark's diagonal-detail
/// coefficient matrix, and the watermark's untouched sub-bands.
struct WatermarkKey {
    double alpha = 0.0;
    int host_side = 0;                          // host is host_side x host_side
    int wm_side = 0;                            // watermark side, host_side / 2
    std::array<std::vector<double>, 4> s_host;  // each of length host_side / 4
    Matrix u_w, vt_w;                           // (host_side/4)^2 each
    Matrix wm_ll, wm_hl, wm_lh;                 // watermark sub-bands
};

struct EmbedResult {
    GrayImage watermarked;      // quantized output image
    GrayImage watermarked_real; // same image before quantization
    WatermarkKey key;
};

/// One extracted watermark candidate per quadrant, in quadrant order 1..4.
/// Candidates are left unquantized for metric computation; quantize copies
/// for display or saving. s_w_hat holds the recovered singular-value
/// estimates per quadrant (entries may be negative).
struct ExtractionResult {
    std::array<GrayImage, 4> candidates;
    std::array<std::vector<double>, 4> s_w_hat;

    static constexpr int quadrant_label(int index) { return index + 1; }
};

struct BestCandidate {
    int quadrant = 0; // 1..4
    double nc = 0.0;
};

/// Embeds `wm` into `host`.
///
/// Pipeline: wavelet-decompose the host, DCT the diagonal-detail band,
/// split the coefficients into four zigzag quadrants, and shift each
/// quadrant's singular values by alpha times the singular values of the
/// watermark's DCT'd diagonal-detail band; then invert every step.
///
/// host must be square with side divisible by 4; wm must be square with
/// side exactly host_side/2; alpha must be >= 0 (alpha == 0 reproduces the
/// host exactly but yields a key extraction will reject).
EmbedResult embed(const GrayImage& host, const GrayImage& wm, double alpha);

/// Recovers four watermark candidates from a (possibly attacked)
/// watermarked image using the key.
ExtractionResult extract(const GrayImage& watermarked, const WatermarkKey& key);

/// Index (1..4) and value of the candidate maximizing nc(reference, c);
/// ties break to the lowest index.
BestCandidate best_candidate(const ExtractionResult& result, const GrayImage& reference);

/// Key sidecar I/O: binary little-endian "WMK1" layout, bit-exact round trip.
void save_key(const WatermarkKey& key, const std::string& path);
WatermarkKey load_key(const std::string& path);

} // namespace wmark
