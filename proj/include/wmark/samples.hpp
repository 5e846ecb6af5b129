#pragma once

#include <cstdint>

#include "wmark/image.hpp"

namespace wmark {

/// Synthetic quantized test images with natural-image statistics: a
/// textured "photograph-like" host and a smooth logo-like watermark.
/// Deterministic for a given (side, seed).
GrayImage sample_host(int side, std::uint64_t seed);
GrayImage sample_watermark(int side, std::uint64_t seed);

} // namespace wmark
