#pragma once

#include "wmark/image.hpp"

namespace wmark {

/// Mean squared per-pixel difference.
double mse(const GrayImage& a, const GrayImage& b);

/// 10*log10(255^2 / MSE) in dB; +infinity when the images are identical.
double psnr(const GrayImage& a, const GrayImage& b);

/// Normalized correlation with the reference-energy denominator:
/// sum(w * w') / sum(w^2). Linear in w', may exceed 1.
/// The reference w must not be identically zero.
double nc(const GrayImage& w, const GrayImage& w_prime);

} // namespace wmark
