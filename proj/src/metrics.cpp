#include "wmark/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wmark {

double mse(const GrayImage& a, const GrayImage& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("mse: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = a.pixels[i] - b.pixels[i];
        acc += d * d;
    }
    return acc / double(a.pixels.size());
}

double psnr(const GrayImage& a, const GrayImage& b) {
    const double e = mse(a, b);
    if (e == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / e);
}

double nc(const GrayImage& w, const GrayImage& w_prime) {
    if (!w.same_shape(w_prime)) throw std::invalid_argument("nc: dimension mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.pixels.size(); ++i) {
        num += w.pixels[i] * w_prime.pixels[i];
        den += w.pixels[i] * w.pixels[i];
    }
    if (den == 0.0) throw std::invalid_argument("undefined NC: reference is all-zero");
    return num / den;
}

} // namespace wmark
