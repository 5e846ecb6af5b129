#include "wmark/samples.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wmark/attacks.hpp"

namespace wmark {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

GrayImage sample_host(int side, std::uint64_t seed) {
    if (side < 4 || side % 4 != 0)
        throw std::invalid_argument("sample host side must be a positive multiple of 4");
    SeededRng rng(seed);
    const double p1 = rng.next_double() * kTau;
    const double p2 = rng.next_double() * kTau;
    const double p3 = rng.next_double() * kTau;
    const double p4 = rng.next_double() * kTau;
    const double p5 = rng.next_double() * kTau;

    GrayImage img(side, side);
    for (int r = 0; r < side; ++r) {
        const double v = double(r) / side;
        for (int c = 0; c < side; ++c) {
            const double u = double(c) / side;
            const double base =
                122.0 + 52.0 * std::sin(kTau * (0.8 * u + 0.15 * std::sin(kTau * v)) + p1) *
                            std::cos(kTau * 0.6 * v + p2);
            const double ridge = 26.0 * std::sin(kTau * (2.3 * u + 1.7 * v) + p3);
            const double texture = 9.0 * std::sin(kTau * 11.0 * u + p4) *
                                   std::sin(kTau * 13.0 * v + p5);
            const double grain = (rng.next_double() - 0.5) * 8.0;
            img(r, c) = base + ridge + texture + grain;
        }
    }
    return quantize(img);
}

GrayImage sample_watermark(int side, std::uint64_t seed) {
    if (side < 2 || side % 2 != 0)
        throw std::invalid_argument("sample watermark side must be a positive even number");
    SeededRng rng(seed);
    const double shade = 56.0 + 16.0 * rng.next_double();

    // Blocky logo: flat regions plus two pixel-checkerboard patches. The
    // checkerboards put real energy into the diagonal-detail band while
    // keeping its spectrum concentrated in a few singular values.
    GrayImage img(side, side);
    for (int r = 0; r < side; ++r) {
        const double v = double(r) / side;
        for (int c = 0; c < side; ++c) {
            const double u = double(c) / side;
            double value = 196.0 + 24.0 * u;
            if (u > 0.10 && u < 0.42 && v > 0.12 && v < 0.46) value = shade;
            if (v > 0.70 && v < 0.82 && u > 0.12 && u < 0.88) value = 112.0;
            if (u > 0.62 && u < 0.90 && v > 0.16 && v < 0.44) {
                value = 150.0 + (((r + c) & 1) ? 22.0 : -22.0);
            }
            if (u > 0.18 && u < 0.50 && v > 0.52 && v < 0.66) {
                value = 96.0 + (((r + c) & 1) ? 18.0 : -18.0);
            }
            img(r, c) = value;
        }
    }
    return quantize(img);
}

} // namespace wmark
