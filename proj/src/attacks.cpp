#include "wmark/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "wmark/transforms.hpp"
#include "wmark/watermark.hpp"

namespace wmark {

std::uint64_t SeededRng::next_u64() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SeededRng::next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::next_normal() {
    double u1 = next_double();
    const double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t SeededRng::next_poisson(double mean) {
    if (mean <= 0.0) mean = 0.0;
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= next_double();
    } while (p > limit);
    return k - 1;
}

namespace {

struct KindInfo {
    AttackKind kind;
    const char* name;
    std::vector<const char*> required;
};

const std::vector<KindInfo>& kind_table() {
    static const std::vector<KindInfo> table = {
        {AttackKind::none, "none", {}},
        {AttackKind::gaussian_blur, "gaussian_blur", {"k", "sigma"}},
        {AttackKind::jpeg_like, "jpeg_like", {"q"}},
        {AttackKind::gaussian_noise, "gaussian_noise", {"var"}},
        {AttackKind::salt_pepper, "salt_pepper", {"d"}},
        {AttackKind::speckle, "speckle", {"v"}},
        {AttackKind::poisson, "poisson", {}},
        {AttackKind::rotate, "rotate", {"deg"}},
        {AttackKind::crop, "crop", {"f"}},
        {AttackKind::resize_cycle, "resize_cycle", {"s"}},
        {AttackKind::hist_eq, "hist_eq", {}},
        {AttackKind::gamma, "gamma", {"g"}},
        {AttackKind::contrast, "contrast", {"k"}},
        {AttackKind::sharpen, "sharpen", {"s"}},
        {AttackKind::pixelate, "pixelate", {"b"}},
        {AttackKind::intensity_adjust, "intensity_adjust",
         {"lo_in", "hi_in", "lo_out", "hi_out"}},
    };
    return table;
}

const KindInfo& kind_info(AttackKind kind) {
    for (const auto& info : kind_table())
        if (info.kind == kind) return info;
    throw std::logic_error("unknown attack kind");
}

[[noreturn]] void parse_fail(const std::string& detail) {
    throw std::invalid_argument("attack spec parse error: " + detail);
}

double require_param(const AttackSpec& spec, const char* name) {
    auto it = spec.params.find(name);
    if (it == spec.params.end())
        parse_fail("missing required param '" + std::string(name) + "' for kind '" +
                   spec.name + "'");
    return it->second;
}

[[noreturn]] void domain_fail(const AttackSpec& spec, const char* param, const char* why) {
    throw std::invalid_argument(spec.name + ": " + param + " out of domain (" + why + ")");
}

bool is_integral_value(double v) { return std::isfinite(v) && v == std::trunc(v); }

void validate_spec(const AttackSpec& spec) {
    switch (spec.kind) {
        case AttackKind::none:
        case AttackKind::hist_eq:
        case AttackKind::poisson:
            break;
        case AttackKind::gaussian_blur: {
            const double k = require_param(spec, "k");
            const double sigma = require_param(spec, "sigma");
            if (!is_integral_value(k) || k < 1 || k > 255 || int(k) % 2 == 0)
                domain_fail(spec, "k", "odd integer in [1,255] required");
            if (!std::isfinite(sigma) || sigma <= 0.0)
                domain_fail(spec, "sigma", "sigma > 0 required");
            break;
        }
        case AttackKind::jpeg_like: {
            const double q = require_param(spec, "q");
            if (!is_integral_value(q) || q < 1 || q > 100)
                domain_fail(spec, "q", "integer in [1,100] required");
            break;
        }
        case AttackKind::gaussian_noise: {
            const double var = require_param(spec, "var");
            if (!std::isfinite(var) || var < 0.0) domain_fail(spec, "var", "var >= 0 required");
            break;
        }
        case AttackKind::salt_pepper: {
            const double d = require_param(spec, "d");
            if (!std::isfinite(d) || d < 0.0 || d > 1.0)
                domain_fail(spec, "d", "density in [0,1] required");
            break;
        }
        case AttackKind::speckle: {
            const double v = require_param(spec, "v");
            if (!std::isfinite(v) || v < 0.0) domain_fail(spec, "v", "v >= 0 required");
            break;
        }
        case AttackKind::rotate: {
            const double deg = require_param(spec, "deg");
            if (!std::isfinite(deg)) domain_fail(spec, "deg", "finite angle required");
            break;
        }
        case AttackKind::crop: {
            const double f = require_param(spec, "f");
            if (!std::isfinite(f) || f < 0.0 || f > 1.0)
                domain_fail(spec, "f", "area fraction in [0,1] required");
            break;
        }
        case AttackKind::resize_cycle: {
            const double s = require_param(spec, "s");
            if (!is_integral_value(s) || s < 1 || s > 16384)
                domain_fail(spec, "s", "integer in [1,16384] required");
            break;
        }
        case AttackKind::gamma: {
            const double g = require_param(spec, "g");
            if (!std::isfinite(g) || g <= 0.0) domain_fail(spec, "g", "g > 0 required");
            break;
        }
        case AttackKind::contrast: {
            const double k = require_param(spec, "k");
            if (!std::isfinite(k) || k < 0.0) domain_fail(spec, "k", "k >= 0 required");
            break;
        }
        case AttackKind::sharpen: {
            const double s = require_param(spec, "s");
            if (!std::isfinite(s) || s < 0.0) domain_fail(spec, "s", "s >= 0 required");
            break;
        }
        case AttackKind::pixelate: {
            const double b = require_param(spec, "b");
            if (!is_integral_value(b) || b < 1 || b > 1 << 20)
                domain_fail(spec, "b", "integer in [1,2^20] required");
            break;
        }
        case AttackKind::intensity_adjust: {
            const double lo_in = require_param(spec, "lo_in");
            const double hi_in = require_param(spec, "hi_in");
            const double lo_out = require_param(spec, "lo_out");
            const double hi_out = require_param(spec, "hi_out");
            for (auto [name, v] : {std::pair{"lo_in", lo_in}, {"hi_in", hi_in},
                                   {"lo_out", lo_out}, {"hi_out", hi_out}})
                if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                    domain_fail(spec, name, "value in [0,1] required");
            if (hi_in <= lo_in) domain_fail(spec, "hi_in", "hi_in > lo_in required");
            break;
        }
    }
}

} // namespace

std::string attack_kind_name(AttackKind kind) { return kind_info(kind).name; }

AttackSpec parse_attack_spec(const std::string& text) {
    auto trim = [](std::string s) {
        const auto begin = s.find_first_not_of(" \t\r\n");
        if (begin == std::string::npos) return std::string();
        const auto end = s.find_last_not_of(" \t\r\n");
        return s.substr(begin, end - begin + 1);
    };
    const std::string spec_text = trim(text);
    if (spec_text.empty()) parse_fail("empty spec");

    AttackSpec spec;
    const auto colon = spec_text.find(':');
    spec.name = spec_text.substr(0, colon);
    spec.params_text = (colon == std::string::npos) ? "" : spec_text.substr(colon + 1);

    bool known = false;
    for (const auto& info : kind_table()) {
        if (spec.name == info.name) {
            spec.kind = info.kind;
            known = true;
            break;
        }
    }
    if (!known) parse_fail("unknown kind '" + spec.name + "'");

    std::size_t pos = 0;
    const std::string& params = spec.params_text;
    while (pos < params.size()) {
        auto next = params.find(',', pos);
        if (next == std::string::npos) next = params.size();
        const std::string token = trim(params.substr(pos, next - pos));
        pos = next + 1;
        if (token.empty()) parse_fail("empty token in '" + params + "'");

        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == token.size())
            parse_fail("bad token '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);

        if (key == "seed") {
            char* end = nullptr;
            const unsigned long long seed = std::strtoull(value.c_str(), &end, 10);
            if (end == value.c_str() || *end != '\0' || value[0] == '-')
                parse_fail("bad value for 'seed': '" + value + "'");
            spec.seed = seed;
            continue;
        }

        bool accepted = false;
        for (const char* name : kind_info(spec.kind).required)
            if (key == name) accepted = true;
        if (!accepted)
            parse_fail("unknown param '" + key + "' for kind '" + spec.name + "'");
        if (spec.params.count(key)) parse_fail("duplicate param '" + key + "'");

        char* end = nullptr;
        const double parsed = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0')
            parse_fail("bad value for '" + key + "': '" + value + "'");
        spec.params[key] = parsed;
    }

    validate_spec(spec);
    return spec;
}

namespace {

double pixel_clamped(const GrayImage& img, int r, int c) {
    r = std::clamp(r, 0, img.rows - 1);
    c = std::clamp(c, 0, img.cols - 1);
    return img(r, c);
}

// Caller guarantees 0 <= x <= cols-1 and 0 <= y <= rows-1.
double bilinear_at(const GrayImage& img, double y, double x) {
    const int x0 = int(std::floor(x));
    const int y0 = int(std::floor(y));
    const int x1 = std::min(x0 + 1, img.cols - 1);
    const int y1 = std::min(y0 + 1, img.rows - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double top = (1.0 - fx) * img(y0, x0) + fx * img(y0, x1);
    const double bot = (1.0 - fx) * img(y1, x0) + fx * img(y1, x1);
    return (1.0 - fy) * top + fy * bot;
}

Matrix gaussian_kernel(int k, double sigma) {
    Matrix kernel(k, k);
    const int h = (k - 1) / 2;
    double sum = 0.0;
    for (int i = -h; i <= h; ++i)
        for (int j = -h; j <= h; ++j) {
            const double w = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
            kernel(i + h, j + h) = w;
            sum += w;
        }
    for (double& w : kernel.data) w /= sum;
    return kernel;
}

// Convolution with edge replication; output left unquantized.
GrayImage convolve(const GrayImage& img, const Matrix& kernel) {
    const int h = (kernel.rows - 1) / 2;
    GrayImage out(img.rows, img.cols);
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < img.cols; ++c) {
            double acc = 0.0;
            for (int i = -h; i <= h; ++i)
                for (int j = -h; j <= h; ++j)
                    acc += kernel(i + h, j + h) * pixel_clamped(img, r + i, c + j);
            out(r, c) = acc;
        }
    return out;
}

// Bilinear resize with pixel-center alignment; unquantized output.
GrayImage resize_bilinear(const GrayImage& img, int out_rows, int out_cols) {
    GrayImage out(out_rows, out_cols);
    const double ry = double(img.rows) / out_rows;
    const double rx = double(img.cols) / out_cols;
    for (int r = 0; r < out_rows; ++r) {
        double sy = (r + 0.5) * ry - 0.5;
        sy = std::clamp(sy, 0.0, double(img.rows - 1));
        for (int c = 0; c < out_cols; ++c) {
            double sx = (c + 0.5) * rx - 0.5;
            sx = std::clamp(sx, 0.0, double(img.cols - 1));
            out(r, c) = bilinear_at(img, sy, sx);
        }
    }
    return out;
}

constexpr int kJpegLuminance[64] = {
    16, 11, 10, 16, 24,  40,  51,  61,  //
    12, 12, 14, 19, 26,  58,  60,  55,  //
    14, 13, 16, 24, 40,  57,  69,  56,  //
    14, 17, 22, 29, 51,  87,  80,  62,  //
    18, 22, 37, 56, 68,  109, 103, 77,  //
    24, 35, 55, 64, 81,  104, 113, 92,  //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99,
};

GrayImage jpeg_like(const GrayImage& img, int quality) {
    // IJG quality scaling of the luminance table
    const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
    int table[64];
    for (int i = 0; i < 64; ++i)
        table[i] = std::clamp((kJpegLuminance[i] * scale + 50) / 100, 1, 255);

    const int prows = (img.rows + 7) / 8 * 8;
    const int pcols = (img.cols + 7) / 8 * 8;
    GrayImage padded(prows, pcols);
    for (int r = 0; r < prows; ++r)
        for (int c = 0; c < pcols; ++c) padded(r, c) = pixel_clamped(img, r, c);

    GrayImage out(img.rows, img.cols);
    Matrix block(8, 8);
    for (int br = 0; br < prows; br += 8) {
        for (int bc = 0; bc < pcols; bc += 8) {
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) block(i, j) = padded(br + i, bc + j);
            Matrix coeff = dct2(block);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) {
                    const double q = table[i * 8 + j];
                    coeff(i, j) = double(std::llround(coeff(i, j) / q)) * q;
                }
            const Matrix rec = idct2(coeff);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) {
                    const int r = br + i, c = bc + j;
                    if (r < img.rows && c < img.cols) out(r, c) = rec(i, j);
                }
        }
    }
    return out;
}

GrayImage rotate_image(const GrayImage& img, double deg) {
    const double theta = deg * std::numbers::pi / 180.0;
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cx = (img.cols - 1) / 2.0;
    const double cy = (img.rows - 1) / 2.0;
    GrayImage out(img.rows, img.cols);
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < img.cols; ++c) {
            const double dx = c - cx, dy = r - cy;
            const double sx = cx + ct * dx + st * dy;
            const double sy = cy - st * dx + ct * dy;
            if (sx < 0.0 || sx > img.cols - 1 || sy < 0.0 || sy > img.rows - 1) {
                out(r, c) = 0.0;
            } else {
                out(r, c) = bilinear_at(img, sy, sx);
            }
        }
    return out;
}

GrayImage crop_center(const GrayImage& img, double fraction) {
    long side = std::llround(std::sqrt(fraction * img.rows * img.cols));
    side = std::min<long>(side, std::min(img.rows, img.cols));
    const long r0 = (img.rows - side) / 2;
    const long c0 = (img.cols - side) / 2;
    GrayImage out(img.rows, img.cols);
    for (long r = r0; r < r0 + side; ++r)
        for (long c = c0; c < c0 + side; ++c) out(int(r), int(c)) = img(int(r), int(c));
    return out;
}

GrayImage hist_equalize(const GrayImage& img) {
    std::vector<long> counts(256, 0);
    for (double v : img.pixels) counts[std::size_t(v)]++;
    std::vector<long> cdf(256, 0);
    long run = 0;
    for (int v = 0; v < 256; ++v) {
        run += counts[std::size_t(v)];
        cdf[std::size_t(v)] = run;
    }
    const double total = double(img.pixels.size());
    double lut[256];
    for (int v = 0; v < 256; ++v)
        lut[v] = double(std::llround(255.0 * double(cdf[std::size_t(v)]) / total));
    GrayImage out(img.rows, img.cols);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.pixels[i] = lut[std::size_t(img.pixels[i])];
    return out;
}

GrayImage pixelate(const GrayImage& img, int b) {
    GrayImage out(img.rows, img.cols);
    for (int br = 0; br < img.rows; br += b) {
        const int rend = std::min(br + b, img.rows);
        for (int bc = 0; bc < img.cols; bc += b) {
            const int cend = std::min(bc + b, img.cols);
            double acc = 0.0;
            for (int r = br; r < rend; ++r)
                for (int c = bc; c < cend; ++c) acc += img(r, c);
            const double mean = acc / double((rend - br) * (cend - bc));
            for (int r = br; r < rend; ++r)
                for (int c = bc; c < cend; ++c) out(r, c) = mean;
        }
    }
    return out;
}

} // namespace

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec) {
    if (!is_quantized(img))
        throw std::invalid_argument("attack input image must be quantized");
    validate_spec(spec);

    GrayImage out(img.rows, img.cols);
    switch (spec.kind) {
        case AttackKind::none:
            out = img;
            break;
        case AttackKind::gaussian_blur:
            out = convolve(img, gaussian_kernel(int(spec.params.at("k")),
                                                spec.params.at("sigma")));
            break;
        case AttackKind::jpeg_like:
            out = jpeg_like(img, int(spec.params.at("q")));
            break;
        case AttackKind::gaussian_noise: {
            // variance on the normalized [0,1] scale
            const double sigma = 255.0 * std::sqrt(spec.params.at("var"));
            SeededRng rng(spec.seed);
            for (std::size_t i = 0; i < img.pixels.size(); ++i)
                out.pixels[i] = img.pixels[i] + sigma * rng.next_normal();
            break;
        }
        case AttackKind::salt_pepper: {
            const double d = spec.params.at("d");
            SeededRng rng(spec.seed);
            for (std::size_t i = 0; i < img.pixels.size(); ++i) {
                const double u = rng.next_double();
                out.pixels[i] = (u < d / 2.0) ? 0.0 : (u < d) ? 255.0 : img.pixels[i];
            }
            break;
        }
        case AttackKind::speckle: {
            // multiplicative uniform noise with the requested variance
            const double half = std::sqrt(3.0 * spec.params.at("v"));
            SeededRng rng(spec.seed);
            for (std::size_t i = 0; i < img.pixels.size(); ++i) {
                const double n = (2.0 * rng.next_double() - 1.0) * half;
                out.pixels[i] = img.pixels[i] * (1.0 + n);
            }
            break;
        }
        case AttackKind::poisson: {
            SeededRng rng(spec.seed);
            for (std::size_t i = 0; i < img.pixels.size(); ++i)
                out.pixels[i] = double(rng.next_poisson(img.pixels[i]));
            break;
        }
        case AttackKind::rotate:
            out = rotate_image(img, spec.params.at("deg"));
            break;
        case AttackKind::crop:
            out = crop_center(img, spec.params.at("f"));
            break;
        case AttackKind::resize_cycle: {
            const int s = int(spec.params.at("s"));
            const GrayImage small = quantize(resize_bilinear(img, s, s));
            out = resize_bilinear(small, img.rows, img.cols);
            break;
        }
        case AttackKind::hist_eq:
            out = hist_equalize(img);
            break;
        case AttackKind::gamma: {
            const double g = spec.params.at("g");
            for (std::size_t i = 0; i < img.pixels.size(); ++i)
                out.pixels[i] = 255.0 * std::pow(img.pixels[i] / 255.0, g);
            break;
        }
        case AttackKind::contrast: {
            const double k = spec.params.at("k");
            for (std::size_t i = 0; i < img.pixels.size(); ++i)
                out.pixels[i] = (img.pixels[i] - 128.0) * k + 128.0;
            break;
        }
        case AttackKind::sharpen: {
            // unsharp mask against a 3x3 sigma-1 blur
            const double s = spec.params.at("s");
            const GrayImage blurred = convolve(img, gaussian_kernel(3, 1.0));
            for (std::size_t i = 0; i < img.pixels.size(); ++i)
                out.pixels[i] = img.pixels[i] + s * (img.pixels[i] - blurred.pixels[i]);
            break;
        }
        case AttackKind::pixelate:
            out = pixelate(img, int(spec.params.at("b")));
            break;
        case AttackKind::intensity_adjust: {
            const double lo_in = spec.params.at("lo_in"), hi_in = spec.params.at("hi_in");
            const double lo_out = spec.params.at("lo_out"), hi_out = spec.params.at("hi_out");
            const double gain = (hi_out - lo_out) / (hi_in - lo_in);
            for (std::size_t i = 0; i < img.pixels.size(); ++i) {
                const double x = std::clamp(img.pixels[i] / 255.0, lo_in, hi_in);
                out.pixels[i] = 255.0 * (lo_out + (x - lo_in) * gain);
            }
            break;
        }
    }
    return quantize(out);
}

GrayImage rewatermark_attack(const GrayImage& watermarked, const GrayImage& second_wm,
                             double alpha) {
    return embed(watermarked, second_wm, alpha).watermarked;
}

GrayImage collusion_attack(const std::vector<GrayImage>& copies) {
    if (copies.size() < 2)
        throw std::invalid_argument("collusion requires at least 2 images");
    for (const auto& img : copies)
        if (!img.same_shape(copies.front()))
            throw std::invalid_argument("collusion images must share dimensions");

    GrayImage out(copies.front().rows, copies.front().cols);
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
        double acc = 0.0;
        for (const auto& img : copies) acc += img.pixels[i];
        out.pixels[i] = acc / double(copies.size());
    }
    return quantize(out);
}

} // namespace wmark
