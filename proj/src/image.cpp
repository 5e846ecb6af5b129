#include "wmark/image.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wmark {

GrayImage::GrayImage(int r, int c, double fill) : rows(r), cols(c) {
    if (r <= 0 || c <= 0) throw std::invalid_argument("image dimensions must be positive");
    pixels.assign(std::size_t(r) * c, fill);
}

namespace {

// Advances past whitespace and '#' comments (which run to end of line).
std::size_t skip_separators(const std::string& buf, std::size_t pos) {
    while (pos < buf.size()) {
        unsigned char ch = buf[pos];
        if (std::isspace(ch)) {
            ++pos;
        } else if (ch == '#') {
            while (pos < buf.size() && buf[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    return pos;
}

std::string next_token(const std::string& buf, std::size_t& pos) {
    pos = skip_separators(buf, pos);
    std::size_t start = pos;
    while (pos < buf.size() && !std::isspace(static_cast<unsigned char>(buf[pos])) &&
           buf[pos] != '#')
        ++pos;
    return buf.substr(start, pos - start);
}

long parse_header_int(const std::string& tok, const char* what) {
    if (tok.empty()) throw std::runtime_error(std::string("invalid header: missing ") + what);
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::runtime_error(std::string("invalid header: bad ") + what + " '" + tok + "'");
    try {
        return std::stol(tok);
    } catch (const std::out_of_range&) {
        throw std::runtime_error(std::string("invalid header: ") + what + " out of range");
    }
}

} // namespace

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string buf = ss.str();

    std::size_t pos = 0;
    const std::string magic = next_token(buf, pos);
    if (magic != "P5") throw std::runtime_error("unsupported magic '" + magic + "'");

    const long width = parse_header_int(next_token(buf, pos), "width");
    const long height = parse_header_int(next_token(buf, pos), "height");
    const long maxval = parse_header_int(next_token(buf, pos), "maxval");
    if (width <= 0 || height <= 0) throw std::runtime_error("invalid header: non-positive size");
    if (maxval != 255) throw std::runtime_error("maxval must be 255, got " + std::to_string(maxval));

    // exactly one whitespace byte between the maxval token and the payload
    if (pos >= buf.size() || !std::isspace(static_cast<unsigned char>(buf[pos])))
        throw std::runtime_error("invalid header: missing payload separator");
    ++pos;

    const std::size_t need = std::size_t(width) * std::size_t(height);
    if (buf.size() - pos < need) throw std::runtime_error("truncated payload");

    GrayImage img(static_cast<int>(height), static_cast<int>(width));
    for (std::size_t i = 0; i < need; ++i)
        img.pixels[i] = double(static_cast<unsigned char>(buf[pos + i]));
    return img;
}

void save_pgm(const GrayImage& img, const std::string& path) {
    if (!is_quantized(img)) throw std::invalid_argument("image not quantized");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
    out << "P5\n" << img.cols << " " << img.rows << "\n255\n";
    std::vector<std::uint8_t> bytes(img.pixels.size());
    for (std::size_t i = 0; i < bytes.size(); ++i)
        bytes[i] = static_cast<std::uint8_t>(img.pixels[i]);
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

GrayImage quantize(const GrayImage& img) {
    GrayImage out(img.rows, img.cols);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double v = img.pixels[i];
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite pixel");
        // round half away from zero, then clamp
        double q = std::round(v);
        if (q < 0.0) q = 0.0;
        if (q > 255.0) q = 255.0;
        out.pixels[i] = q;
    }
    return out;
}

bool is_quantized(const GrayImage& img) {
    for (double v : img.pixels) {
        if (!std::isfinite(v)) return false;
        if (v < 0.0 || v > 255.0) return false;
        if (v != std::trunc(v)) return false;
    }
    return true;
}

Matrix to_matrix(const GrayImage& img) {
    Matrix m(img.rows, img.cols);
    m.data = img.pixels;
    return m;
}

GrayImage to_image(const Matrix& m) {
    GrayImage img(m.rows, m.cols);
    img.pixels = m.data;
    return img;
}

} // namespace wmark
