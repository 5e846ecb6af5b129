#pragma once

#include <string>
#include <vector>

#include "wmark/matrix.hpp"

namespace wmark {

/// Grayscale image with intensities stored as doubles.
///
/// A quantized image holds integers in [0, 255]; intermediate pipeline
/// images may hold any finite real values.
struct GrayImage {
    int rows = 0;
    int cols = 0;
    std::vector<double> pixels; // row-major

    GrayImage() = default;
    GrayImage(int r, int c, double fill = 0.0);

    double& operator()(int r, int c) { return pixels[std::size_t(r) * cols + c]; }
    double operator()(int r, int c) const { return pixels[std::size_t(r) * cols + c]; }

    bool same_shape(const GrayImage& o) const { return rows == o.rows && cols == o.cols; }
};

/// Reads a binary PGM ("P5", maxval 255). Header comments ('#') are skipped.
GrayImage load_pgm(const std::string& path);

/// Writes a binary PGM with header "P5\n<cols> <rows>\n255\n".
/// The image must already be quantized.
void save_pgm(const GrayImage& img, const std::string& path);

/// Rounds every pixel half away from zero, then clamps to [0, 255].
GrayImage quantize(const GrayImage& img);

/// True when every pixel is an integer in [0, 255].
bool is_quantized(const GrayImage& img);

Matrix to_matrix(const GrayImage& img);
GrayImage to_image(const Matrix& m);

} // namespace wmark
