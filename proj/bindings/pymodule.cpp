#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wmark/attacks.hpp"
#include "wmark/metrics.hpp"
#include "wmark/samples.hpp"
#include "wmark/transforms.hpp"
#include "wmark/watermark.hpp"

namespace py = pybind11;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

wmark::GrayImage image_from_array(const DoubleArray& arr) {
    if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    wmark::GrayImage img(int(arr.shape(0)), int(arr.shape(1)));
    std::copy(arr.data(), arr.data() + arr.size(), img.pixels.begin());
    return img;
}

py::array_t<double> array_from_image(const wmark::GrayImage& img) {
    py::array_t<double> arr({img.rows, img.cols});
    std::copy(img.pixels.begin(), img.pixels.end(), arr.mutable_data());
    return arr;
}

wmark::Matrix matrix_from_array(const DoubleArray& arr) {
    if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    wmark::Matrix m(int(arr.shape(0)), int(arr.shape(1)));
    std::copy(arr.data(), arr.data() + arr.size(), m.data.begin());
    return m;
}

py::array_t<double> array_from_matrix(const wmark::Matrix& m) {
    py::array_t<double> arr({m.rows, m.cols});
    std::copy(m.data.begin(), m.data.end(), arr.mutable_data());
    return arr;
}

wmark::ExtractionResult result_from_candidates(const std::vector<DoubleArray>& candidates) {
    if (candidates.size() != 4)
        throw std::invalid_argument("expected exactly 4 candidates");
    wmark::ExtractionResult result;
    for (std::size_t i = 0; i < 4; ++i)
        result.candidates[i] = image_from_array(candidates[i]);
    return result;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Semi-blind grayscale image watermarking: wavelet/cosine/SVD "
              "pipeline with metrics and a deterministic attack suite.";

    py::class_<wmark::WatermarkKey>(m, "WatermarkKey")
        .def_readonly("alpha", &wmark::WatermarkKey::alpha)
        .def_readonly("host_side", &wmark::WatermarkKey::host_side)
        .def_readonly("wm_side", &wmark::WatermarkKey::wm_side)
        .def("save", &wmark::save_key, py::arg("path"))
        .def_static("load", &wmark::load_key, py::arg("path"))
        .def("__repr__", [](const wmark::WatermarkKey& k) {
            return "<WatermarkKey alpha=" + std::to_string(k.alpha) +
                   " host_side=" + std::to_string(k.host_side) + ">";
        });

    m.def("load_pgm",
          [](const std::string& path) { return array_from_image(wmark::load_pgm(path)); },
          py::arg("path"), "Read a binary PGM into a float64 array.");
    m.def("save_pgm",
          [](const DoubleArray& img, const std::string& path) {
              wmark::save_pgm(image_from_array(img), path);
          },
          py::arg("image"), py::arg("path"),
          "Write a quantized image as binary PGM.");
    m.def("quantize",
          [](const DoubleArray& img) {
              return array_from_image(wmark::quantize(image_from_array(img)));
          },
          py::arg("image"),
          "Round half away from zero and clamp to [0, 255].");

    m.def("embed",
          [](const DoubleArray& host, const DoubleArray& wm, double alpha) {
              wmark::EmbedResult r =
                  wmark::embed(image_from_array(host), image_from_array(wm), alpha);
              return py::make_tuple(array_from_image(r.watermarked), r.key);
          },
          py::arg("host"), py::arg("watermark"), py::arg("alpha"),
          "Embed a watermark; returns (watermarked, key).");
    m.def("extract",
          [](const DoubleArray& watermarked, const wmark::WatermarkKey& key) {
              wmark::ExtractionResult r =
                  wmark::extract(image_from_array(watermarked), key);
              py::list out;
              for (const auto& c : r.candidates) out.append(array_from_image(c));
              return out;
          },
          py::arg("watermarked"), py::arg("key"),
          "Extract the four per-quadrant candidates (unquantized).");
    m.def("best_candidate",
          [](const std::vector<DoubleArray>& candidates, const DoubleArray& reference) {
              const wmark::BestCandidate best = wmark::best_candidate(
                  result_from_candidates(candidates), image_from_array(reference));
              return py::make_tuple(best.quadrant, best.nc);
          },
          py::arg("candidates"), py::arg("reference"),
          "Pick the candidate with maximal NC; returns (quadrant, nc).");

    m.def("mse", [](const DoubleArray& a, const DoubleArray& b) {
        return wmark::mse(image_from_array(a), image_from_array(b));
    });
    m.def("psnr", [](const DoubleArray& a, const DoubleArray& b) {
        return wmark::psnr(image_from_array(a), image_from_array(b));
    });
    m.def("nc", [](const DoubleArray& w, const DoubleArray& w_prime) {
        return wmark::nc(image_from_array(w), image_from_array(w_prime));
    });

    m.def("apply_attack",
          [](const DoubleArray& img, const std::string& spec) {
              return array_from_image(wmark::apply_attack(
                  image_from_array(img), wmark::parse_attack_spec(spec)));
          },
          py::arg("image"), py::arg("spec"),
          "Apply an attack given its textual spec, e.g. "
          "'gaussian_noise:var=0.001,seed=7'.");
    m.def("rewatermark_attack",
          [](const DoubleArray& img, const DoubleArray& second_wm, double alpha) {
              return array_from_image(wmark::rewatermark_attack(
                  image_from_array(img), image_from_array(second_wm), alpha));
          },
          py::arg("watermarked"), py::arg("second_watermark"), py::arg("alpha"));
    m.def("collusion_attack",
          [](const std::vector<DoubleArray>& copies) {
              std::vector<wmark::GrayImage> images;
              images.reserve(copies.size());
              for (const auto& c : copies) images.push_back(image_from_array(c));
              return array_from_image(wmark::collusion_attack(images));
          },
          py::arg("copies"));

    m.def("dwt2", [](const DoubleArray& a) {
        const wmark::SubbandSet s = wmark::dwt2(matrix_from_array(a));
        return py::make_tuple(array_from_matrix(s.ll), array_from_matrix(s.hl),
                              array_from_matrix(s.lh), array_from_matrix(s.hh));
    });
    m.def("idwt2", [](const DoubleArray& ll, const DoubleArray& hl, const DoubleArray& lh,
                      const DoubleArray& hh) {
        return array_from_matrix(wmark::idwt2({matrix_from_array(ll), matrix_from_array(hl),
                                               matrix_from_array(lh),
                                               matrix_from_array(hh)}));
    });
    m.def("dct2",
          [](const DoubleArray& a) { return array_from_matrix(wmark::dct2(matrix_from_array(a))); });
    m.def("idct2",
          [](const DoubleArray& a) { return array_from_matrix(wmark::idct2(matrix_from_array(a))); });
    m.def("zigzag_to_quadrants", [](const DoubleArray& a) {
        const wmark::QuadrantSet q = wmark::zigzag_to_quadrants(matrix_from_array(a));
        return py::make_tuple(array_from_matrix(q.q1), array_from_matrix(q.q2),
                              array_from_matrix(q.q3), array_from_matrix(q.q4));
    });
    m.def("quadrants_to_matrix", [](const DoubleArray& q1, const DoubleArray& q2,
                                    const DoubleArray& q3, const DoubleArray& q4) {
        return array_from_matrix(wmark::quadrants_to_matrix(
            {matrix_from_array(q1), matrix_from_array(q2), matrix_from_array(q3),
             matrix_from_array(q4)}));
    });
    m.def("svd", [](const DoubleArray& a) {
        const wmark::SvdFactors f = wmark::svd(matrix_from_array(a));
        py::array_t<double> s(py::ssize_t(f.s.size()));
        std::copy(f.s.begin(), f.s.end(), s.mutable_data());
        return py::make_tuple(array_from_matrix(f.u), s, array_from_matrix(f.vt));
    });
    m.def("svd_reconstruct",
          [](const DoubleArray& u, const std::vector<double>& s, const DoubleArray& vt) {
              return array_from_matrix(
                  wmark::svd_reconstruct(matrix_from_array(u), s, matrix_from_array(vt)));
          });

    m.def("sample_host",
          [](int side, std::uint64_t seed) {
              return array_from_image(wmark::sample_host(side, seed));
          },
          py::arg("side"), py::arg("seed") = 7,
          "Deterministic synthetic host image (quantized).");
    m.def("sample_watermark",
          [](int side, std::uint64_t seed) {
              return array_from_image(wmark::sample_watermark(side, seed));
          },
          py::arg("side"), py::arg("seed") = 9,
          "Deterministic synthetic watermark image (quantized).");
}
