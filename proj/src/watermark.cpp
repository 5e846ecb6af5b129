#include "wmark/watermark.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "wmark/metrics.hpp"

namespace wmark {

namespace {

// Round to the 2^-40 grid. Host sub-bands of an integer image are exact
// multiples of 1/2, so after this snap every addition in the synthesis and
// re-analysis stays exactly representable: the untouched sub-bands of the
// synthesized image reproduce the host's bit for bit. The perturbation is
// below 5e-13 per entry, far inside the pipeline tolerances.
void snap_to_grid(Matrix& m) {
    constexpr double grid = 0x1.0p40;
    for (double& v : m.data) v = std::round(v * grid) / grid;
}

void check_embed_dims(const GrayImage& host, const GrayImage& wm, double alpha) {
    if (host.rows != host.cols) throw std::invalid_argument("host image must be square");
    if (host.rows % 4 != 0 || host.rows < 4)
        throw std::invalid_argument("host side must be divisible by 4");
    if (wm.rows != wm.cols) throw std::invalid_argument("watermark image must be square");
    if (wm.rows * 2 != host.rows)
        throw std::invalid_argument("watermark must be host_side/2");
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
}

void check_key(const WatermarkKey& key) {
    if (key.host_side < 4 || key.host_side % 4 != 0 || key.wm_side * 2 != key.host_side)
        throw std::invalid_argument("malformed key dimensions");
    const int q = key.host_side / 4;
    for (const auto& s : key.s_host)
        if (s.size() != std::size_t(q)) throw std::invalid_argument("malformed key singular values");
    for (const Matrix* m : {&key.u_w, &key.vt_w, &key.wm_ll, &key.wm_hl, &key.wm_lh})
        if (m->rows != q || m->cols != q) throw std::invalid_argument("malformed key matrices");
}

} // namespace

EmbedResult embed(const GrayImage& host, const GrayImage& wm, double alpha) {
    check_embed_dims(host, wm, alpha);

    const SubbandSet host_bands = dwt2(to_matrix(host));
    const Matrix h = dct2(host_bands.hh);
    const QuadrantSet q = zigzag_to_quadrants(h);
    const Matrix* quadrants[4] = {&q.q1, &q.q2, &q.q3, &q.q4};

    const SubbandSet wm_bands = dwt2(to_matrix(wm));
    const Matrix w = dct2(wm_bands.hh);
    const SvdFactors wf = svd(w);

    WatermarkKey key;
    key.alpha = alpha;
    key.host_side = host.rows;
    key.wm_side = wm.rows;
    key.u_w = wf.u;
    key.vt_w = wf.vt;
    key.wm_ll = wm_bands.ll;
    key.wm_hl = wm_bands.hl;
    key.wm_lh = wm_bands.lh;

    QuadrantSet shifted{q.q1, q.q2, q.q3, q.q4};
    Matrix* out_quadrants[4] = {&shifted.q1, &shifted.q2, &shifted.q3, &shifted.q4};
    for (int i = 0; i < 4; ++i) {
        const SvdFactors qf = svd(*quadrants[i]);
        key.s_host[std::size_t(i)] = qf.s;
        std::vector<double> s_shifted(qf.s.size());
        for (std::size_t k = 0; k < qf.s.size(); ++k)
            s_shifted[k] = qf.s[k] + alpha * wf.s[k];
        *out_quadrants[i] = svd_reconstruct(qf.u, s_shifted, qf.vt);
    }

    Matrix hh_star = idct2(quadrants_to_matrix(shifted));
    snap_to_grid(hh_star);

    EmbedResult result;
    result.watermarked_real =
        to_image(idwt2({host_bands.ll, host_bands.hl, host_bands.lh, hh_star}));
    result.watermarked = quantize(result.watermarked_real);
    result.key = std::move(key);
    return result;
}

ExtractionResult extract(const GrayImage& watermarked, const WatermarkKey& key) {
    check_key(key);
    if (!(key.alpha > 0.0)) throw std::invalid_argument("degenerate key (alpha must be > 0)");
    if (watermarked.rows != key.host_side || watermarked.cols != key.host_side)
        throw std::invalid_argument("watermarked image does not match key host_side");

    const SubbandSet bands = dwt2(to_matrix(watermarked));
    const Matrix w = dct2(bands.hh);
    const QuadrantSet q = zigzag_to_quadrants(w);
    const Matrix* quadrants[4] = {&q.q1, &q.q2, &q.q3, &q.q4};

    ExtractionResult result;
    for (int i = 0; i < 4; ++i) {
        const std::vector<double> s_attacked = svd(*quadrants[i]).s;
        std::vector<double>& s_hat = result.s_w_hat[std::size_t(i)];
        s_hat.resize(s_attacked.size());
        const std::vector<double>& s_host = key.s_host[std::size_t(i)];
        for (std::size_t k = 0; k < s_attacked.size(); ++k)
            s_hat[k] = (s_attacked[k] - s_host[k]) / key.alpha; // may go negative; kept
        const Matrix w_hat = svd_reconstruct(key.u_w, s_hat, key.vt_w);
        const Matrix hh = idct2(w_hat);
        result.candidates[std::size_t(i)] =
            to_image(idwt2({key.wm_ll, key.wm_hl, key.wm_lh, hh}));
    }
    return result;
}

BestCandidate best_candidate(const ExtractionResult& result, const GrayImage& reference) {
    BestCandidate best;
    for (int i = 0; i < 4; ++i) {
        const double value = nc(reference, result.candidates[std::size_t(i)]);
        if (i == 0 || value > best.nc) {
            best.quadrant = ExtractionResult::quadrant_label(i);
            best.nc = value;
        }
    }
    return best;
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "key file I/O assumes a little-endian host");

constexpr char kKeyMagic[4] = {'W', 'M', 'K', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    char buf[4];
    std::memcpy(buf, &v, 4);
    out.append(buf, 4);
}

void put_f64(std::string& out, double v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.append(buf, 8);
}

void put_doubles(std::string& out, const std::vector<double>& values) {
    const std::size_t bytes = values.size() * 8;
    const std::size_t at = out.size();
    out.resize(at + bytes);
    std::memcpy(out.data() + at, values.data(), bytes);
}

class KeyReader {
public:
    explicit KeyReader(std::string bytes) : bytes_(std::move(bytes)) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v;
        std::memcpy(&v, bytes_.data() + pos_, 4);
        pos_ += 4;
        return v;
    }

    double f64() {
        need(8);
        double v;
        std::memcpy(&v, bytes_.data() + pos_, 8);
        pos_ += 8;
        return v;
    }

    std::vector<double> doubles(std::size_t count) {
        need(count * 8);
        std::vector<double> v(count);
        std::memcpy(v.data(), bytes_.data() + pos_, count * 8);
        pos_ += count * 8;
        return v;
    }

    void magic() {
        need(4);
        if (std::memcmp(bytes_.data(), kKeyMagic, 4) != 0)
            throw std::runtime_error("bad key magic");
        pos_ += 4;
    }

    bool exhausted() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n) {
        if (bytes_.size() - pos_ < n) throw std::runtime_error("truncated key");
    }

    std::string bytes_;
    std::size_t pos_ = 0;
};

} // namespace

void save_key(const WatermarkKey& key, const std::string& path) {
    check_key(key);
    std::string out;
    out.append(kKeyMagic, 4);
    put_u32(out, std::uint32_t(key.host_side));
    put_u32(out, std::uint32_t(key.wm_side));
    put_f64(out, key.alpha);
    for (const auto& s : key.s_host) put_doubles(out, s);
    for (const Matrix* m : {&key.u_w, &key.vt_w, &key.wm_ll, &key.wm_hl, &key.wm_lh})
        put_doubles(out, m->data);

    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open file '" + path + "' for writing");
    file.write(out.data(), std::streamsize(out.size()));
    if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

WatermarkKey load_key(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open file '" + path + "'");
    std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());

    KeyReader reader(std::move(bytes));
    reader.magic();

    WatermarkKey key;
    key.host_side = int(reader.u32());
    key.wm_side = int(reader.u32());
    if (key.host_side < 4 || key.host_side % 4 != 0 || key.wm_side * 2 != key.host_side)
        throw std::runtime_error("malformed key dimensions");
    key.alpha = reader.f64();
    if (!std::isfinite(key.alpha)) throw std::runtime_error("malformed key alpha");

    const int q = key.host_side / 4;
    for (auto& s : key.s_host) s = reader.doubles(std::size_t(q));
    for (Matrix* m : {&key.u_w, &key.vt_w, &key.wm_ll, &key.wm_hl, &key.wm_lh}) {
        *m = Matrix(q, q);
        m->data = reader.doubles(std::size_t(q) * q);
    }
    if (!reader.exhausted()) throw std::runtime_error("trailing bytes in key file");
    return key;
}

} // namespace wmark
