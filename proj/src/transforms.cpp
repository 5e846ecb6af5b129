#include "wmark/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace wmark {

namespace {

void require_even(const Matrix& m) {
    if (m.rows % 2 != 0 || m.cols % 2 != 0)
        throw std::invalid_argument("wavelet analysis requires even dimensions");
}

void require_square(const Matrix& m, const char* op) {
    if (!m.is_square())
        throw std::invalid_argument(std::string(op) + " requires a square matrix");
}

} // namespace

// The two Haar passes are computed with unscaled butterflies and the whole
// 1/2 normalization applied once in the second pass. Multiplying by 0.5 is
// exact, so integer-valued input produces exactly representable sub-bands
// and the analysis/synthesis pair is lossless on such data.
SubbandSet dwt2(const Matrix& m) {
    require_even(m);
    const int hr = m.rows / 2, hc = m.cols / 2;

    Matrix rsum(m.rows, hc), rdiff(m.rows, hc);
    for (int r = 0; r < m.rows; ++r) {
        for (int j = 0; j < hc; ++j) {
            const double x0 = m(r, 2 * j), x1 = m(r, 2 * j + 1);
            rsum(r, j) = x0 + x1;
            rdiff(r, j) = x0 - x1;
        }
    }

    SubbandSet out{Matrix(hr, hc), Matrix(hr, hc), Matrix(hr, hc), Matrix(hr, hc)};
    for (int k = 0; k < hr; ++k) {
        for (int j = 0; j < hc; ++j) {
            const double s0 = rsum(2 * k, j), s1 = rsum(2 * k + 1, j);
            const double d0 = rdiff(2 * k, j), d1 = rdiff(2 * k + 1, j);
            out.ll(k, j) = (s0 + s1) * 0.5;
            out.lh(k, j) = (s0 - s1) * 0.5;
            out.hl(k, j) = (d0 + d1) * 0.5;
            out.hh(k, j) = (d0 - d1) * 0.5;
        }
    }
    return out;
}

Matrix idwt2(const SubbandSet& s) {
    if (!s.ll.same_shape(s.hl) || !s.ll.same_shape(s.lh) || !s.ll.same_shape(s.hh))
        throw std::invalid_argument("sub-band size mismatch");
    const int hr = s.ll.rows, hc = s.ll.cols;

    Matrix rsum(2 * hr, hc), rdiff(2 * hr, hc);
    for (int k = 0; k < hr; ++k) {
        for (int j = 0; j < hc; ++j) {
            rsum(2 * k, j) = s.ll(k, j) + s.lh(k, j);
            rsum(2 * k + 1, j) = s.ll(k, j) - s.lh(k, j);
            rdiff(2 * k, j) = s.hl(k, j) + s.hh(k, j);
            rdiff(2 * k + 1, j) = s.hl(k, j) - s.hh(k, j);
        }
    }

    Matrix out(2 * hr, 2 * hc);
    for (int r = 0; r < out.rows; ++r) {
        for (int j = 0; j < hc; ++j) {
            const double sv = rsum(r, j), dv = rdiff(r, j);
            out(r, 2 * j) = (sv + dv) * 0.5;
            out(r, 2 * j + 1) = (sv - dv) * 0.5;
        }
    }
    return out;
}

namespace {

// Orthonormal DCT-II basis: row u holds c(u) * cos(pi*(2i+1)*u / (2N)).
Matrix dct_basis(int n) {
    Matrix c(n, n);
    const double scale0 = std::sqrt(1.0 / n);
    const double scale = std::sqrt(2.0 / n);
    for (int u = 0; u < n; ++u) {
        const double cu = (u == 0) ? scale0 : scale;
        for (int i = 0; i < n; ++i)
            c(u, i) = cu * std::cos(std::numbers::pi * (2.0 * i + 1.0) * u / (2.0 * n));
    }
    return c;
}

} // namespace

Matrix dct2(const Matrix& m) {
    require_square(m, "dct2");
    const Matrix c = dct_basis(m.rows);
    return multiply(multiply(c, m), transpose(c));
}

Matrix idct2(const Matrix& m) {
    require_square(m, "idct2");
    const Matrix c = dct_basis(m.rows);
    return multiply(multiply(transpose(c), m), c);
}

namespace {

std::vector<std::pair<int, int>> zigzag_positions(int n) {
    std::vector<std::pair<int, int>> pos;
    pos.reserve(std::size_t(n) * n);
    for (int s = 0; s <= 2 * n - 2; ++s) {
        const int lo = std::max(0, s - n + 1);
        const int hi = std::min(s, n - 1);
        if (s % 2 == 1) {
            for (int i = lo; i <= hi; ++i) pos.emplace_back(i, s - i);
        } else {
            for (int i = hi; i >= lo; --i) pos.emplace_back(i, s - i);
        }
    }
    return pos;
}

} // namespace

std::vector<double> zigzag_scan(const Matrix& m) {
    require_square(m, "zigzag_scan");
    std::vector<double> out;
    out.reserve(m.data.size());
    for (auto [r, c] : zigzag_positions(m.rows)) out.push_back(m(r, c));
    return out;
}

QuadrantSet zigzag_to_quadrants(const Matrix& m) {
    require_square(m, "zigzag_to_quadrants");
    if (m.rows % 2 != 0)
        throw std::invalid_argument("zigzag quadrant mapping requires even size");
    const int h = m.rows / 2;
    const std::size_t seg = std::size_t(h) * h;
    const std::vector<double> z = zigzag_scan(m);

    QuadrantSet q{Matrix(h, h), Matrix(h, h), Matrix(h, h), Matrix(h, h)};
    Matrix* dest[4] = {&q.q1, &q.q2, &q.q3, &q.q4};
    for (int b = 0; b < 4; ++b)
        std::copy(z.begin() + long(b * seg), z.begin() + long((b + 1) * seg),
                  dest[b]->data.begin());
    return q;
}

Matrix quadrants_to_matrix(const QuadrantSet& q) {
    if (!q.q1.same_shape(q.q2) || !q.q1.same_shape(q.q3) || !q.q1.same_shape(q.q4))
        throw std::invalid_argument("quadrant size mismatch");
    if (!q.q1.is_square()) throw std::invalid_argument("quadrants must be square");
    const int h = q.q1.rows;
    const int n = 2 * h;
    const std::size_t seg = std::size_t(h) * h;

    Matrix out(n, n);
    const Matrix* src[4] = {&q.q1, &q.q2, &q.q3, &q.q4};
    const auto pos = zigzag_positions(n);
    for (std::size_t idx = 0; idx < pos.size(); ++idx) {
        const auto [r, c] = pos[idx];
        out(r, c) = src[idx / seg]->data[idx % seg];
    }
    return out;
}

namespace {

constexpr double kSvdTol = 1e-12;

// One-sided Jacobi: orthogonalize column pairs of a working copy; the
// accumulated rotations form V, column norms the singular values.
struct JacobiState {
    Matrix a;
    Matrix v;
};

bool jacobi_sweep(JacobiState& st, double& worst_rel) {
    const int n = st.a.rows;
    bool rotated = false;
    worst_rel = 0.0;
    for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double alpha = 0.0, beta = 0.0, gamma = 0.0;
            for (int k = 0; k < n; ++k) {
                const double ai = st.a(k, i), aj = st.a(k, j);
                alpha += ai * ai;
                beta += aj * aj;
                gamma += ai * aj;
            }
            const double denom = std::sqrt(alpha) * std::sqrt(beta);
            if (denom == 0.0) continue;
            const double rel = std::abs(gamma) / denom;
            worst_rel = std::max(worst_rel, rel);
            if (rel <= kSvdTol) continue;

            const double zeta = (beta - alpha) / (2.0 * gamma);
            double t;
            if (std::abs(zeta) > 1e8) {
                t = 1.0 / (2.0 * zeta);
            } else {
                const double sign = (zeta >= 0.0) ? 1.0 : -1.0;
                t = sign / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
            }
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = c * t;
            for (int k = 0; k < n; ++k) {
                const double ai = st.a(k, i), aj = st.a(k, j);
                st.a(k, i) = c * ai - s * aj;
                st.a(k, j) = s * ai + c * aj;
                const double vi = st.v(k, i), vj = st.v(k, j);
                st.v(k, i) = c * vi - s * vj;
                st.v(k, j) = s * vi + c * vj;
            }
            rotated = true;
        }
    }
    return rotated;
}

// Fills a zero column of U with a unit vector orthogonal to all columns in
// `filled`, picking the standard basis vector with the largest residual
// (ties to the lowest index) so the choice is deterministic.
void complete_column(Matrix& u, const std::vector<int>& filled, int target) {
    const int n = u.rows;
    auto residual = [&](int m, std::vector<double>& r) {
        r.assign(std::size_t(n), 0.0);
        r[std::size_t(m)] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int col : filled) {
                double dot = 0.0;
                for (int k = 0; k < n; ++k) dot += u(k, col) * r[std::size_t(k)];
                for (int k = 0; k < n; ++k) r[std::size_t(k)] -= dot * u(k, col);
            }
        }
        double norm2 = 0.0;
        for (double x : r) norm2 += x * x;
        return norm2;
    };

    int best_m = 0;
    double best_norm2 = -1.0;
    std::vector<double> r;
    for (int m = 0; m < n; ++m) {
        const double n2 = residual(m, r);
        if (n2 > best_norm2) {
            best_norm2 = n2;
            best_m = m;
        }
    }
    residual(best_m, r);
    const double norm = std::sqrt(best_norm2);
    for (int k = 0; k < n; ++k) u(k, target) = r[std::size_t(k)] / norm;
}

} // namespace

SvdFactors svd(const Matrix& m) {
    require_square(m, "svd");
    const int n = m.rows;

    JacobiState st{m, identity(n)};
    const long max_sweeps = 100L * n;
    bool converged = false;
    double worst_rel = 0.0;
    for (long sweep = 0; sweep < max_sweeps; ++sweep) {
        if (!jacobi_sweep(st, worst_rel)) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "svd did not converge within " << max_sweeps
            << " sweeps (residual " << worst_rel << ")";
        throw std::runtime_error(msg.str());
    }

    std::vector<double> norms(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += st.a(k, j) * st.a(k, j);
        norms[std::size_t(j)] = std::sqrt(acc);
    }

    std::vector<int> order(static_cast<std::size_t>(n), 0);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return norms[std::size_t(a)] > norms[std::size_t(b)];
    });

    SvdFactors f;
    f.u = Matrix(n, n);
    f.s.resize(std::size_t(n));
    Matrix v_sorted(n, n);
    std::vector<int> filled;
    for (int p = 0; p < n; ++p) {
        const int src = order[std::size_t(p)];
        const double sv = norms[std::size_t(src)];
        f.s[std::size_t(p)] = sv;
        for (int k = 0; k < n; ++k) v_sorted(k, p) = st.v(k, src);
        if (sv > 0.0) {
            for (int k = 0; k < n; ++k) f.u(k, p) = st.a(k, src) / sv;
            filled.push_back(p);
        }
    }
    for (int p = 0; p < n; ++p) {
        if (f.s[std::size_t(p)] > 0.0) continue;
        complete_column(f.u, filled, p);
        filled.push_back(p);
    }
    f.vt = transpose(v_sorted);
    return f;
}

Matrix svd_reconstruct(const Matrix& u, const std::vector<double>& s, const Matrix& vt) {
    if (!u.is_square() || !vt.is_square() || u.rows != vt.rows ||
        s.size() != std::size_t(u.rows))
        throw std::invalid_argument("svd_reconstruct shape mismatch");
    const int n = u.rows;
    Matrix us(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) us(i, k) = u(i, k) * s[std::size_t(k)];
    return multiply(us, vt);
}

} // namespace wmark
