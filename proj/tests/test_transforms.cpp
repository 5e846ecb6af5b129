#include <cstring>

#include "doctest.h"
#include "support/oracles.hpp"
#include "wmark/transforms.hpp"

using namespace wmark;
using testsupport::random_matrix;

TEST_CASE("dwt2 of a constant block concentrates into ll") {
    Matrix m(2, 2, 3.5);
    const SubbandSet s = dwt2(m);
    CHECK(s.ll(0, 0) == 7.0);
    CHECK(s.hl(0, 0) == 0.0);
    CHECK(s.lh(0, 0) == 0.0);
    CHECK(s.hh(0, 0) == 0.0);
}

TEST_CASE("dwt2 maps vertical stripes to hl") {
    Matrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = -1;
    m(1, 0) = 1;
    m(1, 1) = -1;
    const SubbandSet s = dwt2(m);
    CHECK(s.ll(0, 0) == 0.0);
    CHECK(s.hl(0, 0) == 2.0);
    CHECK(s.lh(0, 0) == 0.0);
    CHECK(s.hh(0, 0) == 0.0);
}

TEST_CASE("dwt2 preserves energy") {
    const Matrix m = random_matrix(8, 8, 21);
    const SubbandSet s = dwt2(m);
    double band_energy = 0.0;
    for (const Matrix* b : {&s.ll, &s.hl, &s.lh, &s.hh})
        for (double v : b->data) band_energy += v * v;
    double energy = 0.0;
    for (double v : m.data) energy += v * v;
    CHECK(band_energy == doctest::Approx(energy).epsilon(1e-12));
}

TEST_CASE("dwt2 rejects odd dimensions") {
    CHECK_THROWS_AS(dwt2(Matrix(3, 4)), std::invalid_argument);
    CHECK_THROWS_AS(dwt2(Matrix(4, 5)), std::invalid_argument);
}

TEST_CASE("idwt2 inverts dwt2") {
    const Matrix m = random_matrix(16, 16, 22, -50.0, 50.0);
    const Matrix back = idwt2(dwt2(m));
    CHECK(max_abs_diff(m, back) < 1e-9);
}

TEST_CASE("idwt2 of a lone ll coefficient gives a constant block") {
    SubbandSet s{Matrix(1, 1, 6.0), Matrix(1, 1), Matrix(1, 1), Matrix(1, 1)};
    const Matrix m = idwt2(s);
    for (double v : m.data) CHECK(v == 3.0);
}

TEST_CASE("idwt2 of zero sub-bands is zero") {
    SubbandSet s{Matrix(4, 4), Matrix(4, 4), Matrix(4, 4), Matrix(4, 4)};
    for (double v : idwt2(s).data) CHECK(v == 0.0);
}

TEST_CASE("idwt2 rejects mismatched sub-bands") {
    SubbandSet s{Matrix(2, 2), Matrix(2, 2), Matrix(2, 2), Matrix(4, 4)};
    CHECK_THROWS_AS(idwt2(s), std::invalid_argument);
}

TEST_CASE("dct2 of a constant block is DC only") {
    const double c = 4.25;
    const Matrix f = dct2(Matrix(2, 2, c));
    CHECK(f(0, 0) == doctest::Approx(2.0 * c).epsilon(1e-12));
    CHECK(std::abs(f(0, 1)) < 1e-12);
    CHECK(std::abs(f(1, 0)) < 1e-12);
    CHECK(std::abs(f(1, 1)) < 1e-12);
}

TEST_CASE("dct2 of a single sample is the identity") {
    Matrix m(1, 1, -7.5);
    CHECK(dct2(m)(0, 0) == -7.5);
    CHECK(idct2(m)(0, 0) == -7.5);
}

TEST_CASE("dct2 matches the direct quadruple-loop evaluation") {
    const Matrix m = random_matrix(8, 8, 23, -10.0, 10.0);
    CHECK(max_abs_diff(dct2(m), testsupport::direct_dct2(m)) < 1e-9);
}

TEST_CASE("dct2 preserves the Frobenius norm") {
    const Matrix m = random_matrix(8, 8, 24);
    CHECK(frobenius_norm(dct2(m)) ==
          doctest::Approx(frobenius_norm(m)).epsilon(1e-12));
}

TEST_CASE("idct2 inverts dct2") {
    const Matrix m = random_matrix(16, 16, 25, -100.0, 100.0);
    CHECK(max_abs_diff(idct2(dct2(m)), m) < 1e-9);
}

TEST_CASE("idct2 of a DC-only matrix is constant") {
    const int n = 4;
    const double c = 2.5;
    Matrix f(n, n);
    f(0, 0) = n * c;
    const Matrix m = idct2(f);
    for (double v : m.data) CHECK(v == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("idct2 of zero is zero") {
    for (double v : idct2(Matrix(5, 5)).data) CHECK(v == 0.0);
}

TEST_CASE("dct2 rejects non-square input") {
    CHECK_THROWS_AS(dct2(Matrix(2, 4)), std::invalid_argument);
    CHECK_THROWS_AS(idct2(Matrix(4, 2)), std::invalid_argument);
}

TEST_CASE("zigzag_scan of 2x2 is row-then-column order") {
    Matrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 3;
    m(1, 1) = 4;
    CHECK(zigzag_scan(m) == std::vector<double>{1, 2, 3, 4});
}

TEST_CASE("zigzag_scan of 4x4 follows the standard traversal") {
    Matrix m(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = r * 4 + c;
    // hand-enumerated: (0,0),(0,1),(1,0),(2,0),(1,1),(0,2),(0,3),(1,2),
    //                  (2,1),(3,0),(3,1),(2,2),(1,3),(2,3),(3,2),(3,3)
    const std::vector<double> expected = {0, 1, 4, 8, 5, 2, 3, 6, 9, 12, 13, 10, 7, 11, 14, 15};
    CHECK(zigzag_scan(m) == expected);
}

TEST_CASE("zigzag_scan of 1x1") {
    CHECK(zigzag_scan(Matrix(1, 1, 9.0)) == std::vector<double>{9});
}

TEST_CASE("zigzag_to_quadrants splits a 2x2 matrix elementwise") {
    Matrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 3;
    m(1, 1) = 4;
    const QuadrantSet q = zigzag_to_quadrants(m);
    CHECK(q.q1(0, 0) == 1);
    CHECK(q.q2(0, 0) == 2);
    CHECK(q.q3(0, 0) == 3);
    CHECK(q.q4(0, 0) == 4);
}

TEST_CASE("zigzag_to_quadrants fills quadrants row-major in scan order") {
    // entries hold their own zigzag rank
    Matrix m(4, 4);
    const Matrix ranks = [] {
        Matrix t(4, 4);
        const std::vector<std::pair<int, int>> order = {
            {0, 0}, {0, 1}, {1, 0}, {2, 0}, {1, 1}, {0, 2}, {0, 3}, {1, 2},
            {2, 1}, {3, 0}, {3, 1}, {2, 2}, {1, 3}, {2, 3}, {3, 2}, {3, 3}};
        for (std::size_t k = 0; k < order.size(); ++k)
            t(order[k].first, order[k].second) = double(k);
        return t;
    }();
    const QuadrantSet q = zigzag_to_quadrants(ranks);
    CHECK(q.q1.data == std::vector<double>{0, 1, 2, 3});
    CHECK(q.q2.data == std::vector<double>{4, 5, 6, 7});
    CHECK(q.q3.data == std::vector<double>{8, 9, 10, 11});
    CHECK(q.q4.data == std::vector<double>{12, 13, 14, 15});
}

TEST_CASE("quadrant mapping round trip is bit exact") {
    const Matrix m = random_matrix(8, 8, 26, -1e6, 1e6);
    const Matrix back = quadrants_to_matrix(zigzag_to_quadrants(m));
    REQUIRE(back.data.size() == m.data.size());
    CHECK(std::memcmp(back.data.data(), m.data.data(),
                      m.data.size() * sizeof(double)) == 0);
}

TEST_CASE("quadrants_to_matrix of zeros is zero") {
    QuadrantSet q{Matrix(2, 2), Matrix(2, 2), Matrix(2, 2), Matrix(2, 2)};
    for (double v : quadrants_to_matrix(q).data) CHECK(v == 0.0);
}

TEST_CASE("quadrant mapping rejects bad shapes") {
    CHECK_THROWS_AS(zigzag_to_quadrants(Matrix(3, 3)), std::invalid_argument);
    QuadrantSet q{Matrix(2, 2), Matrix(2, 2), Matrix(2, 2), Matrix(3, 3)};
    CHECK_THROWS_AS(quadrants_to_matrix(q), std::invalid_argument);
}
