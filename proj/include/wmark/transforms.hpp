#pragma once

#include <vector>

#include "wmark/matrix.hpp"

namespace wmark {

/// The four sub-bands of one level of 2-D wavelet analysis. Each band is
/// half the source size in both dimensions.
struct SubbandSet {
    Matrix ll; // approximation
    Matrix hl; // horizontal detail
    Matrix lh; // vertical detail
    Matrix hh; // diagonal detail
};

/// Four equal square matrices holding a zigzag-partitioned coefficient
/// matrix. q1 is the lowest-frequency segment, q4 the highest.
struct QuadrantSet {
    Matrix q1, q2, q3, q4;
};

/// Factors of A = U * diag(s) * V^T with orthogonal U, V and singular
/// values sorted non-increasing, all non-negative.
struct SvdFactors {
    Matrix u;
    std::vector<double> s;
    Matrix vt; // stored already transposed
};

/// Single-level orthonormal Haar analysis. Along each row, pairs (x0, x1)
/// map to (x0+x1)/sqrt(2) and (x0-x1)/sqrt(2); the same filter runs along
/// columns. Requires even dimensions.
///
/// The per-band normalization of 1/2 is applied as a single exact scaling,
/// so integer-valued input yields exactly representable sub-band values.
SubbandSet dwt2(const Matrix& m);

/// Exact inverse of dwt2; output is twice each sub-band dimension.
Matrix idwt2(const SubbandSet& s);

/// Orthonormal 2-D DCT-II of a square matrix.
Matrix dct2(const Matrix& m);

/// Inverse of dct2.
Matrix idct2(const Matrix& m);

/// JPEG-style zigzag traversal of a square matrix: anti-diagonals
/// s = i+j ascending; odd diagonals walk i ascending, even ones descending.
/// First element is (0,0), second (0,1).
std::vector<double> zigzag_scan(const Matrix& m);

/// Splits the zigzag sequence of an NxN matrix (N even) into four equal
/// segments and reshapes each row-major into an (N/2)x(N/2) quadrant.
QuadrantSet zigzag_to_quadrants(const Matrix& m);

/// Exact inverse permutation of zigzag_to_quadrants (no arithmetic).
Matrix quadrants_to_matrix(const QuadrantSet& q);

/// Deterministic SVD of a square matrix by one-sided Jacobi rotations.
/// Sweeps run in a fixed pair order; a pair is rotated when its relative
/// off-diagonal exceeds 1e-12; the sweep cap is 100*n.
SvdFactors svd(const Matrix& m);

/// Returns U * diag(s) * V^T. Entries of s may be negative.
Matrix svd_reconstruct(const Matrix& u, const std::vector<double>& s, const Matrix& vt);

} // namespace wmark
