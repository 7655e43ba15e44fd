#pragma once

#include "vqkz/basis.hpp"

namespace vqkz {

// Gram-Schmidt data for a basis: orthogonal vectors b*_i, coefficients
// mu[i][j] = (b_i . b*_j) / ||b*_j||^2 for j < i, and cached ||b*_i||^2.
struct GsoData {
    std::vector<Vec> bstar;
    std::vector<std::vector<double>> mu;  // full r x r, zero above the diagonal
    std::vector<double> bstar_sq;

    int rank() const { return static_cast<int>(bstar.size()); }
};

inline constexpr double kDegenerateNorm = 1e-12;  // ||b*_i|| at or below this is degenerate
inline constexpr double kCheckTol = 1e-9;         // tolerance for condition checks

// Throws DegenerateBasis if any ||b*_i|| <= 1e-12 (linearly dependent input).
GsoData gram_schmidt(const Basis& basis);

// Vectors pi_begin(b_i) for i in [begin, end), in ambient coordinates, where
// pi_j projects orthogonally to b_1..b_j-1.  Indices are 0-based half-open;
// the projected block's own GSO equals the parent slice (bstar, mu restricted).
Basis project_block(const Basis& basis, const GsoData& gso, int begin, int end);

}  // namespace vqkz
