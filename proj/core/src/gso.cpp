#include "vqkz/gso.hpp"

#include <cmath>
#include <string>

#include "vqkz/errors.hpp"

namespace vqkz {

GsoData gram_schmidt(const Basis& basis) {
    const int r = basis.rank();
    GsoData gso;
    gso.bstar.resize(r);
    gso.mu.assign(r, std::vector<double>(r, 0.0));
    gso.bstar_sq.assign(r, 0.0);

    for (int i = 0; i < r; ++i) {
        Vec v = basis.vectors[i];
        for (int j = 0; j < i; ++j) {
            const double m = dot(basis.vectors[i], gso.bstar[j]) / gso.bstar_sq[j];
            gso.mu[i][j] = m;
            for (int t = 0; t < basis.dim; ++t) v[t] -= m * gso.bstar[j][t];
        }
        gso.mu[i][i] = 1.0;
        gso.bstar_sq[i] = norm_sq(v);
        if (gso.bstar_sq[i] <= kDegenerateNorm * kDegenerateNorm)
            throw DegenerateBasis("vector " + std::to_string(i + 1) +
                                  " is linearly dependent on its predecessors");
        gso.bstar[i] = std::move(v);
    }
    return gso;
}

Basis project_block(const Basis& basis, const GsoData& gso, int begin, int end) {
    const int r = basis.rank();
    if (begin < 0 || end > r || begin >= end)
        throw IndexOutOfRange("block [" + std::to_string(begin) + ", " + std::to_string(end) +
                              ") out of range for rank " + std::to_string(r));

    Basis block;
    block.dim = basis.dim;
    for (int i = begin; i < end; ++i) {
        // pi_begin(b_i) = b_i - sum_{j<begin} mu[i][j] b*_j
        Vec v = basis.vectors[i];
        for (int j = 0; j < begin; ++j) {
            const double m = gso.mu[i][j];
            for (int t = 0; t < basis.dim; ++t) v[t] -= m * gso.bstar[j][t];
        }
        block.vectors.push_back(std::move(v));
    }
    return block;
}

}  // namespace vqkz
