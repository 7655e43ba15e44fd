#pragma once

#include "vqkz/basis.hpp"
#include "vqkz/gso.hpp"

namespace vqkz {

enum class LllMode {
    strict,              // input must be linearly independent
    remove_dependencies  // generating sets allowed; dependent directions are
                         // driven to zero vectors by swaps and dropped
};

// One full size-reduction pass: afterwards |mu[i][j]| <= 1/2 for all j < i.
// The Gram-Schmidt vectors are unchanged.  Throws DegenerateBasis on
// dependent input.
Basis size_reduce(const Basis& basis);

// Classic delta-LLL with in-loop size reduction.  delta must lie in the open
// interval (1/4, 1); otherwise InvalidDelta.  In remove_dependencies mode the
// output rank equals the rank of the input span; vectors whose norm falls
// below the degeneracy tolerance are removed.
Basis lll_reduce(const Basis& basis, double delta, LllMode mode = LllMode::strict);

// Both Def.-style conditions within 1e-9: |mu[i][j]| <= 1/2 and
// delta ||b*_{i-1}||^2 <= ||b*_i + mu[i][i-1] b*_{i-1}||^2.
bool is_lll_reduced(const Basis& basis, double delta);

}  // namespace vqkz
