#include "vqkz/lll.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "vqkz/errors.hpp"

namespace vqkz {

namespace {

// Gram-Schmidt rows 0..upto that tolerates dependent vectors: a row whose
// projection is (numerically) zero gets bstar_sq = 0 and is skipped as a
// projection direction for later rows.
struct RawGso {
    std::vector<Vec> bstar;
    std::vector<std::vector<double>> mu;
    std::vector<double> bstar_sq;
};

RawGso raw_gso(const std::vector<Vec>& vecs, int dim, int upto, double zero_sq) {
    RawGso g;
    const int n = upto + 1;
    g.bstar.resize(n);
    g.mu.assign(n, std::vector<double>(n, 0.0));
    g.bstar_sq.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        Vec v = vecs[i];
        for (int j = 0; j < i; ++j) {
            if (g.bstar_sq[j] <= zero_sq) continue;
            const double m = dot(vecs[i], g.bstar[j]) / g.bstar_sq[j];
            g.mu[i][j] = m;
            for (int t = 0; t < dim; ++t) v[t] -= m * g.bstar[j][t];
        }
        g.mu[i][i] = 1.0;
        const double sq = norm_sq(v);
        g.bstar_sq[i] = sq <= zero_sq ? 0.0 : sq;
        g.bstar[i] = std::move(v);
    }
    return g;
}

// Subtract rounded mu multiples of earlier vectors from vecs[k]; mu row k is
// kept consistent so the final mu[k][k-1] can feed the Lovasz check.
void size_reduce_row(std::vector<Vec>& vecs, int dim, RawGso& g, int k, double zero_sq) {
    for (int j = k - 1; j >= 0; --j) {
        if (g.bstar_sq[j] <= zero_sq) continue;
        const double c = std::nearbyint(g.mu[k][j]);
        if (c == 0.0) continue;
        for (int t = 0; t < dim; ++t) vecs[k][t] -= c * vecs[j][t];
        for (int t = 0; t <= j; ++t) g.mu[k][t] -= c * g.mu[j][t];
    }
}

double input_scale(const Basis& basis) {
    double s = 1.0;
    for (const auto& v : basis.vectors) s = std::max(s, std::sqrt(norm_sq(v)));
    return s;
}

}  // namespace

Basis size_reduce(const Basis& basis) {
    GsoData gso = gram_schmidt(basis);  // validates independence
    Basis out = basis;
    for (int i = 1; i < out.rank(); ++i) {
        for (int j = i - 1; j >= 0; --j) {
            const double c = std::nearbyint(gso.mu[i][j]);
            if (c == 0.0) continue;
            for (int t = 0; t < out.dim; ++t) out.vectors[i][t] -= c * out.vectors[j][t];
            for (int t = 0; t <= j; ++t) gso.mu[i][t] -= c * gso.mu[j][t];
        }
    }
    return out;
}

Basis lll_reduce(const Basis& basis, double delta, LllMode mode) {
    if (!(delta > 0.25 && delta < 1.0))
        throw InvalidDelta("delta = " + std::to_string(delta) + " outside (1/4, 1)");

    const bool removal = mode == LllMode::remove_dependencies;
    const double zero_norm = kDegenerateNorm * input_scale(basis);
    const double zero_sq = zero_norm * zero_norm;

    std::vector<Vec> vecs = basis.vectors;
    const int dim = basis.dim;

    if (removal) {
        std::erase_if(vecs, [&](const Vec& v) { return norm_sq(v) <= zero_sq; });
    }

    int k = 1;
    long long guard = 0;
    const long long max_steps = 20'000'000;
    while (k < static_cast<int>(vecs.size())) {
        if (++guard > max_steps) throw Error("lll_reduce exceeded its iteration budget");

        RawGso g = raw_gso(vecs, dim, k, zero_sq);
        size_reduce_row(vecs, dim, g, k, zero_sq);

        if (norm_sq(vecs[k]) <= zero_sq) {
            // Fully cancelled: an exact dependency has been eliminated.
            if (!removal) throw DegenerateBasis("dependent vector at position " + std::to_string(k + 1));
            vecs.erase(vecs.begin() + k);
            continue;
        }

        // Size reduction leaves b* unchanged, so bstar_sq from g is current.
        if (g.bstar_sq[k - 1] <= zero_sq) {
            // Predecessor carries the dependency; resume there.
            k = std::max(k - 1, 1);
            continue;
        }
        if (g.bstar_sq[k] <= zero_sq) {
            // vecs[k] lies in the span of its predecessors: swapping walks the
            // dependency down until a vector cancels to zero (gcd-style for
            // colinear integer pairs at the front).
            if (!removal) throw DegenerateBasis("dependent vector at position " + std::to_string(k + 1));
            std::swap(vecs[k - 1], vecs[k]);
            k = std::max(k - 1, 1);
            continue;
        }

        const double m = g.mu[k][k - 1];
        if (delta * g.bstar_sq[k - 1] <= g.bstar_sq[k] + m * m * g.bstar_sq[k - 1]) {
            ++k;
        } else {
            std::swap(vecs[k - 1], vecs[k]);
            k = std::max(k - 1, 1);
        }
    }

    Basis out;
    out.dim = dim;
    out.vectors = std::move(vecs);
    return out;
}

bool is_lll_reduced(const Basis& basis, double delta) {
    const GsoData gso = gram_schmidt(basis);
    for (int i = 1; i < basis.rank(); ++i) {
        for (int j = 0; j < i; ++j)
            if (std::abs(gso.mu[i][j]) > 0.5 + kCheckTol) return false;
        const double m = gso.mu[i][i - 1];
        const double lhs = delta * gso.bstar_sq[i - 1];
        const double rhs = gso.bstar_sq[i] + m * m * gso.bstar_sq[i - 1];
        if (lhs > rhs + kCheckTol * gso.bstar_sq[i - 1]) return false;
    }
    return true;
}

}  // namespace vqkz
