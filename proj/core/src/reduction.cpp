#include "vqkz/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "vqkz/errors.hpp"
#include "vqkz/gso.hpp"
#include "vqkz/lll.hpp"

namespace vqkz {

namespace {

void sign_normalize(std::vector<long long>& v) {
    for (long long c : v) {
        if (c > 0) return;
        if (c < 0) {
            for (auto& e : v) e = -e;
            return;
        }
    }
}

struct Enumerator {
    const GsoData& gso;
    int rank;
    double best_sq;
    std::vector<long long> x;
    std::vector<long long> best;

    Enumerator(const GsoData& g, int r, double init_best)
        : gso(g), rank(r), best_sq(init_best), x(r, 0) {
        best.assign(r, 0);
        best[0] = 1;
    }

    // ||B x||^2 = sum_i (x_i + sum_{l>i} mu[l][i] x_l)^2 ||b*_i||^2; descend
    // from the last coordinate with the partial sum as pruning bound.
    void dfs(int i, double partial) {
        double center = 0.0;
        for (int l = i + 1; l < rank; ++l) center -= gso.mu[l][i] * static_cast<double>(x[l]);
        const double budget = best_sq * (1.0 - 1e-9) - partial;
        if (budget <= 0.0) return;
        const double spread = std::sqrt(budget / gso.bstar_sq[i]);
        const long long lo = static_cast<long long>(std::ceil(center - spread));
        const long long hi = static_cast<long long>(std::floor(center + spread));
        for (long long xi = lo; xi <= hi; ++xi) {
            const double d = static_cast<double>(xi) - center;
            const double term = d * d * gso.bstar_sq[i];
            if (partial + term >= best_sq * (1.0 - 1e-9)) continue;
            x[i] = xi;
            if (i == 0) {
                if (std::all_of(x.begin(), x.end(), [](long long c) { return c == 0; })) continue;
                best_sq = partial + term;
                best = x;
            } else {
                dfs(i - 1, partial + term);
            }
        }
        x[i] = 0;
    }
};

}  // namespace

ShortestVector enumerate_shortest(const Basis& basis, std::optional<double> radius_sq) {
    const int r = basis.rank();
    if (r < 1) throw IndexOutOfRange("cannot enumerate an empty basis");
    if (r > 8) throw RankTooLarge("exact enumeration supports rank <= 8, got " + std::to_string(r));

    const GsoData gso = gram_schmidt(basis);
    const double b1_sq = norm_sq(basis.vectors[0]);
    double init = b1_sq;
    if (radius_sq && *radius_sq < init) init = *radius_sq;

    // e_1 is the incumbent, so ties resolve to "no improvement".
    Enumerator en(gso, r, init * (1.0 + 1e-12));
    en.dfs(r - 1, 0.0);

    ShortestVector out;
    out.coeffs = en.best;
    sign_normalize(out.coeffs);
    out.norm_sq = lattice_vector(basis, out.coeffs).second;
    return out;
}

SvpOracle exact_svp_oracle() {
    return [](const Basis& block) { return enumerate_shortest(block).coeffs; };
}

SvpOracle quantum_svp_oracle(const OracleConfig& config) {
    auto counter = std::make_shared<std::uint64_t>(0);
    return [config, counter](const Basis& block) {
        OracleConfig cfg = config;
        cfg.seed = mix_seed(config.seed, {(*counter)++});
        return solve_svp_block(block, cfg).v;
    };
}

namespace {

bool is_e1(const std::vector<long long>& v) {
    if (v.empty() || v[0] != 1) return false;
    return std::all_of(v.begin() + 1, v.end(), [](long long c) { return c == 0; });
}

Basis prefix_basis(const Basis& b, int count) {
    Basis p;
    p.dim = b.dim;
    p.vectors.assign(b.vectors.begin(), b.vectors.begin() + count);
    return p;
}

}  // namespace

ReductionResult vqkz_reduce(const Basis& basis, int beta, double delta, const SvpOracle& oracle,
                            int max_tours) {
    const int r = basis.rank();
    if (beta < 2 || beta > r)
        throw IndexOutOfRange("block size " + std::to_string(beta) + " outside [2, rank]");
    if (max_tours < 1) throw IndexOutOfRange("max_tours must be positive");

    ReductionResult result;
    result.basis = lll_reduce(basis, delta);
    if (r < 2) return result;

    Basis best_basis = result.basis;
    double best_b1 = norm_sq(best_basis.vectors[0]);

    int z = 0;
    int j = 0;  // 1-based position, advanced at the top of the loop
    long long steps = 0;

    while (z < r - 1) {
        j = (j % (r - 1)) + 1;
        const int tour = static_cast<int>(steps / (r - 1)) + 1;
        if (tour > max_tours) {
            result.status = ReductionStatus::timed_out;
            result.basis = best_basis;
            result.tours = max_tours;
            return result;
        }
        ++steps;

        const int k = std::min(j + beta - 1, r);
        const int h = std::min(k + 1, r);

        GsoData gso = gram_schmidt(result.basis);
        const Basis block = project_block(result.basis, gso, j - 1, k);

        BlockEvent ev;
        ev.tour = tour;
        ev.j = j;
        ev.k = k;
        ev.bstar_sq_before = gso.bstar_sq;

        std::vector<long long> v;
        try {
            v = oracle(block);
            if (static_cast<int>(v.size()) != block.rank() ||
                std::all_of(v.begin(), v.end(), [](long long c) { return c == 0; }))
                throw Error("oracle returned an invalid coefficient vector");
            ev.action = "keep";
        } catch (const AllCandidatesZero&) {
            ev.action = "oracle_error";
            v.assign(block.rank(), 0);
            v[0] = 1;
        }
        ev.v = v;

        if (!is_e1(v)) {
            // Insert sum_i v_i b_{j+i-1} before position j, then let LLL with
            // dependency removal shrink the h+1 generators back to h vectors.
            z = 0;
            Vec w(result.basis.dim, 0.0);
            for (int i = 0; i < block.rank(); ++i) {
                const double c = static_cast<double>(v[i]);
                if (c == 0.0) continue;
                for (int t = 0; t < result.basis.dim; ++t)
                    w[t] += c * result.basis.vectors[j - 1 + i][t];
            }
            Basis prefix;
            prefix.dim = result.basis.dim;
            prefix.vectors.assign(result.basis.vectors.begin(), result.basis.vectors.begin() + (j - 1));
            prefix.vectors.push_back(std::move(w));
            for (int t = j - 1; t < h; ++t) prefix.vectors.push_back(result.basis.vectors[t]);

            Basis reduced = lll_reduce(prefix, delta, LllMode::remove_dependencies);
            if (reduced.rank() != h)
                throw Error("dependency removal produced rank " + std::to_string(reduced.rank()) +
                            ", expected " + std::to_string(h));
            std::copy(reduced.vectors.begin(), reduced.vectors.end(), result.basis.vectors.begin());
            ev.action = "insert";
        } else {
            z += 1;
            Basis reduced = lll_reduce(prefix_basis(result.basis, h), delta);
            std::copy(reduced.vectors.begin(), reduced.vectors.end(), result.basis.vectors.begin());
        }

        ev.bstar_sq_after = gram_schmidt(result.basis).bstar_sq;
        result.events.push_back(std::move(ev));
        result.tours = tour;

        const double b1 = norm_sq(result.basis.vectors[0]);
        if (b1 < best_b1) {
            best_b1 = b1;
            best_basis = result.basis;
        }
    }

    return result;
}

ReductionResult bkz_classical(const Basis& basis, int beta, double delta, int max_tours) {
    return vqkz_reduce(basis, beta, delta, exact_svp_oracle(), max_tours);
}

bool is_bkz_reduced(const Basis& basis, int beta) {
    const int r = basis.rank();
    if (beta < 2 || beta > r)
        throw IndexOutOfRange("block size " + std::to_string(beta) + " outside [2, rank]");
    const GsoData gso = gram_schmidt(basis);
    for (int i = 1; i < r; ++i)
        for (int t = 0; t < i; ++t)
            if (std::abs(gso.mu[i][t]) > 0.5 + kCheckTol) return false;
    for (int j = 1; j <= r - 1; ++j) {
        const int k = std::min(j + beta - 1, r);
        const Basis block = project_block(basis, gso, j - 1, k);
        const double lambda1 = std::sqrt(enumerate_shortest(block).norm_sq);
        const double head = std::sqrt(gso.bstar_sq[j - 1]);
        if (head > lambda1 + kCheckTol * std::max(1.0, lambda1)) return false;
    }
    return true;
}

double bkz_quality_bound(int beta, int rank, double alpha) {
    if (beta < 2) throw IndexOutOfRange("beta must be at least 2");
    if (rank < 2) throw IndexOutOfRange("rank must be at least 2");
    return std::pow(alpha, static_cast<double>(rank - 1) / static_cast<double>(beta - 1));
}

std::optional<std::vector<std::vector<long long>>> integral_transform(const Basis& from,
                                                                      const Basis& to) {
    const int r = from.rank();
    if (to.rank() != r || to.dim != from.dim || r == 0) return std::nullopt;

    // Solve (F^T F) C = F^T T column by column, then round and verify.
    std::vector<std::vector<double>> m(r, std::vector<double>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m[i][j] = dot(from.vectors[i], from.vectors[j]);
    std::vector<std::vector<double>> rhs(r, std::vector<double>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) rhs[i][j] = dot(from.vectors[i], to.vectors[j]);

    // Gaussian elimination with partial pivoting on the augmented system.
    for (int col = 0; col < r; ++col) {
        int pivot = col;
        for (int i = col + 1; i < r; ++i)
            if (std::abs(m[i][col]) > std::abs(m[pivot][col])) pivot = i;
        if (std::abs(m[pivot][col]) < 1e-12) return std::nullopt;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (int i = 0; i < r; ++i) {
            if (i == col) continue;
            const double f = m[i][col] / m[col][col];
            if (f == 0.0) continue;
            for (int t = col; t < r; ++t) m[i][t] -= f * m[col][t];
            for (int t = 0; t < r; ++t) rhs[i][t] -= f * rhs[col][t];
        }
    }

    std::vector<std::vector<long long>> c(r, std::vector<long long>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const double value = rhs[i][j] / m[i][i];
            const double rounded = std::nearbyint(value);
            if (std::abs(value - rounded) > 1e-6) return std::nullopt;
            c[i][j] = static_cast<long long>(rounded);
        }

    // Verify from * C == to exactly enough for integral bases.
    for (int j = 0; j < r; ++j) {
        for (int t = 0; t < from.dim; ++t) {
            double acc = 0.0;
            for (int i = 0; i < r; ++i) acc += from.vectors[i][t] * static_cast<double>(c[i][j]);
            if (std::abs(acc - to.vectors[j][t]) > 1e-6) return std::nullopt;
        }
    }
    return c;
}

bool is_unimodular(const std::vector<std::vector<long long>>& c) {
    const int r = static_cast<int>(c.size());
    // Fraction-free Bareiss elimination; the final pivot is the determinant.
    std::vector<std::vector<__int128>> a(r, std::vector<__int128>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) a[i][j] = c[i][j];
    __int128 prev = 1;
    int sign = 1;
    for (int col = 0; col < r - 1; ++col) {
        if (a[col][col] == 0) {
            int pivot = -1;
            for (int i = col + 1; i < r; ++i)
                if (a[i][col] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return false;  // singular
            std::swap(a[col], a[pivot]);
            sign = -sign;
        }
        for (int i = col + 1; i < r; ++i) {
            for (int j = col + 1; j < r; ++j)
                a[i][j] = (a[i][j] * a[col][col] - a[i][col] * a[col][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[col][col];
    }
    const __int128 det = sign * a[r - 1][r - 1];
    return det == 1 || det == -1;
}

nlohmann::json reduction_log(const ReductionResult& result) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : result.events)
        events.push_back({{"tour", e.tour},
                          {"j", e.j},
                          {"k", e.k},
                          {"action", e.action},
                          {"v", e.v},
                          {"norms_before", e.bstar_sq_before},
                          {"norms_after", e.bstar_sq_after}});
    return nlohmann::json{
        {"status", result.status == ReductionStatus::reduced ? "reduced" : "timed_out"},
        {"tours", result.tours},
        {"events", events},
    };
}

}  // namespace vqkz
