#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vqkz/basis.hpp"
#include "vqkz/oracle.hpp"

namespace vqkz {

struct ShortestVector {
    std::vector<long long> coeffs;  // sign-normalized
    double norm_sq = 0.0;
};

// Exact SVP by depth-first enumeration in Gram-Schmidt coordinates, pruned by
// the current best norm.  The first basis vector is the starting incumbent,
// so on ties the identity coefficient vector e_1 is returned.  RankTooLarge
// beyond rank 8.
ShortestVector enumerate_shortest(const Basis& basis,
                                  std::optional<double> radius_sq = std::nullopt);

// Coefficient vector of a shortest nonzero vector of the given block.
using SvpOracle = std::function<std::vector<long long>(const Basis& block)>;

SvpOracle exact_svp_oracle();
// Deterministic per-call seeds are derived from config.seed and a call
// counter, so a fixed seed fixes the whole reduction trajectory.
SvpOracle quantum_svp_oracle(const OracleConfig& config);

enum class ReductionStatus { reduced, timed_out };

struct BlockEvent {
    int tour = 0;
    int j = 0;  // 1-based block start, as in the tour loop
    int k = 0;
    std::string action;  // "insert", "keep", or "oracle_error"
    std::vector<long long> v;
    std::vector<double> bstar_sq_before;
    std::vector<double> bstar_sq_after;
};

struct ReductionResult {
    Basis basis;
    ReductionStatus status = ReductionStatus::reduced;
    int tours = 0;
    std::vector<BlockEvent> events;
};

// Block Korkin-Zolotarev tour loop: LLL-preprocess, then repeatedly hand the
// projected block [j, k] to the SVP oracle; an improving coefficient vector
// is inserted at position j and the dependency removed by LLL, otherwise a
// counter advances until r-1 consecutive blocks pass unchanged.  Stops with
// timed_out status (carrying the best basis seen) after max_tours passes.
ReductionResult vqkz_reduce(const Basis& basis, int beta, double delta, const SvpOracle& oracle,
                            int max_tours = 64);

// vqkz_reduce with the exact enumeration oracle.
ReductionResult bkz_classical(const Basis& basis, int beta, double delta, int max_tours = 64);

// Size-reduced and, for each j, ||b*_j|| equals the shortest norm of the
// projected block [j, min(j+beta-1, r)] within 1e-9.
bool is_bkz_reduced(const Basis& basis, int beta);

// alpha^((r-1)/(beta-1)): bound on ||b_1||^2 / lambda_1^2 for a beta-reduced
// basis with block quality alpha.
double bkz_quality_bound(int beta, int rank, double alpha);

// Integer coefficient matrix C with to = from * C, if one exists (entries
// rounded from a least-squares solve, then verified exactly).
std::optional<std::vector<std::vector<long long>>> integral_transform(const Basis& from,
                                                                      const Basis& to);

// |det C| == 1, computed fraction-free in 128-bit integers.
bool is_unimodular(const std::vector<std::vector<long long>>& c);

nlohmann::json reduction_log(const ReductionResult& result);

}  // namespace vqkz
