#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vqkz/basis.hpp"
#include "vqkz/oracle.hpp"

namespace vqkz {

// Square integer basis with entries uniform in [-entry_bound, entry_bound],
// resampled until full rank.
Basis gen_random_lattice(int rank, int entry_bound, std::uint64_t seed);

// q-ary lattice of dimension d with determinant q^k.  As columns the basis is
// [[I_{d-k}, 0], [A^T, q I_k]] with A uniform over [0, q): the first d-k
// vectors are unit vectors carrying random q-ary tails, the last k are q e_t.
Basis gen_qary_lattice(int d, int k, int q, std::uint64_t seed);

// |(baseline - algo) / baseline| * 100; ZeroBaseline if baseline <= 0.
double relative_error(double lambda_baseline, double lambda_algo);

// Qubit demand models.
double qia_qubits(int rank);              // 1.5 r log2(r) + r
int qia_max_rank(double qubit_budget);    // largest r with qia_qubits(r) <= budget

enum class Method { vqkz, qia, iqoa };
int experimental_qubits(Method method, int rank, int beta, int qubits_per_coord);

// sqrt(r / (2 pi e)) * det^(1/r).
double gaussian_heuristic(int rank, double det);

// Largest rank for which some feasible block size fits the qubit budget under
// the printed feasibility inequality
//   (r/8 + 6/5)^((r-1)/(2(beta-1)) + beta(beta-2)/(2 r (beta-1))) <= sqrt(r / 2 pi e).
// hermite_beta substitutes beta/8 + 6/5 for the base (the block Hermite
// constant reading).  feasible is false when no (r, beta) satisfies it.
struct MaxRankResult {
    int rank = 0;
    int beta = 0;
    bool feasible = false;
};
MaxRankResult vqkz_max_rank(int qubit_budget, double delta, bool hermite_beta = false);

struct ExperimentSpec {
    std::string family = "random";  // "random" | "qary"
    int rank_min = 3;
    int rank_max = 3;
    int instances = 1;
    int beta = 3;
    double delta = 0.75;
    int qubits_per_coord = 2;
    std::string oracle = "exact";  // "quantum" | "exact"
    OracleConfig oracle_config;
    int max_tours = 64;
    int entry_bound = 50;
    int qary_q = 97;
    std::optional<int> qary_k;  // default floor(d/2)
    std::uint64_t seed = 1;
    std::string out;
    bool timings = false;  // keep false for byte-identical reruns

    static ExperimentSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// Runs the spec and returns the CSV: one row per (rank, instance) plus an
// aggregate mean-epsilon row per rank.  Fully deterministic for a fixed spec
// unless timings is set.
std::string run_experiment(const ExperimentSpec& spec);

}  // namespace vqkz
