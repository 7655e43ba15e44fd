#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vqkz/basis.hpp"
#include "vqkz/circuit.hpp"
#include "vqkz/encoding.hpp"
#include "vqkz/statevector.hpp"

namespace vqkz {

enum class AnsatzKind { svp, hardware_efficient };

struct OracleConfig {
    int layers = 6;
    int iters = 1000;
    double lr = 0.05;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 1;
    int qubits_per_coord = 2;
    bool adaptive_layout = false;          // derive per-coordinate widths from GSO bounds
    AnsatzKind ansatz = AnsatzKind::svp;
    EntanglerTopology topology = EntanglerTopology::coupling;
    std::optional<double> gamma_override;  // fixed penalty weight for tests
    std::optional<int> enumeration_width;  // default ceil(log2 n)
    int shots = 0;                         // 0 = exact marginals; >0 = sampled marginals
    int stagnation_window = 200;           // iterations without improvement before early stop
    bool allow_restart = true;             // one re-run with a derived seed on failure
};

// L(theta) = <H> + gamma |<psi_gs|U(theta)|0>|^2.  The penalty lifts the
// ground state by gamma, so for gamma >= E_1 the global minimum is E_1.
double loss(const Circuit& circuit, const std::vector<double>& theta,
            const DiagonalHamiltonian& h, double gamma);

// Analytic gradient via parameter shifts: the two-term rule
// [f(t + pi/2) - f(t - pi/2)] / 2 for Rx/Rz slots, and the four-term rule for
// CRz slots (whose generator has eigenvalue gaps 1/2 and 1, so the two-term
// rule is not exact for them).
std::vector<double> loss_gradient(const Circuit& circuit, const std::vector<double>& theta,
                                  const DiagonalHamiltonian& h, double gamma);

struct OptimizeOutcome {
    std::vector<double> theta_best;
    double best_loss = 0.0;
    std::vector<double> trace;  // loss at the start of each iteration
    bool stagnated = false;
};

// Adam descent from theta ~ U(-0.1, 0.1), seeded.  Returns the theta with the
// smallest observed loss; stops early once the best loss has not improved for
// config.stagnation_window iterations.
OptimizeOutcome optimize(const Circuit& circuit, const DiagonalHamiltonian& h, double gamma,
                         const OracleConfig& config, std::uint64_t theta_seed);

struct Candidate {
    std::string bits;
    std::vector<long long> x;
    double norm_sq = 0.0;
};

struct OracleResult {
    std::vector<long long> v;  // sign-normalized: first nonzero entry positive
    double norm_sq = 0.0;
    double final_loss = 0.0;
    std::vector<double> loss_trace;
    Marginals marginals;
    std::vector<Candidate> candidates;
    std::string chosen_bits;
    double gamma = 0.0;
    std::uint64_t seed = 0;
    int layers = 0;
    int restarts = 0;
    std::vector<double> theta_best;
};

// Majority-vote decoding repaired by enumerating the `width` most ambiguous
// bits (those with p closest to 0.5): all 2^width assignments are decoded,
// the zero vector is excluded, and the smallest-norm candidate wins (ties by
// lexicographically smallest bitstring).  AllCandidatesZero if nothing
// nonzero remains.
OracleResult post_process(const Marginals& marginals, const DiagonalHamiltonian& h, int width);

// Full quantum SVP oracle for one projected block: encode, optimize, decode.
// Restarts once with a derived seed if post-processing fails or the optimizer
// stagnates without leaving the ground-state plateau.
OracleResult solve_svp_block(const Basis& block, const OracleConfig& config);

// (energy, total overlap) for the ground level and the first `count` excited
// levels; degenerate energies are grouped within 1e-9.
std::vector<std::pair<double, double>> excited_state_overlaps(const StateVector& state,
                                                              const DiagonalHamiltonian& h,
                                                              int count);

// Per-run JSON record of an oracle invocation.
nlohmann::json oracle_log(const OracleResult& result);

}  // namespace vqkz
