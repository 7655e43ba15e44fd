#include "vqkz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vqkz/errors.hpp"
#include "vqkz/gso.hpp"

namespace vqkz {

double loss(const Circuit& circuit, const std::vector<double>& theta,
            const DiagonalHamiltonian& h, double gamma) {
    const StateVector state = run(circuit, theta);
    return expectation_diagonal(state, h) + gamma * overlap_with_basis_state(state, h.ground_bits());
}

std::vector<double> loss_gradient(const Circuit& circuit, const std::vector<double>& theta,
                                  const DiagonalHamiltonian& h, double gamma) {
    std::vector<double> grad(circuit.params, 0.0);
    std::vector<double> shifted = theta;
    const double pi = std::acos(-1.0);
    auto eval = [&](int slot, double shift) {
        shifted[slot] = theta[slot] + shift;
        const double f = loss(circuit, shifted, h, gamma);
        shifted[slot] = theta[slot];
        return f;
    };
    for (int s = 0; s < circuit.params; ++s) {
        if (circuit.slot_kind(s) == GateKind::CRz) {
            // Generator eigenvalue gaps {1/2, 1}: four evaluations needed.
            const double d1 = eval(s, pi / 2) - eval(s, -pi / 2);
            const double d2 = eval(s, 3 * pi / 2) - eval(s, -3 * pi / 2);
            grad[s] = (d1 + d2) / (4.0 * std::sqrt(2.0)) + (d1 - d2) / 4.0;
        } else {
            grad[s] = (eval(s, pi / 2) - eval(s, -pi / 2)) / 2.0;
        }
    }
    return grad;
}

OptimizeOutcome optimize(const Circuit& circuit, const DiagonalHamiltonian& h, double gamma,
                         const OracleConfig& config, std::uint64_t theta_seed) {
    Rng rng(theta_seed);
    std::vector<double> theta(circuit.params);
    for (auto& t : theta) t = rng.next_double(-0.1, 0.1);

    std::vector<double> m(circuit.params, 0.0), v(circuit.params, 0.0);
    OptimizeOutcome out;
    out.theta_best = theta;
    out.best_loss = std::numeric_limits<double>::infinity();
    int best_iter = 0;

    for (int t = 0; t < config.iters; ++t) {
        const double f = loss(circuit, theta, h, gamma);
        out.trace.push_back(f);
        if (!std::isfinite(out.best_loss) ||
            f < out.best_loss - 1e-9 * std::max(1.0, std::abs(out.best_loss))) {
            out.best_loss = f;
            out.theta_best = theta;
            best_iter = t;
        }
        if (t - best_iter >= config.stagnation_window) {
            out.stagnated = true;
            break;
        }

        const auto grad = loss_gradient(circuit, theta, h, gamma);
        const double b1t = 1.0 - std::pow(config.adam_beta1, t + 1);
        const double b2t = 1.0 - std::pow(config.adam_beta2, t + 1);
        for (int i = 0; i < circuit.params; ++i) {
            m[i] = config.adam_beta1 * m[i] + (1.0 - config.adam_beta1) * grad[i];
            v[i] = config.adam_beta2 * v[i] + (1.0 - config.adam_beta2) * grad[i] * grad[i];
            theta[i] -= config.lr * (m[i] / b1t) / (std::sqrt(v[i] / b2t) + config.adam_eps);
        }
    }
    return out;
}

namespace {

bool is_zero(const std::vector<long long>& x) {
    return std::all_of(x.begin(), x.end(), [](long long c) { return c == 0; });
}

void sign_normalize(std::vector<long long>& v) {
    for (long long c : v) {
        if (c > 0) return;
        if (c < 0) {
            for (auto& e : v) e = -e;
            return;
        }
    }
}

int default_width(int qubits) {
    int w = 0;
    while ((1 << w) < qubits) ++w;
    return w;  // ceil(log2 n), 0 for n = 1
}

}  // namespace

OracleResult post_process(const Marginals& marginals, const DiagonalHamiltonian& h, int width) {
    const int n = h.qubits();
    if (static_cast<int>(marginals.a.size()) != n)
        throw SizeMismatch("marginals do not match the Hamiltonian qubit count");
    if (width < 0 || width > n) throw IndexOutOfRange("enumeration width out of range");

    // Most ambiguous first; ties resolved by qubit index so the candidate set
    // is reproducible.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double da = std::abs(marginals.p[a] - 0.5);
        const double db = std::abs(marginals.p[b] - 0.5);
        if (da != db) return da < db;
        return a < b;
    });
    std::vector<int> selected(order.begin(), order.begin() + width);
    std::sort(selected.begin(), selected.end());

    std::string base(n, '0');
    for (int t = 0; t < n; ++t) base[t] = marginals.a[t] ? '1' : '0';

    OracleResult result;
    bool found = false;
    double best_norm = 0.0;
    std::string best_bits;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << width); ++mask) {
        std::string bits = base;
        for (int j = 0; j < width; ++j) bits[selected[j]] = (mask >> j & 1) ? '1' : '0';
        Candidate cand;
        cand.bits = bits;
        cand.x = decode_bits(bits, h.layout());
        cand.norm_sq = h.energy(bits);
        const bool zero = is_zero(cand.x);
        result.candidates.push_back(std::move(cand));
        if (zero) continue;
        const auto& c = result.candidates.back();
        const double tol = 1e-12 * std::max(1.0, best_norm);
        if (!found || c.norm_sq < best_norm - tol ||
            (std::abs(c.norm_sq - best_norm) <= tol && c.bits < best_bits)) {
            found = true;
            best_norm = c.norm_sq;
            best_bits = c.bits;
        }
    }
    if (!found)
        throw AllCandidatesZero("all " + std::to_string(std::uint64_t{1} << width) +
                                " candidates decode to the zero vector");

    result.chosen_bits = best_bits;
    result.v = decode_bits(best_bits, h.layout());
    sign_normalize(result.v);
    result.norm_sq = best_norm;
    result.marginals = marginals;
    return result;
}

OracleResult solve_svp_block(const Basis& block, const OracleConfig& config) {
    QubitLayout layout;
    if (config.adaptive_layout) {
        const GsoData gso = gram_schmidt(block);
        layout = QubitLayout::adaptive(coordinate_bounds(gso, 0, block.rank()));
    } else {
        layout = QubitLayout::fixed(block.rank(), config.qubits_per_coord);
    }
    const DiagonalHamiltonian h = DiagonalHamiltonian::from_block(block, layout);

    Rng rng(config.seed);
    const double gamma = config.gamma_override ? *config.gamma_override : gamma_estimate(h, rng);
    if (h.qubits() <= 20 && gamma < h.first_excited_energy() - kCheckTol)
        throw Error("penalty weight " + std::to_string(gamma) + " below the spectral gap");

    const Circuit circuit = config.ansatz == AnsatzKind::svp
                                ? build_svp_ansatz(h, config.layers, config.topology)
                                : build_he_ansatz(h.qubits(), config.layers);
    const int width = config.enumeration_width ? *config.enumeration_width
                                               : default_width(h.qubits());

    struct Attempt {
        OptimizeOutcome opt;
        OracleResult result;
        bool ok = false;
    };

    auto attempt = [&](int index) {
        Attempt a;
        a.opt = optimize(circuit, h, gamma, config, mix_seed(config.seed, {static_cast<std::uint64_t>(index)}));
        const StateVector state = run(circuit, a.opt.theta_best);
        Marginals marg;
        if (config.shots > 0) {
            // Shot-based estimate of the per-qubit marginals.
            Rng sampler(mix_seed(config.seed, {0x5a5a, static_cast<std::uint64_t>(index)}));
            const auto counts = sample(state, config.shots, sampler);
            std::vector<double> p1(h.qubits(), 0.0);
            for (const auto& [bits, c] : counts)
                for (int t = 0; t < h.qubits(); ++t)
                    if (bits[t] == '1') p1[t] += static_cast<double>(c) / config.shots;
            marg.a.resize(h.qubits());
            marg.p.resize(h.qubits());
            for (int t = 0; t < h.qubits(); ++t) {
                if (std::abs(p1[t] - 0.5) <= 1e-12) {
                    marg.a[t] = 0;
                    marg.p[t] = 0.5;
                } else {
                    marg.a[t] = p1[t] > 0.5 ? 1 : 0;
                    marg.p[t] = std::max(p1[t], 1.0 - p1[t]);
                }
            }
        } else {
            marg = marginal_probabilities(state);
        }
        try {
            a.result = post_process(marg, h, width);
            a.ok = true;
        } catch (const AllCandidatesZero&) {
            a.ok = false;
        }
        return a;
    };

    Attempt first = attempt(0);
    // Restart once when the run failed outright or plateaued on the lifted
    // ground state (loss stuck near gamma means the penalty never let go).
    const bool trapped = first.opt.stagnated && first.opt.best_loss >= 0.95 * gamma;
    int restarts = 0;
    Attempt* chosen = &first;
    Attempt second;
    if (config.allow_restart && (!first.ok || trapped)) {
        restarts = 1;
        second = attempt(1);
        if (!first.ok)
            chosen = &second;
        else if (second.ok && second.result.norm_sq < first.result.norm_sq)
            chosen = &second;
    }
    if (!chosen->ok)
        throw AllCandidatesZero("oracle failed to produce a nonzero vector after restart");

    OracleResult out = chosen->result;
    out.final_loss = chosen->opt.best_loss;
    out.loss_trace = chosen->opt.trace;
    out.gamma = gamma;
    out.seed = config.seed;
    out.layers = config.layers;
    out.restarts = restarts;
    out.theta_best = chosen->opt.theta_best;
    return out;
}

std::vector<std::pair<double, double>> excited_state_overlaps(const StateVector& state,
                                                              const DiagonalHamiltonian& h,
                                                              int count) {
    if (state.qubits() != h.qubits())
        throw SizeMismatch("state does not match the Hamiltonian qubit count");
    if (count < 0 || (h.qubits() < 63 && static_cast<std::uint64_t>(count) > state.size()))
        throw IndexOutOfRange("level count out of range");

    std::vector<std::uint64_t> order(state.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> energy(state.size());
    for (std::uint64_t i = 0; i < state.size(); ++i) energy[i] = h.energy_at(i);
    std::sort(order.begin(), order.end(),
              [&](std::uint64_t a, std::uint64_t b) { return energy[a] < energy[b]; });

    const auto& amps = state.amplitudes();
    std::vector<std::pair<double, double>> levels;
    for (std::uint64_t i : order) {
        const double e = energy[i];
        if (!levels.empty() && std::abs(e - levels.back().first) <= 1e-9 * std::max(1.0, std::abs(e))) {
            levels.back().second += std::norm(amps[i]);
        } else {
            if (static_cast<int>(levels.size()) == count + 1) break;
            levels.emplace_back(e, std::norm(amps[i]));
        }
    }
    return levels;
}

nlohmann::json oracle_log(const OracleResult& result) {
    nlohmann::json candidates = nlohmann::json::array();
    for (const auto& c : result.candidates)
        candidates.push_back({{"bits", c.bits}, {"x", c.x}, {"norm2", c.norm_sq}});
    return nlohmann::json{
        {"seed", result.seed},
        {"gamma", result.gamma},
        {"layers", result.layers},
        {"restarts", result.restarts},
        {"iterations", result.loss_trace.size()},
        {"loss_trace", result.loss_trace},
        {"marginals", {{"a", result.marginals.a}, {"p", result.marginals.p}}},
        {"candidates", candidates},
        {"chosen", {{"bits", result.chosen_bits}, {"v", result.v}, {"norm2", result.norm_sq}}},
    };
}

}  // namespace vqkz
