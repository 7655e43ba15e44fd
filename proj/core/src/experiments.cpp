#include "vqkz/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vqkz/errors.hpp"
#include "vqkz/gso.hpp"
#include "vqkz/reduction.hpp"

namespace vqkz {

Basis gen_random_lattice(int rank, int entry_bound, std::uint64_t seed) {
    if (rank < 1 || entry_bound < 1)
        throw InvalidShape("rank and entry bound must be positive");
    Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Basis b;
        b.dim = rank;
        for (int i = 0; i < rank; ++i) {
            Vec v(rank);
            for (int t = 0; t < rank; ++t)
                v[t] = static_cast<double>(rng.next_int(-entry_bound, entry_bound));
            b.vectors.push_back(std::move(v));
        }
        try {
            gram_schmidt(b);
            return b;
        } catch (const DegenerateBasis&) {
            continue;  // resample
        }
    }
    throw InvalidShape("could not sample a full-rank basis");
}

Basis gen_qary_lattice(int d, int k, int q, std::uint64_t seed) {
    if (d < 2 || k < 1 || k >= d) throw InvalidShape("q-ary split needs 1 <= k < d");
    if (q < 2) throw InvalidShape("q must be at least 2");
    Rng rng(seed);
    Basis b;
    b.dim = d;
    const int free = d - k;
    for (int i = 0; i < free; ++i) {
        Vec v(d, 0.0);
        v[i] = 1.0;
        for (int j = 0; j < k; ++j)
            v[free + j] = static_cast<double>(rng.next_below(static_cast<std::uint64_t>(q)));
        b.vectors.push_back(std::move(v));
    }
    for (int j = 0; j < k; ++j) {
        Vec v(d, 0.0);
        v[free + j] = static_cast<double>(q);
        b.vectors.push_back(std::move(v));
    }
    return b;
}

double relative_error(double lambda_baseline, double lambda_algo) {
    if (!(lambda_baseline > 0.0))
        throw ZeroBaseline("baseline norm must be positive, got " + std::to_string(lambda_baseline));
    return std::abs((lambda_baseline - lambda_algo) / lambda_baseline) * 100.0;
}

double qia_qubits(int rank) {
    if (rank < 1) throw InvalidShape("rank must be positive");
    return 1.5 * rank * std::log2(static_cast<double>(rank)) + rank;
}

int qia_max_rank(double qubit_budget) {
    int r = 0;
    while (qia_qubits(r + 1) <= qubit_budget) ++r;
    return r;
}

int experimental_qubits(Method method, int rank, int beta, int qubits_per_coord) {
    switch (method) {
        case Method::vqkz: return qubits_per_coord * beta;
        case Method::qia:
        case Method::iqoa: return qubits_per_coord * rank;
    }
    throw InvalidShape("unknown method");
}

double gaussian_heuristic(int rank, double det) {
    if (rank < 1 || !(det > 0.0)) throw InvalidShape("rank and determinant must be positive");
    const double pi = std::acos(-1.0);
    return std::sqrt(rank / (2.0 * pi * std::exp(1.0))) * std::pow(det, 1.0 / rank);
}

MaxRankResult vqkz_max_rank(int qubit_budget, double delta, bool hermite_beta) {
    MaxRankResult out;
    const double pi = std::acos(-1.0);
    const int rank_cap = 4096;
    for (int beta = 2; qubit_upper_bound(beta, delta) <= qubit_budget; ++beta) {
        for (int r = std::max(beta, 2); r <= rank_cap; ++r) {
            const double base = (hermite_beta ? beta : r) / 8.0 + 1.2;
            const double expo = static_cast<double>(r - 1) / (2.0 * (beta - 1)) +
                                static_cast<double>(beta) * (beta - 2) /
                                    (2.0 * static_cast<double>(r) * (beta - 1));
            const double lhs = std::pow(base, expo) - std::sqrt(r / (2.0 * pi * std::exp(1.0)));
            if (lhs <= 0.0 && r > out.rank) {
                out.rank = r;
                out.beta = beta;
                out.feasible = true;
            }
        }
    }
    return out;
}

ExperimentSpec ExperimentSpec::from_json(const nlohmann::json& j) {
    ExperimentSpec s;
    s.family = j.value("family", s.family);
    if (s.family != "random" && s.family != "qary")
        throw InvalidShape("family must be \"random\" or \"qary\"");
    s.rank_min = j.value("rank_min", s.rank_min);
    s.rank_max = j.value("rank_max", std::max(s.rank_min, s.rank_max));
    if (j.contains("rank_min") && !j.contains("rank_max")) s.rank_max = s.rank_min;
    s.instances = j.value("instances", s.instances);
    s.beta = j.value("beta", s.beta);
    s.delta = j.value("delta", s.delta);
    s.qubits_per_coord = j.value("qubits", s.qubits_per_coord);
    s.oracle = j.value("oracle", s.oracle);
    if (s.oracle != "quantum" && s.oracle != "exact")
        throw InvalidShape("oracle must be \"quantum\" or \"exact\"");
    s.max_tours = j.value("max_tours", s.max_tours);
    s.entry_bound = j.value("entry_bound", s.entry_bound);
    s.qary_q = j.value("qary_q", s.qary_q);
    if (j.contains("qary_k")) s.qary_k = j.at("qary_k").get<int>();
    s.seed = j.value("seed", s.seed);
    s.out = j.value("out", s.out);
    s.timings = j.value("timings", s.timings);

    s.oracle_config.layers = j.value("layers", s.oracle_config.layers);
    s.oracle_config.iters = j.value("iters", s.oracle_config.iters);
    s.oracle_config.lr = j.value("lr", s.oracle_config.lr);
    s.oracle_config.qubits_per_coord = s.qubits_per_coord;
    if (j.contains("width")) s.oracle_config.enumeration_width = j.at("width").get<int>();
    if (j.contains("stagnation_window"))
        s.oracle_config.stagnation_window = j.at("stagnation_window").get<int>();

    if (s.rank_min < 2 || s.rank_max < s.rank_min || s.instances < 1)
        throw InvalidShape("rank range or instance count invalid");
    if (s.beta < 2 || s.beta + 1 > s.rank_min)
        throw InvalidShape("ranks must be at least beta + 1");
    return s;
}

nlohmann::json ExperimentSpec::to_json() const {
    nlohmann::json j{
        {"family", family},       {"rank_min", rank_min},
        {"rank_max", rank_max},   {"instances", instances},
        {"beta", beta},           {"delta", delta},
        {"qubits", qubits_per_coord}, {"oracle", oracle},
        {"max_tours", max_tours}, {"entry_bound", entry_bound},
        {"qary_q", qary_q},       {"seed", seed},
        {"out", out},             {"timings", timings},
        {"layers", oracle_config.layers}, {"iters", oracle_config.iters},
        {"lr", oracle_config.lr},
    };
    if (qary_k) j["qary_k"] = *qary_k;
    return j;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

std::string run_experiment(const ExperimentSpec& spec) {
    std::ostringstream csv;
    csv << "# vqkz experiment\n";
    csv << "# family=" << spec.family << " beta=" << spec.beta << " delta=" << fmt_double(spec.delta)
        << " qubits=" << spec.qubits_per_coord << " oracle=" << spec.oracle
        << " layers=" << spec.oracle_config.layers << " iters=" << spec.oracle_config.iters
        << " seed=" << spec.seed << " entry_bound=" << spec.entry_bound;
    if (spec.family == "qary") csv << " qary_q=" << spec.qary_q;
    csv << "\n";
    csv << "rank,instance,seed,family,method,lambda_baseline,lambda_algo,epsilon,qubits,wall_ms\n";

    const std::string method = spec.oracle == "quantum" ? "vqkz-quantum" : "vqkz-exact";
    for (int rank = spec.rank_min; rank <= spec.rank_max; ++rank) {
        double eps_sum = 0.0;
        int eps_count = 0;
        const int qubits = experimental_qubits(Method::vqkz, rank, spec.beta, spec.qubits_per_coord);
        for (int inst = 0; inst < spec.instances; ++inst) {
            const std::uint64_t inst_seed =
                mix_seed(spec.seed, {static_cast<std::uint64_t>(rank), static_cast<std::uint64_t>(inst)});
            try {
                const Basis basis = spec.family == "qary"
                                        ? gen_qary_lattice(rank, spec.qary_k.value_or(rank / 2),
                                                           spec.qary_q, inst_seed)
                                        : gen_random_lattice(rank, spec.entry_bound, inst_seed);
                double shortest_given = norm_sq(basis.vectors[0]);
                for (const Vec& v : basis.vectors) shortest_given = std::min(shortest_given, norm_sq(v));

                const auto t0 = std::chrono::steady_clock::now();
                const ReductionResult baseline =
                    bkz_classical(basis, spec.beta, spec.delta, spec.max_tours);
                const double lambda_b = std::sqrt(norm_sq(baseline.basis.vectors[0]));
                if (spec.family == "qary") {
                    const double cap = std::min(static_cast<double>(spec.qary_q),
                                                std::sqrt(shortest_given));
                    if (lambda_b > cap * (1.0 + 1e-9))
                        throw Error("reduced norm exceeds the q-ary sanity bound");
                }

                double lambda_a = lambda_b;
                if (spec.oracle == "quantum") {
                    OracleConfig cfg = spec.oracle_config;
                    cfg.seed = mix_seed(inst_seed, {0xacc});
                    const ReductionResult run = vqkz_reduce(basis, spec.beta, spec.delta,
                                                            quantum_svp_oracle(cfg), spec.max_tours);
                    lambda_a = std::sqrt(norm_sq(run.basis.vectors[0]));
                }
                const auto t1 = std::chrono::steady_clock::now();

                const double eps = relative_error(lambda_b, lambda_a);
                eps_sum += eps;
                ++eps_count;
                long long wall_ms = 0;
                if (spec.timings)
                    wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

                csv << rank << ',' << inst << ',' << inst_seed << ',' << spec.family << ','
                    << method << ',' << fmt_double(lambda_b) << ',' << fmt_double(lambda_a) << ','
                    << fmt_double(eps) << ',' << qubits << ',' << wall_ms << '\n';
            } catch (const Error& e) {
                // A bad instance fails its row, not the run.
                csv << "# error rank=" << rank << " instance=" << inst << ": " << e.what() << '\n';
            }
        }
        csv << rank << ",mean,," << spec.family << ',' << method << ",,,"
            << fmt_double(eps_count > 0 ? eps_sum / eps_count : 0.0) << ',' << qubits << ",\n";
    }
    return csv.str();
}

}  // namespace vqkz
