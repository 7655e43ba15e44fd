#include "vqkz/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "vqkz/errors.hpp"

namespace vqkz {

StateVector::StateVector(int qubits) : n_(qubits) {
    if (qubits < 1) throw TooManyQubits("state needs at least one qubit");
    if (qubits > max_qubits())
        throw TooManyQubits("requested " + std::to_string(qubits) + " qubits, cap is " +
                            std::to_string(max_qubits()) + " (see VQKZ_MAX_QUBITS)");
    amps_.assign(std::uint64_t{1} << n_, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

int StateVector::max_qubits() {
    static const int cap = [] {
        if (const char* env = std::getenv("VQKZ_MAX_QUBITS")) {
            const int v = std::atoi(env);
            if (v >= 1) return v;
        }
        return 24;
    }();
    return cap;
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= n_)
        throw IndexOutOfRange("qubit " + std::to_string(q) + " out of range for n = " +
                              std::to_string(n_));
}

void StateVector::apply_h(int q) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t{1} << q;
    const double inv = 1.0 / std::sqrt(2.0);
    for (std::uint64_t base = 0; base < size(); base += 2 * step) {
        for (std::uint64_t i = base; i < base + step; ++i) {
            const auto a0 = amps_[i];
            const auto a1 = amps_[i + step];
            amps_[i] = inv * (a0 + a1);
            amps_[i + step] = inv * (a0 - a1);
        }
    }
}

void StateVector::apply_x(int q) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t{1} << q;
    for (std::uint64_t base = 0; base < size(); base += 2 * step)
        for (std::uint64_t i = base; i < base + step; ++i)
            std::swap(amps_[i], amps_[i + step]);
}

void StateVector::apply_rx(int q, double theta) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t{1} << q;
    const double c = std::cos(theta / 2.0);
    const std::complex<double> ms{0.0, -std::sin(theta / 2.0)};
    for (std::uint64_t base = 0; base < size(); base += 2 * step) {
        for (std::uint64_t i = base; i < base + step; ++i) {
            const auto a0 = amps_[i];
            const auto a1 = amps_[i + step];
            amps_[i] = c * a0 + ms * a1;
            amps_[i + step] = ms * a0 + c * a1;
        }
    }
}

void StateVector::apply_rz(int q, double theta) {
    check_qubit(q);
    const std::uint64_t step = std::uint64_t{1} << q;
    const std::complex<double> p0{std::cos(theta / 2.0), -std::sin(theta / 2.0)};
    const std::complex<double> p1 = std::conj(p0);
    for (std::uint64_t base = 0; base < size(); base += 2 * step) {
        for (std::uint64_t i = base; i < base + step; ++i) {
            amps_[i] *= p0;
            amps_[i + step] *= p1;
        }
    }
}

void StateVector::apply_crz(int control, int target, double theta) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw IndexOutOfRange("CRz control equals target");
    const std::uint64_t cbit = std::uint64_t{1} << control;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const std::complex<double> p0{std::cos(theta / 2.0), -std::sin(theta / 2.0)};
    const std::complex<double> p1 = std::conj(p0);
    for (std::uint64_t i = 0; i < size(); ++i)
        if (i & cbit) amps_[i] *= (i & tbit) ? p1 : p0;
}

double expectation_diagonal(const StateVector& state, const DiagonalHamiltonian& h) {
    if (state.qubits() != h.qubits())
        throw SizeMismatch("state has " + std::to_string(state.qubits()) + " qubits, H has " +
                           std::to_string(h.qubits()));
    const auto& amps = state.amplitudes();
    double e = 0.0;
    if (h.qubits() <= 20) {
        const auto& table = h.energy_table();
        for (std::uint64_t i = 0; i < state.size(); ++i) e += std::norm(amps[i]) * table[i];
    } else {
        for (std::uint64_t i = 0; i < state.size(); ++i) {
            const double w = std::norm(amps[i]);
            if (w > 0.0) e += w * h.energy_at(i);
        }
    }
    return e;
}

double overlap_with_basis_state(const StateVector& state, const std::string& bits) {
    if (static_cast<int>(bits.size()) != state.qubits())
        throw SizeMismatch("bitstring length " + std::to_string(bits.size()) +
                           " does not match state qubits " + std::to_string(state.qubits()));
    return std::norm(state.amplitudes()[bits_to_index(bits)]);
}

Marginals marginal_probabilities(const StateVector& state) {
    const int n = state.qubits();
    std::vector<double> p1(n, 0.0);
    const auto& amps = state.amplitudes();
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        const double w = std::norm(amps[i]);
        if (w == 0.0) continue;
        for (int t = 0; t < n; ++t)
            if (i >> t & 1) p1[t] += w;
    }
    Marginals m;
    m.a.resize(n);
    m.p.resize(n);
    for (int t = 0; t < n; ++t) {
        if (std::abs(p1[t] - 0.5) <= 1e-12) {
            m.a[t] = 0;
            m.p[t] = 0.5;
        } else if (p1[t] > 0.5) {
            m.a[t] = 1;
            m.p[t] = p1[t];
        } else {
            m.a[t] = 0;
            m.p[t] = 1.0 - p1[t];
        }
    }
    return m;
}

std::map<std::string, int> sample(const StateVector& state, int shots, Rng& rng) {
    std::vector<double> cdf(state.size());
    double acc = 0.0;
    const auto& amps = state.amplitudes();
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        acc += std::norm(amps[i]);
        cdf[i] = acc;
    }
    std::map<std::string, int> counts;
    for (int s = 0; s < shots; ++s) {
        const double u = rng.next_double() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::uint64_t idx = std::min<std::uint64_t>(it - cdf.begin(), state.size() - 1);
        ++counts[index_to_bits(idx, state.qubits())];
    }
    return counts;
}

}  // namespace vqkz
