#include "vqkz/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "vqkz/errors.hpp"

namespace vqkz {

QubitLayout QubitLayout::fixed(int beta, int qubits) {
    if (beta < 1) throw IndexOutOfRange("layout needs at least one coordinate");
    if (qubits < 1) throw IndexOutOfRange("layout needs at least one qubit per coordinate");
    QubitLayout l;
    l.qubits_per_coord.assign(beta, qubits);
    l.offset.resize(beta);
    for (int i = 0; i < beta; ++i) l.offset[i] = i * qubits;
    l.total = beta * qubits;
    return l;
}

QubitLayout QubitLayout::adaptive(const std::vector<double>& bounds) {
    if (bounds.empty()) throw IndexOutOfRange("layout needs at least one coordinate");
    QubitLayout l;
    for (double r : bounds) {
        if (!(r > 0.0)) throw IndexOutOfRange("coordinate bound must be positive");
        const int q = static_cast<int>(std::floor(std::log2(r))) + 1;
        l.qubits_per_coord.push_back(std::max(1, q));
    }
    l.offset.resize(l.qubits_per_coord.size());
    int off = 0;
    for (std::size_t i = 0; i < l.qubits_per_coord.size(); ++i) {
        l.offset[i] = off;
        off += l.qubits_per_coord[i];
    }
    l.total = off;
    return l;
}

long long QubitLayout::min_coord(int i) const { return -(1LL << (qubits_per_coord[i] - 1)) + 1; }
long long QubitLayout::max_coord(int i) const { return 1LL << (qubits_per_coord[i] - 1); }

std::vector<double> coordinate_bounds(const GsoData& gso, int begin, int end) {
    if (begin < 0 || end > gso.rank() || begin >= end)
        throw IndexOutOfRange("block [" + std::to_string(begin) + ", " + std::to_string(end) +
                              ") out of range for rank " + std::to_string(gso.rank()));
    std::vector<double> r;
    const double head = std::sqrt(gso.bstar_sq[begin]);
    for (int i = begin; i < end; ++i) r.push_back(head / std::sqrt(gso.bstar_sq[i]));
    return r;
}

int qubit_upper_bound(int beta, double delta) {
    if (beta < 1) throw IndexOutOfRange("beta must be positive");
    if (!(delta > 0.25 && delta < 1.0))
        throw InvalidDelta("delta = " + std::to_string(delta) + " outside (1/4, 1)");
    const double extra = 0.25 * beta * (beta - 1) * std::log2(1.0 / (delta - 0.25));
    return beta + static_cast<int>(std::floor(extra));
}

std::vector<long long> decode_bits(const std::string& bits, const QubitLayout& layout) {
    if (static_cast<int>(bits.size()) != layout.total)
        throw LengthMismatch("bitstring length " + std::to_string(bits.size()) +
                             " does not match layout total " + std::to_string(layout.total));
    std::vector<long long> x(layout.coords());
    for (int i = 0; i < layout.coords(); ++i) {
        long long acc = 0;
        for (int s = 0; s < layout.qubits_per_coord[i]; ++s) {
            const char c = bits[layout.offset[i] + s];
            if (c != '0' && c != '1') throw LengthMismatch("bitstring must be over {0,1}");
            const long long z = c == '0' ? 1 : -1;  // Z eigenvalue
            acc += (1LL << s) * z;
        }
        x[i] = (acc + 1) / 2;
    }
    return x;
}

std::string encode_zero(const QubitLayout& layout) {
    std::string bits(layout.total, '0');
    for (int i = 0; i < layout.coords(); ++i)
        bits[layout.offset[i] + layout.qubits_per_coord[i] - 1] = '1';
    return bits;
}

std::string index_to_bits(std::uint64_t index, int qubits) {
    std::string bits(qubits, '0');
    for (int t = 0; t < qubits; ++t)
        if (index >> t & 1) bits[t] = '1';
    return bits;
}

std::uint64_t bits_to_index(const std::string& bits) {
    std::uint64_t idx = 0;
    for (std::size_t t = 0; t < bits.size(); ++t) {
        if (bits[t] != '0' && bits[t] != '1') throw LengthMismatch("bitstring must be over {0,1}");
        if (bits[t] == '1') idx |= std::uint64_t{1} << t;
    }
    return idx;
}

namespace {

double quadratic_form(const std::vector<std::vector<double>>& g, const std::vector<long long>& x) {
    double e = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) {
        if (x[l] == 0) continue;
        for (std::size_t s = 0; s < x.size(); ++s)
            e += static_cast<double>(x[l]) * g[l][s] * static_cast<double>(x[s]);
    }
    return e;
}

constexpr int kTableQubits = 20;  // eager energy table up to 1M amplitudes

}  // namespace

DiagonalHamiltonian::DiagonalHamiltonian(std::vector<std::vector<double>> gram, QubitLayout layout)
    : gram_(std::move(gram)), layout_(std::move(layout)) {
    const int beta = layout_.coords();
    if (static_cast<int>(gram_.size()) != beta)
        throw DimensionMismatch("Gram matrix size does not match layout coordinates");
    for (const auto& row : gram_)
        if (static_cast<int>(row.size()) != beta)
            throw DimensionMismatch("Gram matrix is not square");

    ground_bits_ = encode_zero(layout_);
    ground_index_ = bits_to_index(ground_bits_);

    if (layout_.total <= kTableQubits) {
        const std::uint64_t states = std::uint64_t{1} << layout_.total;
        table_.resize(states);
        first_excited_ = std::numeric_limits<double>::infinity();
        for (std::uint64_t idx = 0; idx < states; ++idx) {
            const auto x = decode_bits(index_to_bits(idx, layout_.total), layout_);
            table_[idx] = quadratic_form(gram_, x);
            if (idx != ground_index_ && table_[idx] < first_excited_) first_excited_ = table_[idx];
        }
    }
}

DiagonalHamiltonian DiagonalHamiltonian::from_block(const Basis& block, const QubitLayout& layout) {
    return DiagonalHamiltonian(gram_matrix(block), layout);
}

double DiagonalHamiltonian::energy(const std::string& bits) const {
    if (!table_.empty()) return table_[bits_to_index(bits)];
    return quadratic_form(gram_, decode_bits(bits, layout_));
}

double DiagonalHamiltonian::energy_at(std::uint64_t index) const {
    if (index >> layout_.total)
        throw IndexOutOfRange("basis state index out of range");
    if (!table_.empty()) return table_[index];
    return quadratic_form(gram_, decode_bits(index_to_bits(index, layout_.total), layout_));
}

double DiagonalHamiltonian::first_excited_energy() const {
    if (!table_.empty()) return first_excited_;
    double best = std::numeric_limits<double>::infinity();
    const std::uint64_t states = std::uint64_t{1} << layout_.total;
    for (std::uint64_t idx = 0; idx < states; ++idx)
        if (idx != ground_index_) best = std::min(best, energy_at(idx));
    return best;
}

const std::vector<double>& DiagonalHamiltonian::energy_table() const {
    if (table_.empty()) throw SizeMismatch("energy table not materialized for this qubit count");
    return table_;
}

nlohmann::json DiagonalHamiltonian::to_json() const {
    return nlohmann::json{{"gram", gram_}, {"qubits", layout_.qubits_per_coord}};
}

DiagonalHamiltonian DiagonalHamiltonian::from_json(const nlohmann::json& j) {
    const auto gram = j.at("gram").get<std::vector<std::vector<double>>>();
    const auto widths = j.at("qubits").get<std::vector<int>>();
    QubitLayout layout;
    layout.qubits_per_coord = widths;
    layout.offset.resize(widths.size());
    int off = 0;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (widths[i] < 1) throw IndexOutOfRange("layout needs at least one qubit per coordinate");
        layout.offset[i] = off;
        off += widths[i];
    }
    layout.total = off;
    return DiagonalHamiltonian(gram, layout);
}

std::vector<PauliTerm> pauli_terms(const DiagonalHamiltonian& h) {
    const auto& g = h.gram();
    const auto& layout = h.layout();
    const int beta = layout.coords();

    double identity = 0.0;
    std::map<int, double> singles;
    std::map<std::pair<int, int>, double> doubles;

    // Q_l Q_s = 1/4 (I + sum_a 2^(a-1) Z_a^(l)) (I + sum_b 2^(b-1) Z_b^(s))
    for (int l = 0; l < beta; ++l) {
        for (int s = 0; s < beta; ++s) {
            const double c = g[l][s] / 4.0;
            if (c == 0.0) continue;
            identity += c;
            for (int a = 0; a < layout.qubits_per_coord[l]; ++a)
                singles[layout.offset[l] + a] += c * static_cast<double>(1LL << a);
            for (int b = 0; b < layout.qubits_per_coord[s]; ++b)
                singles[layout.offset[s] + b] += c * static_cast<double>(1LL << b);
            for (int a = 0; a < layout.qubits_per_coord[l]; ++a) {
                const int u = layout.offset[l] + a;
                for (int b = 0; b < layout.qubits_per_coord[s]; ++b) {
                    const int v = layout.offset[s] + b;
                    const double w = c * static_cast<double>(1LL << a) * static_cast<double>(1LL << b);
                    if (u == v)
                        identity += w;  // Z^2 = I
                    else
                        doubles[{std::min(u, v), std::max(u, v)}] += w;
                }
            }
        }
    }

    std::vector<PauliTerm> terms;
    if (identity != 0.0) terms.push_back({{}, identity});
    for (const auto& [q, c] : singles)
        if (c != 0.0) terms.push_back({{q}, c});
    for (const auto& [qs, c] : doubles)
        if (c != 0.0) terms.push_back({{qs.first, qs.second}, c});
    return terms;
}

std::vector<std::pair<int, int>> coupling_pairs(const DiagonalHamiltonian& h) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& term : pauli_terms(h))
        if (term.qubits.size() == 2) pairs.emplace_back(term.qubits[0], term.qubits[1]);
    return pairs;
}

double gamma_estimate(const DiagonalHamiltonian& h, Rng& rng) {
    const std::uint64_t states = std::uint64_t{1} << h.qubits();
    std::uint64_t idx = rng.next_below(states - 1);
    if (idx >= h.ground_index()) ++idx;
    return h.energy_at(idx);
}

}  // namespace vqkz
