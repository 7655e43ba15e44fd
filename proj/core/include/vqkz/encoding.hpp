#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "vqkz/basis.hpp"
#include "vqkz/gso.hpp"
#include "vqkz/rng.hpp"

namespace vqkz {

// Per-coordinate qubit widths for a block of beta lattice coordinates.
// Coordinate i is carried by qubits_per_coord[i] qubits; within a coordinate,
// bit s (1-based, leftmost in the block string) has weight 2^(s-1).  A bit
// value of 0 corresponds to Z eigenvalue +1.  Coordinate i then decodes to
//   x_i = ((sum_s 2^(s-1) (1 - 2 a_s)) + 1) / 2,
// an integer in [-2^(q-1)+1, 2^(q-1)].
struct QubitLayout {
    std::vector<int> qubits_per_coord;
    std::vector<int> offset;  // first qubit index of each coordinate block
    int total = 0;

    static QubitLayout fixed(int beta, int qubits);
    static QubitLayout adaptive(const std::vector<double>& bounds);

    int coords() const { return static_cast<int>(qubits_per_coord.size()); }
    long long min_coord(int i) const;  // -2^(q_i - 1) + 1
    long long max_coord(int i) const;  //  2^(q_i - 1)
};

// R_i = ||b*_begin|| / ||b*_i|| for i in [begin, end): how far coordinate i of
// a shortest block vector can reach.
std::vector<double> coordinate_bounds(const GsoData& gso, int begin, int end);

// n <= beta + floor(beta (beta-1)/4 * log2(1/(delta - 1/4))): total qubits an
// adaptive layout can need on a delta-LLL-reduced block.  At delta = 3/4 this
// is floor((beta^2 + 3 beta)/4).
int qubit_upper_bound(int beta, double delta);

// Integer coordinates for a concatenated block bitstring; LengthMismatch if
// the string length or alphabet does not fit the layout.
std::vector<long long> decode_bits(const std::string& bits, const QubitLayout& layout);

// The bitstring whose decode is the zero vector: every block reads "0...01".
std::string encode_zero(const QubitLayout& layout);

// Bitstring <-> simulator basis index: qubit t is character t, and bit t of
// the index (qubit 0 least significant).
std::string index_to_bits(std::uint64_t index, int qubits);
std::uint64_t bits_to_index(const std::string& bits);

// H = sum_{l,s} G[l][s] Q_l Q_s, diagonal in the computational basis, with
// Q_i the integer-spectrum operator of coordinate i.  energy(bits) equals
// x^T G x for x = decode_bits(bits).
class DiagonalHamiltonian {
public:
    DiagonalHamiltonian(std::vector<std::vector<double>> gram, QubitLayout layout);

    static DiagonalHamiltonian from_block(const Basis& block, const QubitLayout& layout);

    const std::vector<std::vector<double>>& gram() const { return gram_; }
    const QubitLayout& layout() const { return layout_; }
    int qubits() const { return layout_.total; }
    const std::string& ground_bits() const { return ground_bits_; }
    std::uint64_t ground_index() const { return ground_index_; }

    double energy(const std::string& bits) const;
    double energy_at(std::uint64_t index) const;

    // Smallest energy over states that decode to a nonzero vector.
    double first_excited_energy() const;

    // Precomputed per-index energies (available when qubits() <= 20).
    const std::vector<double>& energy_table() const;

    nlohmann::json to_json() const;
    static DiagonalHamiltonian from_json(const nlohmann::json& j);

private:
    std::vector<std::vector<double>> gram_;
    QubitLayout layout_;
    std::string ground_bits_;
    std::uint64_t ground_index_ = 0;
    std::vector<double> table_;
    double first_excited_ = 0.0;
};

// Term coeff * prod_t Z_t over the listed qubits (0, 1, or 2 of them).
struct PauliTerm {
    std::vector<int> qubits;
    double coeff = 0.0;
};

// Expansion of H into Z-products.  Summing coeff * prod (1 - 2 a_t) over the
// terms reproduces energy(bits) for every bitstring.
std::vector<PauliTerm> pauli_terms(const DiagonalHamiltonian& h);

// Qubit pairs carrying a nonzero ZZ coefficient, sorted; the entangler
// topology of the problem-aware ansatz.
std::vector<std::pair<int, int>> coupling_pairs(const DiagonalHamiltonian& h);

// Energy of one uniformly drawn non-ground basis state; an upper estimate of
// the gap used as the overlap penalty weight (always >= E_1).
double gamma_estimate(const DiagonalHamiltonian& h, Rng& rng);

}  // namespace vqkz
