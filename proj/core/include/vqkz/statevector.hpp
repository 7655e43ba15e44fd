#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vqkz/encoding.hpp"
#include "vqkz/rng.hpp"

namespace vqkz {

// Dense n-qubit state, 2^n amplitudes.  Qubit t is bit t of the amplitude
// index (and character t of a bitstring).  n is capped at 24 by default; the
// VQKZ_MAX_QUBITS environment variable overrides the cap.
class StateVector {
public:
    explicit StateVector(int qubits);  // |0...0>

    static int max_qubits();

    int qubits() const { return n_; }
    std::uint64_t size() const { return std::uint64_t{1} << n_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    std::vector<std::complex<double>>& amplitudes() { return amps_; }

    void apply_h(int q);
    void apply_x(int q);
    void apply_rx(int q, double theta);
    void apply_rz(int q, double theta);
    void apply_crz(int control, int target, double theta);

private:
    void check_qubit(int q) const;

    int n_;
    std::vector<std::complex<double>> amps_;
};

// sum_i |amp_i|^2 E_i for the diagonal Hamiltonian; SizeMismatch if the qubit
// counts differ.
double expectation_diagonal(const StateVector& state, const DiagonalHamiltonian& h);

// |<bits|state>|^2.  SizeMismatch if the bitstring length is not n.
double overlap_with_basis_state(const StateVector& state, const std::string& bits);

// Per-qubit majority bit and its probability.  p in (0.5, 1]; exact ties give
// a = 0 with p = 0.5.
struct Marginals {
    std::vector<int> a;
    std::vector<double> p;
};
Marginals marginal_probabilities(const StateVector& state);

// Multinomial bitstring counts, deterministic for a fixed rng stream.
std::map<std::string, int> sample(const StateVector& state, int shots, Rng& rng);

}  // namespace vqkz
