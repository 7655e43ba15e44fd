#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vqkz/encoding.hpp"
#include "vqkz/statevector.hpp"

namespace vqkz {

enum class GateKind { H, X, Rx, Rz, CRz };

struct Gate {
    GateKind kind;
    int q0 = 0;        // target, or control for CRz
    int q1 = -1;       // CRz target
    int slot = -1;     // index into the parameter vector; -1 for fixed gates
};

// Ordered gate list over a fixed qubit count.  Every parameterized gate owns
// its own theta slot, numbered in construction order.
struct Circuit {
    int qubits = 0;
    int params = 0;
    std::vector<Gate> gates;

    void add(GateKind kind, int q0, int q1 = -1, bool parameterized = false);

    // Gate kind owning a slot (for shift-rule selection).
    GateKind slot_kind(int slot) const;

    // One gate per line: "H 0", "RX 2 5", "CRZ 1 3 7" (qubits, then slot).
    void dump(std::ostream& out) const;
    std::string dump_string() const;
};

// Applies the circuit to |0...0>.  ParamCountMismatch unless theta.size()
// equals circuit.params.
StateVector run(const Circuit& circuit, const std::vector<double>& theta);

enum class EntanglerTopology {
    coupling,  // CRz on every pair carrying a nonzero ZZ term of H
    chain      // CRz on neighbours (0,1), (1,2), ...
};

// Problem-aware ansatz: one Hadamard layer, then `layers` of per-qubit Rx,
// per-qubit Rz, and CRz entanglers.  Parameter count is
// layers * (2n + #pairs).  InvalidLayerCount unless layers >= 1.
Circuit build_svp_ansatz(const DiagonalHamiltonian& h, int layers,
                         EntanglerTopology topology = EntanglerTopology::coupling);

// Hardware-efficient ansatz: `layers` of per-qubit Rx, per-qubit Rz, and a
// nearest-neighbour CRz chain, all parameterized: layers * (3n - 1) slots.
Circuit build_he_ansatz(int qubits, int layers);

}  // namespace vqkz
