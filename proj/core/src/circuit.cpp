#include "vqkz/circuit.hpp"

#include <ostream>
#include <sstream>

#include "vqkz/errors.hpp"

namespace vqkz {

void Circuit::add(GateKind kind, int q0, int q1, bool parameterized) {
    Gate g;
    g.kind = kind;
    g.q0 = q0;
    g.q1 = q1;
    g.slot = parameterized ? params++ : -1;
    gates.push_back(g);
}

GateKind Circuit::slot_kind(int slot) const {
    for (const auto& g : gates)
        if (g.slot == slot) return g.kind;
    throw IndexOutOfRange("no gate owns slot " + std::to_string(slot));
}

namespace {
const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Rx: return "RX";
        case GateKind::Rz: return "RZ";
        case GateKind::CRz: return "CRZ";
    }
    return "?";
}
}  // namespace

void Circuit::dump(std::ostream& out) const {
    for (const auto& g : gates) {
        out << gate_name(g.kind) << ' ' << g.q0;
        if (g.q1 >= 0) out << ' ' << g.q1;
        if (g.slot >= 0) out << ' ' << g.slot;
        out << '\n';
    }
}

std::string Circuit::dump_string() const {
    std::ostringstream os;
    dump(os);
    return os.str();
}

StateVector run(const Circuit& circuit, const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) != circuit.params)
        throw ParamCountMismatch("got " + std::to_string(theta.size()) + " parameters, circuit has " +
                                 std::to_string(circuit.params) + " slots");
    StateVector state(circuit.qubits);
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::H: state.apply_h(g.q0); break;
            case GateKind::X: state.apply_x(g.q0); break;
            case GateKind::Rx: state.apply_rx(g.q0, theta[g.slot]); break;
            case GateKind::Rz: state.apply_rz(g.q0, theta[g.slot]); break;
            case GateKind::CRz: state.apply_crz(g.q0, g.q1, theta[g.slot]); break;
        }
    }
    return state;
}

Circuit build_svp_ansatz(const DiagonalHamiltonian& h, int layers, EntanglerTopology topology) {
    if (layers < 1) throw InvalidLayerCount("ansatz needs at least one layer");
    const int n = h.qubits();

    std::vector<std::pair<int, int>> pairs;
    if (topology == EntanglerTopology::coupling) {
        pairs = coupling_pairs(h);
    } else {
        for (int t = 0; t + 1 < n; ++t) pairs.emplace_back(t, t + 1);
    }

    Circuit c;
    c.qubits = n;
    for (int q = 0; q < n; ++q) c.add(GateKind::H, q);
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < n; ++q) c.add(GateKind::Rx, q, -1, true);
        for (int q = 0; q < n; ++q) c.add(GateKind::Rz, q, -1, true);
        for (const auto& [u, v] : pairs) c.add(GateKind::CRz, u, v, true);
    }
    return c;
}

Circuit build_he_ansatz(int qubits, int layers) {
    if (layers < 1) throw InvalidLayerCount("ansatz needs at least one layer");
    if (qubits < 1) throw TooManyQubits("ansatz needs at least one qubit");
    Circuit c;
    c.qubits = qubits;
    for (int l = 0; l < layers; ++l) {
        for (int q = 0; q < qubits; ++q) c.add(GateKind::Rx, q, -1, true);
        for (int q = 0; q < qubits; ++q) c.add(GateKind::Rz, q, -1, true);
        for (int t = 0; t + 1 < qubits; ++t) c.add(GateKind::CRz, t, t + 1, true);
    }
    return c;
}

}  // namespace vqkz
