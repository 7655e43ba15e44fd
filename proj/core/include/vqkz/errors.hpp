#pragma once

#include <stdexcept>
#include <string>

namespace vqkz {

// All toolkit errors derive from Error so callers can catch the family at once.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Gram-Schmidt hit a (numerically) zero vector outside dependency-removal mode.
struct DegenerateBasis : Error {
    using Error::Error;
};

// Block or coordinate index outside the basis rank.
struct IndexOutOfRange : Error {
    using Error::Error;
};

// LLL parameter delta outside the open interval (1/4, 1).
struct InvalidDelta : Error {
    using Error::Error;
};

// Coefficient/vector length does not match the basis rank or ambient dimension.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Bitstring length does not match the qubit layout.
struct LengthMismatch : Error {
    using Error::Error;
};

// Statevector size does not match the Hamiltonian qubit count.
struct SizeMismatch : Error {
    using Error::Error;
};

// Parameter vector length does not match the circuit's slot count.
struct ParamCountMismatch : Error {
    using Error::Error;
};

// Ansatz requested with a non-positive layer count.
struct InvalidLayerCount : Error {
    using Error::Error;
};

// Exact enumeration requested beyond its supported rank.
struct RankTooLarge : Error {
    using Error::Error;
};

// Requested qubit count exceeds the simulator cap (see VQKZ_MAX_QUBITS).
struct TooManyQubits : Error {
    using Error::Error;
};

// Every post-processing candidate decoded to the zero vector; re-run with a new seed.
struct AllCandidatesZero : Error {
    using Error::Error;
};

// Generator parameters are inconsistent (rank, q-ary split, entry bound).
struct InvalidShape : Error {
    using Error::Error;
};

// Relative error is undefined for a non-positive baseline norm.
struct ZeroBaseline : Error {
    using Error::Error;
};

// Lattice file does not follow the "r m" header plus r integer rows format.
struct MalformedFile : Error {
    using Error::Error;
};

}  // namespace vqkz
