#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace vqkz {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm_sq(const Vec& v);

// Ordered list of lattice basis vectors.  Vectors are the columns of the
// basis matrix B; entries are kept in doubles and stay exactly integral under
// the integer row operations used by reduction (entries well below 2^53).
struct Basis {
    std::vector<Vec> vectors;
    int dim = 0;  // ambient dimension m; kept explicit so rank 0 stays well formed

    Basis() = default;
    Basis(std::vector<Vec> vecs, int m) : vectors(std::move(vecs)), dim(m) {}

    int rank() const { return static_cast<int>(vectors.size()); }

    // Convenience constructor from row-major integer data, one vector per row.
    static Basis from_rows(const std::vector<std::vector<long long>>& rows);
};

// Gram matrix G[i][j] = b_i . b_j.
std::vector<std::vector<double>> gram_matrix(const Basis& basis);

// B x and its squared norm x^T (B^T B) x.  Throws DimensionMismatch if x has
// the wrong length.
std::pair<Vec, double> lattice_vector(const Basis& basis, const std::vector<long long>& x);

// Lattice file format: first line "r m", then r lines of m space separated
// integers, one basis vector per line.  Integer bases round-trip bit exactly.
Basis read_basis(std::istream& in);
Basis read_basis_file(const std::string& path);
void write_basis(std::ostream& out, const Basis& basis);
void write_basis_file(const std::string& path, const Basis& basis);

// Exact integer view of a vector entry; throws DimensionMismatch if the entry
// is not integral within 1e-9 (only integral bases are serializable).
long long integer_entry(double value);

}  // namespace vqkz
