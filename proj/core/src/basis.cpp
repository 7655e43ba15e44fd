#include "vqkz/basis.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vqkz/errors.hpp"

namespace vqkz {

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm_sq(const Vec& v) { return dot(v, v); }

Basis Basis::from_rows(const std::vector<std::vector<long long>>& rows) {
    Basis b;
    b.dim = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != b.dim)
            throw DimensionMismatch("basis rows have inconsistent lengths");
        b.vectors.emplace_back(row.begin(), row.end());
    }
    return b;
}

std::vector<std::vector<double>> gram_matrix(const Basis& basis) {
    const int r = basis.rank();
    std::vector<std::vector<double>> g(r, std::vector<double>(r, 0.0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j)
            g[i][j] = g[j][i] = dot(basis.vectors[i], basis.vectors[j]);
    return g;
}

std::pair<Vec, double> lattice_vector(const Basis& basis, const std::vector<long long>& x) {
    if (static_cast<int>(x.size()) != basis.rank())
        throw DimensionMismatch("coefficient vector length " + std::to_string(x.size()) +
                                " does not match rank " + std::to_string(basis.rank()));
    Vec v(basis.dim, 0.0);
    for (int i = 0; i < basis.rank(); ++i) {
        const double c = static_cast<double>(x[i]);
        if (c == 0.0) continue;
        for (int t = 0; t < basis.dim; ++t) v[t] += c * basis.vectors[i][t];
    }
    return {v, norm_sq(v)};
}

long long integer_entry(double value) {
    const double r = std::nearbyint(value);
    if (std::abs(value - r) > 1e-9)
        throw DimensionMismatch("non-integral entry " + std::to_string(value) +
                                " cannot be serialized");
    return static_cast<long long>(r);
}

Basis read_basis(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw MalformedFile("missing dimension header");
    std::istringstream hs(header);
    long long r = 0, m = 0;
    std::string extra;
    if (!(hs >> r >> m) || (hs >> extra) || r < 0 || m < 0 || (r > 0 && m == 0))
        throw MalformedFile("malformed dimension header: \"" + header + "\"");

    Basis basis;
    basis.dim = static_cast<int>(m);
    for (long long i = 0; i < r; ++i) {
        std::string line;
        if (!std::getline(in, line)) throw MalformedFile("expected " + std::to_string(r) + " vector rows");
        std::istringstream ls(line);
        Vec v;
        v.reserve(m);
        long long entry;
        while (ls >> entry) v.push_back(static_cast<double>(entry));
        if (!ls.eof()) throw MalformedFile("non-integer entry in row " + std::to_string(i + 1));
        if (static_cast<long long>(v.size()) != m)
            throw MalformedFile("row " + std::to_string(i + 1) + " has " +
                                std::to_string(v.size()) + " entries, expected " + std::to_string(m));
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

Basis read_basis_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedFile("cannot open lattice file: " + path);
    return read_basis(in);
}

void write_basis(std::ostream& out, const Basis& basis) {
    out << basis.rank() << ' ' << basis.dim << '\n';
    for (const auto& v : basis.vectors) {
        for (int t = 0; t < basis.dim; ++t) {
            if (t) out << ' ';
            out << integer_entry(v[t]);
        }
        out << '\n';
    }
}

void write_basis_file(const std::string& path, const Basis& basis) {
    std::ofstream out(path);
    if (!out) throw MalformedFile("cannot open output file: " + path);
    write_basis(out, basis);
}

}  // namespace vqkz
