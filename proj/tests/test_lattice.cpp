#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "vqkz/basis.hpp"
#include "vqkz/errors.hpp"
#include "vqkz/experiments.hpp"
#include "vqkz/gso.hpp"
#include "vqkz/lll.hpp"
#include "vqkz/reduction.hpp"
#include "vqkz/rng.hpp"

using namespace vqkz;

namespace {

Basis rows(const std::vector<std::vector<long long>>& r) { return Basis::from_rows(r); }

// Independent shortest-vector oracle: scan the coefficient box [-range, range]^r.
double brute_force_lambda_sq(const Basis& b, long long range) {
    const int r = b.rank();
    std::vector<long long> x(r, -range);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        bool zero = true;
        for (long long c : x) zero &= (c == 0);
        if (!zero) best = std::min(best, lattice_vector(b, x).second);
        int i = 0;
        while (i < r && x[i] == range) x[i++] = -range;
        if (i == r) break;
        ++x[i];
    }
    return best;
}

}  // namespace

TEST_CASE("dot and norm") {
    CHECK(dot({1, 2, 3}, {4, 5, 6}) == 32);
    CHECK(norm_sq({3, 4}) == 25);
}

TEST_CASE("from_rows and lattice_vector") {
    const Basis b = rows({{2, 1}, {0, 2}});
    CHECK(b.rank() == 2);
    CHECK(b.dim == 2);
    const auto [v, n] = lattice_vector(b, {1, -1});
    CHECK(v == Vec{2, -1});
    CHECK(n == 5);
    CHECK_THROWS_AS(lattice_vector(b, {1}), DimensionMismatch);
}

TEST_CASE("gram matrix") {
    const Basis b = rows({{3, 0}, {1, 2}});
    const auto g = gram_matrix(b);
    CHECK(g[0][0] == 9);
    CHECK(g[0][1] == 3);
    CHECK(g[1][0] == 3);
    CHECK(g[1][1] == 5);
}

TEST_CASE("basis file round trip") {
    const Basis b = rows({{3, 0, -7}, {1, 2, 50}});
    std::stringstream s;
    write_basis(s, b);
    CHECK(s.str() == "2 3\n3 0 -7\n1 2 50\n");
    const Basis back = read_basis(s);
    CHECK(back.rank() == 2);
    CHECK(back.dim == 3);
    CHECK(back.vectors == b.vectors);
}

TEST_CASE("malformed basis files") {
    auto parse = [](const std::string& text) {
        std::istringstream s(text);
        return read_basis(s);
    };
    CHECK_THROWS_AS(parse(""), MalformedFile);
    CHECK_THROWS_AS(parse("2\n1 0\n0 1\n"), MalformedFile);
    CHECK_THROWS_AS(parse("2 2\n1 0\n"), MalformedFile);          // missing row
    CHECK_THROWS_AS(parse("2 2\n1 0 9\n0 1\n"), MalformedFile);   // row too long
    CHECK_THROWS_AS(parse("2 2\n1 x\n0 1\n"), MalformedFile);     // non-integer
    CHECK_THROWS_AS(parse("-1 2\n"), MalformedFile);
    const Basis empty = parse("0 2\n");  // rank 0 stays well formed
    CHECK(empty.rank() == 0);
    CHECK(empty.dim == 2);
}

TEST_CASE("non-integral entries are not serializable") {
    Basis b = rows({{1, 0}, {0, 1}});
    b.vectors[0][0] = 0.5;
    std::ostringstream s;
    CHECK_THROWS_AS(write_basis(s, b), DimensionMismatch);
}

TEST_CASE("gram schmidt on a frozen pair") {
    const Basis b = rows({{3, 0}, {1, 2}});
    const GsoData gso = gram_schmidt(b);
    CHECK(gso.bstar[0] == Vec{3, 0});
    CHECK(gso.mu[1][0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(gso.bstar[1][0] == doctest::Approx(0.0));
    CHECK(gso.bstar[1][1] == doctest::Approx(2.0));
    CHECK(gso.bstar_sq[0] == doctest::Approx(9.0));
    CHECK(gso.bstar_sq[1] == doctest::Approx(4.0));
    CHECK(gso.mu[0][0] == 1.0);
}

TEST_CASE("gram schmidt rejects dependent input") {
    CHECK_THROWS_AS(gram_schmidt(rows({{1, 2}, {2, 4}})), DegenerateBasis);
    CHECK_THROWS_AS(gram_schmidt(rows({{0, 0}, {1, 0}})), DegenerateBasis);
}

TEST_CASE("projected block GSO equals the parent slice") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Basis b = gen_random_lattice(6, 20, seed);
        const GsoData gso = gram_schmidt(b);
        for (int j = 1; j + 1 <= 6; ++j) {
            const int k = std::min(j + 2, 6);
            const Basis block = project_block(b, gso, j - 1, k);
            const GsoData sub = gram_schmidt(block);
            for (int i = 0; i < block.rank(); ++i) {
                CHECK(sub.bstar_sq[i] ==
                      doctest::Approx(gso.bstar_sq[j - 1 + i]).epsilon(1e-9));
                for (int t = 0; t < b.dim; ++t)
                    CHECK(sub.bstar[i][t] == doctest::Approx(gso.bstar[j - 1 + i][t]).epsilon(1e-9));
                for (int t = 0; t < i; ++t)
                    CHECK(sub.mu[i][t] ==
                          doctest::Approx(gso.mu[j - 1 + i][j - 1 + t]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("project_block range checks") {
    const Basis b = rows({{1, 0}, {0, 1}});
    const GsoData gso = gram_schmidt(b);
    CHECK_THROWS_AS(project_block(b, gso, -1, 1), IndexOutOfRange);
    CHECK_THROWS_AS(project_block(b, gso, 1, 3), IndexOutOfRange);
    CHECK_THROWS_AS(project_block(b, gso, 1, 1), IndexOutOfRange);
}

TEST_CASE("size reduce on a frozen pair") {
    const Basis b = size_reduce(rows({{1, 0}, {5, 1}}));
    CHECK(b.vectors[0] == Vec{1, 0});
    CHECK(b.vectors[1] == Vec{0, 1});
}

TEST_CASE("lll delta domain") {
    const Basis b = rows({{1, 0}, {0, 1}});
    CHECK_THROWS_AS(lll_reduce(b, 0.25), InvalidDelta);
    CHECK_THROWS_AS(lll_reduce(b, 1.0), InvalidDelta);
    CHECK_THROWS_AS(lll_reduce(b, -1.0), InvalidDelta);
    CHECK_NOTHROW(lll_reduce(b, 0.26));
    CHECK_NOTHROW(lll_reduce(b, 0.999));
}

TEST_CASE("lll swaps a frozen pair into order") {
    const Basis b = lll_reduce(rows({{0, 4}, {3, 0}}), 0.75);
    CHECK(norm_sq(b.vectors[0]) == 9);
    CHECK(is_lll_reduced(b, 0.75));
}

TEST_CASE("lll output is reduced and unimodular") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const int rank = 2 + static_cast<int>(seed % 7);
        const Basis b = gen_random_lattice(rank, 50, seed);
        const Basis red = lll_reduce(b, 0.75);
        CHECK(red.rank() == rank);
        CHECK(is_lll_reduced(red, 0.75));
        const auto c = integral_transform(b, red);
        REQUIRE(c.has_value());
        CHECK(is_unimodular(*c));
    }
}

TEST_CASE("is_lll_reduced spots violations") {
    CHECK(is_lll_reduced(rows({{1, 0}, {0, 1}}), 0.75));
    CHECK_FALSE(is_lll_reduced(rows({{1, 0}, {5, 1}}), 0.75));  // size reduction fails
    CHECK_FALSE(is_lll_reduced(rows({{0, 4}, {3, 0}}), 0.75));  // Lovasz fails
}

TEST_CASE("dependency removal keeps the lattice") {
    // (1,0) = (2,0) - (1,0) is reachable, so the span is all of Z^2.
    const Basis gen = rows({{2, 0}, {0, 1}, {1, 0}});
    const Basis red = lll_reduce(gen, 0.75, LllMode::remove_dependencies);
    REQUIRE(red.rank() == 2);
    CHECK(is_lll_reduced(red, 0.75));
    const auto c = integral_transform(rows({{1, 0}, {0, 1}}), red);
    REQUIRE(c.has_value());
    CHECK(is_unimodular(*c));
    CHECK_THROWS_AS(lll_reduce(gen, 0.75, LllMode::strict), DegenerateBasis);
}

TEST_CASE("dependency removal drops explicit zero vectors") {
    const Basis gen = rows({{1, 0}, {0, 0}, {0, 1}});
    const Basis red = lll_reduce(gen, 0.75, LllMode::remove_dependencies);
    CHECK(red.rank() == 2);
}

TEST_CASE("dependency removal on random generating sets") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Basis b = gen_random_lattice(4, 10, seed);
        Rng rng(mix_seed(seed, {0xdeULL}));
        // Append a random integer combination of the basis vectors.
        Vec extra(b.dim, 0.0);
        for (int i = 0; i < b.rank(); ++i) {
            const double c = static_cast<double>(rng.next_int(-3, 3));
            for (int t = 0; t < b.dim; ++t) extra[t] += c * b.vectors[i][t];
        }
        Basis gen = b;
        gen.vectors.insert(gen.vectors.begin() + 1, extra);
        const Basis red = lll_reduce(gen, 0.75, LllMode::remove_dependencies);
        REQUIRE(red.rank() == 4);
        CHECK(is_lll_reduced(red, 0.75));
        const auto c = integral_transform(b, red);
        REQUIRE(c.has_value());
        CHECK(is_unimodular(*c));
    }
}

TEST_CASE("enumerate_shortest on frozen bases") {
    const ShortestVector sv = enumerate_shortest(rows({{2, 1}, {0, 2}}));
    CHECK(sv.norm_sq == doctest::Approx(4.0));
    CHECK(sv.coeffs == std::vector<long long>{0, 1});

    // Ties resolve to the identity coefficient vector.
    const ShortestVector id = enumerate_shortest(rows({{1, 0}, {0, 1}}));
    CHECK(id.coeffs == std::vector<long long>{1, 0});
    CHECK(id.norm_sq == doctest::Approx(1.0));
}

TEST_CASE("enumerate_shortest matches a coefficient-box scan") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Basis b = lll_reduce(gen_random_lattice(4, 30, seed), 0.75);
        const double expect = brute_force_lambda_sq(b, 3);
        const ShortestVector sv = enumerate_shortest(b);
        CHECK(sv.norm_sq == doctest::Approx(expect).epsilon(1e-9));
        CHECK(lattice_vector(b, sv.coeffs).second == doctest::Approx(sv.norm_sq));
    }
}

TEST_CASE("enumerate_shortest respects the radius and rank cap") {
    const Basis b = rows({{2, 1}, {0, 2}});
    // A radius below lambda_1^2 prunes everything; the incumbent e_1 remains,
    // reported with its true norm.
    const ShortestVector sv = enumerate_shortest(b, 0.5);
    CHECK(sv.coeffs == std::vector<long long>{1, 0});
    CHECK(sv.norm_sq == doctest::Approx(5.0));

    std::vector<std::vector<long long>> big(9, std::vector<long long>(9, 0));
    for (int i = 0; i < 9; ++i) big[i][i] = 1;
    CHECK_THROWS_AS(enumerate_shortest(rows(big)), RankTooLarge);
}

TEST_CASE("enumerate_shortest first-nonzero sign is positive") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Basis b = lll_reduce(gen_random_lattice(5, 25, seed), 0.75);
        const auto sv = enumerate_shortest(b);
        auto first = std::find_if(sv.coeffs.begin(), sv.coeffs.end(),
                                  [](long long c) { return c != 0; });
        REQUIRE(first != sv.coeffs.end());
        CHECK(*first > 0);
    }
}

TEST_CASE("integral_transform and unimodularity") {
    const Basis a = rows({{1, 0}, {0, 1}});
    const Basis b = rows({{1, 1}, {0, 1}});
    const auto c = integral_transform(a, b);
    REQUIRE(c.has_value());
    CHECK(is_unimodular(*c));

    CHECK(is_unimodular({{1, 1}, {0, 1}}));
    CHECK_FALSE(is_unimodular({{2, 0}, {0, 1}}));
    CHECK(is_unimodular({{0, 1}, {1, 0}}));  // det -1 counts

    // (1/2, 0) is not an integer combination of the unit basis.
    Basis half = rows({{1, 0}, {0, 1}});
    half.vectors[0][0] = 0.5;
    CHECK_FALSE(integral_transform(a, half).has_value());
}

TEST_CASE("rng streams are deterministic and distinct") {
    Rng a(7), b(7), c(8);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    bool differs = false;
    Rng a2(7);
    for (int i = 0; i < 100; ++i) differs |= (a2.next_u64() != c.next_u64());
    CHECK(differs);

    Rng d(3);
    for (int i = 0; i < 1000; ++i) {
        const long long v = d.next_int(-5, 5);
        CHECK(v >= -5);
        CHECK(v <= 5);
        const double x = d.next_double();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(mix_seed(1, {2, 3}) != mix_seed(1, {3, 2}));
    CHECK(mix_seed(1, {2, 3}) == mix_seed(1, {2, 3}));
}
