#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "vqkz/errors.hpp"
#include "vqkz/experiments.hpp"
#include "vqkz/gso.hpp"
#include "vqkz/lll.hpp"
#include "vqkz/reduction.hpp"

using namespace vqkz;

namespace {

// Sum_i log ||b*_i||^2 = 2 log det: invariant under every tour-loop step.
double log_det_sq(const std::vector<double>& bstar_sq) {
    double p = 0.0;
    for (double sq : bstar_sq) p += std::log(sq);
    return p;
}

}  // namespace

TEST_CASE("bkz on a frozen pair") {
    const Basis b = Basis::from_rows({{0, 4}, {3, 0}});
    const ReductionResult r = bkz_classical(b, 2, 0.75);
    CHECK(r.status == ReductionStatus::reduced);
    CHECK(norm_sq(r.basis.vectors[0]) == doctest::Approx(9.0));
    CHECK(is_bkz_reduced(r.basis, 2));
}

TEST_CASE("exact bkz reduces random bases") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Basis b = gen_random_lattice(6, 40, seed);
        const ReductionResult r = bkz_classical(b, 3, 0.75);
        CHECK(r.status == ReductionStatus::reduced);
        CHECK(r.tours <= 64);
        CHECK(is_bkz_reduced(r.basis, 3));
        CHECK(is_lll_reduced(r.basis, 0.75));
        const auto c = integral_transform(b, r.basis);
        REQUIRE(c.has_value());
        CHECK(is_unimodular(*c));
        // Block reduction never loses to plain LLL on the first vector.
        const Basis lll = lll_reduce(b, 0.75);
        CHECK(norm_sq(r.basis.vectors[0]) <= norm_sq(lll.vectors[0]) + 1e-9);
    }
}

TEST_CASE("beta equal to rank gives a shortest first vector") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Basis b = gen_random_lattice(4, 25, seed);
        const ReductionResult r = bkz_classical(b, 4, 0.75);
        const ShortestVector sv = enumerate_shortest(r.basis);
        CHECK(norm_sq(r.basis.vectors[0]) == doctest::Approx(sv.norm_sq).epsilon(1e-9));
    }
}

TEST_CASE("is_bkz_reduced spots an unreduced head") {
    // ||b*_1|| = 3 but the block's shortest vector has norm 1.
    CHECK_FALSE(is_bkz_reduced(Basis::from_rows({{3, 0}, {0, 1}}), 2));
    CHECK(is_bkz_reduced(Basis::from_rows({{1, 0}, {0, 1}}), 2));
    CHECK_THROWS_AS(is_bkz_reduced(Basis::from_rows({{1, 0}, {0, 1}}), 3), IndexOutOfRange);
    CHECK_THROWS_AS(is_bkz_reduced(Basis::from_rows({{1, 0}, {0, 1}}), 1), IndexOutOfRange);
}

TEST_CASE("an already reduced basis passes in one quiet tour") {
    const Basis b = gen_random_lattice(5, 30, 4);
    const ReductionResult first = bkz_classical(b, 3, 0.75);
    const ReductionResult again = bkz_classical(first.basis, 3, 0.75);
    CHECK(again.tours == 1);
    for (const auto& ev : again.events) CHECK(ev.action == "keep");
    CHECK(again.basis.vectors == first.basis.vectors);
}

TEST_CASE("event stream is well formed and the potential never rises") {
    // Seed chosen so LLL alone does not finish the job: this run inserts six
    // block vectors over three tours.
    const Basis b = gen_random_lattice(6, 40, 18);
    const ReductionResult r = bkz_classical(b, 3, 0.75);
    REQUIRE_FALSE(r.events.empty());
    int last_tour = 1;
    bool saw_insert = false;
    for (const auto& ev : r.events) {
        CHECK(ev.tour >= last_tour);
        last_tour = ev.tour;
        CHECK(ev.j >= 1);
        CHECK(ev.j <= 5);
        CHECK(ev.k == std::min(ev.j + 2, 6));
        CHECK((ev.action == "insert" || ev.action == "keep" || ev.action == "oracle_error"));
        CHECK(ev.bstar_sq_before.size() == 6);
        CHECK(ev.bstar_sq_after.size() == 6);
        // The first GSO norm never grows (insertions shorten it, prefix LLL
        // only shrinks it) and the lattice volume is untouched.  The weighted
        // prefix-determinant potential is NOT monotone per insertion: an
        // insert rebuilds intermediate prefix sublattices and can raise it.
        CHECK(ev.bstar_sq_after[0] <= ev.bstar_sq_before[0] * (1 + 1e-9));
        CHECK(log_det_sq(ev.bstar_sq_after) ==
              doctest::Approx(log_det_sq(ev.bstar_sq_before)).epsilon(1e-9));
        if (ev.action == "insert") {
            saw_insert = true;
            CHECK(static_cast<int>(ev.v.size()) == ev.k - ev.j + 1);
            const bool e1 = ev.v[0] == 1 && std::all_of(ev.v.begin() + 1, ev.v.end(),
                                                        [](long long c) { return c == 0; });
            CHECK_FALSE(e1);
        }
    }
    CHECK(saw_insert);
}

TEST_CASE("tour cap returns the best basis with timed_out status") {
    const Basis b = gen_random_lattice(7, 45, 21);
    const ReductionResult r = bkz_classical(b, 3, 0.75, 1);
    CHECK(r.tours <= 1);
    if (r.status == ReductionStatus::timed_out) {
        const auto c = integral_transform(b, r.basis);
        REQUIRE(c.has_value());
        CHECK(is_unimodular(*c));
        const ReductionResult full = bkz_classical(b, 3, 0.75);
        CHECK(norm_sq(full.basis.vectors[0]) <= norm_sq(r.basis.vectors[0]) + 1e-9);
    }
}

TEST_CASE("a failing oracle is logged and treated as keep") {
    const Basis b = gen_random_lattice(4, 20, 2);
    int calls = 0;
    const SvpOracle flaky = [&calls](const Basis& block) -> std::vector<long long> {
        if (++calls == 1) throw AllCandidatesZero("nothing nonzero");
        return enumerate_shortest(block).coeffs;
    };
    const ReductionResult r = vqkz_reduce(b, 3, 0.75, flaky);
    CHECK(r.status == ReductionStatus::reduced);
    CHECK(r.events.front().action == "oracle_error");
    CHECK(r.events.front().v == std::vector<long long>{1, 0, 0});
    CHECK(is_lll_reduced(r.basis, 0.75));
}

TEST_CASE("an oracle returning garbage is a hard error") {
    const Basis b = gen_random_lattice(4, 20, 3);
    const SvpOracle wrong_size = [](const Basis&) { return std::vector<long long>{1}; };
    CHECK_THROWS_AS(vqkz_reduce(b, 3, 0.75, wrong_size), Error);
    const SvpOracle zero = [](const Basis& block) {
        return std::vector<long long>(block.rank(), 0);
    };
    CHECK_THROWS_AS(vqkz_reduce(b, 3, 0.75, zero), Error);
}

TEST_CASE("argument guards") {
    const Basis b = gen_random_lattice(4, 20, 5);
    CHECK_THROWS_AS(vqkz_reduce(b, 1, 0.75, exact_svp_oracle()), IndexOutOfRange);
    CHECK_THROWS_AS(vqkz_reduce(b, 5, 0.75, exact_svp_oracle()), IndexOutOfRange);
    CHECK_THROWS_AS(vqkz_reduce(b, 3, 0.75, exact_svp_oracle(), 0), IndexOutOfRange);
    CHECK_THROWS_AS(vqkz_reduce(b, 3, 0.1, exact_svp_oracle()), InvalidDelta);
}

TEST_CASE("quantum oracle reductions are deterministic") {
    const Basis b = gen_random_lattice(4, 12, 8);
    OracleConfig cfg;
    cfg.layers = 3;
    cfg.iters = 150;
    cfg.seed = 6;
    const ReductionResult a = vqkz_reduce(b, 3, 0.75, quantum_svp_oracle(cfg), 8);
    const ReductionResult c = vqkz_reduce(b, 3, 0.75, quantum_svp_oracle(cfg), 8);
    CHECK(a.basis.vectors == c.basis.vectors);
    CHECK(a.events.size() == c.events.size());
    CHECK(is_lll_reduced(a.basis, 0.75));
    const auto t = integral_transform(b, a.basis);
    REQUIRE(t.has_value());
    CHECK(is_unimodular(*t));
}

TEST_CASE("quality bound formula") {
    CHECK(bkz_quality_bound(2, 3, 4.0 / 3) == doctest::Approx(16.0 / 9));
    CHECK(bkz_quality_bound(3, 5, 1.5) == doctest::Approx(std::pow(1.5, 2.0)));
    CHECK(bkz_quality_bound(5, 5, 2.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(bkz_quality_bound(1, 5, 1.5), IndexOutOfRange);
    CHECK_THROWS_AS(bkz_quality_bound(2, 1, 1.5), IndexOutOfRange);
}

TEST_CASE("reduction log shape") {
    const Basis b = gen_random_lattice(4, 20, 13);
    const ReductionResult r = bkz_classical(b, 3, 0.75);
    const auto j = reduction_log(r);
    CHECK(j["status"] == "reduced");
    CHECK(j["tours"] == r.tours);
    REQUIRE(j["events"].is_array());
    CHECK(j["events"].size() == r.events.size());
    const auto& e0 = j["events"][0];
    for (const char* key : {"tour", "j", "k", "action", "v", "norms_before", "norms_after"})
        CHECK(e0.contains(key));
}
