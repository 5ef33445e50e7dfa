#include <catch2/catch_amalgamated.hpp>

#include "vwx/vw.hpp"

using namespace vwx;

namespace {

// Scan-from-2 oracle for the least P with the inequality true from P on.
u64 bound_by_scan(u64 n, bool trivial) {
    u64 p = 2;
    while (!detail::bound_inequality_holds(n, p, trivial)) ++p;
    return p;
}

}  // namespace

TEST_CASE("guarantee_bound small values against the linear-scan oracle") {
    for (u64 n = 2; n <= 40; ++n) {
        CHECK(guarantee_bound(n, true) == bound_by_scan(n, true));
        CHECK(guarantee_bound(n, false) == bound_by_scan(n, false));
    }
    // frozen values from an independent integer-arithmetic evaluation
    CHECK(guarantee_bound(2, true) == 27);
    CHECK(guarantee_bound(3, true) == 102);
    CHECK(guarantee_bound(4, true) == 291);
    CHECK(guarantee_bound(8, true) == 4227);
    CHECK(guarantee_bound(12, true) == 21027);
    CHECK(guarantee_bound(16, true) == 66051);
    CHECK(guarantee_bound(45, true) == 4104678);
    CHECK(guarantee_bound(2, false) == 20);
    CHECK(guarantee_bound(3, false) == 85);
    CHECK_THROWS_AS(guarantee_bound(1, true), std::domain_error);
}

TEST_CASE("guarantee_bound boundary is sharp") {
    for (u64 n : {2ull, 7ull, 45ull, 120ull}) {
        u64 P = guarantee_bound(n, true);
        CHECK(detail::bound_inequality_holds(n, P, true));
        CHECK(detail::bound_inequality_holds(n, P + 1, true));
        CHECK_FALSE(detail::bound_inequality_holds(n, P - 1, true));
    }
}

TEST_CASE("trivial-family bound stays under 1.001 n^4 for n in [45, 200]") {
    for (u64 n = 45; n <= 200; ++n) {
        u64 P = guarantee_bound(n, true);
        u128 lhs = (u128)P * 1000;
        u128 rhs = (u128)1001 * n * n * n * n;
        CAPTURE(n, P);
        REQUIRE(lhs <= rhs);
    }
}

TEST_CASE("compute_vw(2) reproduces the brute-force ground truth") {
    auto r = compute_vw(2);
    CHECK(r.p0 == 11);
    CHECK(r.bound == 27);
    CHECK(r.exceptional_primes == std::vector<u64>{3, 5, 7});
    CHECK(r.primes_scanned == 9);  // 3,5,...,23 and the certificate prime 29
    CHECK(r.scan_limit == 29);
    CHECK(r.certified);
    CHECK(is_prime(r.p0));
    CHECK(r.p0 % r.n == 1);
}

TEST_CASE("compute_vw small n frozen values") {
    // frozen from the pre-build exhaustive naive-detection oracle
    CHECK(compute_vw(3).p0 == 31);
    CHECK(compute_vw(4).p0 == 41);
    CHECK(compute_vw(5).p0 == 41);
    CHECK(compute_vw(6).p0 == 139);
    CHECK(compute_vw(7).p0 == 211);
    CHECK(compute_vw(8).p0 == 113);
}

TEST_CASE("VwResult invariants") {
    for (u64 n = 2; n <= 10; ++n) {
        auto r = compute_vw(n);
        CAPTURE(n);
        REQUIRE(is_prime(r.p0));
        REQUIRE(r.p0 % n == 1);
        REQUIRE(r.history.size() == r.primes_scanned);
        REQUIRE(r.history.back().second);  // certificate prime is True
        // everything at or past p0 has a solution, largest below has none
        for (auto [p, sol] : r.history) {
            if (p >= r.p0) REQUIRE(sol);
        }
        for (u64 e : r.exceptional_primes) REQUIRE(e < r.p0);
        // exceptional primes are exactly the False entries
        std::vector<u64> falses;
        for (auto [p, sol] : r.history)
            if (!sol) falses.push_back(p);
        REQUIRE(falses == r.exceptional_primes);
    }
}

TEST_CASE("p0 is stable under a doubled bound") {
    for (u64 n = 2; n <= 20; ++n) {
        auto base = compute_vw(n);
        auto wide = compute_vw(n, 1, 1, 2, base.bound * 2);
        CAPTURE(n);
        REQUIRE(wide.p0 == base.p0);
        REQUIRE(wide.certified);
    }
}

TEST_CASE("p0 at or below the guarantee bound for n up to 30") {
    for (u64 n = 2; n <= 30; ++n) {
        auto r = compute_vw(n);
        CAPTURE(n, r.p0, r.bound);
        REQUIRE(r.p0 <= r.bound);
    }
}

TEST_CASE("under-scan is uncertified") {
    auto r = compute_vw(2, 1, 1, 2, u64{7});
    CHECK_FALSE(r.certified);
    CHECK(r.p0 == 1);  // 3, 5, 7 are all False; no transition fires
    CHECK(r.exceptional_primes == std::vector<u64>{3, 5, 7});
}

TEST_CASE("generalized equations") {
    // a+b != c: the smaller no-trivial-solutions bound applies
    auto r = compute_vw(2, 1, 1, 3);
    CHECK(r.bound == guarantee_bound(2, false));
    CHECK(is_prime(r.p0));
    // a+b = c mod nothing in Z: 2x + 3y = 5z is a trivial family
    auto r2 = compute_vw(2, 2, 3, 5);
    CHECK(r2.bound == guarantee_bound(2, true));
}

TEST_CASE("worker count does not change the result") {
    for (unsigned workers : {1u, 4u, 8u}) {
        auto r = compute_vw(6, 1, 1, 2, std::nullopt, workers);
        CAPTURE(workers);
        REQUIRE(r.p0 == 139);
        REQUIRE(r.exceptional_primes.size() == 10);
    }
}

TEST_CASE("scan_range matches per-n calls") {
    auto rows = scan_range(2, 6, 1, 1, 2, 4);
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) {
        REQUIRE(row.error.empty());
        auto solo = compute_vw(row.n);
        REQUIRE(row.result->p0 == solo.p0);
        REQUIRE(row.result->exceptional_primes == solo.exceptional_primes);
    }
    CHECK_THROWS_AS(scan_range(5, 2), std::domain_error);
}

TEST_CASE("replaying the scan with the naive oracle matches") {
    for (u64 n = 2; n <= 8; ++n) {
        auto r = compute_vw(n);
        for (auto [p, sol] : r.history) {
            auto ctx = PrimeContext::make(p);
            Subgroup sub(ctx, n);
            if (sub.order() > 10000) continue;
            auto eq = Equation::make(p, 1, 1, 2);
            CAPTURE(n, p);
            REQUIRE(detect_naive(sub, eq).has_solution == sol);
        }
    }
}
