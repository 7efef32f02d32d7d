#include <doctest.h>

#include <random>

#include "logsyn/witt.hpp"

using namespace logsyn;
using witt::WittVector;

namespace {

WittVector random_witt(long long p, size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> digit(0, p - 1);
    std::vector<long long> c(n);
    for (auto& x : c) x = digit(rng);
    return WittVector(p, c);
}

long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int t = 0; t < e; ++t) r *= b;
    return r;
}

}  // namespace

TEST_CASE("ghost roundtrip") {
    CHECK(ghost_roundtrip(WittVector(2, {1, 0})) == WittVector(2, {1, 0}));
    CHECK(ghost_roundtrip(WittVector(3, {0, 1})) == WittVector(3, {0, 1}));
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        WittVector w = random_witt(5, 4, rng);
        CHECK(ghost_roundtrip(w) == w);
    }
}

TEST_CASE("non-integral ghost vectors are rejected") {
    CHECK_THROWS_AS(WittVector::from_ghost(2, {witt::BigInt(0), witt::BigInt(1)}),
                    NonIntegralUnghost);
    CHECK_THROWS_AS(WittVector::from_ghost(3, {witt::BigInt(1), witt::BigInt(2)}),
                    NonIntegralUnghost);
}

TEST_CASE("ring operations computed through ghosts") {
    WittVector one(2, {1, 0});
    CHECK(one + one == WittVector(2, {0, 1}));
    CHECK(one * one == one);
    WittVector v(2, {0, 1});
    CHECK(v * v == WittVector(2, {0, 0}));
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(29);
    for (long long p : {2LL, 3LL, 5LL}) {
        for (int t = 0; t < 200; ++t) {
            size_t n = 1 + t % 4;
            WittVector a = random_witt(p, n, rng), b = random_witt(p, n, rng),
                       c = random_witt(p, n, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a + b == b + a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == WittVector::zero(p, n));
        }
    }
}

TEST_CASE("frobenius and verschiebung") {
    SUBCASE("V prepends a zero") {
        CHECK(WittVector(2, {1}).verschiebung() == WittVector(2, {0, 1}));
    }
    SUBCASE("F is the identity on the underlying ring of W_n(F_p)") {
        for (long long p : {2LL, 3LL}) {
            std::mt19937_64 rng(31);
            for (int t = 0; t < 50; ++t) {
                WittVector w = random_witt(p, 4, rng);
                long long full = w.to_residue();
                CHECK(w.frobenius().to_residue() == full % pow_ll(p, 3));
            }
        }
    }
    SUBCASE("F(V(w)) = p w") {
        std::mt19937_64 rng(37);
        for (int t = 0; t < 100; ++t) {
            WittVector w = random_witt(3, 3, rng);
            WittVector lhs = w.verschiebung().frobenius();
            WittVector rhs = WittVector::from_integer(3, 3, 3) * w;
            CHECK(lhs == rhs);
        }
    }
    SUBCASE("projection formula V(a) b = V(a F(b))") {
        std::mt19937_64 rng(41);
        for (long long p : {2LL, 5LL}) {
            for (int t = 0; t < 100; ++t) {
                WittVector a = random_witt(p, 3, rng), b = random_witt(p, 4, rng);
                CHECK(a.verschiebung() * b == (a * b.frobenius()).verschiebung());
            }
        }
    }
    SUBCASE("teichmuller is multiplicative") {
        std::mt19937_64 rng(43);
        for (long long p : {2LL, 3LL, 5LL}) {
            std::uniform_int_distribution<long long> digit(0, p - 1);
            for (int t = 0; t < 200; ++t) {
                long long x = digit(rng), y = digit(rng);
                CHECK(WittVector::teichmuller(p, 4, x) * WittVector::teichmuller(p, 4, y) ==
                      WittVector::teichmuller(p, 4, x * y % p));
            }
        }
    }
}

TEST_CASE("W_n(F_p) has p^n elements and to_residue is a ring isomorphism") {
    for (auto [p, n] : std::vector<std::pair<long long, int>>{{2, 12}, {3, 7}, {5, 5}}) {
        long long total = pow_ll(p, n);
        std::vector<bool> seen(static_cast<size_t>(total), false);
        std::vector<long long> coords(n, 0);
        for (long long t = 0; t < total; ++t) {
            long long rest = t;
            for (int u = 0; u < n; ++u) {
                coords[u] = rest % p;
                rest /= p;
            }
            long long r = WittVector(p, coords).to_residue();
            REQUIRE(r >= 0);
            REQUIRE(r < total);
            REQUIRE(!seen[static_cast<size_t>(r)]);
            seen[static_cast<size_t>(r)] = true;
        }
    }
    std::mt19937_64 rng(47);
    for (int t = 0; t < 50; ++t) {
        WittVector a = random_witt(3, 4, rng), b = random_witt(3, 4, rng);
        long long q = pow_ll(3, 4);
        CHECK((a + b).to_residue() == (a.to_residue() + b.to_residue()) % q);
        CHECK((a * b).to_residue() == a.to_residue() * b.to_residue() % q);
    }
}

TEST_CASE("p-typical decomposition of truncation sets") {
    using Comp = std::vector<std::pair<long long, int>>;
    CHECK(witt::ptypical_decomposition(2, 5).components == Comp{{1, 3}, {3, 1}, {5, 1}});
    CHECK(witt::ptypical_decomposition(3, 3).components == Comp{{1, 2}, {2, 1}});
    CHECK(witt::ptypical_decomposition(2, 0).components.empty());
    for (long long p : {2LL, 3LL, 5LL})
        for (long long m = 0; m <= 40; ++m) {
            long long sum = 0;
            for (auto [j, s] : witt::ptypical_decomposition(p, m).components) sum += s;
            CHECK(sum == m);
        }
}

TEST_CASE("expected torsion exponent") {
    CHECK(witt::expected_torsion_exponent(2, 2, 1, 1) == 1);
    CHECK(witt::expected_torsion_exponent(2, 3, 2, 5) == 1);
    CHECK(witt::expected_torsion_exponent(5, 1, 1, 1) == 0);
    // the ceil-log form agrees with the component lengths of bW_{ei-1}
    for (long long p : {2LL, 3LL, 5LL})
        for (long long e = 1; e <= 4; ++e)
            for (long long i = 1; i <= 5; ++i) {
                auto shape = witt::ptypical_decomposition(p, e * i - 1);
                long long sum = 0;
                for (auto [j, s] : shape.components) {
                    CHECK(witt::expected_torsion_exponent(p, e, i, j) == s);
                    sum += s;
                }
                CHECK(sum == e * i - 1);
            }
}
