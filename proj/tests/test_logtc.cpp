#include <doctest.h>

#include "logsyn/logtc.hpp"

using namespace logsyn;

namespace {

long long pow_ll(long long b, long long e) {
    long long r = 1;
    for (long long t = 0; t < e; ++t) r *= b;
    return r;
}

}  // namespace

TEST_CASE("homotopy table entries") {
    auto table = logtc::logtc_table(2, 2, -2, 9, 7);
    auto entry = [&](long long d) -> const logtc::TableEntry& {
        for (const auto& e : table.entries)
            if (e.degree == d) return e;
        REQUIRE(false);
        return table.entries.front();
    };
    CHECK(entry(-2).descriptor.is_zero());
    CHECK(entry(-1).descriptor == logtc::Descriptor{1, std::nullopt});
    CHECK(entry(0).descriptor == logtc::Descriptor{2, std::nullopt});
    CHECK(entry(1).descriptor == logtc::Descriptor{1, 1});
    CHECK(entry(2).descriptor.is_zero());
    // pi_3 = bW_3(F_2) = Z/4 + Z/2
    CHECK(entry(3).descriptor == logtc::Descriptor{0, 3});
    CHECK(entry(3).realization.exponents == std::vector<int>{1, 2});
}

TEST_CASE("e=1 collapses the big Witt part of pi_1") {
    auto table = logtc::logtc_table(1, 5, 1, 1, 3);
    REQUIRE(table.entries.size() == 1);
    CHECK(table.entries[0].descriptor == logtc::Descriptor{1, std::nullopt});
    CHECK(table.entries[0].realization.exponents == std::vector<int>{3});
}

TEST_CASE("even positive degrees vanish") {
    auto table = logtc::logtc_table(3, 2, 2, 2, 6);
    CHECK(table.entries[0].descriptor.is_zero());
    CHECK(table.entries[0].realization.trivial());
}

TEST_CASE("cardinality |pi_{2m-1}| = p^{em-1}") {
    for (auto [p, e] : std::vector<std::pair<long long, long long>>{{2, 2}, {3, 3}, {5, 1}}) {
        int n = 8;
        auto table = logtc::logtc_table(e, p, 3, 9, n);
        for (const auto& entry : table.entries) {
            if (entry.degree % 2 == 0) continue;
            long long m = (entry.degree + 1) / 2;
            CHECK(entry.realization.exponent_sum() == e * m - 1);
            CHECK(entry.realization.at_cap_count() == 0);
        }
    }
}

TEST_CASE("big Witt entries equal the H1 torsion of the matching syntomic index") {
    long long p = 2, e = 3;
    int n = 8;
    auto table = logtc::logtc_table(e, p, 5, 5, n);
    auto syn = syntomic::syntomic_total(prismatic::ModelParams{p, e, true, n}, 3,
                                        syntomic::default_orbit_bound(p, e, 3));
    std::vector<int> torsion;
    for (int x : syn.h[1].exponents)
        if (x < n) torsion.push_back(x);
    CHECK(table.entries[0].realization.exponents == torsion);
}

TEST_CASE("motivic bigraded reindexing") {
    for (long long e : {1LL, 2LL, 3LL})
        for (long long i = -2; i <= 9; ++i)
            for (long long j = -1; j <= 3; ++j) {
                auto a = logtc::motivic_bigraded(e, 2, i, j, 5);
                auto b = logtc::motivic_bigraded(e, 2, i + 2, j + 1, 5);
                CHECK(a.descriptor == b.descriptor);
                CHECK(a.realization == b.realization);
            }
}

TEST_CASE("motivic bigraded table values") {
    auto w2 = logtc::motivic_bigraded(1, 3, 0, 0, 4);
    CHECK(w2.descriptor == logtc::Descriptor{2, std::nullopt});
    CHECK(!w2.generalized_from_e1);

    // i - 2j = 3 = 2m-1 with m = 2: bW_{m-1} = bW_1 = Z/p
    auto z_p = logtc::motivic_bigraded(1, 3, 5, 1, 4);
    CHECK(z_p.descriptor == logtc::Descriptor{0, 1});
    CHECK(z_p.realization.exponents == std::vector<int>{1});

    auto zero = logtc::motivic_bigraded(1, 3, 2, 0, 4);
    CHECK(zero.descriptor.is_zero());

    CHECK(logtc::motivic_bigraded(4, 3, 5, 1, 4).generalized_from_e1);
    CHECK(logtc::motivic_bigraded(4, 3, 5, 1, 4).descriptor == logtc::Descriptor{0, 7});
    long long card = 1;
    for (int x : logtc::motivic_bigraded(4, 3, 5, 1, 8).realization.exponents)
        card *= pow_ll(3, x);
    CHECK(card == pow_ll(3, 7));
}
