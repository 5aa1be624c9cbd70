#include <doctest.h>

#include "mqc/degree_bound.hpp"
#include "mqc/errors.hpp"
#include "mqc/fixtures.hpp"

using namespace mqc;

TEST_CASE("exponent floor per degree") {
    for (int n = 1; n <= 5; ++n) CHECK(min_exponent(n) == 0);
    CHECK(min_exponent(6) == 7);
    CHECK(min_exponent(7) == 37);
    CHECK(min_exponent(8) == 99);
    CHECK(min_exponent(9) == 222);
    CHECK(min_exponent(10) == 478);
    CHECK(min_exponent(16) == 32734);
    CHECK(min_exponent(62) == (i64{1} << 61) - 34);
    CHECK_THROWS_AS(min_exponent(0), Error);
    CHECK_THROWS_AS(min_exponent(63), BoundExceeded);
    // the floor outgrows every fixed budget: fields with h | 2^m stop appearing
    for (int n = 6; n < 40; ++n) CHECK(min_exponent(n) < min_exponent(n + 1));
}

TEST_CASE("prime radicand counts") {
    CHECK(prime_radicand_count({Radicand(-1), Radicand(-2), Radicand(-6)}) == 2);
    CHECK(prime_radicand_count({Radicand(-30), Radicand(-210)}) == 0);
    CHECK(prime_radicand_count({}) == 0);
}

TEST_CASE("every published field respects the prime radicand bound") {
    auto check_table = [](const std::vector<FixtureField>& table, int n) {
        for (const auto& fx : table) {
            if (fx.warn) continue; // suspected misprints need not be consistent
            RadicandList prim;
            for (i64 g : fx.gens) prim.push_back(Radicand(g));
            auto sp = split_signs(complete_radicand_list(prim));
            REQUIRE(sp.neg.size() == size_t(1) << (n - 1));
            CHECK(prime_radicand_count(sp.neg) <= n);
        }
    };
    check_table(biquad_h1_fields(), 2);
    check_table(biquad_h2_entries(), 2);
    check_table(triquad_h1_fields(), 3);
    check_table(quadriquad_fields(), 4);
}
