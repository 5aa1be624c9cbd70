#include <doctest.h>

#include <random>
#include <set>

#include "mqc/errors.hpp"
#include "mqc/radicand.hpp"

using namespace mqc;

namespace {

// random squarefree radicand from a small prime pool
Radicand random_radicand(std::mt19937_64& rng, bool allow_negative = true) {
    static const u32 pool[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    std::vector<u32> ps;
    for (u32 p : pool)
        if (rng() % 3 == 0) ps.push_back(p);
    int sign = (allow_negative && rng() % 2) ? -1 : 1;
    if (ps.empty() && sign == 1) ps.push_back(pool[rng() % 10]);
    return Radicand(sign, ps);
}

} // namespace

TEST_CASE("radicand construction") {
    Radicand r(-30);
    CHECK(r.value == -30);
    CHECK(r.primes == std::vector<u32>{2, 3, 5});
    CHECK(r.negative());
    CHECK(Radicand(1).is_unit());
    CHECK(Radicand(-1).value == -1);
    CHECK(Radicand(-1).primes.empty());
    CHECK_THROWS_AS(Radicand(12), Error);  // not squarefree
    CHECK_THROWS_AS(Radicand(-50), Error);
    CHECK_THROWS_AS(Radicand(0), Error);
    CHECK(Radicand(1, {2, 3, 5}).value == 30);
    CHECK(Radicand(-1, {2, 3, 5}).value == -30);
}

TEST_CASE("sf_mul group laws") {
    std::mt19937_64 rng(23);
    Radicand unit;
    for (int i = 0; i < 2000; ++i) {
        Radicand a = random_radicand(rng), b = random_radicand(rng), c = random_radicand(rng);
        CHECK(sf_mul(a, b) == sf_mul(b, a));
        CHECK(sf_mul(sf_mul(a, b), c) == sf_mul(a, sf_mul(b, c)));
        CHECK(sf_mul(a, unit) == a);
        CHECK(sf_mul(a, a).value == 1); // every element is its own inverse
        // consistency with plain integer arithmetic on the values
        i64 prod = a.value * b.value; // pool is small: no overflow
        CHECK(sf_mul(a, b).value == sf_i64(prod));
    }
}

TEST_CASE("scalar squarefree part") {
    CHECK(sf_i64(1) == 1);
    CHECK(sf_i64(-4) == -1);
    CHECK(sf_i64(18) == 2);
    CHECK(sf_i64(-1800) == -2);
    CHECK(sf_i64(101 * 101 * 7) == 7);
}

TEST_CASE("discriminants") {
    CHECK(discriminant(Radicand(-1)) == -4);
    CHECK(discriminant(Radicand(-2)) == -8);
    CHECK(discriminant(Radicand(-3)) == -3);
    CHECK(discriminant(Radicand(-7)) == -7);
    CHECK(discriminant(Radicand(2)) == 8);
    CHECK(discriminant(Radicand(5)) == 5);
    CHECK(discriminant(Radicand(-5)) == -20);
}

TEST_CASE("complete lists: cardinality and sign split") {
    std::mt19937_64 rng(29);
    int built = 0;
    while (built < 1000) {
        int n = 1 + static_cast<int>(rng() % 5);
        std::vector<Radicand> gens;
        for (int i = 0; i < n; ++i) gens.push_back(random_radicand(rng));
        RadicandList q;
        try {
            q = complete_radicand_list(gens);
        } catch (const DependentRadicands&) {
            continue; // random generators may collide; only primitive lists count
        } catch (const Error&) {
            continue; // unit generator
        }
        ++built;
        CHECK(q.size() == (size_t{1} << n) - 1);
        auto sp = split_signs(q);
        bool any_negative = false;
        for (const auto& g : gens) any_negative |= g.negative();
        if (any_negative)
            CHECK(sp.neg.size() == size_t{1} << (n - 1));
        else
            CHECK(sp.neg.empty());
        CHECK(sp.neg.size() + sp.pos.size() == q.size());
        // closure under sf_mul
        std::set<i64> vals{1};
        for (const auto& r : q) vals.insert(r.value);
        for (const auto& x : q)
            for (const auto& y : q) CHECK(vals.count(sf_mul(x, y).value));
    }
}

TEST_CASE("dependent generators rejected") {
    std::vector<Radicand> dep{Radicand(2), Radicand(3), Radicand(6)};
    CHECK_THROWS_AS(complete_radicand_list(dep), DependentRadicands);
    std::vector<Radicand> dup{Radicand(-5), Radicand(-5)};
    CHECK_THROWS_AS(complete_radicand_list(dup), DependentRadicands);
    std::vector<Radicand> with_unit{Radicand(2), Radicand(1)};
    CHECK_THROWS_AS(complete_radicand_list(with_unit), Error);
}

TEST_CASE("canonical keys and string round trips") {
    RadicandList l{Radicand(-6), Radicand(-2), Radicand(-1)};
    CHECK(canonical_key(l) == "-6,-2,-1");
    CHECK(radicand_list_to_string(l) == "-6,-2,-1");
    auto back = parse_radicand_list("-6,-2,-1");
    CHECK(back == l);
    auto spaced = parse_radicand_list("-6 -2 -1");
    CHECK(spaced == l);
    CHECK_THROWS_AS(parse_radicand_list("abc"), Error);
}

TEST_CASE("field extension matches the regenerated complete list") {
    std::mt19937_64 rng(31);
    int done = 0;
    while (done < 200) {
        std::vector<Radicand> gens;
        int n = 2 + static_cast<int>(rng() % 2);
        bool neg = false;
        for (int i = 0; i < n; ++i) {
            gens.push_back(random_radicand(rng));
            neg |= gens.back().negative();
        }
        Radicand r = random_radicand(rng);
        if (!neg || !r.negative()) continue;
        RadicandList q;
        std::vector<Radicand> ext_gens = gens;
        ext_gens.push_back(r);
        RadicandList full;
        try {
            q = complete_radicand_list(gens);
            full = complete_radicand_list(ext_gens);
        } catch (const DependentRadicands&) {
            continue;
        }
        ++done;
        auto sp = split_signs(q);
        FieldRec k{sp.neg, sp.pos, 0};
        CHECK(k.n() == n);
        auto got = extend_field(k, r);
        auto want = split_signs(full);
        CHECK(canonical_key(got.neg) == canonical_key(want.neg));
        CHECK(radicand_list_to_string(got.pos) == radicand_list_to_string(want.pos));
    }
}
