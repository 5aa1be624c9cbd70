#include <doctest.h>

#include <map>
#include <set>

#include "mqc/biquad.hpp"
#include "mqc/census.hpp"
#include "mqc/errors.hpp"
#include "mqc/fixtures.hpp"
#include "mqc/multiquad.hpp"
#include "mqc/oracle.hpp"

using namespace mqc;

namespace {

FieldRec gaussian_times_sqrt2() {
    // Q(i, sqrt 2): negatives {-2, -1}, positive {2}, P = 1
    return FieldRec{{Radicand(-2), Radicand(-1)}, {Radicand(2)}, 0};
}

} // namespace

TEST_CASE("vetting a complete candidate") {
    auto census = build_census(2000, 1);
    auto out = vet_candidate(gaussian_times_sqrt2(), Radicand(-3), census, 3, 5);
    REQUIRE(out.kind == VetKind::Complete);
    CHECK(canonical_key(out.field.neg) == "-6,-3,-2,-1");
    CHECK(radicand_list_to_string(out.field.pos) == "2,3,6");
    CHECK(out.field.p_exp == 1); // h(-6) = 2, the rest are 1
}

TEST_CASE("vetting eliminations") {
    auto census = build_census(2000, 1);
    auto k = gaussian_times_sqrt2();
    CHECK(vet_candidate(k, Radicand(-1), census, 3, 5).kind == VetKind::Eliminated); // contained
    CHECK(vet_candidate(k, Radicand(-23), census, 3, 5).kind == VetKind::Eliminated); // h = 3
    FieldRec costly = k;
    costly.p_exp = 2; // pretend an expensive parent: the budget prices -5 out at m = 0
    CHECK(vet_candidate(costly, Radicand(-5), census, 3, 0).kind == VetKind::Eliminated);
    CHECK(vet_candidate(k, Radicand(-5), census, 3, 0).kind == VetKind::Complete);
    CHECK_THROWS_AS(vet_candidate(k, Radicand(3), census, 3, 5), Error);
    CHECK_THROWS_AS(vet_candidate(k, Radicand(-3), census, 4, 5), Error);
}

TEST_CASE("vetting a partial candidate and resolving it") {
    // bound 700 keeps -854 = sf(-2 * 427) out of the census, so the product
    // radicand is genuinely unknown and the candidate comes back partial
    auto census = build_census(700, 0);
    FieldRec parent{{Radicand(-1), Radicand(-427)}, {Radicand(427)}, 1};
    auto out = vet_candidate(parent, Radicand(-2), census, 3, 0);
    REQUIRE(out.kind == VetKind::Partial);
    CHECK(out.partial.s_prime == std::vector<i64>{-854});
    CHECK(out.partial.pest_exp == 1);

    auto missing = collect_missing({out.partial, out.partial});
    CHECK(missing == std::vector<i64>{-854});

    auto kept = finalize_partials({out.partial}, {{-854, 4}}, 3, 0);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].p_exp == 3); // right at the m = 0 budget

    CHECK(finalize_partials({out.partial}, {{-854, 3}}, 3, 0).empty());  // odd part
    CHECK(finalize_partials({out.partial}, {{-854, 16}}, 3, 0).empty()); // budget
    CHECK_THROWS_AS(finalize_partials({out.partial}, {}, 3, 0), MissingClassNumber);
}

TEST_CASE("primitive generators from field lists") {
    auto census = build_census(2000, 1);
    auto out = vet_candidate(gaussian_times_sqrt2(), Radicand(-3), census, 3, 5);
    auto gens = primitive_from_field(out.field);
    CHECK(gens.size() == 3);
    auto sp = split_signs(complete_radicand_list(gens));
    CHECK(canonical_key(sp.neg) == canonical_key(out.field.neg));

    FieldRec broken{{Radicand(-1), Radicand(-2)}, {}, 0};
    CHECK_THROWS_AS(primitive_from_field(broken), Error);
}

TEST_CASE("degree-8 segment at m = 0 resolves published fields and parks the rest") {
    auto census = build_census(2000, 1);
    QuadCache qcache;
    qcache.attach_census(&census);
    auto fields2 = census_biquad(census, 0, qcache);
    REQUIRE(fields2.size() == 47);
    std::vector<FieldRec> prev;
    for (const auto& f : fields2) prev.push_back(f.rec);

    Oracle oracle(qcache);
    for (const auto& [key, h] : fixture_class_numbers()) oracle.cache().put(key, h, "fixture");

    auto seg = run_segment(prev, census, 3, 0, &oracle, qcache, 1);
    CHECK(seg.halted_without_oracle); // unpublished candidates have no answer here
    CHECK(!seg.pending.empty());

    std::set<std::string> got;
    for (const auto& f : seg.fields) {
        CHECK(f.h == 1);
        got.insert(canonical_key(f.rec.neg));
    }
    std::set<std::string> want;
    for (const auto& fx : triquad_h1_fields()) {
        RadicandList prim;
        for (i64 g : fx.gens) prim.push_back(Radicand(g));
        want.insert(canonical_key(split_signs(complete_radicand_list(prim)).neg));
    }
    CHECK(got == want);
    CHECK(got.size() == 17);

    // an unpublished but vetted candidate must be parked, not dropped
    std::set<std::string> parked;
    for (const auto& f : seg.pending) parked.insert(canonical_key(f.rec.neg));
    CHECK(parked.count("-14,-7,-2,-1") == 1);

    // the recorded P always re-derives from the subfield class numbers
    auto check_p = [&](const FieldRec& rec) {
        u64 prod = 1;
        for (const auto& r : rec.neg) prod *= qcache.class_number(r.value);
        CHECK(prod == u64(1) << rec.p_exp);
    };
    for (const auto& f : seg.fields) check_p(f.rec);
    for (const auto& f : seg.pending) check_p(f.rec);
    for (const auto& p : seg.partials) {
        CHECK(!p.s_prime.empty());
        CHECK(p.pest_exp >= 0);
    }

    CHECK(seg.report.n == 3);
    CHECK(seg.report.pool_radicands > 0);
    CHECK(seg.report.pairs_vetted > 0);
    CHECK(seg.report.complete_raw >= seg.report.complete_tuples);
    CHECK(seg.report.partial_raw >= seg.report.partial_tuples);
    CHECK(seg.report.total_candidates ==
          seg.report.complete_tuples + seg.report.promoted);
    CHECK(seg.report.final_fields == 17);
    CHECK(seg.report.total_candidates >= seg.fields.size() + seg.pending.size());
}

TEST_CASE("segment input validation") {
    auto census = build_census(700, 0);
    QuadCache qcache;
    CHECK_THROWS_AS(run_segment({}, census, 2, 0, nullptr, qcache, 1), Error);
    std::vector<FieldRec> bad{FieldRec{{Radicand(-1), Radicand(-2)}, {Radicand(2)}, 0}};
    CHECK_THROWS_AS(run_segment(bad, census, 4, 0, nullptr, qcache, 1), Error);
}
