#pragma once
#include <map>
#include <string>
#include <vector>

#include "mqc/radicand.hpp"

namespace mqc {

// Reference lists of published class-number classifications, embedded
// verbatim as printed. Entries carrying a suspected misprint are flagged so
// verification can report them as WARN instead of FAIL.

struct FixtureField {
    std::vector<i64> gens; // primitive radicand list as printed
    u64 h = 0;
    bool warn = false;
    std::string note;
};

const std::vector<i64>& quad_h1_radicands(); // 9 radicands, class number 1
const std::vector<i64>& quad_h2_radicands(); // 18, class number 2
const std::vector<i64>& quad_h4_radicands(); // 54, class number 4

const std::vector<FixtureField>& biquad_h1_fields();  // 47
const std::vector<FixtureField>& biquad_h2_entries(); // 161 printed entries, 160 fields
const std::vector<FixtureField>& triquad_h1_fields(); // 17
const std::vector<FixtureField>& quadriquad_fields(); // 27 with exact class number

// published number of degree-2^n fields per class number (n in {2,3,4})
const std::map<u64, u64>& published_counts(int n);

struct PublishedSegmentStats {
    u64 pool = 0;            // distinct parent radicands
    u64 complete = 0;        // vetted with P fully known
    u64 partial = 0;         // vetted with unresolved radicands
    u64 missing = 0;         // distinct unresolved radicands
    u64 promoted = 0;        // partial candidates kept after resolution
    u64 total = 0;           // candidates sent to class-number evaluation
    u64 final_fields = 0;
};
const PublishedSegmentStats& published_segment_stats(int n); // n in {3,4,5}

u64 published_biquad_stage1(); // candidate pairs after the class-number-product filter
u64 published_biquad_stage2(); // pairs surviving the third-subfield filter
u64 published_biquad_kept();   // class number dividing 32
u64 published_biquad_h64();    // remainder, all at class number 64

// canonical negative-radicand key -> class number for every embedded field
const std::map<std::string, u64>& fixture_class_numbers();

} // namespace mqc
