#include "mqc/fixtures.hpp"

#include "mqc/errors.hpp"

namespace mqc {

const std::vector<i64>& quad_h1_radicands() {
    static const std::vector<i64> v = {-1, -2, -3, -7, -11, -19, -43, -67, -163};
    return v;
}

const std::vector<i64>& quad_h2_radicands() {
    static const std::vector<i64> v = {-5,   -6,   -10,  -13,  -15,  -22,  -35,  -37,  -51,
                                       -58,  -91,  -115, -123, -187, -235, -267, -403, -427};
    return v;
}

const std::vector<i64>& quad_h4_radicands() {
    static const std::vector<i64> v = {
        // class group (Z/2)^2
        -21, -30, -33, -42, -57, -70, -78, -85, -93, -102, -130, -133, -177, -190, -195, -253,
        -435, -483, -555, -595, -627, -715, -795, -1435,
        // class group Z/4
        -14, -17, -34, -39, -46, -55, -73, -82, -97, -142, -155, -193, -203, -219, -259, -291,
        -323, -355, -667, -723, -763, -955, -1003, -1027, -1227, -1243, -1387, -1411, -1507,
        -1555};
    return v;
}

const std::vector<FixtureField>& biquad_h1_fields() {
    static const std::vector<FixtureField> v = [] {
        const std::vector<std::vector<i64>> gens = {
            {-1, 2},    {-1, 3},    {-1, 5},    {-1, 7},    {-1, 11},   {-1, 13},  {-1, 19},
            {-1, 37},   {-1, 43},   {-1, 67},   {-1, 163},  {2, -3},    {2, -11},  {-2, -3},
            {-2, 5},    {-2, -7},   {-2, -11},  {-2, -19},  {-2, 29},   {-2, -43}, {-2, -67},
            {-3, 5},    {-3, -7},   {-3, -11},  {-3, 17},   {-3, -19},  {-3, 41},  {-3, -43},
            {-3, -67},  {-3, 89},   {-3, -163}, {-7, 5},    {-7, -11},  {-7, 13},  {-7, -19},
            {-7, -43},  {-7, 61},   {-7, -163}, {-11, 17},  {-11, -19}, {-11, -67},
            {-11, -163}, {-19, -67}, {-19, -163}, {-43, -67}, {-43, -163}, {-67, -163}};
        std::vector<FixtureField> out;
        out.reserve(gens.size());
        for (const auto& g : gens) out.push_back(FixtureField{g, 1, false, ""});
        return out;
    }();
    return v;
}

const std::vector<FixtureField>& biquad_h2_entries() {
    static const std::vector<FixtureField> v = [] {
        std::vector<FixtureField> out;
        auto add = [&](i64 a, i64 b, bool warn = false, const std::string& note = "") {
            out.push_back(FixtureField{{a, b}, 2, warn, note});
        };
        // the twenty fields whose Hilbert class field exceeds the genus field
        add(-1, 17);
        add(-1, 73);
        add(-1, 97);
        add(-1, 193);
        add(-2, 17);
        add(-2, 41);
        add(-3, 13);
        add(-3, 73);
        add(-3, 97);
        add(-3, 241);
        add(-3, 409);
        add(-7, 2);
        add(-7, 29);
        add(-7, 37);
        add(-7, 109);
        add(-11, 5);
        add(-11, 113);
        add(-11, 137);
        add(-19, 17);
        add(-19, 73);
        // the remaining 140, row by row as printed
        for (i64 b : {6, 10, 15, 21, 22, 33, 35, 57, 58, 91, 93, 115, 133, 177, 253, 403})
            add(-1, b);
        for (i64 b : {3, 11, 21, -5, -13, -15, -35, -37, -91, -115, -235, -403, -427}) add(-2, b);
        for (i64 b : {7, 11, 14, 19, 31, 59, 161, 209}) add(-3, b);
        add(-3, 59, true, "printed twice in its row");
        for (i64 b : {-5, -10, -22, -35, -58, -115, -187, -235}) add(-3, b);
        for (i64 b : {2, 7, 23, -7, -67, 47, -43, -163}) add(-5, b);
        for (i64 b : {-11, -19, -22, -43, -67, -163}) add(-6, b);
        for (i64 b : {3, 6, 19, 69, -10, -13, -15, -51, -115, -123, -187, -235, -267, -403})
            add(-7, b);
        for (i64 b : {46, 94, -35, -43, -67, -163}) add(-10, b);
        for (i64 b : {3, 23, 57, -13, -51, -58, -91, -123, -403, -427}) add(-11, b);
        add(-13, 7);
        add(-13, 31, true, "comma missing between 31 and -67 as printed");
        add(-13, -67, true, "comma missing between 31 and -67 as printed");
        add(-13, -163);
        for (i64 b : {3, 6, 21, 69, 141, -43, -67, -163}) add(-15, b);
        for (i64 b : {3, 7, 33, -13, -22, -37, -58, -91, -123, -403}) add(-19, b);
        for (i64 b : {-43, -67, -163}) add(-22, b);
        for (i64 b : {-43, -67, -115, -163, -235}) add(-35, b);
        for (i64 b : {-43, -163}) add(-37, b);
        for (i64 b : {-58, -115, -235, -267, -427}) add(-43, b);
        for (i64 b : {-163, -187}) add(-51, b);
        add(-58, -163);
        for (i64 b : {-123, -235, -403}) add(-67, b);
        for (i64 b : {-163, -403}) add(-91, b);
        for (i64 b : {-163, -235}) add(-115, b);
        for (i64 b : {-187, -235, -267, -403}) add(-163, b);
        return out;
    }();
    return v;
}

const std::vector<FixtureField>& triquad_h1_fields() {
    static const std::vector<FixtureField> v = [] {
        const std::vector<std::vector<i64>> gens = {
            {-1, 2, 3},  {-1, 2, 5},  {-1, 2, 11},   {-1, 3, 5},     {-1, 3, 7},    {-1, 3, 11},
            {-1, 3, 19}, {-1, 7, 5},  {-1, 7, 13},   {-1, 7, 19},    {-2, -3, -7},  {-2, -3, 5},
            {-2, -7, 5}, {-3, -7, 5}, {-3, -11, 2},  {-3, -11, -19}, {-3, -11, 17}};
        std::vector<FixtureField> out;
        for (const auto& g : gens) out.push_back(FixtureField{g, 1, false, ""});
        return out;
    }();
    return v;
}

const std::vector<FixtureField>& quadriquad_fields() {
    static const std::vector<FixtureField> v = [] {
        std::vector<FixtureField> out;
        auto add = [&](std::vector<i64> g, u64 h) { out.push_back(FixtureField{std::move(g), h, false, ""}); };
        add({-1, 2, 3, 5}, 2);
        add({-2, -3, 5, -7}, 4);
        add({-1, 2, 3, 7}, 4);
        add({-1, 3, 5, 7}, 4);
        add({-1, 2, 5, 7}, 4);
        add({-1, 2, 3, 11}, 4);
        add({2, -3, 5, -7}, 8);
        add({-1, 3, 7, 13}, 8);
        add({-1, 3, 5, 11}, 8);
        add({-1, 5, 7, 11}, 16);
        add({-1, 3, 5, 13}, 16);
        add({-1, 3, 11, 17}, 16);
        add({-1, 2, 3, 17}, 16);
        add({-1, 2, 7, 11}, 16);
        add({-2, -3, 5, -11}, 16);
        add({2, -3, -5, 7}, 32);
        add({-1, 3, 7, 19}, 32);
        add({-2, -3, -5, -7}, 32);
        add({-2, -3, -11, 17}, 32);
        add({-2, 3, 5, -7}, 32);
        add({-1, 6, 7, 10}, 32);
        add({-2, 3, -5, -7}, 32);
        add({-1, 5, 6, 7}, 32);
        add({-1, 3, 5, 19}, 32);
        add({-1, 3, 7, 10}, 32);
        add({2, -3, -5, -11}, 32);
        add({-2, -3, -11, -19}, 32);
        return out;
    }();
    return v;
}

const std::map<u64, u64>& published_counts(int n) {
    static const std::map<u64, u64> biquad = {{1, 47},   {2, 160},  {4, 408},
                                              {8, 1186}, {16, 2749}, {32, 6657}};
    static const std::map<u64, u64> triquad = {{1, 17},  {2, 27},   {4, 48},
                                               {8, 146}, {16, 280}, {32, 484}};
    static const std::map<u64, u64> quadriquad = {{1, 0},  {2, 1},  {4, 5},
                                                  {8, 3},  {16, 6}, {32, 12}};
    switch (n) {
        case 2: return biquad;
        case 3: return triquad;
        case 4: return quadriquad;
        default: throw UnknownTable("no published counts for n=" + std::to_string(n));
    }
}

const PublishedSegmentStats& published_segment_stats(int n) {
    static const PublishedSegmentStats s3 = {1485, 6537, 495, 440, 13, 6550, 1002};
    static const PublishedSegmentStats s4 = {251, 102, 1, 1, 0, 102, 27};
    static const PublishedSegmentStats s5 = {48, 0, 0, 0, 0, 0, 0};
    switch (n) {
        case 3: return s3;
        case 4: return s4;
        case 5: return s5;
        default: throw UnknownTable("no published statistics for n=" + std::to_string(n));
    }
}

u64 published_biquad_stage1() { return 82531; }
u64 published_biquad_stage2() { return 11607; }
u64 published_biquad_kept() { return 11207; }
u64 published_biquad_h64() { return 400; }

const std::map<std::string, u64>& fixture_class_numbers() {
    static const std::map<std::string, u64> m = [] {
        std::map<std::string, u64> out;
        auto put = [&](const FixtureField& f) {
            RadicandList prim;
            for (i64 g : f.gens) prim.push_back(Radicand(g));
            RadicandList all = complete_radicand_list(prim);
            SignSplit sp = split_signs(all);
            std::string key = canonical_key(sp.neg);
            auto [it, fresh] = out.emplace(key, f.h);
            if (!fresh && it->second != f.h) throw Error("fixture conflict at " + key);
        };
        for (const auto& f : biquad_h1_fields()) put(f);
        for (const auto& f : biquad_h2_entries()) put(f);
        for (const auto& f : triquad_h1_fields()) put(f);
        for (const auto& f : quadriquad_fields()) put(f);
        return out;
    }();
    return m;
}

} // namespace mqc
