#pragma once
#include <map>
#include <vector>

#include "mqc/census.hpp"
#include "mqc/io.hpp"
#include "mqc/oracle.hpp"
#include "mqc/radicand.hpp"

namespace mqc {

// a candidate whose P is known only up to the class numbers of s_prime
struct CandidatePartial {
    RadicandList neg, pos;
    std::vector<i64> s_prime; // sorted ascending by |value|
    int pest_exp = 0;         // P_estimate = 2^pest_exp
};

enum class VetKind { Eliminated, Complete, Partial };

struct VetOutcome {
    VetKind kind = VetKind::Eliminated;
    FieldRec field;           // Complete
    CandidatePartial partial; // Partial
};

// Does K(sqrt r) survive the imaginary-subfield class number budget
// 2^(2^(n-1) + m - 1)? Complete when every new negative radicand has a
// census level, Partial otherwise.
VetOutcome vet_candidate(const FieldRec& k, const Radicand& r, const QuadraticCensus& census,
                         int n, int m);

std::vector<i64> collect_missing(const std::vector<CandidatePartial>& partials);

// resolve s_prime, keep candidates whose P is a 2-power within budget
std::vector<FieldRec> finalize_partials(const std::vector<CandidatePartial>& partials,
                                        const std::map<i64, u64>& resolved, int n, int m);

struct SegmentReport {
    int n = 0;
    u64 pool_radicands = 0;    // distinct negative radicands across all parents
    u64 pairs_vetted = 0;      // (parent, radicand) attempts
    u64 complete_raw = 0;      // Complete outcomes before dedup
    u64 partial_raw = 0;       // Partial outcomes before dedup
    u64 complete_tuples = 0;   // distinct Complete candidates
    u64 partial_tuples = 0;    // distinct (neg, pos, S', Pest) tuples
    u64 partial_fields = 0;    // the same, keyed by field only
    u64 missing_radicands = 0; // distinct radicands across all S'
    u64 promoted = 0;          // partial fields kept after resolution
    u64 total_candidates = 0;  // complete + promoted, before class numbers
    std::map<u64, u64> h_counts; // over fields kept in the final set
    u64 final_fields = 0;
};

struct SegmentResult {
    std::vector<FieldLine> fields;          // h | 2^m, with exact h
    SegmentReport report;
    std::vector<CandidatePartial> partials; // all Partial tuples (checkpointable)
    std::vector<FieldLine> pending;         // candidates awaiting an oracle (h = 0)
    bool halted_without_oracle = false;
};

/// one recursion step: all imaginary n-quadratic fields with h | 2^m whose
// parent list is prev. oracle may be null; candidates then end up in pending.
SegmentResult run_segment(const std::vector<FieldRec>& prev, const QuadraticCensus& census,
                          int n, int m, Oracle* oracle, QuadCache& qcache, int jobs = 1);

// minimal generator list of a field given through its complete radicand lists
RadicandList primitive_from_field(const FieldRec& rec);

struct FullCensusResult {
    std::map<int, std::vector<FieldLine>> by_n;
    std::map<int, SegmentReport> reports;
    struct BiquadReportHolder {
        u64 stage1_count = 0, stage2_count = 0;
        std::map<u64, u64> h_histogram;
    } biquad;
    bool halted_without_oracle = false;
    int halted_at_n = 0;
    std::vector<FieldLine> pending;
};

FullCensusResult full_census(int m, const QuadraticCensus& census, Oracle* oracle,
                             QuadCache& qcache, int jobs = 1);

} // namespace mqc
