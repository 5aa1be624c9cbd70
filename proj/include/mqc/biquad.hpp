#pragma once
#include <gmpxx.h>

#include <map>
#include <vector>

#include "mqc/census.hpp"
#include "mqc/io.hpp"
#include "mqc/radicand.hpp"

namespace mqc {

// unordered pair of distinct negative radicands with 2-power class numbers
struct BiquadCandidate {
    Radicand a, b;    // a.value > b.value (ascending |value|)
    Radicand c;       // sf(ab) > 0
    int level_sum;    // h_a * h_b = 2^level_sum
};

// all pairs from Q_i x Q_j with i + j <= m+1
std::vector<BiquadCandidate> stage1_candidates(const QuadraticCensus& census, int m);

// keeps pairs with h_a*h_b*h_c | 2^(m+1)
std::vector<BiquadCandidate> stage2_filter(const std::vector<BiquadCandidate>& cands,
                                           int m, QuadCache& cache, int jobs = 1);

// z = u + v*sqrt(c) an exact square in Q(sqrt c)?
bool square_in_quad(const mpq_class& u, const mpq_class& v, i64 c);

// Kubota unit index q = [E(K) : E(k1)E(k2)E(k3)] for K = Q(sqrt a, sqrt b)
int unit_index(const Radicand& a, const Radicand& b);

// Kuroda: h_K = (1/2) h_a h_b h_c q
u64 class_number_biquad(const Radicand& a, const Radicand& b, QuadCache& cache);

struct BiquadReport {
    u64 stage1_count = 0;
    u64 stage2_count = 0;
    std::map<u64, u64> h_histogram; // over all stage-2 survivors
};

// full n = 2 census: fields with h | 2^m (report covers all evaluated pairs)
std::vector<FieldLine> census_biquad(const QuadraticCensus& census, int m, QuadCache& cache,
                                     BiquadReport* report = nullptr, int jobs = 1);

} // namespace mqc
