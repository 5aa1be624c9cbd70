#include "mqc/multiquad.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "mqc/biquad.hpp"
#include "mqc/degree_bound.hpp"
#include "mqc/errors.hpp"
#include "mqc/parallel.hpp"

namespace mqc {

namespace {

int budget_exponent(int n, int m) { return (1 << (n - 1)) + m - 1; }

bool contains_value(const RadicandList& list, i64 v) {
    for (const auto& q : list)
        if (q.value == v) return true;
    return false;
}

std::string partial_tuple_key(const CandidatePartial& p) {
    std::string s = canonical_key(p.neg);
    s += '|';
    for (size_t i = 0; i < p.s_prime.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(p.s_prime[i]);
    }
    s += '|';
    s += std::to_string(p.pest_exp);
    return s;
}

} // namespace

VetOutcome vet_candidate(const FieldRec& k, const Radicand& r, const QuadraticCensus& census,
                         int n, int m) {
    VetOutcome out;
    if (!r.negative()) throw Error("vetting radicand must be negative");
    if (k.n() + 1 != n) throw Error("parent degree mismatch");
    const int budget = budget_exponent(n, m);
    if (contains_value(k.neg, r.value)) return out;
    auto ir = census.level_of(r.value);
    if (!ir) return out; // class number unknown or not a power of two
    if (k.p_exp + *ir > budget) return out;

    int pest_exp = k.p_exp + *ir;
    std::vector<i64> s_prime;
    int oversize = 0;
    for (const auto& a : k.pos) {
        i64 s;
        try {
            s = sf_mul(r, a).value;
        } catch (const BoundExceeded&) {
            ++oversize; // |sf(ra)| above 2^62: certainly no census level
            continue;
        }
        if (auto lvl = census.level_of(s))
            pest_exp += *lvl;
        else
            s_prime.push_back(s);
    }
    int unknowns = static_cast<int>(s_prime.size()) + oversize;
    if (pest_exp + (m + 2) * unknowns > budget) return out;
    if (oversize) throw BoundExceeded("surviving candidate with unrepresentable radicand");

    SignSplit ext = extend_field(k, r);
    if (s_prime.empty()) {
        out.kind = VetKind::Complete;
        out.field = FieldRec{std::move(ext.neg), std::move(ext.pos), pest_exp};
        return out;
    }
    std::sort(s_prime.begin(), s_prime.end(),
              [](i64 x, i64 y) { return -x < -y; }); // ascending |value|
    out.kind = VetKind::Partial;
    out.partial =
        CandidatePartial{std::move(ext.neg), std::move(ext.pos), std::move(s_prime), pest_exp};
    return out;
}

std::vector<i64> collect_missing(const std::vector<CandidatePartial>& partials) {
    std::vector<i64> all;
    for (const auto& p : partials) all.insert(all.end(), p.s_prime.begin(), p.s_prime.end());
    std::sort(all.begin(), all.end(), [](i64 x, i64 y) { return -x < -y; });
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

std::vector<FieldRec> finalize_partials(const std::vector<CandidatePartial>& partials,
                                        const std::map<i64, u64>& resolved, int n, int m) {
    const int budget = budget_exponent(n, m);
    std::vector<FieldRec> kept;
    for (const auto& p : partials) {
        int exp = p.pest_exp;
        u64 odd = 1;
        for (i64 s : p.s_prime) {
            auto it = resolved.find(s);
            if (it == resolved.end())
                throw MissingClassNumber("no class number for " + std::to_string(s));
            u64 h = it->second;
            while ((h & 1) == 0) {
                h >>= 1;
                ++exp;
            }
            odd *= h;
        }
        if (odd != 1) continue;         // P not a power of two
        if (exp > budget) continue;     // budget exceeded after resolution
        kept.push_back(FieldRec{p.neg, p.pos, exp});
    }
    return kept;
}

RadicandList primitive_from_field(const FieldRec& rec) {
    std::vector<Radicand> all;
    all.reserve(rec.neg.size() + rec.pos.size());
    all.insert(all.end(), rec.neg.begin(), rec.neg.end());
    all.insert(all.end(), rec.pos.begin(), rec.pos.end());
    std::sort(all.begin(), all.end(), [](const Radicand& x, const Radicand& y) {
        if (x.abs_value() != y.abs_value()) return x.abs_value() < y.abs_value();
        return x.value < y.value;
    });
    RadicandList gens;
    std::vector<Radicand> span{Radicand()};
    std::unordered_set<i64> span_vals{1};
    for (const auto& q : all) {
        if (span_vals.count(q.value)) continue;
        size_t sz = span.size();
        for (size_t i = 0; i < sz; ++i) {
            Radicand prod = sf_mul(span[i], q);
            span_vals.insert(prod.value);
            span.push_back(std::move(prod));
        }
        gens.push_back(q);
    }
    if (span_vals.size() != all.size() + 1 || (size_t{1} << gens.size()) != span_vals.size())
        throw Error("radicand lists do not span a multiquadratic field");
    return gens;
}

SegmentResult run_segment(const std::vector<FieldRec>& prev, const QuadraticCensus& census,
                          int n, int m, Oracle* oracle, QuadCache& qcache, int jobs) {
    if (n < 3) throw Error("segments start at the triquadratic step");
    for (const auto& k : prev)
        if (k.n() + 1 != n) throw Error("parent degree mismatch");
    SegmentResult res;
    res.report.n = n;
    const int budget = budget_exponent(n, m);

    // pool: parent radicands with a census level at most m+1, bucketed by level
    std::vector<std::vector<Radicand>> pool_by_level(static_cast<size_t>(m + 2));
    {
        std::unordered_set<i64> seen;
        for (const auto& k : prev)
            for (const auto& q : k.neg) {
                if (!seen.insert(q.value).second) continue;
                auto lvl = census.level_of(q.value);
                if (lvl && *lvl <= m + 1) pool_by_level[static_cast<size_t>(*lvl)].push_back(q);
            }
        res.report.pool_radicands = 0;
        for (auto& bucket : pool_by_level) {
            res.report.pool_radicands += bucket.size();
            std::sort(bucket.begin(), bucket.end(),
                      [](const Radicand& x, const Radicand& y) { return -x.value < -y.value; });
        }
    }

    struct Shard {
        u64 pairs = 0;
        u64 complete_raw = 0;
        u64 partial_raw = 0;
        std::unordered_map<std::string, FieldRec> complete;
        std::unordered_map<std::string, CandidatePartial> partial;
    };
    int w = effective_jobs(jobs);
    std::vector<Shard> shards(static_cast<size_t>(std::max(w, 1)));
    parallel_for_chunks(static_cast<i64>(prev.size()), jobs, [&](i64 lo, i64 hi, int worker) {
        Shard& sh = shards[static_cast<size_t>(worker)];
        for (i64 pi = lo; pi < hi; ++pi) {
            const FieldRec& k = prev[static_cast<size_t>(pi)];
            int max_lvl = std::min(m + 1, budget - k.p_exp);
            for (int lvl = 0; lvl <= max_lvl; ++lvl) {
                for (const auto& r : pool_by_level[static_cast<size_t>(lvl)]) {
                    ++sh.pairs;
                    VetOutcome out = vet_candidate(k, r, census, n, m);
                    if (out.kind == VetKind::Complete) {
                        ++sh.complete_raw;
                        auto key = canonical_key(out.field.neg);
                        auto [it, fresh] = sh.complete.emplace(std::move(key), out.field);
                        if (!fresh && it->second.p_exp != out.field.p_exp)
                            throw Error("conflicting P for one field");
                    } else if (out.kind == VetKind::Partial) {
                        ++sh.partial_raw;
                        sh.partial.emplace(partial_tuple_key(out.partial), std::move(out.partial));
                    }
                }
            }
        }
    });

    std::unordered_map<std::string, FieldRec> complete;
    std::unordered_map<std::string, CandidatePartial> partial;
    for (auto& sh : shards) {
        res.report.pairs_vetted += sh.pairs;
        res.report.complete_raw += sh.complete_raw;
        res.report.partial_raw += sh.partial_raw;
        for (auto& [key, rec] : sh.complete) {
            auto [it, fresh] = complete.emplace(key, rec);
            if (!fresh && it->second.p_exp != rec.p_exp)
                throw Error("conflicting P for one field");
        }
        for (auto& [key, p] : sh.partial) partial.emplace(key, std::move(p));
    }
    res.report.complete_tuples = complete.size();
    res.report.partial_tuples = partial.size();
    {
        std::unordered_set<std::string> field_keys;
        for (const auto& [key, p] : partial) field_keys.insert(canonical_key(p.neg));
        res.report.partial_fields = field_keys.size();
    }

    res.partials.reserve(partial.size());
    for (auto& [key, p] : partial) res.partials.push_back(p);
    std::sort(res.partials.begin(), res.partials.end(),
              [](const CandidatePartial& x, const CandidatePartial& y) {
                  return partial_tuple_key(x) < partial_tuple_key(y);
              });

    auto missing = collect_missing(res.partials);
    res.report.missing_radicands = missing.size();
    std::map<i64, u64> resolved;
    for (i64 s : missing) resolved[s] = qcache.class_number(s);

    auto promoted = finalize_partials(res.partials, resolved, n, m);
    for (const auto& rec : promoted) {
        auto key = canonical_key(rec.neg);
        auto [it, fresh] = complete.emplace(std::move(key), rec);
        if (fresh)
            ++res.report.promoted;
        else if (it->second.p_exp != rec.p_exp)
            throw Error("conflicting P for one field");
    }
    res.report.total_candidates = complete.size();

    std::vector<std::pair<std::string, FieldRec>> ordered(complete.begin(), complete.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    for (auto& [key, rec] : ordered) {
        u64 h = 0;
        bool have = false;
        if (oracle) {
            try {
                h = oracle->class_number(primitive_from_field(rec));
                have = true;
            } catch (const OracleUnavailable&) {
                have = false;
            }
        }
        if (!have) {
            res.halted_without_oracle = true;
            res.pending.push_back(FieldLine{rec, 0});
            continue;
        }
        u64 v = h;
        int exp = 0;
        while ((v & 1) == 0) {
            v >>= 1;
            ++exp;
        }
        if (v != 1 || exp > m) continue; // class number does not divide 2^m
        if (prime_radicand_count(rec.neg) > n)
            throw Error("prime radicand bound violated");
        ++res.report.h_counts[h];
        res.fields.push_back(FieldLine{rec, h});
    }
    res.report.final_fields = res.fields.size();
    return res;
}

FullCensusResult full_census(int m, const QuadraticCensus& census, Oracle* oracle,
                             QuadCache& qcache, int jobs) {
    FullCensusResult out;
    BiquadReport brep;
    auto fields2 = census_biquad(census, m, qcache, &brep, jobs);
    out.biquad.stage1_count = brep.stage1_count;
    out.biquad.stage2_count = brep.stage2_count;
    out.biquad.h_histogram = brep.h_histogram;
    std::sort(fields2.begin(), fields2.end(), [](const FieldLine& a, const FieldLine& b) {
        return canonical_key(a.rec.neg) < canonical_key(b.rec.neg);
    });
    out.by_n[2] = fields2;

    std::vector<FieldRec> prev;
    prev.reserve(fields2.size());
    for (const auto& f : fields2) prev.push_back(f.rec);
    for (int n = 3; !prev.empty(); ++n) {
        auto seg = run_segment(prev, census, n, m, oracle, qcache, jobs);
        out.reports[n] = seg.report;
        out.by_n[n] = seg.fields;
        if (seg.halted_without_oracle) {
            out.halted_without_oracle = true;
            out.halted_at_n = n;
            out.pending = seg.pending;
            break;
        }
        if (!seg.fields.empty() && min_exponent(n) > m)
            throw Error("field count contradicts the degree floor");
        if (seg.fields.empty()) break;
        prev.clear();
        prev.reserve(seg.fields.size());
        for (const auto& f : seg.fields) prev.push_back(f.rec);
    }
    return out;
}

} // namespace mqc
