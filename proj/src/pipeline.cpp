#include "mqc/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "mqc/biquad.hpp"
#include "mqc/degree_bound.hpp"
#include "mqc/errors.hpp"
#include "mqc/fixtures.hpp"
#include "mqc/io.hpp"

namespace mqc {

i64 RunConfig::resolved_bound() const { return bound > 0 ? bound : default_census_bound(m); }
int RunConfig::resolved_max_level() const { return max_level >= 0 ? max_level : m + 1; }

std::string census_file(const RunConfig& cfg) { return cfg.data_dir + "/quad-census.tsv"; }
std::string levels_file(const RunConfig& cfg) { return cfg.data_dir + "/quad-levels.tsv"; }
std::string fields_file(const RunConfig& cfg, int n) {
    return cfg.data_dir + "/fields-n" + std::to_string(n) + ".tsv";
}
std::string partials_file(const RunConfig& cfg, int n) {
    return cfg.data_dir + "/partials-n" + std::to_string(n) + ".tsv";
}
std::string pending_file(const RunConfig& cfg, int n) {
    return cfg.data_dir + "/pending-n" + std::to_string(n) + ".tsv";
}
std::string report_file(const RunConfig& cfg, int n) {
    return n == 2 ? cfg.data_dir + "/report-biquad.tsv"
                  : cfg.data_dir + "/report-n" + std::to_string(n) + ".tsv";
}

void save_partials(const std::vector<CandidatePartial>& ps, const std::string& path) {
    std::string out;
    for (const auto& p : ps) {
        out += "neg=" + radicand_list_to_string(p.neg);
        out += "\tpos=" + radicand_list_to_string(p.pos);
        out += "\tSprime=";
        for (size_t i = 0; i < p.s_prime.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(p.s_prime[i]);
        }
        out += "\tPest=" + std::to_string(p.pest_exp) + "\n";
    }
    atomic_write_file(path, out);
}

std::vector<CandidatePartial> load_partials(const std::string& path) {
    std::vector<CandidatePartial> out;
    for (const auto& line : read_lines(path)) {
        if (line.empty() || line[0] == '#') continue;
        auto parts = split(line, '\t');
        if (parts.size() != 4) throw IoError("bad partial line: " + line);
        auto want = [&](size_t i, const std::string& prefix) {
            if (parts[i].rfind(prefix, 0) != 0) throw IoError("bad partial line: " + line);
            return parts[i].substr(prefix.size());
        };
        CandidatePartial p;
        p.neg = parse_radicand_list(want(0, "neg="));
        p.pos = parse_radicand_list(want(1, "pos="));
        for (const auto& tok : split(want(2, "Sprime="), ','))
            if (!tok.empty()) p.s_prime.push_back(std::stoll(tok));
        p.pest_exp = std::stoi(want(3, "Pest="));
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

void save_kv(const std::map<std::string, u64>& kv, const std::string& path) {
    std::string out;
    for (const auto& [k, v] : kv) out += k + "\t" + std::to_string(v) + "\n";
    atomic_write_file(path, out);
}

std::map<std::string, u64> load_kv(const std::string& path) {
    std::map<std::string, u64> kv;
    for (const auto& line : read_lines(path)) {
        if (line.empty() || line[0] == '#') continue;
        auto parts = split(line, '\t');
        if (parts.size() != 2) throw IoError("bad report line: " + line);
        kv[parts[0]] = std::stoull(parts[1]);
    }
    return kv;
}

} // namespace

void save_report(const SegmentReport& r, const std::string& path) {
    std::map<std::string, u64> kv;
    kv["n"] = static_cast<u64>(r.n);
    kv["pool"] = r.pool_radicands;
    kv["pairs"] = r.pairs_vetted;
    kv["complete_raw"] = r.complete_raw;
    kv["partial_raw"] = r.partial_raw;
    kv["complete"] = r.complete_tuples;
    kv["partial"] = r.partial_tuples;
    kv["partial_fields"] = r.partial_fields;
    kv["missing"] = r.missing_radicands;
    kv["promoted"] = r.promoted;
    kv["total"] = r.total_candidates;
    kv["final"] = r.final_fields;
    for (const auto& [h, c] : r.h_counts) kv["h_" + std::to_string(h)] = c;
    save_kv(kv, path);
}

SegmentReport load_report(const std::string& path) {
    SegmentReport r;
    for (const auto& [k, v] : load_kv(path)) {
        if (k == "n") r.n = static_cast<int>(v);
        else if (k == "pool") r.pool_radicands = v;
        else if (k == "pairs") r.pairs_vetted = v;
        else if (k == "complete_raw") r.complete_raw = v;
        else if (k == "partial_raw") r.partial_raw = v;
        else if (k == "complete") r.complete_tuples = v;
        else if (k == "partial") r.partial_tuples = v;
        else if (k == "partial_fields") r.partial_fields = v;
        else if (k == "missing") r.missing_radicands = v;
        else if (k == "promoted") r.promoted = v;
        else if (k == "total") r.total_candidates = v;
        else if (k == "final") r.final_fields = v;
        else if (k.rfind("h_", 0) == 0) r.h_counts[std::stoull(k.substr(2))] = v;
    }
    return r;
}

PipelineContext::PipelineContext(const RunConfig& cfg, bool build_missing)
    : qcache(cfg.data_dir + "/quad-cache.tsv"),
      ocache(cfg.data_dir + "/oracle-cache.tsv") {
    std::filesystem::create_directories(cfg.data_dir);
    const std::string cpath = census_file(cfg);
    bool loaded = false;
    if (file_exists(cpath)) {
        QuadraticCensus c = load_census(cpath);
        if (c.bound == cfg.resolved_bound() && c.max_level == cfg.resolved_max_level()) {
            census = std::move(c);
            loaded = true;
        }
    }
    if (!loaded) {
        if (!build_missing) throw IoError("census checkpoint missing: " + cpath);
        census = build_census(cfg.resolved_bound(), cfg.resolved_max_level(), cfg.jobs);
        save_census(census, cpath);
        save_levels(census, levels_file(cfg));
    }
    qcache.attach_census(&census);
    qcache.set_feasibility_limit(i64(1) << 41);
}

namespace {

struct SegmentFiles {
    std::vector<FieldLine> fields;
    SegmentReport report;
    bool halted = false;
    u64 pending = 0;
};

// run (or reload) the degree-n stage and persist every artifact
SegmentFiles run_segment_step(const RunConfig& cfg, PipelineContext& ctx, Oracle& oracle, int n,
                              const std::vector<FieldLine>& prev_lines) {
    SegmentFiles out;
    const std::string fpath = fields_file(cfg, n);
    if (file_exists(fpath) && file_exists(report_file(cfg, n))) {
        out.fields = load_field_set(fpath);
        out.report = load_report(report_file(cfg, n));
        return out;
    }
    std::vector<FieldRec> prev;
    prev.reserve(prev_lines.size());
    for (const auto& f : prev_lines) prev.push_back(f.rec);
    SegmentResult seg = run_segment(prev, ctx.census, n, cfg.m, &oracle, ctx.qcache, cfg.jobs);
    save_partials(seg.partials, partials_file(cfg, n));
    save_report(seg.report, report_file(cfg, n));
    oracle.save();
    ctx.qcache.save();
    if (seg.halted_without_oracle) {
        save_field_set(seg.pending, pending_file(cfg, n));
        out.halted = true;
        out.pending = seg.pending.size();
        out.report = seg.report;
        return out;
    }
    save_field_set(seg.fields, fpath);
    std::remove(pending_file(cfg, n).c_str());
    out.fields = std::move(seg.fields);
    out.report = seg.report;
    return out;
}

struct BiquadFiles {
    std::vector<FieldLine> fields;
    std::map<std::string, u64> report;
};

BiquadFiles biquad_step(const RunConfig& cfg, PipelineContext& ctx) {
    BiquadFiles out;
    const std::string fpath = fields_file(cfg, 2);
    if (file_exists(fpath) && file_exists(report_file(cfg, 2))) {
        out.fields = load_field_set(fpath);
        out.report = load_kv(report_file(cfg, 2));
        return out;
    }
    BiquadReport rep;
    out.fields = census_biquad(ctx.census, cfg.m, ctx.qcache, &rep, cfg.jobs);
    out.report["stage1"] = rep.stage1_count;
    out.report["stage2"] = rep.stage2_count;
    out.report["kept"] = out.fields.size();
    for (const auto& [h, c] : rep.h_histogram) out.report["h_" + std::to_string(h)] = c;
    save_field_set(out.fields, fpath);
    save_kv(out.report, report_file(cfg, 2));
    ctx.qcache.save();
    return out;
}

} // namespace

int cmd_census(const RunConfig& cfg) {
    PipelineContext ctx(cfg, true);
    save_levels(ctx.census, levels_file(cfg)); // refresh even when reloaded
    for (int i = 0; i <= cfg.resolved_max_level(); ++i) {
        size_t count = static_cast<size_t>(i) < ctx.census.levels.size()
                           ? ctx.census.levels[static_cast<size_t>(i)].size()
                           : 0;
        std::cout << "Q_" << i << ": " << count << "\n";
    }
    return 0;
}

int cmd_biquad(const RunConfig& cfg) {
    PipelineContext ctx(cfg, true);
    BiquadFiles bq = biquad_step(cfg, ctx);
    std::cout << "stage1: " << bq.report["stage1"] << "\n";
    std::cout << "stage2: " << bq.report["stage2"] << "\n";
    std::cout << "kept: " << bq.report["kept"] << "\n";
    for (const auto& [k, v] : bq.report)
        if (k.rfind("h_", 0) == 0) std::cout << "h=" << k.substr(2) << ": " << v << "\n";
    return 0;
}

int cmd_segment(const RunConfig& cfg, int n) {
    if (n < 3) throw Error("segments start at n=3; use the biquad command below that");
    PipelineContext ctx(cfg, true);
    Oracle oracle(ctx.qcache, std::move(ctx.ocache));
    if (!cfg.oracle_cmd.empty()) oracle.configure_responder(cfg.oracle_cmd, cfg.oracle_timeout_secs);
    std::vector<FieldLine> prev =
        n == 3 ? biquad_step(cfg, ctx).fields : load_field_set(fields_file(cfg, n - 1));
    SegmentFiles seg = run_segment_step(cfg, ctx, oracle, n, prev);
    if (seg.halted) {
        std::cout << "oracle unavailable: " << seg.pending << " candidates pending\n";
        return 3;
    }
    std::cout << "n=" << n << ": " << seg.fields.size() << " fields ("
              << seg.report.total_candidates << " candidates)\n";
    return 0;
}

int cmd_run(const RunConfig& cfg) {
    PipelineContext ctx(cfg, true);
    Oracle oracle(ctx.qcache, std::move(ctx.ocache));
    if (!cfg.oracle_cmd.empty()) oracle.configure_responder(cfg.oracle_cmd, cfg.oracle_timeout_secs);
    BiquadFiles bq = biquad_step(cfg, ctx);
    std::vector<std::pair<int, size_t>> summary;
    summary.emplace_back(2, bq.fields.size());
    std::vector<FieldLine> prev = std::move(bq.fields);
    for (int n = 3; n <= 16; ++n) {
        SegmentFiles seg = run_segment_step(cfg, ctx, oracle, n, prev);
        if (seg.halted) {
            for (auto [k, c] : summary) std::cout << "n=" << k << ":" << c << " ";
            std::cout << "\noracle unavailable at n=" << n << ": " << seg.pending
                      << " candidates pending\n";
            return 3;
        }
        summary.emplace_back(n, seg.fields.size());
        if (seg.fields.empty()) break;
        if (!seg.fields.empty() && min_exponent(n) > cfg.m)
            throw Error("degree bound violated by surviving fields");
        prev = std::move(seg.fields);
    }
    std::string line;
    for (auto [k, c] : summary) {
        if (!line.empty()) line += ' ';
        line += "n=" + std::to_string(k) + ":" + std::to_string(c);
    }
    std::cout << line << "\n";
    return 0;
}

int cmd_bound(int n) {
    std::cout << min_exponent(n) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verification against the embedded reference tables

namespace {

std::string key_of(const std::vector<i64>& gens) {
    RadicandList prim;
    prim.reserve(gens.size());
    for (i64 g : gens) prim.push_back(Radicand(g));
    return canonical_key(split_signs(complete_radicand_list(prim)).neg);
}

struct Diff {
    u64 ok = 0, warn = 0, fail = 0;
    void entry(bool matched, bool warn_only, const std::string& label, const std::string& why) {
        if (matched) {
            ++ok;
            return;
        }
        if (warn_only) {
            ++warn;
            std::cout << "WARN " << label << " (" << why << ")\n";
        } else {
            ++fail;
            std::cout << "FAIL " << label << " (" << why << ")\n";
        }
    }
    int finish(u64 expected) const {
        std::cout << ok << "/" << expected << " match";
        if (warn) std::cout << ", " << warn << " warned";
        if (fail) std::cout << ", " << fail << " failed";
        std::cout << "\n";
        return fail == 0 ? 0 : 2;
    }
};

std::string gens_label(const std::vector<i64>& gens) {
    std::string s = "{";
    for (size_t i = 0; i < gens.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(gens[i]);
    }
    return s + "}";
}

// fixture entries at one class number against the computed field set
int verify_field_list(const std::vector<FixtureField>& table, const std::vector<FieldLine>& fields,
                      bool h_from_fixture) {
    std::unordered_map<std::string, u64> computed;
    u64 h_filter = h_from_fixture ? 0 : table.front().h;
    for (const auto& f : fields) {
        if (!h_from_fixture && f.h != h_filter) continue;
        computed[canonical_key(f.rec.neg)] = f.h;
    }
    Diff d;
    std::unordered_set<std::string> seen;
    for (const auto& e : table) {
        std::string key = key_of(e.gens);
        std::string label = gens_label(e.gens);
        if (!seen.insert(key).second) {
            d.entry(false, e.warn, label, "duplicate printed entry");
            continue;
        }
        auto it = computed.find(key);
        if (it == computed.end()) {
            d.entry(false, e.warn, label, "not produced");
        } else if (h_from_fixture && it->second != e.h) {
            d.entry(false, e.warn, label,
                    "class number " + std::to_string(it->second) + " != " + std::to_string(e.h));
        } else {
            d.entry(true, false, label, "");
        }
    }
    // surplus fields not in the table
    std::unordered_set<std::string> table_keys;
    for (const auto& e : table) table_keys.insert(key_of(e.gens));
    for (const auto& [key, h] : computed)
        if (!table_keys.count(key)) d.entry(false, false, key, "extra field not in the table");
    return d.finish(seen.size());
}

int verify_counts(const std::map<u64, u64>& published, const std::vector<FieldLine>& fields) {
    std::map<u64, u64> got;
    for (const auto& f : fields) ++got[f.h];
    Diff d;
    for (const auto& [h, want] : published) {
        u64 have = got.count(h) ? got[h] : 0;
        d.entry(have == want, false, "h=" + std::to_string(h),
                "count " + std::to_string(have) + " != " + std::to_string(want));
    }
    for (const auto& [h, have] : got)
        if (!published.count(h))
            d.entry(false, false, "h=" + std::to_string(h), "unexpected class number bucket");
    return d.finish(published.size());
}

int verify_stats(const RunConfig& cfg) {
    Diff d;
    auto check = [&](const std::string& label, u64 got, u64 want) {
        d.entry(got == want, false, label,
                std::to_string(got) + " != " + std::to_string(want));
    };
    // raw counts are accepted where deduplication could differ from the source
    auto check_either = [&](const std::string& label, u64 dedup, u64 raw, u64 want) {
        d.entry(dedup == want || raw == want, false, label,
                std::to_string(dedup) + " (raw " + std::to_string(raw) + ") != " +
                    std::to_string(want));
    };
    auto bq = load_kv(report_file(cfg, 2));
    check("biquad stage1", bq["stage1"], published_biquad_stage1());
    check("biquad stage2", bq["stage2"], published_biquad_stage2());
    check("biquad kept", bq["kept"], published_biquad_kept());
    check("biquad h=64", bq["h_64"], published_biquad_h64());
    for (int n = 3; n <= 5; ++n) {
        const auto& pub = published_segment_stats(n);
        SegmentReport r = load_report(report_file(cfg, n));
        std::string p = "n=" + std::to_string(n) + " ";
        check(p + "pool", r.pool_radicands, pub.pool);
        check_either(p + "complete", r.complete_tuples, r.complete_raw, pub.complete);
        check_either(p + "partial", r.partial_tuples, r.partial_raw, pub.partial);
        check(p + "missing", r.missing_radicands, pub.missing);
        check(p + "promoted", r.promoted, pub.promoted);
        check(p + "total", r.total_candidates, pub.total);
        check(p + "final", r.final_fields, pub.final_fields);
    }
    return d.finish(4 + 3 * 7);
}

} // namespace

int cmd_verify(const RunConfig& cfg, const std::string& table) {
    if (table == "brown-parry")
        return verify_field_list(biquad_h1_fields(), load_field_set(fields_file(cfg, 2)), false);
    if (table == "bww")
        return verify_field_list(biquad_h2_entries(), load_field_set(fields_file(cfg, 2)), false);
    if (table == "feaver")
        return verify_field_list(triquad_h1_fields(), load_field_set(fields_file(cfg, 3)), false);
    if (table == "quad4-lists")
        return verify_field_list(quadriquad_fields(), load_field_set(fields_file(cfg, 4)), true);
    if (table == "arno4") {
        PipelineContext ctx(cfg, false);
        Diff d;
        std::set<i64> got;
        if (ctx.census.levels.size() > 2)
            got.insert(ctx.census.levels[2].begin(), ctx.census.levels[2].end());
        std::set<i64> want(quad_h4_radicands().begin(), quad_h4_radicands().end());
        for (i64 r : want)
            d.entry(got.count(r) != 0, false, std::to_string(r), "not in census level 2");
        for (i64 r : got)
            if (!want.count(r)) d.entry(false, false, std::to_string(r), "extra level-2 radicand");
        return d.finish(want.size());
    }
    if (table == "counts-1.5")
        return verify_counts(published_counts(2), load_field_set(fields_file(cfg, 2)));
    if (table == "counts-1.6")
        return verify_counts(published_counts(3), load_field_set(fields_file(cfg, 3)));
    if (table == "counts-1.7")
        return verify_counts(published_counts(4), load_field_set(fields_file(cfg, 4)));
    if (table == "stats-6.3") return verify_stats(cfg);
    throw UnknownTable(table);
}

} // namespace mqc
