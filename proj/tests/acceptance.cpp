// End-to-end acceptance gate. Drives the installed binaries through fresh
// data directories, checks published numbers exactly, and prints one verdict
// line per criterion. Exits nonzero when any criterion fails.
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mqc/biquad.hpp"
#include "mqc/census.hpp"
#include "mqc/degree_bound.hpp"
#include "mqc/errors.hpp"
#include "mqc/fixtures.hpp"
#include "mqc/io.hpp"
#include "mqc/pipeline.hpp"
#include "mqc/quadforms.hpp"
#include "mqc/radicand.hpp"

using namespace mqc;
namespace fs = std::filesystem;

namespace {

std::string g_tool, g_responder, g_data;
fs::path g_work;
int g_checks_failed = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_checks_failed;
        std::cout << "  FAIL: " << what << "\n";
    }
}

template <typename A, typename B>
void expect_eq(const A& got, const B& want, const std::string& what) {
    if (!(got == static_cast<A>(want))) {
        ++g_checks_failed;
        std::cout << "  FAIL: " << what << ": got " << got << ", want " << want << "\n";
    }
}

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
    std::cout << "  $ " << cmd << std::endl;
    CmdResult res;
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) {
        res.out = "popen failed";
        return res;
    }
    char buf[4096];
    size_t k;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0) res.out.append(buf, k);
    int st = pclose(p);
    if (WIFEXITED(st)) res.code = WEXITSTATUS(st);
    return res;
}

std::string shq(const std::string& s) {
    std::string out = "'";
    for (char c : s)
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    return out + "'";
}

std::string tool_cmd(const fs::path& dir, int m, const std::string& rest,
                     const std::string& oracle_cmd = "") {
    std::string cmd = shq(g_tool) + " --data-dir " + shq(dir.string()) + " --m " +
                      std::to_string(m) + " --jobs 1";
    if (!oracle_cmd.empty()) cmd += " --oracle-cmd " + shq(oracle_cmd);
    return cmd + " " + rest;
}

void copy_into(const fs::path& src_dir, const fs::path& dst_dir,
               const std::vector<std::string>& names) {
    fs::create_directories(dst_dir);
    for (const auto& name : names)
        fs::copy_file(src_dir / name, dst_dir / name, fs::copy_options::overwrite_existing);
}

std::map<std::string, u64> read_kv(const std::string& path) {
    std::map<std::string, u64> kv;
    for (const auto& line : read_lines(path)) {
        if (line.empty() || line[0] == '#') continue;
        auto parts = split(line, '\t');
        if (parts.size() == 2) kv[parts[0]] = std::stoull(parts[1]);
    }
    return kv;
}

RunConfig dir_config(int m, const fs::path& dir) {
    RunConfig cfg;
    cfg.m = m;
    cfg.data_dir = dir.string();
    return cfg;
}

bool expect_verify(const fs::path& dir, int m, const std::string& table) {
    auto r = run_cmd(tool_cmd(dir, m, "verify --table " + table));
    expect_eq(r.code, 0, "verify --table " + table + " exit code\n" + r.out);
    return r.code == 0;
}

// ---------------------------------------------------------------- criteria

bool criterion_quadratic_baselines() {
    int before = g_checks_failed;
    auto census = build_census(6500, 2, 1);
    auto as_set = [](const std::vector<i64>& v) { return std::set<i64>(v.begin(), v.end()); };
    expect(as_set(census.levels[0]) == as_set(quad_h1_radicands()), "class number one radicands");
    expect(as_set(census.levels[1]) == as_set(quad_h2_radicands()), "class number two radicands");
    expect(as_set(census.levels[2]) == as_set(quad_h4_radicands()), "class number four radicands");
    expect_eq(census.levels[1].size(), size_t(18), "|Q_1|");
    i64 max1 = 0;
    for (i64 r : census.levels[1]) max1 = std::max(max1, -r);
    expect_eq(max1, 427, "max |r| in Q_1");
    expect_eq(census.levels[2].size(), size_t(54), "|Q_2|");
    expect_eq(class_number_imag(-110), u64(12), "h(-110)");
    return g_checks_failed == before;
}

bool criterion_class_number_one_run() {
    int before = g_checks_failed;
    fs::path dir = g_work / "m0";
    fs::create_directories(dir);
    std::string oracle = g_responder + " --quad-cache " + (dir / "responder-quad-cache.tsv").string();
    auto r = run_cmd(tool_cmd(dir, 0, "run", oracle));
    expect_eq(r.code, 0, "run --m 0 exit code\n" + r.out);
    expect(r.out.find("n=2:47") != std::string::npos, "run --m 0 reports n=2:47\n" + r.out);
    expect(r.out.find("n=3:17") != std::string::npos, "run --m 0 reports n=3:17\n" + r.out);
    expect_verify(dir, 0, "brown-parry");
    return g_checks_failed == before;
}

bool criterion_class_number_two_table() {
    int before = g_checks_failed;
    fs::path dir = g_work / "m1";
    fs::create_directories(dir);
    auto r = run_cmd(tool_cmd(dir, 1, "biquad"));
    expect_eq(r.code, 0, "biquad --m 1 exit code\n" + r.out);
    auto kv = read_kv(report_file(dir_config(1, dir), 2));
    expect_eq(kv["h_1"], u64(47), "m=1 fields with h=1");
    expect_eq(kv["h_2"], u64(160), "m=1 fields with h=2");
    expect_eq(kv["kept"], u64(207), "m=1 fields kept");
    expect_verify(dir, 1, "bww");
    return g_checks_failed == before;
}

bool criterion_full_biquadratic_scale() {
    int before = g_checks_failed;
    fs::path dir = g_work / "full";
    copy_into(g_data, dir, {"quad-cache.tsv", "oracle-cache.tsv"});
    auto r = run_cmd(tool_cmd(dir, 5, "run", g_responder + " --fixtures-only"));
    expect_eq(r.code, 0, "run --m 5 exit code\n" + r.out);
    auto kv = read_kv(report_file(dir_config(5, dir), 2));
    expect_eq(kv["stage1"], u64(82531), "pairs after the first filter");
    expect_eq(kv["stage2"], u64(11607), "pairs after the second filter");
    expect_eq(kv["kept"], u64(11207), "biquadratic fields kept");
    expect_eq(kv["h_4"], u64(408), "biquadratic fields with h=4");
    expect_eq(kv["h_8"], u64(1186), "biquadratic fields with h=8");
    expect_eq(kv["h_16"], u64(2749), "biquadratic fields with h=16");
    expect_eq(kv["h_32"], u64(6657), "biquadratic fields with h=32");
    expect_eq(kv["h_64"], u64(400), "biquadratic fields with h=64");
    expect_verify(dir, 5, "counts-1.5");
    return g_checks_failed == before;
}

bool criterion_octic_vetting_without_oracle() {
    int before = g_checks_failed;
    fs::path full = g_work / "full";
    fs::path dir = g_work / "no-oracle-n3";
    copy_into(full, dir,
              {"quad-census.tsv", "quad-levels.tsv", "quad-cache.tsv", "fields-n2.tsv",
               "report-biquad.tsv"});
    auto r = run_cmd(tool_cmd(dir, 5, "segment --n 3"));
    expect_eq(r.code, 3, "segment --n 3 without oracle exit code\n" + r.out);
    RunConfig cfg = dir_config(5, dir);
    auto rep = load_report(report_file(cfg, 3));
    expect(rep.complete_tuples == 6537 || rep.complete_raw == 6537,
           "6537 complete candidates (tuples " + std::to_string(rep.complete_tuples) + ", raw " +
               std::to_string(rep.complete_raw) + ")");
    expect(rep.partial_tuples == 495 || rep.partial_raw == 495,
           "495 partial candidates (tuples " + std::to_string(rep.partial_tuples) + ", raw " +
               std::to_string(rep.partial_raw) + ")");
    expect_eq(rep.missing_radicands, u64(440), "unresolved radicands");
    expect_eq(rep.promoted, u64(13), "promoted partial candidates");
    expect_eq(rep.total_candidates, u64(6550), "total vetted candidates");
    expect_eq(load_field_set(pending_file(cfg, 3)).size(), size_t(6550), "pending candidates");
    expect(!file_exists(fields_file(cfg, 3)), "no field list may be written when halted");
    return g_checks_failed == before;
}

bool criterion_octic_hexadecic_splits() {
    int before = g_checks_failed;
    fs::path dir = g_work / "full";
    bool ok = true;
    ok &= expect_verify(dir, 5, "feaver");
    ok &= expect_verify(dir, 5, "counts-1.6");
    ok &= expect_verify(dir, 5, "quad4-lists");
    ok &= expect_verify(dir, 5, "counts-1.7");
    ok &= expect_verify(dir, 5, "arno4");
    RunConfig cfg = dir_config(5, dir);
    expect_eq(load_field_set(fields_file(cfg, 3)).size(), size_t(1002), "octic fields kept");
    expect_eq(load_report(report_file(cfg, 4)).total_candidates, u64(102),
              "hexadecic candidates vetted");
    expect_eq(load_field_set(fields_file(cfg, 4)).size(), size_t(27), "hexadecic fields kept");
    return ok && g_checks_failed == before;
}

bool criterion_termination_without_oracle() {
    int before = g_checks_failed;
    fs::path full = g_work / "full";
    fs::path dir = g_work / "no-oracle-n5";
    copy_into(full, dir,
              {"quad-census.tsv", "quad-levels.tsv", "quad-cache.tsv", "fields-n4.tsv",
               "report-n4.tsv"});
    auto r = run_cmd(tool_cmd(dir, 5, "segment --n 5"));
    expect_eq(r.code, 0, "segment --n 5 without oracle exit code\n" + r.out);
    RunConfig cfg = dir_config(5, dir);
    auto rep = load_report(report_file(cfg, 5));
    expect_eq(rep.total_candidates, u64(0), "no degree-32 candidate survives vetting");
    expect_eq(rep.complete_raw + rep.partial_raw, u64(0), "no vetting outcome at all");
    expect(load_field_set(fields_file(cfg, 5)).empty(), "empty degree-32 field list");
    expect(!file_exists(pending_file(cfg, 5)), "nothing pends without candidates");
    return g_checks_failed == before;
}

bool criterion_degree_floor() {
    int before = g_checks_failed;
    expect_eq(min_exponent(6), i64(7), "least exponent, degree 64");
    expect_eq(min_exponent(7), i64(37), "least exponent, degree 128");
    expect_eq(min_exponent(8), i64(99), "least exponent, degree 256");
    expect_eq(min_exponent(9), i64(222), "least exponent, degree 512");
    auto check_table = [](const std::vector<FixtureField>& table, int n, const std::string& name) {
        for (const auto& fx : table) {
            if (fx.warn) continue; // suspected misprints are checked as WARN elsewhere
            RadicandList prim;
            for (i64 g : fx.gens) prim.push_back(Radicand(g));
            auto sp = split_signs(complete_radicand_list(prim));
            expect(prime_radicand_count(sp.neg) <= n,
                   name + ": prime radicand bound at " + canonical_key(sp.neg));
        }
    };
    check_table(biquad_h1_fields(), 2, "class-number-one pairs");
    check_table(biquad_h2_entries(), 2, "class-number-two pairs");
    check_table(triquad_h1_fields(), 3, "octic table");
    check_table(quadriquad_fields(), 4, "hexadecic table");
    return g_checks_failed == before;
}

bool criterion_property_suites() {
    int before = g_checks_failed;
    std::mt19937_64 rng(271828);

    { // radicand product: commutative group of exponent two
        const std::vector<i64> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
        auto random_radicand = [&]() {
            i64 v = (rng() & 1) ? 1 : -1;
            for (i64 p : primes)
                if (rng() & 1) v *= p;
            return v == 1 || v == -1 ? Radicand(rng() & 1 ? 2 : -1) : Radicand(v);
        };
        for (int i = 0; i < 500; ++i) {
            Radicand a = random_radicand(), b = random_radicand(), c = random_radicand();
            expect(sf_mul(a, b).value == sf_mul(b, a).value, "sf_mul commutes");
            expect(sf_mul(sf_mul(a, b), c).value == sf_mul(a, sf_mul(b, c)).value,
                   "sf_mul associates");
            expect(sf_mul(a, a).value == 1, "sf_mul involution");
            expect(sf_mul(a, Radicand()).value == a.value, "sf_mul identity");
        }
    }

    { // complete lists: cardinality and sign split
        const std::vector<i64> primes{2, 3, 5, 7, 11, 13, 17, 19};
        int built = 0;
        while (built < 1000) {
            int n = 1 + int(rng() % 5);
            RadicandList gens;
            bool any_neg = false;
            for (int i = 0; i < n; ++i) {
                i64 v = (rng() & 1) ? 1 : -1;
                for (i64 p : primes)
                    if (rng() & 1) v *= p;
                if (v == 1 || v == -1) v *= 2 + (rng() % 3 == 0 ? 1 : 0);
                any_neg |= v < 0;
                gens.push_back(Radicand(v));
            }
            try {
                auto all = complete_radicand_list(gens);
                ++built;
                expect_eq(all.size(), (size_t(1) << n) - 1, "complete list cardinality");
                auto sp = split_signs(all);
                size_t want_neg = any_neg ? size_t(1) << (n - 1) : 0;
                expect_eq(sp.neg.size(), want_neg, "sign split");
            } catch (const DependentRadicands&) {
                continue; // redraw
            }
        }
    }

    { // censused class numbers against per-discriminant brute force
        auto sqf = squarefree_table(10000);
        for (i64 a = 2; a <= 10000; ++a) {
            if (!sqf[size_t(a)]) continue;
            expect(class_number_imag(-a) == class_number_forms_brute(discriminant(Radicand(-a))),
                   "brute-force check at -" + std::to_string(a));
        }
    }

    fs::path full = g_work / "full";
    { // unit index and integrality across every surviving pair
        auto census = load_census((full / "quad-census.tsv").string());
        QuadCache qcache((full / "quad-cache.tsv").string());
        qcache.attach_census(&census);
        qcache.set_feasibility_limit(i64(1) << 41);
        auto s2 = stage2_filter(stage1_candidates(census, 5), 5, qcache, 1);
        expect(s2.size() > 10000, "stage-2 survivors exist"); // exact count is criterion 4

        for (const auto& cand : s2) {
            int q = unit_index(cand.a, cand.b);
            expect(q == 1 || q == 2,
                   "unit index in {1,2} at " + canonical_key({cand.a, cand.b}));
            u64 prod = qcache.class_number(cand.a.value) * qcache.class_number(cand.b.value) *
                       qcache.class_number(cand.c.value) * u64(q);
            expect(prod % 2 == 0,
                   "class number integrality at " + canonical_key({cand.a, cand.b}));
        }
    }

    { // P on every vetted candidate re-derives from its imaginary subfields
        auto census = load_census((full / "quad-census.tsv").string());
        QuadCache qcache((full / "quad-cache.tsv").string());
        qcache.attach_census(&census);
        qcache.set_feasibility_limit(i64(1) << 41);
        auto pending = load_field_set((g_work / "no-oracle-n3" / "pending-n3.tsv").string());
        expect(!pending.empty(), "vetted octic candidates exist");
        for (const auto& f : pending) {
            u64 prod = 1;
            for (const auto& r : f.rec.neg) prod *= qcache.class_number(r.value);
            expect(prod == u64(1) << f.rec.p_exp,
                   "P identity at " + canonical_key(f.rec.neg));
        }
        for (const auto& f : load_field_set((full / "fields-n4.tsv").string())) {
            u64 prod = 1;
            for (const auto& r : f.rec.neg) prod *= qcache.class_number(r.value);
            expect(prod == u64(1) << f.rec.p_exp,
                   "P identity at " + canonical_key(f.rec.neg));
        }
    }
    return g_checks_failed == before;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--data-dir") g_data = argv[i + 1];
        else if (flag == "--tool") g_tool = argv[i + 1];
        else if (flag == "--responder") g_responder = argv[i + 1];
    }
    if (g_data.empty() || g_tool.empty() || g_responder.empty()) {
        std::cerr << "usage: acceptance --data-dir D --tool PATH --responder PATH\n";
        return 2;
    }
    g_work = fs::current_path() / "acceptance-work";
    fs::remove_all(g_work);
    fs::create_directories(g_work);

    struct Criterion {
        const char* label;
        bool (*fn)();
    };
    const Criterion criteria[] = {
        {"quadratic baselines", criterion_quadratic_baselines},
        {"class-number-one census at m=0", criterion_class_number_one_run},
        {"class-number-two table at m=1", criterion_class_number_two_table},
        {"full-scale biquadratic census", criterion_full_biquadratic_scale},
        {"octic vetting statistics without an oracle", criterion_octic_vetting_without_oracle},
        {"octic and hexadecic class-number splits", criterion_octic_hexadecic_splits},
        {"degree-32 termination without an oracle", criterion_termination_without_oracle},
        {"degree exponent floor", criterion_degree_floor},
        {"property suites", criterion_property_suites},
    };

    std::vector<bool> verdict;
    int idx = 0;
    for (const auto& c : criteria) {
        ++idx;
        std::cout << "[criterion " << idx << "] " << c.label << std::endl;
        bool ok = false;
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            ++g_checks_failed;
            std::cout << "  FAIL: unhandled error: " << e.what() << "\n";
        }
        verdict.push_back(ok);
    }

    int failed = 0;
    for (size_t i = 0; i < verdict.size(); ++i) {
        std::cout << "criterion " << (i + 1) << ": " << (verdict[i] ? "PASS" : "FAIL") << " - "
                  << criteria[i].label << "\n";
        if (!verdict[i]) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
