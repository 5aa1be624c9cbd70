#include <doctest.h>

#include <filesystem>

#include "mqc/errors.hpp"
#include "mqc/fixtures.hpp"
#include "mqc/io.hpp"
#include "mqc/pipeline.hpp"

using namespace mqc;
namespace fs = std::filesystem;

namespace {

RunConfig small_config(const fs::path& dir) {
    RunConfig cfg;
    cfg.m = 0;
    cfg.data_dir = dir.string();
    cfg.jobs = 1;
    return cfg;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("config resolution") {
    RunConfig cfg;
    CHECK(cfg.resolved_bound() == default_census_bound(5));
    CHECK(cfg.resolved_max_level() == 6);
    cfg.m = 0;
    CHECK(cfg.resolved_bound() == default_census_bound(0));
    CHECK(cfg.resolved_max_level() == 1);
    cfg.bound = 12345;
    cfg.max_level = 3;
    CHECK(cfg.resolved_bound() == 12345);
    CHECK(cfg.resolved_max_level() == 3);
}

TEST_CASE("checkpoint paths") {
    RunConfig cfg;
    cfg.data_dir = "d";
    CHECK(census_file(cfg) == "d/quad-census.tsv");
    CHECK(levels_file(cfg) == "d/quad-levels.tsv");
    CHECK(fields_file(cfg, 3) == "d/fields-n3.tsv");
    CHECK(partials_file(cfg, 4) == "d/partials-n4.tsv");
    CHECK(pending_file(cfg, 5) == "d/pending-n5.tsv");
    CHECK(report_file(cfg, 3) == "d/report-n3.tsv");
    CHECK(report_file(cfg, 2) == "d/report-biquad.tsv");
}

TEST_CASE("partial and report checkpoints roundtrip") {
    TempDir tmp("mqc-cli-roundtrip");
    std::vector<CandidatePartial> ps;
    ps.push_back(CandidatePartial{{Radicand(-1), Radicand(-2), Radicand(-7), Radicand(-14)},
                                  {Radicand(2), Radicand(7), Radicand(14)},
                                  {-14},
                                  0});
    ps.push_back(CandidatePartial{{Radicand(-1), Radicand(-3), Radicand(-5), Radicand(-15)},
                                  {Radicand(3), Radicand(5), Radicand(15)},
                                  {-15, -455},
                                  2});
    std::string path = (tmp.path / "partials.tsv").string();
    save_partials(ps, path);
    auto back = load_partials(path);
    REQUIRE(back.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(canonical_key(back[i].neg) == canonical_key(ps[i].neg));
        CHECK(radicand_list_to_string(back[i].pos) == radicand_list_to_string(ps[i].pos));
        CHECK(back[i].s_prime == ps[i].s_prime);
        CHECK(back[i].pest_exp == ps[i].pest_exp);
    }

    SegmentReport r;
    r.n = 3;
    r.pool_radicands = 27;
    r.pairs_vetted = 1000;
    r.complete_raw = 60;
    r.partial_raw = 9;
    r.complete_tuples = 20;
    r.partial_tuples = 3;
    r.partial_fields = 3;
    r.missing_radicands = 2;
    r.promoted = 1;
    r.total_candidates = 21;
    r.h_counts[1] = 17;
    r.final_fields = 17;
    std::string rpath = (tmp.path / "report.tsv").string();
    save_report(r, rpath);
    auto rb = load_report(rpath);
    CHECK(rb.n == 3);
    CHECK(rb.pool_radicands == 27);
    CHECK(rb.pairs_vetted == 1000);
    CHECK(rb.complete_raw == 60);
    CHECK(rb.partial_raw == 9);
    CHECK(rb.complete_tuples == 20);
    CHECK(rb.partial_tuples == 3);
    CHECK(rb.partial_fields == 3);
    CHECK(rb.missing_radicands == 2);
    CHECK(rb.promoted == 1);
    CHECK(rb.total_candidates == 21);
    CHECK(rb.h_counts == r.h_counts);
    CHECK(rb.final_fields == 17);

    CHECK_THROWS_AS(load_partials((tmp.path / "nope.tsv").string()), IoError);
}

TEST_CASE("field lines roundtrip") {
    FieldLine f;
    f.rec = FieldRec{{Radicand(-1), Radicand(-2), Radicand(-7), Radicand(-14)},
                     {Radicand(2), Radicand(7), Radicand(14)},
                     2};
    f.h = 4;
    FieldLine back = parse_field_line(format_field_line(f));
    CHECK(back.h == 4);
    CHECK(back.rec.p_exp == 2);
    CHECK(canonical_key(back.rec.neg) == canonical_key(f.rec.neg));
    CHECK(radicand_list_to_string(back.rec.pos) == "2,7,14");
    CHECK_THROWS_AS(parse_field_line("h=1\tP=0"), IoError);
    CHECK_THROWS_AS(parse_field_line(""), IoError);
}

TEST_CASE("census and biquadratic commands checkpoint their output") {
    TempDir tmp("mqc-cli-smoke");
    RunConfig cfg = small_config(tmp.path);

    CHECK(cmd_census(cfg) == 0);
    CHECK(file_exists(census_file(cfg)));
    auto levels = load_levels(levels_file(cfg));
    REQUIRE(levels.size() == 2);
    CHECK(levels[0].size() == 9);
    CHECK(levels[1].size() == 18);

    CHECK(cmd_biquad(cfg) == 0);
    auto fields = load_field_set(fields_file(cfg, 2));
    CHECK(fields.size() == 47);
    for (const auto& f : fields) CHECK(f.h == 1);
    auto t0 = fs::last_write_time(fields_file(cfg, 2));
    CHECK(cmd_biquad(cfg) == 0); // second call reloads the checkpoint
    CHECK(fs::last_write_time(fields_file(cfg, 2)) == t0);

    // published table checks run off the checkpoints just written
    CHECK(cmd_verify(cfg, "brown-parry") == 0);
    // at m = 0 only the class-number-one slice exists, so the full published
    // histogram must report mismatches
    CHECK(cmd_verify(cfg, "counts-1.5") == 2);
    CHECK_THROWS_AS(cmd_verify(cfg, "no-such-table"), UnknownTable);
    CHECK_THROWS_AS(cmd_verify(cfg, "feaver"), IoError); // fields-n3 not built yet

    // no oracle responder: the segment parks its unpublished candidates
    CHECK(cmd_segment(cfg, 3) == 3);
    CHECK(file_exists(pending_file(cfg, 3)));
    CHECK(!load_field_set(pending_file(cfg, 3)).empty());
    CHECK(file_exists(report_file(cfg, 3)));
    CHECK(!file_exists(fields_file(cfg, 3)));

    CHECK(cmd_run(cfg) == 3); // same halt through the run driver
}

TEST_CASE("segment command rejects quadratic and biquadratic degrees") {
    TempDir tmp("mqc-cli-badn");
    RunConfig cfg = small_config(tmp.path);
    CHECK_THROWS_AS(cmd_segment(cfg, 2), Error);
}

TEST_CASE("bound command") {
    CHECK(cmd_bound(6) == 0);
}
