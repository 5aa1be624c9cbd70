#pragma once
#include <string>

#include "mqc/census.hpp"
#include "mqc/multiquad.hpp"
#include "mqc/oracle.hpp"

namespace mqc {

struct RunConfig {
    int m = 5;
    i64 bound = 0;      // 0: derive from m
    int max_level = -1; // -1: m + 1
    std::string data_dir = "data";
    std::string oracle_cmd;
    double oracle_timeout_secs = 300.0;
    int jobs = 1;

    i64 resolved_bound() const;
    int resolved_max_level() const;
};

// subcommand bodies; return value is the process exit code
// (0 ok, 2 verification mismatch, 3 oracle unavailable, 4 i/o)
int cmd_census(const RunConfig& cfg);
int cmd_biquad(const RunConfig& cfg);
int cmd_segment(const RunConfig& cfg, int n);
int cmd_run(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg, const std::string& table);
int cmd_bound(int n);

// checkpoint layout inside data_dir
std::string census_file(const RunConfig& cfg);
std::string levels_file(const RunConfig& cfg);
std::string fields_file(const RunConfig& cfg, int n);
std::string partials_file(const RunConfig& cfg, int n);
std::string pending_file(const RunConfig& cfg, int n);
std::string report_file(const RunConfig& cfg, int n); // n = 2: biquadratic stage report

// partial-candidate checkpoint lines: "neg=...\tpos=...\tSprime=...\tPest=<int>"
void save_partials(const std::vector<CandidatePartial>& ps, const std::string& path);
std::vector<CandidatePartial> load_partials(const std::string& path);

// segment report as "key\tvalue" lines (h histogram keys are "h_<k>")
void save_report(const SegmentReport& r, const std::string& path);
SegmentReport load_report(const std::string& path);

// helper shared by the run/segment commands and the tests: build the census
// (or reload a matching checkpoint) and open the caches
struct PipelineContext {
    QuadraticCensus census;
    QuadCache qcache;
    OracleCache ocache;

    PipelineContext(const RunConfig& cfg, bool build_missing);
};

} // namespace mqc
