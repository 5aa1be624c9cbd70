#include <doctest.h>

#include <filesystem>

#include "mqc/census.hpp"
#include "mqc/errors.hpp"
#include "mqc/fixtures.hpp"
#include "mqc/oracle.hpp"

using namespace mqc;
namespace fs = std::filesystem;

namespace {

RadicandList gens(std::initializer_list<i64> vs) {
    RadicandList out;
    for (i64 v : vs) out.push_back(Radicand(v));
    return out;
}

} // namespace

TEST_CASE("oracle cache roundtrip and conflicts") {
    fs::path dir = fs::temp_directory_path() / "mqc-oracle-cache-test";
    fs::create_directories(dir);
    std::string path = (dir / "cache.tsv").string();
    {
        OracleCache c(path);
        CHECK(c.size() == 0);
        c.put("-6,-3,-2,-1", 1, "fixture");
        c.put("-6,-3,-2,-1", 1, "fixture"); // repeat is fine
        CHECK_THROWS_AS(c.put("-6,-3,-2,-1", 2, "fixture"), Error);
        c.put("-14,-7,-2,-1", 4, "external:test");
        c.save();
        c.save(); // clean, no-op
    }
    {
        OracleCache c(path);
        REQUIRE(c.size() == 2);
        CHECK(*c.get("-6,-3,-2,-1") == 1);
        CHECK(c.entries().at("-14,-7,-2,-1").provenance == "external:test");
        CHECK(!c.get("-15,-3,-5,-1").has_value());
    }
    fs::remove_all(dir);
}

TEST_CASE("built-in degrees need no responder") {
    QuadCache qcache;
    Oracle oracle(qcache);
    CHECK(!oracle.responder_configured());
    CHECK(oracle.class_number(gens({-23})) == 3);
    CHECK(oracle.class_number(gens({-1, 2})) == 1);   // cyclotomic, degree 4
    CHECK(oracle.class_number(gens({-1, -2})) == 1);  // same field
    CHECK(oracle.class_number(gens({-5, -1})) == 1); // capitulates over Q(sqrt -5)
    CHECK_THROWS_AS(oracle.class_number(gens({2, 3})), Error); // totally real
    CHECK_THROWS_AS(oracle.class_number(gens({-1, -2, -3})), OracleUnavailable);
}

TEST_CASE("cache answers octic fields without a responder") {
    QuadCache qcache;
    Oracle oracle(qcache);
    oracle.cache().put("-6,-3,-2,-1", 1, "fixture");
    CHECK(oracle.class_number(gens({-1, -2, -3})) == 1);
}

TEST_CASE("wire format reaches the responder verbatim") {
    QuadCache qcache;
    Oracle oracle(qcache);
    oracle.configure_responder("while read a b c; do echo $((a + b + c)); done", 20.0);
    CHECK(oracle.external_query(gens({-1, 2, 3})) == 4);
    CHECK(oracle.external_query(gens({-1, 2, 6})) == 7);
}

TEST_CASE("responder answers are cached with provenance") {
    QuadCache qcache;
    Oracle oracle(qcache);
    oracle.configure_responder("while read l; do echo 2; done", 20.0);
    CHECK(oracle.class_number(gens({-1, -2, -5})) == 2);
    auto it = oracle.cache().entries().find("-10,-5,-2,-1");
    REQUIRE(it != oracle.cache().entries().end());
    CHECK(it->second.h == 2);
    CHECK(it->second.provenance.rfind("external:", 0) == 0);
    // second call: cache hit, the (constant) responder is not consulted again.
    // If it were, the cross-written value would still agree here, so use a
    // fresh oracle whose responder would now disagree.
    Oracle second(qcache);
    second.cache().put("-10,-5,-2,-1", 2, "fixture");
    second.configure_responder("while read l; do echo 999; done", 20.0);
    CHECK(second.class_number(gens({-1, -2, -5})) == 2);
}

TEST_CASE("quartic answers are cross-checked against the responder") {
    QuadCache qcache;
    Oracle agree(qcache);
    agree.configure_responder("while read l; do echo 1; done", 20.0);
    CHECK(agree.class_number(gens({-1, -2})) == 1);

    Oracle disagree(qcache);
    disagree.configure_responder("while read l; do echo 999; done", 20.0);
    CHECK_THROWS_AS(disagree.class_number(gens({-1, -2})), Error);
}

TEST_CASE("responder failure modes") {
    QuadCache qcache;

    Oracle err(qcache);
    err.configure_responder("while read l; do echo ERR out of range; done", 20.0);
    CHECK_THROWS_AS(err.external_query(gens({-1, -2, -3})), ResponderError);

    Oracle garbage(qcache);
    garbage.configure_responder("while read l; do echo abc; done", 20.0);
    CHECK_THROWS_AS(garbage.external_query(gens({-1, -2, -3})), ResponderError);

    Oracle zero(qcache);
    zero.configure_responder("while read l; do echo 0; done", 20.0);
    CHECK_THROWS_AS(zero.external_query(gens({-1, -2, -3})), ResponderError);

    Oracle eof(qcache);
    eof.configure_responder("read l; echo 7", 20.0);
    CHECK(eof.external_query(gens({-1, -2, -3})) == 7);
    CHECK_THROWS_AS(eof.external_query(gens({-1, -2, -5})), ResponderError);

    Oracle slow(qcache);
    slow.configure_responder("sleep 30", 0.3);
    CHECK_THROWS_AS(slow.external_query(gens({-1, -2, -3})), TimeoutError);
}

TEST_CASE("responder process is reused across queries") {
    QuadCache qcache;
    Oracle oracle(qcache);
    // a responder with one-shot state: a second process would answer 10 again
    oracle.configure_responder("n=10; while read l; do echo $n; n=$((n + 1)); done", 20.0);
    CHECK(oracle.external_query(gens({-1, -2, -3})) == 10);
    CHECK(oracle.external_query(gens({-1, -2, -5})) == 11);
}
