#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "mqc/census.hpp"
#include "mqc/radicand.hpp"

namespace mqc {

struct OracleEntry {
    u64 h = 0;
    std::string provenance; // builtin-quadratic | builtin-biquadratic | external:<id> | fixture
};

// canonical_key -> class number, persisted as "<key>\t<h>\t<provenance>"
class OracleCache {
public:
    OracleCache() = default;
    explicit OracleCache(std::string path); // loads when present

    std::optional<u64> get(const std::string& key) const;
    void put(const std::string& key, u64 h, const std::string& provenance);
    void save(); // atomic rewrite, sorted by key; no-op when clean
    size_t size() const { return map_.size(); }
    const std::map<std::string, OracleEntry>& entries() const { return map_; }

private:
    std::map<std::string, OracleEntry> map_;
    std::string path_;
    bool dirty_ = false;
};

class ResponderProcess; // line-oriented subprocess (one in-flight request)

// exact class numbers of multiquadratic fields: built-in for degree <= 4,
// cache + external responder above
class Oracle {
public:
    explicit Oracle(QuadCache& qcache, OracleCache cache = OracleCache());
    ~Oracle();
    Oracle(const Oracle&) = delete;
    Oracle& operator=(const Oracle&) = delete;

    void configure_responder(std::string command, double timeout_secs);
    bool responder_configured() const { return !command_.empty(); }

    u64 class_number(const RadicandList& primitive);

    // one wire round-trip; re-queues once after a timeout
    u64 external_query(const RadicandList& primitive);

    OracleCache& cache() { return cache_; }
    void save() { cache_.save(); }

private:
    QuadCache& qcache_;
    OracleCache cache_;
    std::string command_;
    std::string responder_id_;
    double timeout_secs_ = 300.0;
    std::unique_ptr<ResponderProcess> proc_;

    std::string wire_request(const RadicandList& primitive) const;
};

} // namespace mqc
