#pragma once
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mqc/radicand.hpp"

namespace mqc {

// class numbers of all imaginary quadratic fields with |disc| <= bound,
// bucketed into the exact-power-of-two levels Q_0..Q_{max_level}
struct QuadraticCensus {
    i64 bound = 0;
    int max_level = 0;
    std::vector<std::pair<i64, u64>> entries;  // (r < 0, h) sorted by |r|
    std::unordered_map<i64, u64> h_by_radicand;
    std::vector<std::vector<i64>> levels;  // levels[i]: h = 2^i, sorted by |r|

    std::optional<u64> h(i64 r) const;
    std::optional<int> level_of(i64 r) const;  // index i with h(r) = 2^i
};

// single radicand r < 0, squarefree; exact count of reduced forms
u64 class_number_imag(i64 r);

QuadraticCensus build_census(i64 B, int max_level, int jobs = 1);

// documented sufficient bounds: levels 0/1/2 are complete at 700/2000/6500;
// every level with h <= 100 is complete at the 2,500,000 default
i64 default_census_bound(int m);
i64 sufficient_level_bound(int level);

// persistent radicand -> class number store for values outside the census
// window: large negatives (exact form count) and positives (cycle count)
class QuadCache {
public:
    QuadCache() = default;
    explicit QuadCache(std::string path);  // loads the file when present

    u64 class_number(i64 r);  // r squarefree, != 0,1; computes on miss
    void put(i64 r, u64 h);   // idempotent; conflicting value is a hard error
    std::optional<u64> peek(i64 r) const;

    void attach_census(const QuadraticCensus* c) { census_ = c; }
    void set_feasibility_limit(i64 lim) { feas_limit_ = lim; }
    void save();  // atomic rewrite, sorted by (|r|, r); no-op when clean
    size_t size() const { return map_.size(); }
    const std::string& path() const { return path_; }

private:
    mutable std::mutex mu_;
    std::unordered_map<i64, u64> map_;
    std::string path_;
    bool dirty_ = false;
    const QuadraticCensus* census_ = nullptr;
    i64 feas_limit_ = 1 << 24;
};

} // namespace mqc
