#include "mqc/census.hpp"

#include <algorithm>

#include "mqc/errors.hpp"
#include "mqc/io.hpp"
#include "mqc/quadforms.hpp"
#include "mqc/realquad.hpp"

namespace mqc {

std::optional<u64> QuadraticCensus::h(i64 r) const {
    auto it = h_by_radicand.find(r);
    if (it == h_by_radicand.end()) return std::nullopt;
    return it->second;
}

std::optional<int> QuadraticCensus::level_of(i64 r) const {
    auto hv = h(r);
    if (!hv) return std::nullopt;
    u64 v = *hv;
    if (v & (v - 1)) return std::nullopt;
    int i = 0;
    while (v > 1) {
        v >>= 1;
        ++i;
    }
    return i;
}

u64 class_number_imag(i64 r) {
    if (r >= 0) throw Error("radicand must be negative");
    i64 rm4 = ((r % 4) + 4) % 4;
    i64 D = (rm4 == 1) ? r : 4 * r;
    return class_number_forms_fast(D);
}

QuadraticCensus build_census(i64 B, int max_level, int jobs) {
    if (B < 4) throw Error("census bound must be at least 4");
    if (max_level < 0) throw Error("census level must be nonnegative");
    QuadraticCensus c;
    c.bound = B;
    c.max_level = max_level;
    auto tally = bulk_form_tallies(B, jobs);
    auto sqfree = squarefree_table(B);
    for (i64 ad = 3; ad <= B; ++ad) {
        i64 D = -ad;
        if (!is_fundamental_disc(D, sqfree)) continue;
        i64 r = (((D % 4) + 4) % 4 == 1) ? D : D / 4;
        c.entries.emplace_back(r, tally[static_cast<size_t>(ad)]);
    }
    std::sort(c.entries.begin(), c.entries.end(),
              [](const auto& x, const auto& y) { return -x.first < -y.first; });
    c.h_by_radicand.reserve(c.entries.size() * 2);
    c.levels.assign(static_cast<size_t>(max_level) + 1, {});
    for (auto& [r, h] : c.entries) {
        c.h_by_radicand.emplace(r, h);
        if ((h & (h - 1)) == 0) {
            int lvl = 0;
            for (u64 v = h; v > 1; v >>= 1) ++lvl;
            if (lvl <= max_level) c.levels[static_cast<size_t>(lvl)].push_back(r);
        }
    }
    return c;
}

i64 sufficient_level_bound(int level) {
    switch (level) {
        case 0: return 700;
        case 1: return 2000;
        case 2: return 6500;
        default: return 2500000; // complete for every class number <= 100
    }
}

i64 default_census_bound(int m) { return sufficient_level_bound(m + 1); }

QuadCache::QuadCache(std::string path) : path_(std::move(path)) {
    if (!file_exists(path_)) return;
    for (const auto& line : read_lines(path_)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw IoError("bad cache line: " + line);
        i64 r = std::stoll(line.substr(0, tab));
        u64 h = std::stoull(line.substr(tab + 1));
        map_[r] = h;
    }
}

std::optional<u64> QuadCache::peek(i64 r) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = map_.find(r);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void QuadCache::put(i64 r, u64 h) {
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, fresh] = map_.emplace(r, h);
    if (!fresh && it->second != h) throw Error("conflicting cached class number");
    if (fresh) dirty_ = true;
}

u64 QuadCache::class_number(i64 r) {
    if (r == 0 || r == 1) throw Error("not a radicand");
    if (census_ && r < 0) {
        if (auto hv = census_->h(r)) return *hv;
    }
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = map_.find(r);
        if (it != map_.end()) return it->second;
    }
    u64 h = r < 0 ? class_number_imag(r) : class_number_real_exact(r, feas_limit_);
    put(r, h);
    return h;
}

void QuadCache::save() {
    std::lock_guard<std::mutex> lk(mu_);
    if (!dirty_ || path_.empty()) return;
    std::vector<std::pair<i64, u64>> rows(map_.begin(), map_.end());
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        i64 ax = x.first < 0 ? -x.first : x.first, ay = y.first < 0 ? -y.first : y.first;
        if (ax != ay) return ax < ay;
        return x.first < y.first;
    });
    std::string out;
    for (auto& [r, h] : rows) {
        out += std::to_string(r);
        out += '\t';
        out += std::to_string(h);
        out += '\n';
    }
    atomic_write_file(path_, out);
    dirty_ = false;
}

} // namespace mqc
