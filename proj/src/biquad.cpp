#include "mqc/biquad.hpp"

#include <algorithm>
#include <mutex>

#include "mqc/errors.hpp"
#include "mqc/parallel.hpp"
#include "mqc/realquad.hpp"

namespace mqc {

std::vector<BiquadCandidate> stage1_candidates(const QuadraticCensus& census, int m) {
    if (census.max_level < m + 1) throw Error("census levels too shallow for stage 1");
    std::vector<BiquadCandidate> out;
    for (int i = 0; i <= m + 1; ++i) {
        for (int j = i; i + j <= m + 1; ++j) {
            const auto& qi = census.levels[static_cast<size_t>(i)];
            const auto& qj = census.levels[static_cast<size_t>(j)];
            for (size_t x = 0; x < qi.size(); ++x) {
                size_t y0 = (i == j) ? x + 1 : 0;
                for (size_t y = y0; y < qj.size(); ++y) {
                    BiquadCandidate cand;
                    // ascending |value|: the more negative radicand second
                    i64 va = qi[x], vb = qj[y];
                    if (-va > -vb) std::swap(va, vb);
                    cand.a = Radicand(va);
                    cand.b = Radicand(vb);
                    cand.c = sf_mul(cand.a, cand.b);
                    cand.level_sum = i + j;
                    out.push_back(std::move(cand));
                }
            }
        }
    }
    return out;
}

std::vector<BiquadCandidate> stage2_filter(const std::vector<BiquadCandidate>& cands,
                                           int m, QuadCache& cache, int jobs) {
    std::vector<char> keep(cands.size(), 0);
    parallel_for_chunks(static_cast<i64>(cands.size()), jobs, [&](i64 lo, i64 hi, int) {
        for (i64 idx = lo; idx < hi; ++idx) {
            const auto& cand = cands[static_cast<size_t>(idx)];
            u64 hc = cache.class_number(cand.c.value);
            if (hc & (hc - 1)) continue; // not a power of two
            int e = 0;
            for (u64 v = hc; v > 1; v >>= 1) ++e;
            keep[static_cast<size_t>(idx)] = (cand.level_sum + e <= m + 1);
        }
    });
    std::vector<BiquadCandidate> out;
    for (size_t i = 0; i < cands.size(); ++i)
        if (keep[i]) out.push_back(cands[i]);
    return out;
}

bool square_in_quad(const mpq_class& u, const mpq_class& v, i64 c) {
    if (sgn(v) == 0) {
        if (sgn(u) < 0) return false;
        if (sgn(u) == 0) return true;
        if (mpq_sqrt_exact(u)) return true;
        mpq_class uc = u / c;
        uc.canonicalize();
        return mpq_sqrt_exact(uc).has_value();
    }
    // (p + q sqrt c)^2 = p^2 + c q^2 + 2pq sqrt c: norm must be a square,
    // and one of (u +- sqrt(norm))/2 must be a rational square
    mpq_class norm = u * u - c * v * v;
    if (sgn(norm) < 0) return false;
    auto s = mpq_sqrt_exact(norm);
    if (!s) return false;
    for (int sign = 0; sign < 2; ++sign) {
        mpq_class p2 = sign ? mpq_class(u - *s) : mpq_class(u + *s);
        p2 /= 2;
        if (sgn(p2) <= 0) continue;
        auto p = mpq_sqrt_exact(p2);
        if (!p) continue;
        mpq_class q = v / (2 * *p);
        if (p2 + c * q * q == u && 2 * *p * q == v) return true;
        throw Error("square root reconstruction failed"); // unreachable if s^2 = norm
    }
    return false;
}

namespace {

// x + y*sqrt(c) with rational coordinates
struct QuadElt {
    mpq_class x, y;
};

QuadElt mul(const QuadElt& a, const QuadElt& b, i64 c) {
    return {a.x * b.x + mpq_class(c) * a.y * b.y, a.x * b.y + a.y * b.x};
}

} // namespace

int unit_index(const Radicand& a, const Radicand& b) {
    if (!a.negative() || !b.negative() || a == b) throw Error("unit index needs distinct negative radicands");
    Radicand cr = sf_mul(a, b);
    i64 c = cr.value;
    bool w8 = (a.value == -1 && b.value == -2) || (a.value == -2 && b.value == -1);
    if (unit_norm(c) == -1) return w8 ? 2 : 1;
    FundamentalUnit fu = fundamental_unit(c);
    QuadElt eps{mpq_class(fu.x) / fu.den, mpq_class(fu.y) / fu.den};

    bool has_m1 = (a.value == -1 || b.value == -1);
    bool has_m3 = (a.value == -3 || b.value == -3);
    std::vector<QuadElt> twists;
    if (has_m1 && has_m3) {
        twists.push_back({2, 1}); // 2 + sqrt(3), c = 3
        twists.push_back({2, -1});
    } else if (w8) {
        twists.push_back({2, 1}); // 2 + sqrt(2), c = 2
        twists.push_back({2, -1});
    } else if (has_m1) {
        twists.push_back({2, 0});
    } else if (has_m3) {
        twists.push_back({3, 0});
    } else {
        twists.push_back({mpq_class(a.abs_value()), 0});
    }
    bool fired = false;
    for (const auto& t : twists) {
        if (square_in_quad(t.x, t.y, c)) fired = true;
        QuadElt z = mul(t, eps, c);
        if (square_in_quad(z.x, z.y, c)) fired = true;
        if (fired) break;
    }
    if (fired && w8) throw Error("unit index contradiction at the eighth-roots field");
    int q = fired ? 2 : 1;
    if (w8) q *= 2;
    return q;
}

u64 class_number_biquad(const Radicand& a, const Radicand& b, QuadCache& cache) {
    Radicand c = sf_mul(a, b);
    u64 ha = cache.class_number(a.value);
    u64 hb = cache.class_number(b.value);
    u64 hc = cache.class_number(c.value);
    u64 q = static_cast<u64>(unit_index(a, b));
    u64 prod = ha * hb * hc * q;
    if (prod & 1) throw Error("Kuroda parity violation");
    return prod / 2;
}

std::vector<FieldLine> census_biquad(const QuadraticCensus& census, int m, QuadCache& cache,
                                     BiquadReport* report, int jobs) {
    auto cands = stage1_candidates(census, m);
    auto kept = stage2_filter(cands, m, cache, jobs);
    std::vector<u64> hs(kept.size(), 0);
    parallel_for_chunks(static_cast<i64>(kept.size()), jobs, [&](i64 lo, i64 hi, int) {
        for (i64 i = lo; i < hi; ++i)
            hs[static_cast<size_t>(i)] =
                class_number_biquad(kept[static_cast<size_t>(i)].a, kept[static_cast<size_t>(i)].b, cache);
    });
    if (report) {
        report->stage1_count = cands.size();
        report->stage2_count = kept.size();
        report->h_histogram.clear();
        for (u64 h : hs) ++report->h_histogram[h];
    }
    std::vector<FieldLine> out;
    for (size_t i = 0; i < kept.size(); ++i) {
        u64 h = hs[i];
        if (h & (h - 1)) continue;
        u64 mexp = 0;
        for (u64 v = h; v > 1; v >>= 1) ++mexp;
        if (mexp > static_cast<u64>(m)) continue;
        FieldLine f;
        f.h = h;
        f.rec.neg = {kept[i].b, kept[i].a}; // ascending by value
        f.rec.pos = {kept[i].c};
        f.rec.p_exp = kept[i].level_sum;
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace mqc
