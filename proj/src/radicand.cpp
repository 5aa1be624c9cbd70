#include "mqc/radicand.hpp"

#include <algorithm>
#include <sstream>

#include "mqc/errors.hpp"

namespace mqc {

Radicand::Radicand(i64 v) {
    if (v == 0) throw Error("radicand 0 is not allowed");
    value = v;
    u64 n = static_cast<u64>(v < 0 ? -v : v);
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) throw Error("radicand not squarefree: " + std::to_string(v));
            primes.push_back(static_cast<u32>(p));
        }
    }
    if (n > 1) {
        if (n > 0xffffffffull) throw Error("radicand prime factor exceeds 32 bits");
        primes.push_back(static_cast<u32>(n));
    }
}

Radicand::Radicand(int sign, std::vector<u32> ps) : primes(std::move(ps)) {
    i64 v = sign < 0 ? -1 : 1;
    for (u32 p : primes) v = mul_checked(v, static_cast<i64>(p));
    value = v;
}

Radicand sf_mul(const Radicand& a, const Radicand& b) {
    Radicand out;
    out.primes.reserve(a.primes.size() + b.primes.size());
    std::set_symmetric_difference(a.primes.begin(), a.primes.end(), b.primes.begin(),
                                  b.primes.end(), std::back_inserter(out.primes));
    i64 v = (a.sign() * b.sign() < 0) ? -1 : 1;
    for (u32 p : out.primes) v = mul_checked(v, static_cast<i64>(p));
    out.value = v;
    return out;
}

i64 sf_i64(i64 n) {
    if (n == 0) throw Error("sf(0) undefined");
    i64 sign = n < 0 ? -1 : 1;
    u64 m = static_cast<u64>(n < 0 ? -n : n);
    i64 out = 1;
    for (u64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            if (e & 1) out = mul_checked(out, static_cast<i64>(p));
        }
    }
    if (m > 1) out = mul_checked(out, static_cast<i64>(m));
    return sign * out;
}

i64 discriminant(const Radicand& r) {
    if (r.is_unit()) throw Error("discriminant of the unit radicand");
    i64 v = r.value;
    return ((v % 4 + 4) % 4 == 1) ? v : mul_checked(4, v);
}

RadicandList complete_radicand_list(const std::vector<Radicand>& primitive) {
    if (primitive.empty()) throw Error("empty primitive list");
    for (const auto& r : primitive)
        if (r.is_unit()) throw Error("unit radicand in primitive list");
    size_t n = primitive.size();
    if (n > 24) throw Error("primitive list too large");
    std::vector<Radicand> by_mask(size_t(1) << n);
    by_mask[0] = Radicand(); // unit
    RadicandList out;
    out.reserve((size_t(1) << n) - 1);
    for (size_t mask = 1; mask < by_mask.size(); ++mask) {
        size_t low = mask & (mask - 1);
        size_t bit = mask ^ low;
        int idx = __builtin_ctzll(bit);
        by_mask[mask] = sf_mul(by_mask[low], primitive[idx]);
        if (by_mask[mask].is_unit())
            throw DependentRadicands("subset product collapses to 1");
        out.push_back(by_mask[mask]);
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw DependentRadicands("two subset products coincide");
    return out;
}

SignSplit split_signs(const RadicandList& q) {
    SignSplit s;
    for (const auto& r : q)
        (r.negative() ? s.neg : s.pos).push_back(r);
    return s;
}

int FieldRec::n() const {
    size_t k = neg.size();
    int n = 0;
    while ((size_t(1) << n) < 2 * k) ++n;
    return n;
}

SignSplit extend_field(const FieldRec& k, const Radicand& r) {
    if (!r.negative()) throw Error("extension radicand must be negative");
    if (std::binary_search(k.neg.begin(), k.neg.end(), r))
        throw AlreadyContained(std::to_string(r.value));
    SignSplit s;
    s.neg = k.neg;
    s.neg.push_back(r);
    for (const auto& a : k.pos) s.neg.push_back(sf_mul(r, a));
    for (const auto& a : k.neg) s.pos.push_back(sf_mul(r, a));
    s.pos.insert(s.pos.end(), k.pos.begin(), k.pos.end());
    std::sort(s.neg.begin(), s.neg.end());
    std::sort(s.pos.begin(), s.pos.end());
    return s;
}

std::string canonical_key(const RadicandList& neg) {
    RadicandList sorted = neg;
    std::sort(sorted.begin(), sorted.end());
    std::ostringstream os;
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (i) os << ',';
        os << sorted[i].value;
    }
    return os.str();
}

std::string radicand_list_to_string(const RadicandList& q) { return canonical_key(q); }

RadicandList parse_radicand_list(const std::string& s) {
    RadicandList out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(cur, &used);
            } catch (const std::exception&) {
                throw Error("bad radicand token: " + cur);
            }
            if (used != cur.size()) throw Error("bad radicand token: " + cur);
            out.emplace_back(v);
            cur.clear();
        }
    };
    for (char ch : s) {
        if (ch == ',' || ch == ' ' || ch == '\t')
            flush();
        else
            cur.push_back(ch);
    }
    flush();
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace mqc
