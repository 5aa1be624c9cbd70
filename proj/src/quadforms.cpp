#include "mqc/quadforms.hpp"

#include <algorithm>
#include <numeric>

#include "mqc/errors.hpp"
#include "mqc/parallel.hpp"

namespace mqc {

u64 class_number_forms_brute(i64 D) {
    if (D >= 0 || ((D % 4 + 4) % 4 != 0 && (D % 4 + 4) % 4 != 1))
        throw Error("not an imaginary discriminant");
    u64 count = 0;
    i64 amax = static_cast<i64>(isqrt_u64(static_cast<u64>(-D) / 3));
    for (i64 a = 1; a <= amax; ++a) {
        for (i64 b = -a; b <= a; ++b) {
            i64 num = b * b - D;
            if (num % (4 * a)) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if ((b == -a || a == c) && b < 0) continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
            ++count;
        }
    }
    return count;
}

// ---------- batched b-root enumeration ----------

FormRootSolver::FormRootSolver(i64 D, u32 a_max) : D_(D), spf_(shared_spf(a_max)) {}

u64 FormRootSolver::d_mod(u64 m) const {
    i64 r = D_ % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return static_cast<u64>(r);
}

// roots of x^2 = D mod p^e for odd prime p
void FormRootSolver::roots_odd_pk(u32 p, int e, std::vector<u64>& out, u64& mod) {
    mod = 1;
    for (int i = 0; i < e; ++i) mod *= p;
    out.clear();
    if (d_mod(p) == 0) {
        if (e == 1) {
            out.push_back(0);
            return;
        }
        auto all = sqrt_mod_pk(d_mod(mod), p, e); // handles any p-valuation
        out.assign(all.begin(), all.end());
        return;
    }
    auto it = prime_root_.find(p);
    i64 base;
    if (it == prime_root_.end()) {
        auto r = sqrt_mod_prime(d_mod(p), p);
        base = r ? static_cast<i64>(*r) : -1;
        prime_root_.emplace(p, base);
    } else {
        base = it->second;
    }
    if (base < 0) return;
    // Hensel lift to p^e
    u64 x = static_cast<u64>(base) % mod;
    u64 a = d_mod(mod);
    u64 pk = p;
    while (pk < mod) {
        u64 next = pk * p;
        u64 x2 = mulmod_u64(x % next, x % next, next);
        u64 diff = (a % next + next - x2) % next;
        u64 rhs = (diff / pk) % p;
        u64 inv = powmod_u64((2 * x) % p, p - 2, p);
        u64 t = mulmod_u64(rhs, inv, p);
        x = (x + t % next * (pk % next)) % next;
        pk = next;
    }
    out.push_back(x);
    if (x != mod - x) out.push_back(mod - x);
}

void FormRootSolver::roots_mod_4a(i64 a, std::vector<u64>& out) {
    out.clear();
    u64 m = 4 * static_cast<u64>(a);
    static thread_local std::vector<std::pair<u64, int>> fac;
    fac.clear();
    u64 rest = static_cast<u64>(a);
    int e2 = 2;
    while ((rest & 1) == 0) {
        rest >>= 1;
        ++e2;
    }
    while (rest > 1) {
        u32 p = spf_[rest];
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        fac.emplace_back(p, e);
    }
    static thread_local std::vector<u64> cur, nxt, loc;
    auto r2 = sqrt_mod_2k(d_mod(1ull << e2), e2);
    if (r2.empty()) return;
    cur.assign(r2.begin(), r2.end());
    u64 cur_mod = 1ull << e2;
    for (auto [p, e] : fac) {
        u64 pm;
        roots_odd_pk(p, e, loc, pm);
        if (loc.empty()) return;
        nxt.clear();
        // CRT merge; cur_mod is invertible mod the odd prime power pm
        u64 phi = pm - pm / p;
        u64 inv = powmod_u64(cur_mod % pm, phi - 1, pm);
        for (u64 r1 : cur)
            for (u64 rp : loc) {
                u64 t = mulmod_u64((rp + pm - r1 % pm) % pm, inv, pm);
                nxt.push_back(r1 + cur_mod * t);
            }
        cur_mod *= pm;
        cur.swap(nxt);
    }
    if (cur_mod != m) throw Error("modulus mismatch in root CRT");
    out.assign(cur.begin(), cur.end());
}

u64 class_number_forms_fast(i64 D) {
    if (D >= 0) throw Error("not an imaginary discriminant");
    i64 amax = static_cast<i64>(isqrt_u64(static_cast<u64>(-D) / 3));
    FormRootSolver rs(D, static_cast<u32>(std::max<i64>(amax, 2)));
    u64 count = 0;
    std::vector<u64> roots;
    for (i64 a = 1; a <= amax; ++a) {
        rs.roots_mod_4a(a, roots);
        for (u64 r : roots) {
            i64 b;
            if (r <= static_cast<u64>(a))
                b = static_cast<i64>(r); // [0, a]
            else if (r > 3 * static_cast<u64>(a))
                b = static_cast<i64>(r) - 4 * a; // (-a, 0)
            else
                continue;
            i64 c = (b * b - D) / (4 * a);
            if (c < a) continue;
            if ((b == -a || a == c) && b < 0) continue;
            ++count;
        }
    }
    return count;
}

std::vector<u32> bulk_form_tallies(i64 B, int jobs) {
    std::vector<u32> tally(static_cast<size_t>(B) + 1, 0);
    i64 bmax = static_cast<i64>(isqrt_u64(static_cast<u64>(B) / 3));
    auto sweep = [&](std::vector<u32>& t, i64 b0, i64 step) {
        for (i64 b = b0; b <= bmax; b += step) {
            i64 b2 = b * b;
            for (i64 a = std::max<i64>(b, 1); 4 * a * a - b2 <= B; ++a) {
                i64 idx = 4 * a * a - b2; // c = a: forms (a,b,a), one orientation
                if (idx >= 0) t[static_cast<size_t>(idx)] += 1;
                u32 wgt = (b > 0 && b < a) ? 2 : 1; // +/-b both reduced once c > a
                for (idx += 4 * a; idx <= B; idx += 4 * a) t[static_cast<size_t>(idx)] += wgt;
            }
        }
    };
    int w = effective_jobs(jobs);
    if (w <= 1) {
        sweep(tally, 0, 1);
        return tally;
    }
    std::vector<std::vector<u32>> priv(static_cast<size_t>(w));
    parallel_for_chunks(w, w, [&](i64 lo, i64, int) {
        auto& t = priv[static_cast<size_t>(lo)];
        t.assign(static_cast<size_t>(B) + 1, 0);
        sweep(t, lo, w);
    });
    for (auto& t : priv)
        for (size_t i = 0; i <= static_cast<size_t>(B); ++i) tally[i] += t[i];
    return tally;
}

bool is_fundamental_disc(i64 D, const std::vector<bool>& squarefree_abs) {
    if (D == 0 || D == 1) return false;
    i64 m4 = ((D % 4) + 4) % 4;
    i64 ad = D < 0 ? -D : D;
    if (m4 == 1) return squarefree_abs[static_cast<size_t>(ad)];
    if (m4 != 0) return false;
    i64 r = D / 4;
    i64 rm4 = ((r % 4) + 4) % 4;
    if (rm4 != 2 && rm4 != 3) return false;
    return squarefree_abs[static_cast<size_t>(r < 0 ? -r : r)];
}

} // namespace mqc
