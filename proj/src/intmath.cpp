#include "mqc/intmath.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "mqc/errors.hpp"

namespace mqc {

u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    // the double seed can land one past 2^32 - 1 near the top of the range,
    // where r * r would wrap; the true root never exceeds 2^32 - 1
    r = std::min(r, u64(0xFFFFFFFF));
    while (r > 0 && r * r > n) --r;
    while (r < 0xFFFFFFFF && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square_u64(u64 n, u64* root) {
    // quadratic residues mod 64 quick reject
    static const bool qr64[64] = {1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
                                  1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
                                  0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
                                  0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0};
    if (!qr64[n & 63]) return false;
    u64 r = isqrt_u64(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

i64 mul_checked(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw BoundExceeded("i64 product overflow");
    return r;
}

u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

int jacobi_u64(u64 a, u64 n) {
    // n odd positive
    a %= n;
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            u64 r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

std::optional<u64> sqrt_mod_prime(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod_u64(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if ((p & 3) == 3) return powmod_u64(a, (p + 1) / 4, p);
    // Tonelli–Shanks
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (jacobi_u64(z, p) != -1) ++z;
    u64 m = s, c = powmod_u64(z, q, p), t = powmod_u64(a, q, p), r = powmod_u64(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) {
            t2 = mulmod_u64(t2, t2, p);
            ++i;
            if (i == m) return std::nullopt; // unreachable for residues
        }
        u64 b = c;
        for (u64 j = 0; j < m - i - 1; ++j) b = mulmod_u64(b, b, p);
        m = i;
        c = mulmod_u64(b, b, p);
        t = mulmod_u64(t, c, p);
        r = mulmod_u64(r, b, p);
    }
    return r;
}

std::vector<u64> sqrt_mod_2k(u64 a, int k) {
    // lift solution sets level by level; solution count stays <= 4
    u64 mod = 1ull << k;
    a &= mod - 1;
    std::vector<u64> cur{0};
    if (k >= 1) {
        cur.clear();
        for (u64 x = 0; x < 2; ++x)
            if ((x * x - a) % 2 == 0) cur.push_back(x);
    }
    for (int j = 2; j <= k; ++j) {
        u64 mj = 1ull << j;
        std::vector<u64> next;
        for (u64 x : cur) {
            for (u64 add = 0; add < 2; ++add) {
                u64 y = x + add * (mj >> 1);
                if (((y * y - a) & (mj - 1)) == 0) next.push_back(y & (mj - 1));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
    }
    return cur;
}

std::vector<u64> sqrt_mod_pk(u64 a, u64 p, int k) {
    u64 mod = 1;
    for (int i = 0; i < k; ++i) mod *= p;
    a %= mod;
    if (k == 1) {
        auto r = sqrt_mod_prime(a % p, p);
        if (!r) return {};
        if (*r == 0) return {0};
        return *r == p - *r ? std::vector<u64>{*r} : std::vector<u64>{*r, p - *r};
    }
    if (a % p == 0) {
        if (a == 0) {
            // x = 0 mod p^ceil(k/2)
            std::vector<u64> out;
            u64 step = 1;
            for (int i = 0; i < (k + 1) / 2; ++i) step *= p;
            for (u64 x = 0; x < mod; x += step) out.push_back(x);
            return out;
        }
        int v = 0;
        u64 aa = a;
        while (aa % p == 0) {
            aa /= p;
            ++v;
        }
        if (v & 1) return {};
        // x = p^(v/2) * (u + t*p^(k-v)), u^2 = a/p^v mod p^(k-v)
        auto sub = sqrt_mod_pk(aa, p, k - v);
        u64 ph = 1;
        for (int i = 0; i < v / 2; ++i) ph *= p;
        u64 stride = mod / ph; // p^(k - v/2); ph * stride = mod
        std::vector<u64> out;
        for (u64 u : sub)
            for (u64 t = 0; t < ph; ++t) out.push_back((u * ph % mod + t * stride) % mod);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    // Hensel: unique lift per root mod p
    auto base = sqrt_mod_pk(a, p, k - 1);
    u64 pk1 = mod / p;
    std::vector<u64> out;
    for (u64 x : base) {
        // solve (x + t*p^(k-1))^2 = a mod p^k  =>  2x*t = (a - x^2)/p^(k-1) mod p
        u64 x2 = mulmod_u64(x, x, mod);
        u64 diff = (a + mod - x2) % mod;
        u64 rhs = (diff / pk1) % p;
        u64 inv = powmod_u64((2 * x) % p, p - 2, p);
        u64 t = mulmod_u64(rhs, inv, p);
        out.push_back((x + t % p * pk1) % mod);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<u32> spf_table(u32 n) {
    std::vector<u32> spf(static_cast<size_t>(n) + 1, 0);
    for (u32 i = 2; i <= n; ++i) {
        if (spf[i] == 0) {
            for (u64 j = i; j <= n; j += i)
                if (spf[j] == 0) spf[j] = i;
        }
    }
    return spf;
}

std::vector<u32> primes_up_to(u32 n) {
    std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
    std::vector<u32> out;
    for (u32 i = 2; i <= n; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (u64 j = static_cast<u64>(i) * i; j <= n; j += i) comp[j] = true;
        }
    }
    return out;
}

std::vector<bool> squarefree_table(i64 n) {
    std::vector<bool> sf(static_cast<size_t>(n) + 1, true);
    if (n >= 0) sf[0] = false;
    for (i64 p = 2; p * p <= n; ++p) {
        i64 p2 = p * p;
        // composite p iterates redundantly but stays correct and cheap
        for (i64 j = p2; j <= n; j += p2) sf[j] = false;
    }
    return sf;
}

std::vector<std::pair<u64, int>> factorize(u64 n, const std::vector<u32>& spf) {
    std::vector<std::pair<u64, int>> out;
    while (n > 1 && n < spf.size()) {
        u64 p = spf[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<mpq_class> mpq_sqrt_exact(const mpq_class& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (sgn(q) == 0) return mpq_class(0);
    const mpz_class &num = q.get_num(), &den = q.get_den();
    if (!mpz_is_square(num) || !mpz_is_square(den)) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return mpq_class(rn, rd);
}

bool mpz_is_square(const mpz_class& z) {
    if (sgn(z) < 0) return false;
    return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

const std::vector<u32>& shared_spf(u32 need) {
    static std::vector<u32> table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (table.size() < static_cast<size_t>(need) + 1) {
        u32 n = std::max<u32>(need, 1 << 20);
        table = spf_table(n);
    }
    return table;
}

} // namespace mqc
