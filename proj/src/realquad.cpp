#include "mqc/realquad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "mqc/errors.hpp"
#include "mqc/quadforms.hpp"

namespace mqc {

namespace {

// continued fraction of (P0 + sqrt(d))/Q0; returns period and the partial
// quotients a_0..a_{l-1} needed for the fundamental automorph
u64 cf_period(i64 d, u64 P0, u64 Q0, std::vector<u32>* coeffs) {
    u64 s = isqrt_u64(static_cast<u64>(d));
    if (s * s == static_cast<u64>(d)) throw Error("radicand is a square");
    u64 P = P0, Q = Q0;
    u64 a = (P + s) / Q;
    if (coeffs) coeffs->assign(1, static_cast<u32>(a));
    u64 P1 = 0, Q1 = 0, i = 0;
    while (true) {
        P = a * Q - P;
        Q = (static_cast<u64>(d) - P * P) / Q;
        ++i;
        if (i == 1) {
            P1 = P;
            Q1 = Q;
        } else if (P == P1 && Q == Q1) {
            break;
        }
        a = (P + s) / Q;
        if (coeffs) {
            if (a > 0xffffffffull) throw BoundExceeded("partial quotient overflow");
            coeffs->push_back(static_cast<u32>(a));
        }
    }
    u64 period = i - 1;
    if (coeffs) coeffs->pop_back(); // a_period not needed
    return period;
}

struct Mat2 {
    mpz_class a, b, c, d;
};

Mat2 cf_matrix(const std::vector<u32>& as, size_t lo, size_t hi) {
    if (hi - lo == 1) return {as[lo], 1, 1, 0};
    size_t mid = lo + (hi - lo) / 2;
    Mat2 l = cf_matrix(as, lo, mid), r = cf_matrix(as, mid, hi);
    Mat2 m;
    m.a = l.a * r.a + l.b * r.c;
    m.b = l.a * r.b + l.b * r.d;
    m.c = l.c * r.a + l.d * r.c;
    m.d = l.c * r.b + l.d * r.d;
    return m;
}

double log_mpz(const mpz_class& v) {
    signed long int e;
    double m = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

std::mutex unit_mu;
std::map<i64, FundamentalUnit> unit_cache;

} // namespace

FundamentalUnit fundamental_unit(i64 d) {
    if (d <= 1) throw Error("radicand must exceed 1");
    {
        std::lock_guard<std::mutex> lk(unit_mu);
        auto it = unit_cache.find(d);
        if (it != unit_cache.end()) return it->second;
    }
    FundamentalUnit u;
    u.d0 = d;
    bool half = (d % 4 == 1);
    std::vector<u32> as;
    u.period = cf_period(d, half ? 1 : 0, half ? 2 : 1, &as);
    u.norm = (u.period & 1) ? -1 : 1;
    Mat2 m = cf_matrix(as, 0, as.size());
    // convergent p_{l-1}/q_{l-1} = [a_0; a_1, ..., a_{l-1}]
    const mpz_class& p = m.a;
    const mpz_class& q = m.c;
    if (half) {
        u.x = 2 * p - q;
        u.y = q;
        u.den = 2;
    } else {
        u.x = p;
        u.y = q;
        u.den = 1;
    }
    mpz_class check = u.x * u.x - mpz_class(static_cast<long>(d)) * u.y * u.y;
    if (check != u.norm * u.den * u.den) throw Error("fundamental unit norm check failed");
    double lx = log_mpz(u.x);
    double ly = log_mpz(u.y) + 0.5 * std::log(static_cast<double>(d));
    double hi = std::max(lx, ly), lo = std::min(lx, ly);
    u.regulator = hi + std::log1p(std::exp(lo - hi)) - std::log(static_cast<double>(u.den));
    std::lock_guard<std::mutex> lk(unit_mu);
    return unit_cache.emplace(d, std::move(u)).first->second;
}

int unit_norm(i64 d) {
    if (d <= 1) throw Error("radicand must exceed 1");
    {
        std::lock_guard<std::mutex> lk(unit_mu);
        auto it = unit_cache.find(d);
        if (it != unit_cache.end()) return it->second.norm;
    }
    bool half = (d % 4 == 1);
    u64 period = cf_period(d, half ? 1 : 0, half ? 2 : 1, nullptr);
    return (period & 1) ? -1 : 1;
}

u64 narrow_class_number(i64 D, i64 feas_limit) {
    if (D <= 0 || ((D % 4) != 0 && (D % 4) != 1)) throw Error("not a real discriminant");
    u64 s = isqrt_u64(static_cast<u64>(D));
    if (s * s == static_cast<u64>(D)) throw Error("discriminant is a square");
    if (static_cast<i64>(s) > feas_limit)
        throw BoundExceeded("indefinite form enumeration over limit");

    // reduced forms (a,b,c), a > 0: b in (|sqrt(D)-2a|, sqrt(D)), b^2 = D mod 4a
    std::vector<std::pair<i64, i64>> seeds; // (a, b)
    FormRootSolver rs(D, static_cast<u32>(std::max<u64>(s, 2)));
    std::vector<u64> roots;
    for (i64 a = 1; a <= static_cast<i64>(s); ++a) {
        i64 lo = (2 * a <= static_cast<i64>(s)) ? static_cast<i64>(s) - 2 * a
                                                : 2 * a - static_cast<i64>(s) - 1;
        // integers b with lo < b <= s, at most one per residue class mod 4a
        rs.roots_mod_4a(a, roots);
        for (u64 r : roots) {
            i64 b = static_cast<i64>(r);
            i64 m = 4 * a;
            i64 diff = lo - b; // smallest b' = b (mod m) with b' > lo
            i64 k = diff >= 0 ? diff / m + 1 : -((-diff - 1) / m);
            b += k * m;
            if (b > static_cast<i64>(s)) continue;
            // exact window check: b^2 < D, (b+2a)^2 > D, 2a-b <= 0 or (2a-b)^2 < D
            if (b < 1 || b * b >= D) continue;
            if ((b + 2 * a) * (b + 2 * a) <= D) continue;
            if (2 * a - b > 0 && (2 * a - b) * (2 * a - b) >= D) continue;
            seeds.emplace_back(a, b);
        }
    }
    std::sort(seeds.begin(), seeds.end());
    std::vector<bool> visited(seeds.size(), false);

    auto locate = [&](i64 a, i64 b) -> size_t {
        auto it = std::lower_bound(seeds.begin(), seeds.end(), std::make_pair(a, b));
        if (it == seeds.end() || it->first != a || it->second != b)
            throw Error("rho walk left the seed set");
        return static_cast<size_t>(it - seeds.begin());
    };

    // rho(a,b,c) = (c, r, (r^2-D)/(4c)), r = -b mod 2|c| in (sqrt(D)-2|c|, sqrt(D))
    auto rho = [&](i64& a, i64& b, i64& c) {
        i64 m = 2 * (c < 0 ? -c : c);
        i64 t = ((-b) % m + m) % m;
        i64 r = static_cast<i64>(s) - ((static_cast<i64>(s) - t) % m + m) % m;
        i64 c2 = (r * r - D) / (4 * c);
        a = c;
        b = r;
        c = c2;
    };

    u64 cycles = 0;
    for (size_t i = 0; i < seeds.size(); ++i) {
        if (visited[i]) continue;
        ++cycles;
        i64 a = seeds[i].first, b = seeds[i].second;
        i64 c = (b * b - D) / (4 * a);
        size_t at = i;
        while (!visited[at]) {
            visited[at] = true;
            rho(a, b, c);
            rho(a, b, c); // back to positive leading coefficient
            at = locate(a, b);
        }
    }
    return cycles;
}

u64 class_number_real_exact(i64 d, i64 feas_limit) {
    if (d <= 1) throw Error("radicand must exceed 1");
    i64 D = (d % 4 == 1) ? d : 4 * d;
    u64 hplus = narrow_class_number(D, feas_limit);
    if (unit_norm(d) == -1) return hplus;
    if (hplus & 1) throw Error("narrow class number parity contradiction");
    return hplus / 2;
}

int kronecker_i64(i64 D, u64 n) {
    if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
    int sign = 1;
    u64 ad = static_cast<u64>(D < 0 ? -D : D);
    u64 m = n;
    int k = 0;
    while ((m & 1) == 0) {
        m >>= 1;
        ++k;
    }
    if (k > 0) {
        if ((ad & 1) == 0) return 0;
        u64 dm8 = static_cast<u64>(((D % 8) + 8) % 8);
        int two = (dm8 == 1 || dm8 == 7) ? 1 : -1;
        if (k & 1) sign *= two;
    }
    if (m == 1) return sign;
    u64 dm = static_cast<u64>(((D % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m));
    int j = jacobi_u64(dm, m);
    return sign * j;
}

u64 class_number_real_analytic(i64 d) {
    if (d <= 1) throw Error("radicand must exceed 1");
    i64 D = (d % 4 == 1) ? d : 4 * d;
    FundamentalUnit u = fundamental_unit(d);
    double R = u.regulator;
    double sqD = std::sqrt(static_cast<double>(D));
    // |sum_{n>N} chi(n)/n| <= 2*PV/(N+1), PV = sqrt(D) log D (Polya-Vinogradov)
    double pv = sqD * std::log(static_cast<double>(D));
    double target = 0.25 * 2.0 * R / sqD; // tail so that h error < 0.25
    u64 N = static_cast<u64>(2.0 * pv / target) + 16;
    if (N > 200000000ull) throw BoundExceeded("analytic truncation infeasible");
    double L = 0;
    for (u64 n = N; n >= 1; --n) {
        int ch = kronecker_i64(D, n);
        if (ch) L += static_cast<double>(ch) / static_cast<double>(n);
    }
    double h = sqD * L / (2.0 * R);
    double rounded = std::floor(h + 0.5);
    if (std::fabs(h - rounded) > 0.35 || rounded < 0.5)
        throw Error("analytic estimate did not certify");
    return static_cast<u64>(rounded);
}

} // namespace mqc
