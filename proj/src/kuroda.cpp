#include "mqc/kuroda.hpp"

#include <algorithm>
#include <unordered_set>

#include "mqc/errors.hpp"
#include "mqc/intmath.hpp"
#include "mqc/realquad.hpp"

namespace mqc {

RealFieldCtx RealFieldCtx::build(const std::vector<Radicand>& gens) {
    RealFieldCtx f;
    f.t = static_cast<int>(gens.size());
    if (f.t < 1 || f.t > 20) throw Error("unsupported real field rank");
    size_t dim = size_t(1) << f.t;
    f.D.assign(dim, Radicand(1));
    for (int i = 0; i < f.t; ++i) {
        if (gens[size_t(i)].value <= 1) throw Error("real field generators must exceed 1");
        size_t bit = size_t(1) << i;
        for (size_t m = 0; m < bit; ++m) f.D[m | bit] = sf_mul(f.D[m], gens[size_t(i)]);
    }
    f.mask_of.reserve(dim);
    for (size_t m = 0; m < dim; ++m) {
        if (m != 0 && f.D[m].value == 1) throw DependentRadicands("real field generators");
        f.mask_of[f.D[m].value] = static_cast<int>(m);
    }
    if (f.mask_of.size() != dim) throw DependentRadicands("real field generators");
    f.content.assign(dim, std::vector<i64>(dim, 1));
    for (size_t a = 0; a < dim; ++a) {
        for (size_t b = 0; b < dim; ++b) {
            const auto& pa = f.D[a].primes;
            const auto& pb = f.D[b].primes;
            i64 s = 1;
            size_t i = 0, j = 0;
            while (i < pa.size() && j < pb.size()) {
                if (pa[i] == pb[j]) {
                    s *= pa[i];
                    ++i;
                    ++j;
                } else if (pa[i] < pb[j]) {
                    ++i;
                } else {
                    ++j;
                }
            }
            f.content[a][b] = s;
        }
    }
    return f;
}

FElem fe_zero(const RealFieldCtx& f) { return FElem(f.dim(), mpq_class(0)); }

FElem fe_rational(const RealFieldCtx& f, const mpq_class& c) {
    FElem v = fe_zero(f);
    v[0] = c;
    return v;
}

bool fe_is_zero(const FElem& v) {
    for (const auto& c : v)
        if (c != 0) return false;
    return true;
}

FElem fe_add(const FElem& a, const FElem& b) {
    FElem out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

FElem fe_sub(const FElem& a, const FElem& b) {
    FElem out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

FElem fe_neg(const FElem& a) {
    FElem out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

FElem fe_mul(const RealFieldCtx& f, const FElem& a, const FElem& b) {
    FElem out = fe_zero(f);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            mpq_class term = a[i] * b[j];
            term *= f.content[i][j];
            out[i ^ j] += term;
        }
    }
    return out;
}

namespace {

// v (supported on masks < 2^level) = A + B * sqrt(g_level)
void split_top(const RealFieldCtx& f, const FElem& v, int level, FElem& A, FElem& B) {
    size_t bit = size_t(1) << (level - 1);
    A = fe_zero(f);
    B = fe_zero(f);
    for (size_t m = 0; m < bit; ++m) {
        A[m] = v[m];
        // sqrt(D_{m|bit}) = sqrt(D_m) sqrt(g) / content
        B[m] = v[m | bit] / f.content[m][bit];
    }
}

// A + B * sqrt(g_level) as a plain element
FElem join_top(const RealFieldCtx& f, const FElem& A, const FElem& B, int level) {
    size_t bit = size_t(1) << (level - 1);
    FElem out = A;
    for (size_t m = 0; m < bit; ++m)
        if (B[m] != 0) out[m | bit] = B[m] * f.content[m][bit];
    return out;
}

int sign_rec(const RealFieldCtx& f, const FElem& v, int level) {
    if (level == 0) return sgn(v[0]);
    FElem A, B;
    split_top(f, v, level, A, B);
    if (fe_is_zero(B)) return sign_rec(f, A, level - 1);
    if (fe_is_zero(A)) return sign_rec(f, B, level - 1);
    int sa = sign_rec(f, A, level - 1);
    int sb = sign_rec(f, B, level - 1);
    if (sa == sb) return sa;
    i64 g = f.D[size_t(1) << (level - 1)].value;
    FElem B2 = fe_mul(f, B, B);
    for (auto& c : B2) c *= g;
    FElem diff = fe_sub(fe_mul(f, A, A), B2);
    int sd = sign_rec(f, diff, level - 1);
    if (sd == 0) throw Error("degenerate element in sign evaluation");
    return sd > 0 ? sa : sb;
}

FElem inv_rec(const RealFieldCtx& f, const FElem& v, int level) {
    if (level == 0) {
        if (v[0] == 0) throw Error("division by zero in field arithmetic");
        FElem out = fe_zero(f);
        out[0] = 1 / v[0];
        return out;
    }
    FElem A, B;
    split_top(f, v, level, A, B);
    if (fe_is_zero(B)) return inv_rec(f, A, level - 1);
    i64 g = f.D[size_t(1) << (level - 1)].value;
    FElem B2 = fe_mul(f, B, B);
    for (auto& c : B2) c *= g;
    FElem norm = fe_sub(fe_mul(f, A, A), B2);
    FElem ninv = inv_rec(f, norm, level - 1);
    FElem conj = join_top(f, A, fe_neg(B), level);
    return fe_mul(f, conj, ninv);
}

std::optional<FElem> sqrt_rec(const RealFieldCtx& f, const FElem& v, int level) {
    if (level == 0) {
        if (v[0] < 0) return std::nullopt;
        auto r = mpq_sqrt_exact(v[0]);
        if (!r) return std::nullopt;
        FElem out = fe_zero(f);
        out[0] = *r;
        return out;
    }
    FElem A, B;
    split_top(f, v, level, A, B);
    size_t bit = size_t(1) << (level - 1);
    i64 g = f.D[bit].value;
    if (fe_is_zero(B)) {
        if (auto r = sqrt_rec(f, A, level - 1)) return r;
        FElem Ag = A;
        for (auto& c : Ag) c *= g;
        if (auto u = sqrt_rec(f, Ag, level - 1)) {
            // sqrt(A) = (u/g) * sqrt(g)
            FElem q = *u;
            for (auto& c : q) c /= g;
            return join_top(f, fe_zero(f), q, level);
        }
        return std::nullopt;
    }
    FElem B2 = fe_mul(f, B, B);
    for (auto& c : B2) c *= g;
    FElem nv = fe_sub(fe_mul(f, A, A), B2);
    auto s = sqrt_rec(f, nv, level - 1);
    if (!s) return std::nullopt;
    for (int branch = 0; branch < 2; ++branch) {
        FElem half = branch ? fe_sub(A, *s) : fe_add(A, *s);
        for (auto& c : half) c /= 2;
        if (fe_is_zero(half)) continue;
        auto p = sqrt_rec(f, half, level - 1);
        if (!p) continue;
        FElem twop = *p;
        for (auto& c : twop) c *= 2;
        FElem q = fe_mul(f, B, inv_rec(f, twop, level - 1));
        return join_top(f, *p, q, level);
    }
    return std::nullopt;
}

} // namespace

int fe_sign(const RealFieldCtx& f, const FElem& a) {
    if (fe_is_zero(a)) return 0;
    return sign_rec(f, a, f.t);
}

FElem fe_inv(const RealFieldCtx& f, const FElem& a) {
    if (fe_is_zero(a)) throw Error("division by zero in field arithmetic");
    return inv_rec(f, a, f.t);
}

std::optional<FElem> sqrt_in_field(const RealFieldCtx& f, const FElem& v) {
    auto r = sqrt_rec(f, v, f.t);
    if (r && !(fe_mul(f, *r, *r) == v)) throw Error("field square root verification failed");
    return r;
}

FElem embed_unit(const RealFieldCtx& f, i64 d) {
    auto it = f.mask_of.find(d);
    if (it == f.mask_of.end() || it->second == 0) throw Error("radicand does not generate a quadratic subfield");
    FundamentalUnit u = fundamental_unit(d);
    FElem out = fe_zero(f);
    mpq_class den(u.den);
    out[0] = mpq_class(u.x) / den;
    out[size_t(it->second)] = mpq_class(u.y) / den;
    return out;
}

SquareScreen::SquareScreen(const RealFieldCtx& f, int prime_count) : f_(f) {
    auto primes = primes_up_to(1u << 20);
    for (u32 pc : primes) {
        if (static_cast<int>(ps_.size()) >= prime_count) break;
        u64 p = pc;
        if (p == 2) continue;
        bool ok = true;
        for (int i = 0; i < f.t && ok; ++i) {
            u64 g = u64(f.D[size_t(1) << i].value) % p;
            if (g == 0 || jacobi_u64(g, p) != 1) ok = false;
        }
        if (!ok) continue;
        std::vector<u64> sd(f.dim(), 1);
        for (int i = 0; i < f.t; ++i) {
            size_t bit = size_t(1) << i;
            u64 ri = *sqrt_mod_prime(u64(f.D[bit].value) % p, p);
            for (size_t m = 0; m < bit; ++m) {
                u64 cinv = powmod_u64(u64(f.content[m][bit]) % p, p - 2, p);
                sd[m | bit] = mulmod_u64(mulmod_u64(sd[m], ri, p), cinv, p);
            }
        }
        ps_.push_back(p);
        sqrt_d_.push_back(std::move(sd));
    }
    if (ps_.size() < size_t(prime_count)) throw Error("failed to collect screen primes");
}

int SquareScreen::symbol(const FElem& v, size_t i) const {
    u64 p = ps_[i];
    const auto& sd = sqrt_d_[i];
    u64 acc = 0;
    for (size_t m = 0; m < v.size(); ++m) {
        if (v[m] == 0) continue;
        u64 den = mpz_fdiv_ui(v[m].get_den().get_mpz_t(), p);
        if (den == 0) return 0; // prime unusable for this element
        u64 num = mpz_fdiv_ui(v[m].get_num().get_mpz_t(), p); // floor residue, sign folded in
        u64 q = mulmod_u64(num, powmod_u64(den, p - 2, p), p);
        acc = (acc + mulmod_u64(q, sd[m], p)) % p;
    }
    if (acc == 0) return 0;
    return powmod_u64(acc, (p - 1) / 2, p) == 1 ? 1 : -1;
}

SaturationResult saturate_units(const RealFieldCtx& f) {
    SaturationResult res;
    size_t nu = f.dim() - 1;
    for (size_t m = 1; m < f.dim(); ++m) res.basis.push_back(embed_unit(f, f.D[m].value));
    SquareScreen screen(f);
    auto unit_bits = [&](const FElem& u) {
        std::vector<int> bits(screen.primes());
        for (size_t i = 0; i < screen.primes(); ++i) {
            bits[i] = screen.symbol(u, i);
            if (bits[i] == 0) throw Error("screen prime divides a unit residue");
        }
        return bits;
    };
    std::vector<std::vector<int>> bits;
    bits.reserve(nu);
    for (const auto& u : res.basis) bits.push_back(unit_bits(u));
    bool progress = true;
    while (progress) {
        progress = false;
        for (u64 S = 1; S < (u64(1) << nu); ++S) {
            bool reject = false;
            for (size_t i = 0; i < screen.primes() && !reject; ++i) {
                int sym = 1;
                for (size_t j = 0; j < nu; ++j)
                    if (S >> j & 1) sym *= bits[j][i];
                if (sym == -1) reject = true;
            }
            if (reject) continue;
            FElem z = fe_rational(f, 1);
            for (size_t j = 0; j < nu; ++j)
                if (S >> j & 1) z = fe_mul(f, z, res.basis[j]);
            auto w = sqrt_in_field(f, z);
            if (!w) continue;
            if (fe_sign(f, *w) < 0) *w = fe_neg(*w);
            size_t lead = size_t(__builtin_ctzll(S));
            res.basis[lead] = *w;
            bits[lead] = unit_bits(*w);
            res.qf_exp += 1;
            progress = true;
            break;
        }
    }
    return res;
}

int torsion_two_exponent(bool has_m1, bool has_m2, bool has_m3) {
    (void)has_m3;
    if (has_m1 && has_m2) return 3;
    if (has_m1) return 2;
    return 1;
}

namespace {

FElem twist_of_masks(const RealFieldCtx& f, i64 c0, i64 c2, i64 c3, i64 c6) {
    FElem v = fe_zero(f);
    v[0] = c0;
    if (c2 != 0) v[size_t(f.mask_of.at(2))] = c2;
    if (c3 != 0) v[size_t(f.mask_of.at(3))] = c3;
    if (c6 != 0) v[size_t(f.mask_of.at(6))] = c6;
    return v;
}

} // namespace

int cm_index(const RealFieldCtx& f, const SaturationResult& sat, bool has_m1, bool has_m2,
             bool has_m3, i64 fallback_neg) {
    std::vector<FElem> twists;
    if (!has_m1) {
        i64 g0 = has_m3 ? 3 : -fallback_neg;
        twists.push_back(fe_rational(f, g0));
    } else if (has_m2 && has_m3) {
        // torsion of order 24: both (1 +- cos(pi/12))/2 twists, scaled by squares
        twists.push_back(twist_of_masks(f, 8, 2, 0, 2));
        twists.push_back(twist_of_masks(f, 8, -2, 0, -2));
    } else if (has_m2) {
        twists.push_back(twist_of_masks(f, 2, 1, 0, 0));
        twists.push_back(twist_of_masks(f, 2, -1, 0, 0));
    } else if (has_m3) {
        twists.push_back(twist_of_masks(f, 2, 0, 1, 0));
        twists.push_back(twist_of_masks(f, 2, 0, -1, 0));
    } else {
        twists.push_back(fe_rational(f, 2));
    }
    SquareScreen screen(f);
    size_t nu = sat.basis.size();
    std::vector<std::vector<int>> bits;
    bits.reserve(nu);
    for (const auto& u : sat.basis) {
        std::vector<int> row(screen.primes());
        for (size_t i = 0; i < screen.primes(); ++i) row[i] = screen.symbol(u, i);
        bits.push_back(std::move(row));
    }
    for (const auto& tw : twists) {
        std::vector<int> tb(screen.primes());
        for (size_t i = 0; i < screen.primes(); ++i) tb[i] = screen.symbol(tw, i);
        for (u64 S = 0; S < (u64(1) << nu); ++S) {
            bool reject = false;
            for (size_t i = 0; i < screen.primes() && !reject; ++i) {
                int sym = tb[i];
                if (sym == 0) continue;
                for (size_t j = 0; j < nu && sym != 0; ++j)
                    if (S >> j & 1) sym *= bits[j][i];
                if (sym == -1) reject = true;
            }
            if (reject) continue;
            FElem z = tw;
            for (size_t j = 0; j < nu; ++j)
                if (S >> j & 1) z = fe_mul(f, z, sat.basis[j]);
            if (sqrt_in_field(f, z)) return 2;
        }
    }
    return 1;
}

u64 class_number_multiquad(const RadicandList& primitive, QuadCache& qcache) {
    RadicandList all = complete_radicand_list(primitive);
    int n = 0;
    while ((size_t(1) << n) - 1 < all.size()) ++n;
    if ((size_t(1) << n) - 1 != all.size()) throw Error("radicand list has invalid size");
    SignSplit sp = split_signs(all);
    if (n == 1) return qcache.class_number(all[0].value);
    if (sp.neg.size() != size_t(1) << (n - 1))
        throw Error("class number engine requires an imaginary field");

    bool m1 = false, m2 = false, m3 = false;
    for (const auto& r : sp.neg) {
        if (r.value == -1) m1 = true;
        if (r.value == -2) m2 = true;
        if (r.value == -3) m3 = true;
    }

    // generators of the maximal real subfield; keep the span factored
    std::vector<Radicand> gens;
    std::vector<Radicand> span{Radicand()};
    std::unordered_set<i64> span_vals{1};
    for (const auto& r : sp.pos) {
        if (span_vals.count(r.value)) continue;
        size_t sz = span.size();
        for (size_t i = 0; i < sz; ++i) {
            Radicand prod = sf_mul(span[i], r);
            span_vals.insert(prod.value);
            span.push_back(std::move(prod));
        }
        gens.push_back(r);
    }
    if (gens.size() != size_t(n - 1)) throw Error("positive radicands do not span the real subfield");
    RealFieldCtx f = RealFieldCtx::build(gens);

    mpz_class prod = 1;
    for (const auto& r : all) prod *= mpz_class(static_cast<unsigned long>(qcache.class_number(r.value)));

    SaturationResult sat = saturate_units(f);
    int q = cm_index(f, sat, m1, m2, m3, sp.neg.front().value);
    int a = torsion_two_exponent(m1, m2, m3);
    long e = a - (1L << (n - 1)) - (m1 ? 1 : 0) - static_cast<long>(n - 1) * ((1L << (n - 2)) - 1);

    mpz_class h = prod * q;
    h <<= sat.qf_exp;
    if (e >= 0) {
        h <<= e;
    } else {
        if (!mpz_divisible_2exp_p(h.get_mpz_t(), static_cast<mp_bitcnt_t>(-e)))
            throw Error("class number formula yielded a non-integer");
        mpz_tdiv_q_2exp(h.get_mpz_t(), h.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    if (!h.fits_ulong_p()) throw BoundExceeded("class number exceeds 64 bits");
    return static_cast<u64>(h.get_ui());
}

} // namespace mqc
