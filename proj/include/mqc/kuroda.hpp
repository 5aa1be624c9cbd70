#pragma once
#include <gmpxx.h>

#include <optional>
#include <unordered_map>
#include <vector>

#include "mqc/census.hpp"
#include "mqc/radicand.hpp"

namespace mqc {

// Real multiquadratic field Q(sqrt g_1, ..., sqrt g_t) with the mask-indexed
// basis {sqrt D_m}, D_m = sf(prod_{i in m} g_i). content[a][b] is the rational
// carry in sqrt(D_a) sqrt(D_b) = content * sqrt(D_{a xor b}).
struct RealFieldCtx {
    int t = 0;
    std::vector<Radicand> D;
    std::vector<std::vector<i64>> content;
    std::unordered_map<i64, int> mask_of; // D value -> mask

    size_t dim() const { return D.size(); }
    static RealFieldCtx build(const std::vector<Radicand>& gens);
};

// element as rational coordinates over {sqrt D_m}
using FElem = std::vector<mpq_class>;

FElem fe_zero(const RealFieldCtx& f);
FElem fe_rational(const RealFieldCtx& f, const mpq_class& c);
bool fe_is_zero(const FElem& v);
FElem fe_add(const FElem& a, const FElem& b);
FElem fe_sub(const FElem& a, const FElem& b);
FElem fe_neg(const FElem& a);
FElem fe_mul(const RealFieldCtx& f, const FElem& a, const FElem& b);
FElem fe_inv(const RealFieldCtx& f, const FElem& a);
int fe_sign(const RealFieldCtx& f, const FElem& a); // at the all-positive embedding

// the fundamental unit of Q(sqrt d) as an element of F (d must be some D_m)
FElem embed_unit(const RealFieldCtx& f, i64 d);

std::optional<FElem> sqrt_in_field(const RealFieldCtx& f, const FElem& v);

// quadratic-residue screen: primes p splitting completely in F, with the
// symbol of each tracked unit cached; a -1 symbol certifies "not a square"
class SquareScreen {
public:
    SquareScreen(const RealFieldCtx& f, int prime_count = 16);
    // residue symbol of v at screen prime i: +1 / -1, or 0 when v vanishes
    int symbol(const FElem& v, size_t i) const;
    size_t primes() const { return ps_.size(); }

private:
    const RealFieldCtx& f_;
    std::vector<u64> ps_;
    std::vector<std::vector<u64>> sqrt_d_; // per prime: residue of sqrt(D_m)
};

// index 2^k of +-<subfield units> in the full unit group of F, together with
// a saturated basis (totally positive scaling irrelevant; signs normalized at
// the canonical embedding)
struct SaturationResult {
    int qf_exp = 0;
    std::vector<FElem> basis;
};
SaturationResult saturate_units(const RealFieldCtx& f);

// 2-part w = 2^a of the number of roots of unity, from the negative radicands
int torsion_two_exponent(bool has_m1, bool has_m2, bool has_m3);

// Hasse-style index [E_K : W_K E_F] for the CM field K over its real field F
int cm_index(const RealFieldCtx& f, const SaturationResult& sat, bool has_m1, bool has_m2,
             bool has_m3, i64 fallback_neg);

// exact class number of an imaginary multiquadratic field of any degree,
// through the unit-index class number formula over the maximal real subfield
u64 class_number_multiquad(const RadicandList& primitive, QuadCache& qcache);

} // namespace mqc
