#pragma once
#include <compare>
#include <string>
#include <vector>

#include "mqc/intmath.hpp"

namespace mqc {

// A signed squarefree integer kept in factored form so that products never
// need refactoring. value == sign * prod(primes); primes strictly increasing.
// The unit (value 1) is representable but rejected by all list constructors.
struct Radicand {
    i64 value = 1;
    std::vector<u32> primes;

    Radicand() = default;
    explicit Radicand(i64 v); // factors |v| by trial division; v must be squarefree
    Radicand(int sign, std::vector<u32> ps);

    bool is_unit() const { return value == 1; }
    bool negative() const { return value < 0; }
    int sign() const { return value < 0 ? -1 : 1; }
    i64 abs_value() const { return value < 0 ? -value : value; }

    auto operator<=>(const Radicand& o) const { return value <=> o.value; }
    bool operator==(const Radicand& o) const { return value == o.value; }
};

// squarefree part of a*b via sign product and symmetric difference of primes
Radicand sf_mul(const Radicand& a, const Radicand& b);

// scalar helper: squarefree part of any nonzero integer
i64 sf_i64(i64 n);

// fundamental discriminant of the quadratic field Q(sqrt r)
i64 discriminant(const Radicand& r);

using RadicandList = std::vector<Radicand>; // sorted by value, no unit

// all 2^n - 1 subset sf-products; throws DependentRadicands if not primitive
RadicandList complete_radicand_list(const std::vector<Radicand>& primitive);

struct SignSplit {
    RadicandList neg, pos;
};
SignSplit split_signs(const RadicandList& q);

// An imaginary n-quadratic field as (Q^-, Q^+, P) with P = 2^p_exp the
// product of imaginary-subfield class numbers (only 2-power P survives).
struct FieldRec {
    RadicandList neg, pos;
    int p_exp = 0;

    int n() const; // neg.size() == 2^(n-1)
};

// radicand lists of K(sqrt r): neg = Q^- ∪ {r} ∪ sf(r*Q^+), pos = Q^+ ∪ sf(r*Q^-)
SignSplit extend_field(const FieldRec& k, const Radicand& r);

// deterministic key, equal iff the Q^- sets are equal: ascending values, comma-joined
std::string canonical_key(const RadicandList& neg);

std::string radicand_list_to_string(const RadicandList& q); // same encoding as canonical_key
RadicandList parse_radicand_list(const std::string& s);     // signed decimals, comma/space separated

} // namespace mqc
