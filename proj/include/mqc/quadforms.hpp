#pragma once
#include <unordered_map>
#include <vector>

#include "mqc/intmath.hpp"

namespace mqc {

// ---------- imaginary quadratic class numbers via reduced forms ----------
// D < 0, D = 0 or 1 mod 4. Counts reduced primitive positive-definite forms
// (a,b,c), b^2 - 4ac = D, |b| <= a <= c, b >= 0 when |b| = a or a = c.

// divisor-walk brute force; independent oracle for the fast paths
u64 class_number_forms_brute(i64 D);

// single discriminant, batched modular square roots per a; D fundamental
u64 class_number_forms_fast(i64 D);

// bulk tallies for every |D| <= B (index = |D|); counts include imprimitive
// forms, which cannot occur at fundamental discriminants — callers must only
// read fundamental entries. jobs: worker count for per-a partitioning.
std::vector<u32> bulk_form_tallies(i64 B, int jobs = 1);

// is D a fundamental discriminant (negative or positive)
bool is_fundamental_disc(i64 D, const std::vector<bool>& squarefree_abs);

// all b with b^2 = D (mod 4a), 0 <= b < 4a, for varying a at fixed D;
// memoizes the square root of D modulo each prime seen. Used by the
// definite and indefinite form enumerations alike.
class FormRootSolver {
public:
    FormRootSolver(i64 D, u32 a_max);
    void roots_mod_4a(i64 a, std::vector<u64>& out); // unsorted

private:
    i64 D_;
    const std::vector<u32>& spf_;
    std::unordered_map<u32, i64> prime_root_; // -1: non-residue

    u64 d_mod(u64 m) const;
    void roots_odd_pk(u32 p, int e, std::vector<u64>& out, u64& mod);
};

} // namespace mqc
