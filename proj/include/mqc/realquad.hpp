#pragma once
#include <gmpxx.h>

#include "mqc/intmath.hpp"

namespace mqc {

// epsilon = (x + y*sqrt(d0)) / den, den in {1,2}; least unit > 1 of O_{Q(sqrt d0)}
struct FundamentalUnit {
    i64 d0 = 0;
    mpz_class x, y;
    int den = 1;
    int norm = 1;          // x^2 - d0*y^2 = norm * den^2 exactly
    double regulator = 0;  // log(epsilon), derived from the exact coefficients
    u64 period = 0;        // continued-fraction period length
};

// continued fraction of sqrt(d) resp. (1+sqrt(d))/2; exact arbitrary precision
FundamentalUnit fundamental_unit(i64 d);

// norm of the fundamental unit from period parity only (no big coefficients)
int unit_norm(i64 d);

// narrow class number of fundamental discriminant D > 0: rho-cycle count of
// reduced indefinite forms. feas_limit guards the O(sqrt D) enumeration.
u64 narrow_class_number(i64 D, i64 feas_limit);

// wide class number of Q(sqrt d), d > 1 squarefree
u64 class_number_real_exact(i64 d, i64 feas_limit);

// truncated L(1,chi) / regulator with a certified rounding margin; throws
// BoundExceeded when the certified truncation is infeasible
u64 class_number_real_analytic(i64 d);

int kronecker_i64(i64 D, u64 n);

} // namespace mqc
