#pragma once
#include "mqc/radicand.hpp"

namespace mqc {

// least m compatible with class number 2^m in degree 2^n:
// 0 for n <= 5, then 7, 37, 99, and 2^(n-1) - 34 from n = 9 on
i64 min_exponent(int n);

// members of neg whose absolute value is 1 or prime; always <= n for the
// negative radicand set of an imaginary n-quadratic field
int prime_radicand_count(const RadicandList& neg);

} // namespace mqc
