#include "mqc/degree_bound.hpp"

#include "mqc/errors.hpp"

namespace mqc {

i64 min_exponent(int n) {
    if (n < 1) throw Error("degree parameter must be positive");
    if (n <= 5) return 0;
    switch (n) {
        case 6: return 7;
        case 7: return 37;
        case 8: return 99;
        default:
            if (n > 62) throw BoundExceeded("exponent floor exceeds 64-bit range");
            return (i64{1} << (n - 1)) - 34;
    }
}

int prime_radicand_count(const RadicandList& neg) {
    int count = 0;
    for (const auto& r : neg)
        if (r.primes.size() <= 1) ++count; // |r| = 1 or a single prime
    return count;
}

} // namespace mqc
