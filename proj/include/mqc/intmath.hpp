#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace mqc {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

// ---------- elementary ----------
u64 isqrt_u64(u64 n);                       // floor(sqrt(n)), exact
bool is_square_u64(u64 n, u64* root = nullptr);
i64 mul_checked(i64 a, i64 b);              // throws BoundExceeded on i64 overflow

u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 a, u64 e, u64 m);
int jacobi_u64(u64 a, u64 n);               // n odd > 0

// ---------- modular square roots ----------
// sqrt mod odd prime p; nullopt if non-residue. a reduced mod p.
std::optional<u64> sqrt_mod_prime(u64 a, u64 p);
// all solutions of x^2 = a (mod 2^k), k >= 1, each in [0, 2^k)
std::vector<u64> sqrt_mod_2k(u64 a, int k);
// all solutions of x^2 = a (mod p^k), p odd prime
std::vector<u64> sqrt_mod_pk(u64 a, u64 p, int k);

// ---------- sieves ----------
// smallest-prime-factor table for [0, n]; entry 0/1 unused
std::vector<u32> spf_table(u32 n);
std::vector<u32> primes_up_to(u32 n);
// squarefree flags for [0, n]
std::vector<bool> squarefree_table(i64 n);

// factor n (> 0) into distinct primes with multiplicity via an spf table that
// covers it; falls back to trial division beyond the table
std::vector<std::pair<u64, int>> factorize(u64 n, const std::vector<u32>& spf);

// ---------- rational helpers ----------
// if q is the square of a rational, returns the nonnegative root
std::optional<mpq_class> mpq_sqrt_exact(const mpq_class& q);
bool mpz_is_square(const mpz_class& z);

// shared lazily-grown spf table (single-threaded growth; read-shared after)
const std::vector<u32>& shared_spf(u32 need);

} // namespace mqc
