#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace picky {

using Integer = mpz_class;
using Rational = mpq_class;

bool is_prime(std::uint64_t n);
/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
/// Largest power of p dividing n. Throws InputError when n == 0 or p is not prime.
std::uint64_t p_part(std::uint64_t n, std::uint64_t p);
/// True for 1, p, p^2, ...
bool is_power_of(std::uint64_t n, std::uint64_t p);
std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t mod);

}  // namespace picky
