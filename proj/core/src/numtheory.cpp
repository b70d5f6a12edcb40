#include "picky/numtheory.hpp"

#include <string>

#include "picky/errors.hpp"

namespace picky {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw InputError("p_part of 0 is undefined");
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not a prime");
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

bool is_power_of(std::uint64_t n, std::uint64_t p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto q : prime_divisors(n)) r = r / q * (q - 1);
  return r;
}

__extension__ using Wide = unsigned __int128;

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  Wide result = 1 % mod;
  Wide b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t mod) {
  // mod is prime everywhere this is used
  a %= mod;
  if (a == 0) throw InputError("zero has no inverse");
  return pow_mod(a, mod - 2, mod);
}

}  // namespace picky
