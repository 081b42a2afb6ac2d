#pragma once

// Elementary integer arithmetic shared by the character and sieve code.

#include <cstdint>
#include <utility>
#include <vector>

namespace modchar::arith {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

/// Trial-division factorization as (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Primes p <= limit, simple Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

/// Integer floor(sqrt(n)).
std::uint64_t isqrt(std::uint64_t n);

/// Smallest g that is a primitive root mod p and mod p^2 (hence mod every p^e).
/// p must be an odd prime.
std::uint64_t primitive_root_prime_power(std::uint64_t p);

}  // namespace modchar::arith
