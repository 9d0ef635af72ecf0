/*
   Copyright 2026 The qdiff authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef QDIFF_NUMBERS_HPP
#define QDIFF_NUMBERS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdiff {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when a prime cannot be used for a modular reduction; scans treat
/// this as skip-with-record, never as an abort.
class bad_prime : public std::runtime_error {
  public:
    explicit bad_prime(std::uint64_t p)
        : std::runtime_error("bad prime " + std::to_string(p)), p_(p) {}
    std::uint64_t prime() const noexcept { return p_; }

  private:
    std::uint64_t p_;
};

class parse_error : public std::runtime_error {
  public:
    parse_error(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

  private:
    std::size_t pos_;
};

inline Int numer(const Rat& r) { return r.get_num(); }
inline Int denom(const Rat& r) { return r.get_den(); }

bool is_prime(std::uint64_t n);

/// Primes in [2, bound], ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// p-adic valuation of a nonzero integer.
long valuation(const Int& n, const Int& p);

/// p-adic valuation of a nonzero rational.
long valuation(const Rat& r, const Int& p);

/// r^e for integer e (e < 0 requires r != 0).
Rat rat_pow(const Rat& r, long e);

bool is_integer(const Rat& r);

/// Exact integer k with r = q^k, if one exists.  q must not be 0 or +-1 (a
/// nonzero rational that is not a root of unity generates a free cyclic
/// group, so k is unique).  Decided through prime exponent vectors.
std::optional<long> q_power_test(const Rat& r, const Rat& q);

/// Exact exponent e/d in lowest terms with d <= dcap and r^d = q^e, if one
/// exists.  Sign consistency is part of the contract: sgn(r)^d must equal
/// sgn(q)^e, so e.g. r = -2 is not recognized as a power of q = 2.
std::optional<Rat> q_rational_power_test(const Rat& r, const Rat& q, long dcap);

}  // namespace qdiff

#endif
