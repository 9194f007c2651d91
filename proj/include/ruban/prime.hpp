#pragma once

#include <utility>

#include "ruban/numeric.hpp"

namespace ruban {

// Deterministic primality test.  Trial division by small primes, then
// Miller-Rabin with the witness set {2,...,37} which is exact for all
// n < 3.3e24 (far beyond anything this library is used for).
bool is_prime(const Int& n);

// A checked prime l >= 2, immutable after construction.
class Prime {
  public:
    explicit Prime(Int value) : value_(std::move(value)) {
        if (!is_prime(value_))
            throw std::domain_error(value_.get_str() + " is not prime");
    }
    explicit Prime(long value) : Prime(Int(value)) {}

    const Int& value() const { return value_; }
    bool is_two() const { return value_ == 2; }
    Int pow(unsigned long e) const { return int_pow(value_, e); }

    friend bool operator==(const Prime& a, const Prime& b) {
        return a.value_ == b.value_;
    }
    friend bool operator!=(const Prime& a, const Prime& b) {
        return !(a == b);
    }

  private:
    Int value_;
};

}  // namespace ruban
