#pragma once

#include <cstdint>
#include <vector>

namespace ipr {

// All primes strictly below bound, ascending.
std::vector<std::uint32_t> primes_below(std::uint32_t bound);

// Ascending prime stream starting at 2, extended by segmented sieving.
// Used for trial division where the upper bound is large or unknown.
class PrimeStream {
  public:
    PrimeStream();
    // Next prime (2, 3, 5, ...). Grows internal tables as needed.
    std::uint64_t next();
    // Restart from 2 without discarding sieved tables.
    void rewind() { index_ = 0; }

  private:
    void extend();
    std::vector<std::uint64_t> primes_;
    std::size_t index_ = 0;
    std::uint64_t sieved_to_ = 0;
};

}  // namespace ipr
