#include "ipr/sieve.hpp"

#include <cmath>
#include <cstring>

namespace ipr {

std::vector<std::uint32_t> primes_below(std::uint32_t bound) {
    std::vector<std::uint32_t> out;
    if (bound <= 2) return out;
    std::vector<bool> comp(bound, false);
    for (std::uint64_t i = 2; i < bound; ++i) {
        if (!comp[i]) {
            out.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j < bound; j += i) comp[j] = true;
        }
    }
    return out;
}

PrimeStream::PrimeStream() {
    auto first = primes_below(1u << 16);
    primes_.assign(first.begin(), first.end());
    sieved_to_ = 1u << 16;
}

std::uint64_t PrimeStream::next() {
    while (index_ >= primes_.size()) extend();
    return primes_[index_++];
}

void PrimeStream::extend() {
    // Segmented sieve over [sieved_to_, sieved_to_ + span) using the primes
    // already known (valid while sieved_to_ <= (last known prime)^2).
    std::uint64_t lo = sieved_to_;
    std::uint64_t span = 1u << 20;
    std::uint64_t hi = lo + span;
    std::vector<bool> comp(span, false);
    for (std::uint64_t p : primes_) {
        if (p * p >= hi) break;
        std::uint64_t start = ((lo + p - 1) / p) * p;
        if (start < p * p) start = p * p;
        for (std::uint64_t j = start; j < hi; j += p) comp[j - lo] = true;
    }
    for (std::uint64_t i = 0; i < span; ++i)
        if (!comp[i]) primes_.push_back(lo + i);
    sieved_to_ = hi;
}

}  // namespace ipr
