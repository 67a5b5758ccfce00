#include "ipr/rng.hpp"

#include <stdexcept>

namespace ipr {

Natural SeededRng::below(const Natural& n) {
    if (n <= 0) throw std::invalid_argument("SeededRng::below: n must be >= 1");
    if (n == 1) return Natural(0);
    std::uint64_t bits = bit_length(n);
    std::uint64_t words = (bits + 63) / 64;
    std::uint64_t top_bits = bits - (words - 1) * 64;
    std::uint64_t top_mask =
        top_bits == 64 ? UINT64_MAX : ((std::uint64_t(1) << top_bits) - 1);
    // Build a uniform bits-wide candidate, reject until < n. Expected < 2 tries.
    for (;;) {
        Natural c = 0;
        for (std::uint64_t w = 0; w < words; ++w) {
            std::uint64_t word = next_u64();
            if (w == 0) word &= top_mask;
            c <<= 64;
            c += Natural(word);
        }
        if (c < n) return c;
    }
}

Natural SeededRng::in_range(const Natural& lo, const Natural& hi) {
    if (lo > hi) throw std::invalid_argument("SeededRng::in_range: lo > hi");
    return lo + below(hi - lo + 1);
}

std::uint64_t SeededRng::derive(std::uint64_t master, std::uint64_t counter) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace ipr
