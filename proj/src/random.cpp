#include "hoax/random.hpp"

#include <bit>
#include <numeric>
#include <utility>

namespace hoax {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t mask = std::bit_ceil(n) - 1;
  while (true) {
    const std::uint64_t x = next() & mask;
    if (x < n) return x;
  }
}

std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k,
                                                      Rng& rng) {
  std::vector<std::uint32_t> items(n);
  std::iota(items.begin(), items.end(), std::uint32_t{0});
  for (std::uint32_t i = 0; i < k && i + 1 < n; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(n - i));
    std::swap(items[i], items[j]);
  }
  items.resize(k);
  return items;
}

}  // namespace hoax
