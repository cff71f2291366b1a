#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

namespace touchauth {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace detail

/// Deterministic random stream with named forking.
///
/// Every randomized stage owns its own stream, derived from the single run
/// seed by a chain of forks, e.g. Rng(seed).fork("split").fork(game).fork(user).
/// A fork depends only on the parent's seed and the tag, never on how many
/// values the parent has produced, so any stage can be replayed in isolation.
///
/// The engine is std::mt19937_64 (its output sequence is pinned by the
/// standard); distributions are implemented here instead of <random> because
/// the standard leaves those implementation-defined and we need identical
/// draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed)
      : seed_(seed), engine_(detail::splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  Rng fork(std::string_view tag) const {
    return Rng(detail::splitmix64(seed_ ^ detail::fnv1a64(tag)));
  }

  Rng fork(std::uint64_t index) const {
    return Rng(detail::splitmix64(seed_ ^ detail::splitmix64(index ^ 0x51ed270b2f85a8full)));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in [0, n), unbiased via rejection.
  std::size_t uniform_index(std::size_t n) {
    assert(n > 0);
    const std::uint64_t m = static_cast<std::uint64_t>(n);
    const std::uint64_t min = (-m) % m;  // 2^64 mod n
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x < min);
    return static_cast<std::size_t>(x % m);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via the polar (Marsaglia) method; the spare is discarded
  /// so draw counts stay position-independent.
  double gaussian() {
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return u * std::sqrt(-2.0 * std::log(s) / s);
  }

  /// Exponential with the given mean.
  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

  /// Fisher-Yates, high index down.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

  /// First k entries of a random permutation of [0, n): a k-subset drawn
  /// without replacement, in draw order.
  std::vector<std::size_t> index_sample(std::size_t n, std::size_t k) {
    assert(k <= n);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(idx[i], idx[i + uniform_index(n - i)]);
    }
    idx.resize(k);
    return idx;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace touchauth
