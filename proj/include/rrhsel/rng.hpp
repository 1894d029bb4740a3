#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace rrhsel {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// 64-bit FNV-1a, used to fold experiment identifiers into stream keys.
constexpr std::uint64_t fnv1a(std::string_view s) noexcept
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/**
 * Counter-based generator: the n-th output is mix64(key + n * gamma).
 *
 * Satisfies UniformRandomBitGenerator, so it plugs into the <random>
 * distributions. Construction is free, which lets every link or
 * sub-experiment own a private stream addressed by its key.
 */
class CounterEngine {
public:
  using result_type = std::uint64_t;

  explicit CounterEngine(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix64(key_ + kGamma * ++counter_); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_open() noexcept { return 1.0 - uniform(); }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Tags separating the independent variate families of one trial.
enum class Substream : std::uint64_t {
  rrh_points = 1,
  user_points = 2,
  fading = 3,
  shadowing_desired = 4,
  shadowing_interferer = 5,
  selection = 6,
  protocol = 7,
};

/**
 * Reproducible random stream addressed by (master_seed, experiment_id,
 * trial_index). Identical triples give bit-identical variates on every
 * platform; trials can therefore be evaluated in any order.
 */
class RngStream {
public:
  RngStream(std::uint64_t master_seed, std::string_view experiment_id, std::uint64_t trial_index);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  const std::string& experiment_id() const noexcept { return experiment_id_; }
  std::uint64_t trial_index() const noexcept { return trial_index_; }
  std::uint64_t key() const noexcept { return key_; }

  CounterEngine engine(Substream tag) const noexcept;
  /// Stream addressed by a tag and up to two indices, e.g. an (rrh, user) link.
  CounterEngine engine(Substream tag, std::uint64_t a, std::uint64_t b = 0) const noexcept;

private:
  std::uint64_t master_seed_;
  std::string experiment_id_;
  std::uint64_t trial_index_;
  std::uint64_t key_;
};

}  // namespace rrhsel
