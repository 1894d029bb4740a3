#include "rrhsel/rng.hpp"

namespace rrhsel {

RngStream::RngStream(std::uint64_t master_seed, std::string_view experiment_id,
                     std::uint64_t trial_index)
    : master_seed_(master_seed),
      experiment_id_(experiment_id),
      trial_index_(trial_index),
      key_(mix64(mix64(mix64(master_seed) ^ fnv1a(experiment_id)) + trial_index))
{
}

CounterEngine RngStream::engine(Substream tag) const noexcept
{
  return CounterEngine(mix64(key_ ^ mix64(static_cast<std::uint64_t>(tag))));
}

CounterEngine RngStream::engine(Substream tag, std::uint64_t a, std::uint64_t b) const noexcept
{
  // Nested mixing keeps (a, b) and (b, a) apart.
  std::uint64_t k = mix64(key_ ^ mix64(static_cast<std::uint64_t>(tag)));
  k = mix64(k + a);
  k = mix64(k ^ (b * 0xd6e8feb86659fd93ULL + 1));
  return CounterEngine(k);
}

}  // namespace rrhsel
