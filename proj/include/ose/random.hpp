#pragma once

#include <cstdint>
#include <random>

namespace ose {

using Engine = std::mt19937_64;

//! Purpose tags separating seed streams that share a master seed.
enum class StreamTag : std::uint64_t
{
  Evaluation = 0,
  Calibration = 1,
  Check = 2
};

//! SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

//! Seed of replication `rep_index` in stream `tag` of `master_seed`. A pure
//! function of its arguments, so replications can run in any order.
constexpr std::uint64_t stream_seed(std::uint64_t master_seed,
                                    std::uint64_t rep_index,
                                    StreamTag tag = StreamTag::Evaluation)
{
  return mix64(mix64(master_seed ^ mix64(static_cast<std::uint64_t>(tag))) +
               rep_index);
}

inline Engine make_engine(std::uint64_t master_seed, std::uint64_t rep_index,
                          StreamTag tag = StreamTag::Evaluation)
{
  return Engine(stream_seed(master_seed, rep_index, tag));
}

//! Uniform draw in [0,1) built from the top 53 bits of one engine output.
inline double uniform01(Engine& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace ose
