#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "berezin/linalg.hpp"

namespace berezin {

enum class Ensemble { ComplexGaussian, RealGaussian, Nilpotent, PSD, Unitary };

std::string_view to_string(Ensemble e) noexcept;
/// Accepts the enumerator names case-insensitively; throws BadSpec otherwise.
Ensemble ensemble_from_string(std::string_view name);

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t fnv1a(std::string_view s) noexcept;

/// Seed of the stream for one (label, trial seed) pair:
/// splitmix64(fnv1a(label) ^ (seed * 0x9E3779B97F4A7C15)).
std::uint64_t stream_seed(std::uint64_t seed, std::string_view label) noexcept;

// mt19937_64 with hand-written uniform and normal transforms, so a stream
// gives the same numbers under every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller).
  double normal();
  /// Standard complex normal, E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 gen_;
  std::optional<double> spare_;
};

CVector random_vector(Rng& rng, Eigen::Index n, double scale = 1.0);
/// rows x cols matrix from the ensemble. Nilpotent, PSD and Unitary need a
/// square shape.
CMatrix random_matrix(Rng& rng, Ensemble e, Eigen::Index rows, Eigen::Index cols, double scale = 1.0);

}  // namespace berezin
