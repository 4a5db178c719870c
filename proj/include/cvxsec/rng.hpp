#pragma once

#include <cstdint>
#include <limits>

#include "cvxsec/linalg.hpp"

namespace cvxsec {

/// Counter-based generator: draw i of stream (seed, stream) is a pure
/// function of (seed, stream, i), so results never depend on call order
/// across threads. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return at(counter_++); }
  /// Value at an explicit counter, independent of the running state.
  result_type at(std::uint64_t index) const;

  double uniform();        // [0, 1)
  double uniform_open();   // (0, 1)
  double gaussian();
  Vec gaussian_vector(int n);
  Vec unit_vector(int n);
  /// Uniform point in the unit ball of R^n.
  Vec in_unit_ball(int n);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

/// Orthogonal matrix drawn from the QR factorisation of a Gaussian matrix.
Mat random_orthogonal(int n, CounterRng& rng);

}  // namespace cvxsec
