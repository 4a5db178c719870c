#include "cvxsec/rng.hpp"

#include <cmath>
#include <numbers>

namespace cvxsec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

CounterRng::result_type CounterRng::at(std::uint64_t index) const {
  return splitmix64(splitmix64(splitmix64(seed_) ^ stream_) ^ index);
}

double CounterRng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double CounterRng::uniform_open() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

double CounterRng::gaussian() {
  // Box-Muller; one draw per pair is discarded so every call consumes exactly two counters.
  const double u1 = uniform_open();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec CounterRng::gaussian_vector(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = gaussian();
  return v;
}

Vec CounterRng::unit_vector(int n) {
  for (;;) {
    Vec v = gaussian_vector(n);
    const double len = v.norm();
    if (len > 1e-12) return v / len;
  }
}

Vec CounterRng::in_unit_ball(int n) {
  Vec dir = unit_vector(n);
  return dir * std::pow(uniform(), 1.0 / n);
}

Mat random_orthogonal(int n, CounterRng& rng) {
  Mat g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = rng.gaussian_vector(n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace cvxsec
