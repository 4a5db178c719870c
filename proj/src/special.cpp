#include "cvxsec/special.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "cvxsec/linalg.hpp"

namespace cvxsec {

double gamma_fn(double x) {
  if (!(x > 0)) throw DomainError("gamma_fn: argument must be positive");
  return boost::math::tgamma(x);
}

double beta_fn(double x, double y) {
  if (!(x > 0) || !(y > 0)) throw DomainError("beta_fn: arguments must be positive");
  return boost::math::beta(x, y);
}

double binom(double a, double b) {
  if (b < 0 || a < b) throw DomainError("binom: need 0 <= b <= a");
  if (a == std::floor(a) && b == std::floor(b) && a <= 1000)
    return boost::math::binomial_coefficient<double>(static_cast<unsigned>(a), static_cast<unsigned>(b));
  return std::exp(boost::math::lgamma(a + 1) - boost::math::lgamma(b + 1) - boost::math::lgamma(a - b + 1));
}

}  // namespace cvxsec
