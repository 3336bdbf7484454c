#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "multiprec.hpp"

namespace tanlab {

// theta = (p + q*sqrt(d)) / r with integer data.
struct QuadraticForm {
  std::int64_t p;
  std::int64_t q;
  std::int64_t d;
  std::int64_t r;

  Real100 value() const;
};

// A rotation number in (0,1) with its partial quotients a_1..a_n.
class RotationNumber {
 public:
  RotationNumber(Real100 theta, std::vector<std::int64_t> quotients, std::vector<Real100> orbit,
                 int requested_depth, bool rational, std::optional<QuadraticForm> quadratic);

  double theta() const { return static_cast<double>(theta_); }
  const Real100& theta_exact() const { return theta_; }
  std::span<const std::int64_t> quotients() const { return quotients_; }
  // Gauss-map orbit theta_0 = theta, theta_k = {1/theta_{k-1}}; one entry per quotient.
  std::span<const Real100> gauss_orbit() const { return orbit_; }
  int requested_depth() const { return requested_depth_; }
  int depth() const { return static_cast<int>(quotients_.size()); }
  // The expansion terminated before the requested depth.
  bool rational() const { return rational_; }
  const std::optional<QuadraticForm>& exact_quadratic() const { return quadratic_; }

 private:
  Real100 theta_;
  std::vector<std::int64_t> quotients_;
  std::vector<Real100> orbit_;
  int requested_depth_;
  bool rational_;
  std::optional<QuadraticForm> quadratic_;
};

struct Convergent {
  std::int64_t p;
  std::int64_t q;
};

struct BoundedTypePrefix {
  std::int64_t max_quotient;
  // Prefix certificate only: says nothing about quotients past the computed depth.
  bool is_bounded_by(std::int64_t bound) const { return max_quotient <= bound; }
};

struct BrjunoPartial {
  int n;
  double value;
  // beta_{n-1} = theta_0 * ... * theta_{n-1}
  double beta_tail;
};

// Gauss-map expansion, run at 100 significant digits.
RotationNumber continued_fraction(const Real100& x, int depth);
RotationNumber continued_fraction(double x, int depth);
RotationNumber continued_fraction(const QuadraticForm& form, int depth);
// "golden", "sqrt2m1" (exact quadratics) and "e-2" (Euler's number minus two).
RotationNumber named_rotation(std::string_view name, int depth);
std::optional<QuadraticForm> named_quadratic(std::string_view name);

// Stops before 64-bit overflow, so very deep expansions yield fewer convergents.
std::vector<Convergent> convergents(const RotationNumber& rn);
BoundedTypePrefix bounded_type_prefix(const RotationNumber& rn);
BrjunoPartial brjuno_partial(const RotationNumber& rn, int n);

std::complex<double> multiplier(const RotationNumber& rn);
std::complex<double> multiplier(double theta);
Complex100 multiplier_exact(const RotationNumber& rn);

}  // namespace tanlab
