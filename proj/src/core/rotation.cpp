#include "rotation.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "error.hpp"

namespace tanlab {

namespace {

const Real100& rational_threshold() {
  static const Real100 kThreshold("1e-30");
  return kThreshold;
}

bool checked_step(std::int64_t a, std::int64_t prev, std::int64_t prev2, std::int64_t* out) {
  std::int64_t prod = 0;
  if (__builtin_mul_overflow(a, prev, &prod)) return false;
  return !__builtin_add_overflow(prod, prev2, out);
}

RotationNumber expand(const Real100& theta, int depth, std::optional<QuadraticForm> quadratic) {
  if (depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be >= 1");
  if (!(theta > 0 && theta < 1)) {
    throw Error(ErrorCode::kInvalidArgument, "rotation number must lie in (0,1)");
  }
  static const Real100 kMaxQuotient(std::numeric_limits<std::int64_t>::max());

  std::vector<std::int64_t> quotients;
  std::vector<Real100> orbit;
  quotients.reserve(depth);
  orbit.reserve(depth);
  bool rational = false;
  Real100 x = theta;
  for (int k = 0; k < depth; ++k) {
    const Real100 inv = 1 / x;
    Real100 a = floor(inv);
    if (1 - (inv - a) < rational_threshold()) a += 1;
    if (a >= kMaxQuotient) {
      rational = true;
      break;
    }
    orbit.push_back(x);
    quotients.push_back(static_cast<std::int64_t>(a));
    x = inv - a;
    if (abs(x) < rational_threshold()) {
      rational = true;
      break;
    }
  }
  return RotationNumber(theta, std::move(quotients), std::move(orbit), depth, rational,
                        quadratic);
}

}  // namespace

Real100 QuadraticForm::value() const {
  return (Real100(p) + Real100(q) * sqrt(Real100(d))) / Real100(r);
}

RotationNumber::RotationNumber(Real100 theta, std::vector<std::int64_t> quotients,
                               std::vector<Real100> orbit, int requested_depth, bool rational,
                               std::optional<QuadraticForm> quadratic)
    : theta_(std::move(theta)),
      quotients_(std::move(quotients)),
      orbit_(std::move(orbit)),
      requested_depth_(requested_depth),
      rational_(rational),
      quadratic_(quadratic) {}

RotationNumber continued_fraction(const Real100& x, int depth) {
  return expand(x, depth, std::nullopt);
}

RotationNumber continued_fraction(double x, int depth) {
  if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidArgument, "non-finite rotation number");
  // Read the number as the shortest decimal that round-trips, so 0.2 means 1/5.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return expand(Real100(std::string(buf, res.ptr)), depth, std::nullopt);
}

RotationNumber continued_fraction(const QuadraticForm& form, int depth) {
  if (form.r == 0 || form.d < 0) throw Error(ErrorCode::kInvalidArgument, "bad quadratic form");
  return expand(form.value(), depth, form);
}

std::optional<QuadraticForm> named_quadratic(std::string_view name) {
  if (name == "golden") return QuadraticForm{-1, 1, 5, 2};
  if (name == "sqrt2m1") return QuadraticForm{-1, 1, 2, 1};
  return std::nullopt;
}

RotationNumber named_rotation(std::string_view name, int depth) {
  if (auto form = named_quadratic(name)) return continued_fraction(*form, depth);
  if (name == "e-2" || name == "em2") {
    return continued_fraction(boost::math::constants::e<Real100>() - 2, depth);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown named rotation number: " + std::string(name));
}

std::vector<Convergent> convergents(const RotationNumber& rn) {
  if (rn.quotients().empty()) throw Error(ErrorCode::kInvalidArgument, "no partial quotients");
  std::vector<Convergent> out;
  out.reserve(rn.quotients().size());
  std::int64_t p2 = 1, p1 = 0;  // p_{-1}, p_0
  std::int64_t q2 = 0, q1 = 1;  // q_{-1}, q_0
  for (std::int64_t a : rn.quotients()) {
    std::int64_t p = 0, q = 0;
    if (!checked_step(a, p1, p2, &p) || !checked_step(a, q1, q2, &q)) break;
    out.push_back({p, q});
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
  }
  return out;
}

BoundedTypePrefix bounded_type_prefix(const RotationNumber& rn) {
  std::int64_t best = 0;
  for (std::int64_t a : rn.quotients()) best = std::max(best, a);
  return {best};
}

BrjunoPartial brjuno_partial(const RotationNumber& rn, int n) {
  if (rn.rational()) {
    throw Error(ErrorCode::kRationalInput, "expansion terminated; Brjuno sum undefined");
  }
  if (n < 1 || n > rn.depth()) {
    throw Error(ErrorCode::kInvalidArgument, "n must lie in [1, depth]");
  }
  Real100 sum = 0;
  Real100 beta = 1;  // beta_{-1}
  const auto orbit = rn.gauss_orbit();
  for (int k = 0; k < n; ++k) {
    sum += beta * log(1 / orbit[k]);
    beta *= orbit[k];
  }
  return {n, static_cast<double>(sum), static_cast<double>(beta)};
}

Complex100 multiplier_exact(const RotationNumber& rn) {
  const Real100 angle = 2 * boost::math::constants::pi<Real100>() * rn.theta_exact();
  return Complex100(cos(angle), sin(angle));
}

std::complex<double> multiplier(const RotationNumber& rn) {
  return to_double(multiplier_exact(rn));
}

std::complex<double> multiplier(double theta) {
  const double angle = 2.0 * std::numbers::pi * theta;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace tanlab
