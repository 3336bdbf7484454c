#include "tangent_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace tanlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// Nearest preimage of w to `near`, among arctan(w/lambda) + k*pi.
Complex nearest_preimage(const TangentMap& map, Complex w, Complex near) {
  const Complex principal = std::atan(w / map.lambda());
  const double k = std::nearbyint((near - principal).real() / kPi);
  return principal + k * kPi;
}

// Lifts the segment [p, q] given the lift z_p of p. Returns the lift of q.
Complex lift_segment(const TangentMap& map, Complex p, Complex q, Complex z_p, int depth) {
  constexpr int kMaxDepth = 48;
  const Complex z_q = nearest_preimage(map, q, z_p);
  if (std::abs(z_q - z_p) < kLiftMaxStep) {
    const Complex mid = 0.5 * (p + q);
    const Complex z_mid = nearest_preimage(map, mid, z_p);
    const Complex z_q_via_mid = nearest_preimage(map, q, z_mid);
    if (std::abs(z_q_via_mid - z_q) < 1e-9 * (1.0 + std::abs(z_q))) return z_q;
  }
  if (depth >= kMaxDepth) {
    std::ostringstream msg;
    msg << "lift refinement exhausted near w = " << q;
    throw Error(ErrorCode::kLiftDivergence, msg.str());
  }
  const Complex mid = 0.5 * (p + q);
  const Complex z_mid = lift_segment(map, p, mid, z_p, depth + 1);
  return lift_segment(map, mid, q, z_mid, depth + 1);
}

}  // namespace

TangentMap::TangentMap(Complex lambda) : lambda_(lambda) {
  if (lambda == Complex{0.0, 0.0} || !std::isfinite(lambda.real()) ||
      !std::isfinite(lambda.imag())) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be nonzero");
  }
}

std::pair<Complex, Complex> TangentMap::asymptotic_values() const {
  return {kI * lambda_, -kI * lambda_};
}

bool MoebiusMap::is_degenerate() const { return determinant() == Complex{0.0, 0.0}; }

ExtendedComplex MoebiusMap::operator()(ExtendedComplex z) const {
  if (z.infinite) {
    if (c == Complex{0.0, 0.0}) return ExtendedComplex::infinity();
    return ExtendedComplex::finite(a / c);
  }
  const Complex den = c * z.value + d;
  if (den == Complex{0.0, 0.0}) return ExtendedComplex::infinity();
  return ExtendedComplex::finite((a * z.value + b) / den);
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

MoebiusMap MoebiusMap::inverse() const {
  if (is_degenerate()) throw Error(ErrorCode::kDegenerateMoebius, "ad - bc = 0");
  return {d, -b, -c, a};
}

Polyline::Polyline(std::vector<Complex> points, bool closed) : closed_(closed) {
  points_.reserve(points.size());
  for (const Complex& p : points) {
    if (points_.empty() || points_.back() != p) points_.push_back(p);
  }
  if (closed_ && points_.size() > 1 && points_.front() == points_.back()) points_.pop_back();
  for (std::size_t i = 0; i < segment_count(); ++i) {
    const Complex& a = points_[i];
    const Complex& b = points_[(i + 1) % points_.size()];
    max_segment_ = std::max(max_segment_, std::abs(b - a));
  }
}

std::size_t Polyline::segment_count() const {
  if (points_.size() < 2) return 0;
  return closed_ ? points_.size() : points_.size() - 1;
}

double Polyline::distance_to(Complex p) const {
  if (points_.empty()) return std::numeric_limits<double>::infinity();
  if (points_.size() == 1) return std::abs(p - points_.front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < segment_count(); ++i) {
    best = std::min(best,
                    point_segment_distance(p, points_[i], points_[(i + 1) % points_.size()]));
  }
  return best;
}

Complex tan_complex(Complex z) {
  // tan(x+iy) = (2e sin 2x + i sgn(y)(1 - e^2)) / ((1-e)^2 + 4e cos^2 x), e = exp(-2|y|)
  const double x = z.real();
  const double y = z.imag();
  const double ay = std::fabs(y);
  const double e = std::exp(-2.0 * ay);
  const double one_minus_e = -std::expm1(-2.0 * ay);
  const double one_minus_e2 = -std::expm1(-4.0 * ay);
  const double cx = std::cos(x);
  const double den = one_minus_e * one_minus_e + 4.0 * e * cx * cx;
  const double re = 2.0 * e * std::sin(2.0 * x) / den;
  const double im = std::copysign(one_minus_e2, y) / den;
  return {re, im};
}

double distance_to_pole(Complex z) {
  const double k = std::nearbyint((z.real() - kPi / 2) / kPi);
  return std::abs(z - Complex{kPi / 2 + k * kPi, 0.0});
}

bool is_near_pole(Complex z) {
  return distance_to_pole(z) < kPoleTolerance * std::max(1.0, std::fabs(z.real()));
}

EvalResult evaluate(const TangentMap& map, Complex z) {
  if (is_near_pole(z)) return EvalResult::pole();
  return EvalResult::finite(map.lambda() * tan_complex(z));
}

EvalResult derivative(const TangentMap& map, Complex z) {
  if (is_near_pole(z)) return EvalResult::pole();
  // sec^2 z = 4q/(1+q)^2 with q = exp(2iz) (or exp(-2iz) below the axis), |q| <= 1.
  const Complex q = z.imag() >= 0.0 ? std::exp(2.0 * kI * z) : std::exp(-2.0 * kI * z);
  const Complex one_plus_q = 1.0 + q;
  return EvalResult::finite(map.lambda() * (4.0 * q / (one_plus_q * one_plus_q)));
}

std::pair<Complex, Complex> asymptotic_values(const TangentMap& map) {
  return map.asymptotic_values();
}

std::pair<MoebiusMap, LinearMap> decompose(const TangentMap& map) {
  const Complex li = map.lambda() * kI;
  MoebiusMap m1{-li, li, Complex{1.0, 0.0}, Complex{1.0, 0.0}};
  LinearMap m2{Complex{0.0, 2.0}, Complex{0.0, 0.0}};
  return {m1, m2};
}

Complex inverse_branch(const TangentMap& map, Complex w, long k) {
  const auto [plus, minus] = map.asymptotic_values();
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(map.lambda());
  if (std::abs(w - plus) <= tol || std::abs(w - minus) <= tol) {
    throw Error(ErrorCode::kOmittedValue, "asymptotic values +-i*lambda have no preimage");
  }
  return std::atan(w / map.lambda()) + static_cast<double>(k) * kPi;
}

Polyline lift_curve(const TangentMap& map, const Polyline& curve, Complex base_preimage) {
  if (curve.empty()) throw Error(ErrorCode::kInvalidArgument, "empty curve");

  const auto [plus, minus] = map.asymptotic_values();
  const double clearance = kLiftClearance * std::abs(map.lambda());
  const double nearest = std::min(curve.distance_to(plus), curve.distance_to(minus));
  if (nearest < clearance) {
    std::ostringstream msg;
    msg << "curve passes within " << nearest << " of an omitted value (clearance " << clearance
        << ")";
    throw ClearanceError(nearest, msg.str());
  }

  const EvalResult at_base = evaluate(map, base_preimage);
  if (at_base.is_pole() ||
      std::abs(at_base.value() - curve.front()) > 1e-8 * (1.0 + std::abs(curve.front()))) {
    throw Error(ErrorCode::kInvalidArgument, "base_preimage does not map to the curve start");
  }

  std::vector<Complex> lifted;
  lifted.reserve(curve.size() + 1);
  lifted.push_back(base_preimage);
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    lifted.push_back(lift_segment(map, curve[i], curve[i + 1], lifted.back(), 0));
  }
  if (curve.closed() && curve.size() > 1) {
    // A lifted loop may end on a translate of its start, so the result stays open.
    lifted.push_back(lift_segment(map, curve.back(), curve.front(), lifted.back(), 0));
  }
  return Polyline(std::move(lifted), false);
}

Circle line_image_circle(const TangentMap& map, double R, HalfPlaneSide side) {
  if (!(R > 0.0)) throw Error(ErrorCode::kInvalidArgument, "R must be positive");
  const double sign = side == HalfPlaneSide::kUpper ? 1.0 : -1.0;
  const double two_r = 2.0 * R;
  return {sign * kI * map.lambda() / std::tanh(two_r), std::abs(map.lambda()) / std::sinh(two_r)};
}

StripSpec halfplane_radius_for_disk(const TangentMap& map, double r) {
  const double modulus = std::abs(map.lambda());
  if (!(r > 0.0) || r >= modulus) {
    throw Error(ErrorCode::kInvalidRadius, "disk radius must satisfy 0 < r < |lambda|");
  }
  const Complex target = kI * map.lambda();
  auto contained = [&](double R) {
    const Circle c = line_image_circle(map, R, HalfPlaneSide::kUpper);
    return std::abs(c.center - target) + c.radius <= r;
  };
  constexpr double kUpperBound = 50.0;
  if (!contained(kUpperBound)) {
    throw Error(ErrorCode::kInvalidRadius, "disk radius too small for R <= 50");
  }
  double lo = 0.0;
  double hi = kUpperBound;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (contained(mid) ? hi : lo) = mid;
  }
  return {hi};
}

std::pair<ExtendedComplex, ExtendedComplex> normal_form_singular_values(const MoebiusMap& m,
                                                                       const LinearMap& a) {
  if (m.is_degenerate()) throw Error(ErrorCode::kDegenerateMoebius, "ad - bc = 0");
  if (a.alpha == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::kInvalidArgument, "linear part must have nonzero slope");
  }
  // exp^{-1} is singular only over 0 and infinity, and A is a bijection.
  return {m(ExtendedComplex::finite(Complex{0.0, 0.0})), m(ExtendedComplex::infinity())};
}

}  // namespace tanlab
