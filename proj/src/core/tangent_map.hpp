#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tanlab {

using Complex = std::complex<double>;

// Points within this relative distance of pi/2 + k*pi evaluate to a pole.
inline constexpr double kPoleTolerance = 1e-12;
// Curves handed to lift_curve must stay this far (relative to |lambda|) from +-i*lambda.
inline constexpr double kLiftClearance = 1e-3;
// Consecutive lifted points must stay closer than this to remain on one sheet.
inline constexpr double kLiftMaxStep = 0.78539816339744831;  // pi/4

// A point of the Riemann sphere.
struct ExtendedComplex {
  Complex value{0.0, 0.0};
  bool infinite = false;

  static ExtendedComplex finite(Complex z) { return {z, false}; }
  static ExtendedComplex infinity() { return {Complex{}, true}; }
};

class EvalResult {
 public:
  static EvalResult finite(Complex z) { return EvalResult(z); }
  static EvalResult pole() { return EvalResult(); }

  bool is_pole() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  // Throws std::bad_optional_access on a pole.
  Complex value() const { return value_.value(); }

 private:
  EvalResult() = default;
  explicit EvalResult(Complex z) : value_(z) {}

  std::optional<Complex> value_;
};

// f(z) = lambda * tan(z), lambda != 0.
class TangentMap {
 public:
  explicit TangentMap(Complex lambda);

  Complex lambda() const { return lambda_; }
  // Derivative at the fixed point 0.
  Complex multiplier() const { return lambda_; }
  // (i*lambda, -i*lambda); both are omitted.
  std::pair<Complex, Complex> asymptotic_values() const;

 private:
  Complex lambda_;
};

// z -> (a z + b) / (c z + d)
struct MoebiusMap {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex c{0.0, 0.0};
  Complex d{1.0, 0.0};

  static MoebiusMap identity() { return {}; }

  Complex determinant() const { return a * d - b * c; }
  bool is_degenerate() const;

  ExtendedComplex operator()(ExtendedComplex z) const;
  // Finite input; returns infinity at the pole -d/c.
  ExtendedComplex operator()(Complex z) const { return (*this)(ExtendedComplex::finite(z)); }

  // (this o other)(z) = this(other(z))
  MoebiusMap compose(const MoebiusMap& other) const;
  MoebiusMap inverse() const;
};

// z -> alpha z + beta
struct LinearMap {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  static LinearMap identity() { return {}; }
  Complex operator()(Complex z) const { return alpha * z + beta; }
};

class Polyline {
 public:
  Polyline() = default;
  // Drops consecutive duplicates. A single remaining point is a constant curve.
  explicit Polyline(std::vector<Complex> points, bool closed = false);

  std::span<const Complex> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool closed() const { return closed_; }
  const Complex& operator[](std::size_t i) const { return points_[i]; }
  const Complex& front() const { return points_.front(); }
  const Complex& back() const { return points_.back(); }
  double max_segment_length() const { return max_segment_; }

  std::size_t segment_count() const;
  // Distance from p to the nearest segment (or the single point).
  double distance_to(Complex p) const;

 private:
  std::vector<Complex> points_;
  bool closed_ = false;
  double max_segment_ = 0.0;
};

// S_R = { |Im z| < R }
struct StripSpec {
  double half_width;
};

enum class HalfPlaneSide { kUpper, kLower };

struct Circle {
  Complex center;
  double radius;
};

// Odd to the last bit: tan(-z) == -tan(z). Stable for any imaginary part.
Complex tan_complex(Complex z);
// Distance from z to the nearest pole pi/2 + k*pi of tan.
double distance_to_pole(Complex z);
bool is_near_pole(Complex z);

EvalResult evaluate(const TangentMap& map, Complex z);
EvalResult derivative(const TangentMap& map, Complex z);
std::pair<Complex, Complex> asymptotic_values(const TangentMap& map);

// f = M1 o exp o M2 with M1(z) = -lambda*i (z-1)/(z+1), M2(z) = 2iz.
std::pair<MoebiusMap, LinearMap> decompose(const TangentMap& map);

// arctan(w/lambda) + k*pi on the principal branch. Throws kOmittedValue at +-i*lambda.
Complex inverse_branch(const TangentMap& map, Complex w, long k);

// Continuous lift of `curve` through f starting at `base_preimage`.
Polyline lift_curve(const TangentMap& map, const Polyline& curve, Complex base_preimage);

// Image of the horizontal line Im z = +-R.
Circle line_image_circle(const TangentMap& map, double R, HalfPlaneSide side);

// Minimal R with f({Im z >= R}) inside the closed disk D(i*lambda, r).
StripSpec halfplane_radius_for_disk(const TangentMap& map, double r);

// (M(0), M(inf)): the two singular values of M o exp o A.
std::pair<ExtendedComplex, ExtendedComplex> normal_form_singular_values(const MoebiusMap& m,
                                                                       const LinearMap& a);

}  // namespace tanlab
