#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/factorials.hpp>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "rotation.hpp"
#include "siegel.hpp"

using namespace tanlab;
using std::numbers::pi;

namespace {

// tan = sin / cos by power-series division.
std::vector<Real100> tan_by_division(int N) {
  std::vector<Real100> s(N + 1, 0), c(N + 1, 0), t(N + 1, 0);
  Real100 fact = 1;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) fact *= n;
    const int sign = (n / 2) % 2 == 0 ? 1 : -1;
    if (n % 2 == 1) s[n] = sign / fact;
    if (n % 2 == 0) c[n] = sign / fact;
  }
  for (int n = 0; n <= N; ++n) {
    Real100 acc = s[n];
    for (int k = 0; k < n; ++k) acc -= t[k] * c[n - k];
    t[n] = acc / c[0];
  }
  return t;
}

using Poly = std::vector<Complex100>;

Poly multiply(const Poly& a, const Poly& b, int N) {
  Poly out(N + 1, Complex100(0));
  for (int i = 0; i <= N; ++i) {
    if (a[i] == Complex100(0)) continue;
    for (int j = 0; i + j <= N; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Solves phi(lambda w) = lambda tan(phi(w)) degree by degree by composing truncated series.
std::vector<Complex100> composition_oracle(const Complex100& lambda, int N) {
  const std::vector<Real100> t = tan_by_division(N);
  Poly phi(N + 1, Complex100(0));
  phi[1] = 1;
  for (int n = 2; n <= N; ++n) {
    // degree-n coefficient of tan(phi) with c_n still zero
    Poly power = phi;
    Complex100 tn = 0;
    for (int k = 1; k <= n; ++k) {
      if (k > 1) power = multiply(power, phi, n);
      tn += Complex100(t[k]) * power[n];
    }
    // c_n lambda^n = lambda (c_n + tn)
    phi[n] = lambda * tn / (pow(lambda, n) - lambda);
  }
  return phi;
}

double abs_diff(const Complex100& a, const Complex100& b) {
  return static_cast<double>(abs(a - b));
}

}  // namespace

TEST_CASE("tan series") {
  const auto t = tan_series(25);
  const auto oracle = tan_by_division(25);
  CHECK(t[1] == 1.0);
  CHECK(t[3] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(t[5] == doctest::Approx(2.0 / 15).epsilon(1e-15));
  CHECK(t[7] == doctest::Approx(17.0 / 315).epsilon(1e-15));
  for (int n = 0; n <= 25; ++n) {
    if (n % 2 == 0) CHECK(t[n] == 0.0);
    CHECK(t[n] == doctest::Approx(static_cast<double>(oracle[n])).epsilon(1e-15));
  }
  const auto exact = tan_series_exact(60);
  const auto oracle60 = tan_by_division(60);
  for (int n = 0; n <= 60; ++n) {
    CHECK(abs(exact[n] - oracle60[n]) < Real100("1e-80"));
  }
}

TEST_CASE("linearizer against the composition oracle") {
  const RotationNumber g = named_rotation("golden", 40);
  const LinearizerSeries s = linearizer(g, 30, 50);
  const Complex100 lambda = multiplier_exact(g);
  const auto oracle = composition_oracle(lambda, 30);
  CHECK(s.coeffs[1] == Complex100(1));
  for (int n = 0; n <= 30; ++n) {
    CHECK(abs_diff(s.coeffs[n], oracle[n]) < 1e-20);
    if (n % 2 == 0) CHECK(s.coeffs[n] == Complex100(0));
  }
  const Complex100 c3 = Complex100(1) / (3 * (lambda * lambda - Complex100(1)));
  CHECK(abs_diff(s.coeffs[3], c3) < 1e-25);
}

TEST_CASE("linearizer at 100 digits agrees") {
  const RotationNumber g = named_rotation("sqrt2m1", 40);
  const LinearizerSeries s = linearizer(g, 25, 100);
  CHECK(s.precision_digits == 100);
  const auto oracle = composition_oracle(multiplier_exact(g), 25);
  for (int n = 1; n <= 25; ++n) CHECK(abs_diff(s.coeffs[n], oracle[n]) < 1e-60);
}

TEST_CASE("linearizer errors") {
  try {
    linearizer(continued_fraction(0.5, 5), 20, 50);
    FAIL("expected resonance");
  } catch (const ResonanceError& e) {
    CHECK(e.degree() == 3);
  }
  try {
    linearizer(continued_fraction(0.2, 5), 20, 50);  // read as 1/5
    FAIL("expected resonance");
  } catch (const ResonanceError& e) {
    CHECK(e.degree() == 6);
  }
  CHECK_THROWS_AS(linearizer(std::complex<double>(0.5, 0), 10, 50), Error);
  CHECK_THROWS_AS(linearizer(std::complex<double>(0, 1), 10, 200), Error);
  CHECK_THROWS_AS(linearizer(std::complex<double>(0, 1), 0, 50), Error);
}

TEST_CASE("Schroeder residual and rescaling") {
  const RotationNumber g = named_rotation("golden", 40);
  const LinearizerSeries s = linearizer(g, 200, 50);
  const RadiusEstimate r = conformal_radius(s);
  const SeriesEvaluator ev(s, r.estimate);
  const TangentMap f(s.lambda_double());
  double worst = 0.0;
  for (int j = 0; j < 256; ++j) {
    const Complex w = std::polar(0.5 * r.estimate, 2 * pi * j / 256);
    const Complex lhs = ev.phi(s.lambda_double() * w);
    const Complex rhs = evaluate(f, ev.phi(w)).value();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  CHECK(worst < 1e-10);

  const double scale = 1.7;
  const LinearizerSeries scaled = linearizer(multiplier_exact(g), 200, 50, scale);
  for (int n : {3, 11, 51, 199}) {
    const Complex100 expected = s.coeffs[n] * Complex100(pow(Real100(scale), n - 1));
    CHECK(static_cast<double>(abs(scaled.coeffs[n] - expected) / abs(expected)) < 1e-30);
  }
  CHECK(conformal_radius(scaled).estimate == doctest::Approx(r.estimate / scale).epsilon(1e-9));
}

TEST_CASE("conformal radius") {
  const RotationNumber g = named_rotation("golden", 60);
  const double r200 = conformal_radius(linearizer(g, 200, 50)).estimate;
  const double r400 = conformal_radius(linearizer(g, 400, 50)).estimate;
  CHECK(r200 > 0.0);
  CHECK(std::fabs(r200 - r400) / r400 < 0.05);

  // near-rational theta: the estimate collapses
  const double r_near = conformal_radius(linearizer(multiplier(8.0 / 13 + 1e-12), 400, 50)).estimate;
  CHECK(r_near < 0.6 * r400);

  try {
    conformal_radius(linearizer(g, 40, 50));
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInsufficientData);
  }
}

TEST_CASE("invariant curves") {
  const LinearizerSeries s = linearizer(named_rotation("golden", 60), 800, 50);
  const double radius = conformal_radius(s).estimate;
  const SeriesEvaluator ev(s, radius);

  const Polyline tiny = trace_invariant_curve(ev, 1e-4, 64);
  for (std::size_t i = 0; i < tiny.size(); ++i) {
    CHECK(std::abs(std::abs(tiny[i]) - 1e-4 * radius) < 1e-10 * radius);
  }

  const Polyline half = trace_invariant_curve(ev, 0.5, 8192);
  CHECK(half.closed());
  const std::size_t n = half.size();
  for (std::size_t i = 0; i < n / 2; ++i) CHECK(half[i + n / 2] == -half[i]);

  const TangentMap f(s.lambda_double());
  double diameter = 0.0;
  for (std::size_t i = 0; i < n / 2; ++i) diameter = std::max(diameter, 2 * std::abs(half[i]));
  double worst = 0.0;
  for (std::size_t i = 0; i < n; i += 16) {
    worst = std::max(worst, half.distance_to(evaluate(f, half[i]).value()));
  }
  CHECK(worst < 1e-6 * diameter);

  CHECK_THROWS_AS(trace_invariant_curve(ev, 0.999, 256), Error);
  CHECK_THROWS_AS(trace_invariant_curve(ev, 0.5, 63), Error);
  try {
    // 800 coefficients are not enough for the tail test this close to the boundary
    trace_invariant_curve(ev, 0.995, 256);
    FAIL("expected SeriesDivergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSeriesDivergence);
  }
}

TEST_CASE("unboundedness indicators on a short series") {
  SiegelConfig cfg;
  cfg.coeffs = 600;
  cfg.samples = 1024;
  const std::vector<double> rhos = {0.5, 0.6, 0.7, 0.8};
  const SiegelEstimate est = unboundedness_indicators(named_rotation("golden", 60), rhos, cfg);
  REQUIRE(est.traces.size() == 4);
  for (std::size_t i = 1; i < est.traces.size(); ++i) {
    CHECK(est.traces[i].extent > est.traces[i - 1].extent);
    CHECK(est.traces[i].image_gap < est.traces[i - 1].image_gap);
  }
  CHECK(est.extent == est.traces.back().extent);
  CHECK(est.verdict == Verdict::kInconclusive);
  CHECK(est.diagnostics.find("heuristic") != std::string::npos);

  // coefficients run out before the last radius: the usable prefix is kept
  const std::vector<double> far = {0.5, 0.6, 0.995};
  const SiegelEstimate cut = unboundedness_indicators(named_rotation("golden", 60), far, cfg);
  CHECK(cut.traces.size() == 2);
  CHECK(cut.verdict == Verdict::kInconclusive);

  CHECK_THROWS_AS(unboundedness_indicators(std::complex<double>(0.9, 0), rhos, cfg), Error);
  const std::vector<double> unsorted = {0.7, 0.5};
  CHECK_THROWS_AS(unboundedness_indicators(named_rotation("golden", 60), unsorted, cfg), Error);
}

TEST_CASE("orbit rotation number") {
  const RotationNumber g = named_rotation("golden", 60);
  const LinearizerSeries s = linearizer(g, 400, 50);
  const double radius = conformal_radius(s).estimate;
  const SeriesEvaluator ev(s, radius);
  const TangentMap f(s.lambda_double());
  const double extent = trace_extent(trace_invariant_curve(ev, 0.9, 512));
  for (double frac : {0.3, 0.6}) {
    const double theta = orbit_rotation_number(f, frac * radius, 10000, &ev, 2 * extent);
    CHECK(std::fabs(theta - g.theta()) < 1e-3);
  }
  const double plain = orbit_rotation_number(f, 0.05, 10000, nullptr, 2 * extent);
  CHECK(std::fabs(plain - g.theta()) < 1e-3);
  CHECK_THROWS_AS(orbit_rotation_number(f, 0.3, 0, &ev, 2 * extent), Error);
  try {
    orbit_rotation_number(TangentMap(2.0), 0.3, 100, nullptr, 1.0);
    FAIL("expected OrbitEscaped");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOrbitEscaped);
  }
}

TEST_CASE("bounded disk scan bookkeeping") {
  SiegelConfig cfg;
  cfg.coeffs = 400;
  cfg.samples = 512;
  const std::vector<double> rhos = {0.5, 0.6, 0.7};
  CHECK(bounded_disk_scan({}, rhos, cfg).ranked.empty());

  // [0; 1, 10^6, 1, 1, ...]: a huge quotient forces a tiny denominator
  const RotationNumber liouville = continued_fraction(1.0 / (1.0 + 1.0 / (1e6 + 0.6180339887)), 10);
  std::vector<ScanCandidate> candidates = {{"liouville-like", liouville},
                                           {"golden", named_rotation("golden", 60)}};
  const BoundedScanReport report = bounded_disk_scan(candidates, rhos, cfg);
  REQUIRE(report.ranked.size() == 2);
  bool saw_golden = false;
  for (const auto& c : report.ranked) {
    if (c.label == "golden") {
      saw_golden = true;
      CHECK(c.estimate.has_value());
      CHECK(c.error.empty());
    } else {
      CHECK((!c.error.empty() || c.estimate->verdict == Verdict::kInconclusive));
    }
    if (c.estimate) CHECK(c.estimate->verdict != Verdict::kBoundedLikely);
  }
  CHECK(saw_golden);
}
