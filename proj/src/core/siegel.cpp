#include "siegel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "error.hpp"
#include "parallel.hpp"

namespace tanlab {

namespace {

using boost::multiprecision::component_type;

int effective_digits(int requested) {
  if (requested <= 0) throw Error(ErrorCode::kInvalidArgument, "precision must be positive");
  if (requested <= 50) return 50;
  if (requested <= 100) return 100;
  throw Error(ErrorCode::kInvalidArgument, "precision above 100 digits is not supported");
}

// Solves c_n (lambda^n - lambda) = (lambda / s) U_n where tan(s phi) = s phi + U and
// T = tan(s phi) obeys T' = s (1 + T^2) phi'. Only odd degrees are nonzero.
template <class C>
LinearizerSeries run_linearizer(const Complex100& lambda100, int N, int requested_digits,
                                int digits, double scale) {
  using R = typename component_type<C>::type;
  const C lambda(R(lambda100.real()), R(lambda100.imag()));
  const R s(scale);
  const R threshold = pow(R(10), -R(requested_digits) / 2);

  std::vector<C> c(N + 1, C(0)), t(N + 1, C(0)), sq(N + 1, C(0));
  c[1] = C(1);
  t[1] = C(s);

  R smallest = std::numeric_limits<R>::max();
  C lp = lambda;  // lambda^{n-1}
  for (int n = 2; n <= N; ++n) {
    const R den_mod = abs(lp - C(1));
    if (den_mod < smallest) smallest = den_mod;
    if (den_mod < threshold) {
      std::ostringstream msg;
      msg << "resonant multiplier: |lambda^" << (n - 1) << " - 1| = "
          << static_cast<double>(den_mod) << " at n = " << n;
      throw ResonanceError(n, static_cast<double>(den_mod), msg.str());
    }
    const C ln = lp * lambda;  // lambda^n

    // sq[n-1] = [T^2]_{n-1}; T is odd so only even degrees are nonzero.
    const int m = n - 1;
    if (m % 2 == 0) {
      C acc(0);
      for (int j = 1; 2 * j < m; j += 2) acc += t[j] * t[m - j];
      acc *= 2;
      if ((m / 2) % 2 == 1) acc += t[m / 2] * t[m / 2];
      sq[m] = acc;
    }

    if (n % 2 == 1) {
      C u(0);
      for (int k = 1; k <= n - 2; k += 2) u += c[k] * sq[n - k] * R(k);
      u *= s / R(n);
      c[n] = lambda * u / (s * (ln - lambda));
      t[n] = s * c[n] + u;
    }
    lp = ln;
  }

  LinearizerSeries out;
  out.lambda = lambda100;
  out.precision_digits = digits;
  out.map_scale = scale;
  out.smallest_denominator = N >= 2 ? static_cast<double>(smallest) : 1.0;
  out.coeffs.reserve(N + 1);
  for (const C& z : c) {
    out.coeffs.emplace_back(Real100(z.real()), Real100(z.imag()));
  }
  return out;
}

double relative_change(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(b - a) / scale;
}

double wrap_angle(double a) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

}  // namespace

std::vector<double> tan_series(int N) {
  const auto exact = tan_series_exact(N);
  std::vector<double> out(exact.size());
  std::transform(exact.begin(), exact.end(), out.begin(),
                 [](const Real100& v) { return static_cast<double>(v); });
  return out;
}

std::vector<Real100> tan_series_exact(int N) {
  if (N < 1) throw Error(ErrorCode::kInvalidArgument, "N must be >= 1");
  // (n+1) t_{n+1} = [1 + T^2]_n
  std::vector<Real100> t(N + 1, Real100(0));
  t[1] = 1;
  for (int n = 1; n < N; ++n) {
    Real100 acc = 0;
    for (int j = 1; j < n; ++j) acc += t[j] * t[n - j];
    t[n + 1] = acc / (n + 1);
  }
  return t;
}

LinearizerSeries linearizer(const Complex100& lambda, int N, int precision_digits,
                            double map_scale) {
  if (N < 1) throw Error(ErrorCode::kInvalidArgument, "N must be >= 1");
  if (!(map_scale > 0.0)) throw Error(ErrorCode::kInvalidArgument, "scale must be positive");
  const double modulus = static_cast<double>(abs(lambda));
  if (std::fabs(modulus - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "linearizer needs a unit-modulus multiplier");
  }
  const int digits = effective_digits(precision_digits);
  if (digits == 50) {
    return run_linearizer<Complex50>(lambda, N, precision_digits, digits, map_scale);
  }
  return run_linearizer<Complex100>(lambda, N, precision_digits, digits, map_scale);
}

LinearizerSeries linearizer(std::complex<double> lambda, int N, int precision_digits) {
  return linearizer(Complex100(lambda.real(), lambda.imag()), N, precision_digits);
}

LinearizerSeries linearizer(const RotationNumber& rn, int N, int precision_digits) {
  return linearizer(multiplier_exact(rn), N, precision_digits);
}

RadiusEstimate conformal_radius(const LinearizerSeries& series) {
  const int order = series.order();
  std::vector<std::pair<double, double>> points;
  int nonzero = 0;
  for (int n = 1; n <= order; ++n) {
    const auto& c = series.coeffs[n];
    if (c.real() == 0 && c.imag() == 0) continue;
    ++nonzero;
    if (2 * n > order) points.emplace_back(n, static_cast<double>(log(abs(c))));
  }
  if (nonzero < 25 || points.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "need at least 25 nonzero coefficients for a radius estimate");
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= points.size();
  my /= points.size();
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (const auto& [x, y] : points) {
    const double r = y - (intercept + slope * x);
    rss += r * r;
  }
  return {std::exp(-slope), std::sqrt(rss / points.size())};
}

SeriesEvaluator::SeriesEvaluator(const LinearizerSeries& series, double radius)
    : radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidArgument, "evaluation radius must be positive");
  }
  const Real100 r(radius);
  const Real100 r2 = r * r;
  Real100 rpow = r;
  for (int n = 1; n <= series.order(); n += 2) {
    const auto& c = series.coeffs[n];
    scaled_.emplace_back(static_cast<double>(c.real() * rpow), static_cast<double>(c.imag() * rpow));
    rpow *= r2;
  }
}

Complex SeriesEvaluator::phi(Complex w) const {
  const Complex u = w / radius_;
  const Complex u2 = u * u;
  Complex acc{0.0, 0.0};
  for (auto it = scaled_.rbegin(); it != scaled_.rend(); ++it) acc = acc * u2 + *it;
  return acc * u;
}

Complex SeriesEvaluator::phi_prime(Complex w) const {
  const Complex u = w / radius_;
  const Complex u2 = u * u;
  Complex acc{0.0, 0.0};
  for (std::size_t k = scaled_.size(); k-- > 0;) {
    acc = acc * u2 + static_cast<double>(2 * k + 1) * scaled_[k];
  }
  return acc / radius_;
}

double SeriesEvaluator::tail_ratio(Complex w) const {
  const double value = std::abs(phi(w));
  const double au = std::abs(w) / radius_;
  double worst = 0.0;
  const std::size_t count = scaled_.size();
  for (std::size_t k = count >= 4 ? count - 4 : 0; k < count; ++k) {
    worst = std::max(worst, std::abs(scaled_[k]) * std::pow(au, 2.0 * k + 1.0));
  }
  return value == 0.0 ? (worst == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                      : worst / value;
}

std::optional<Complex> SeriesEvaluator::invert(Complex z, Complex guess) const {
  Complex w = guess;
  for (int i = 0; i < 60; ++i) {
    const Complex d = phi_prime(w);
    if (d == Complex{0.0, 0.0}) return std::nullopt;
    const Complex step = (phi(w) - z) / d;
    w -= step;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w) >= radius_) {
      return std::nullopt;
    }
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) return w;
  }
  return std::nullopt;
}

Polyline trace_invariant_curve(const LinearizerSeries& series, double rho, int samples) {
  const RadiusEstimate est = conformal_radius(series);
  return trace_invariant_curve(SeriesEvaluator(series, est.estimate), rho, samples);
}

Polyline trace_invariant_curve(const SeriesEvaluator& eval, double rho, int samples) {
  if (samples < 64 || samples % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "samples must be even and >= 64");
  }
  if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorCode::kInvalidArgument, "rho must lie in (0,1)");
  if (rho > kReliableRho) {
    throw Error(ErrorCode::kSeriesDivergence, "rho beyond the reliable zone (0.995)");
  }
  const int half = samples / 2;
  std::vector<Complex> pts(samples);
  for (int k = 0; k < half; ++k) {
    const double t = 2.0 * std::numbers::pi * k / samples;
    const Complex w = rho * eval.radius() * Complex{std::cos(t), std::sin(t)};
    const double tail = eval.tail_ratio(w);
    if (!(tail <= kTraceTailTolerance)) {
      std::ostringstream msg;
      msg << "series tail test failed at rho = " << rho << " (last-term ratio " << tail << ")";
      throw Error(ErrorCode::kSeriesDivergence, msg.str());
    }
    pts[k] = eval.phi(w);
    pts[k + half] = -pts[k];  // phi is odd
  }
  return Polyline(std::move(pts), true);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kUnboundedLikely: return "UnboundedLikely";
    case Verdict::kBoundedLikely: return "BoundedLikely";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

double trace_extent(const Polyline& curve) {
  double best = 0.0;
  for (const Complex& z : curve.points()) best = std::max(best, std::abs(z));
  return best;
}

double trace_image_gap(const TangentMap& map, const Polyline& curve) {
  const auto [plus, minus] = map.asymptotic_values();
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& z : curve.points()) {
    const EvalResult fz = evaluate(map, z);
    if (fz.is_pole()) continue;
    best = std::min({best, std::abs(fz.value() - plus), std::abs(fz.value() - minus)});
  }
  return best;
}

SiegelEstimate unboundedness_indicators(const LinearizerSeries& series, std::span<const double> rhos,
                                        const SiegelConfig& config) {
  const std::complex<double> lambda = series.lambda_double();
  if (std::fabs(std::abs(lambda) - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "no Siegel disk at 0 unless |lambda| = 1");
  }
  if (rhos.empty()) throw Error(ErrorCode::kInvalidArgument, "need at least one rho");
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    if (!(rhos[i] > 0.0 && rhos[i] < 1.0) || (i > 0 && !(rhos[i] > rhos[i - 1]))) {
      throw Error(ErrorCode::kInvalidArgument, "rhos must increase within (0,1)");
    }
  }

  SiegelEstimate est;
  est.lambda = lambda;
  est.coeffs = series.order();
  est.precision_digits = series.precision_digits;
  est.smallest_denominator = series.smallest_denominator;
  const RadiusEstimate radius = conformal_radius(series);
  est.radius_estimate = radius.estimate;
  est.fit_quality = radius.fit_quality;

  const TangentMap map(lambda);
  const SeriesEvaluator eval(series, radius.estimate);
  std::vector<std::optional<InvariantTrace>> slots(rhos.size());
  std::vector<std::string> failures(rhos.size());
  parallel_for(rhos.size(), config.threads, [&](std::size_t i) {
    try {
      Polyline curve = trace_invariant_curve(eval, rhos[i], config.samples);
      const double extent = trace_extent(curve);
      const double gap = trace_image_gap(map, curve);
      slots[i] = InvariantTrace{rhos[i], std::move(curve), extent, gap};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSeriesDivergence) throw;
      failures[i] = e.what();
    }
  });

  std::ostringstream diag;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      diag << "SeriesDivergence: " << failures[i] << "; ";
      break;
    }
    est.traces.push_back(std::move(*slots[i]));
  }
  if (est.traces.empty()) {
    est.verdict = Verdict::kInconclusive;
    est.diagnostics = diag.str() + "no reliable trace";
    return est;
  }
  est.extent = est.traces.back().extent;
  est.image_gap = est.traces.back().image_gap;

  bool monotone = true;
  for (std::size_t i = 1; i < est.traces.size(); ++i) {
    if (est.traces[i].extent < est.traces[i - 1].extent ||
        est.traces[i].image_gap > est.traces[i - 1].image_gap) {
      monotone = false;
    }
  }
  const bool truncated = est.traces.size() < rhos.size();
  const std::size_t n = est.traces.size();
  const double gap_threshold = config.gap_threshold * std::abs(lambda);
  if (!monotone) {
    diag << "extent/image_gap not monotone in rho; ";
    est.verdict = Verdict::kInconclusive;
  } else if (truncated) {
    est.verdict = Verdict::kInconclusive;
  } else if (n < 3) {
    diag << "fewer than three rho values; ";
    est.verdict = Verdict::kInconclusive;
  } else {
    const auto& a = est.traces[n - 3];
    const auto& b = est.traces[n - 2];
    const auto& c = est.traces[n - 1];
    const bool growing = a.extent < b.extent && b.extent < c.extent && a.image_gap > b.image_gap &&
                         b.image_gap > c.image_gap;
    const double d_extent =
        std::max(relative_change(a.extent, b.extent), relative_change(b.extent, c.extent));
    const double d_gap =
        std::max(relative_change(a.image_gap, b.image_gap), relative_change(b.image_gap, c.image_gap));
    if (growing && c.extent >= config.extent_threshold && c.image_gap <= gap_threshold) {
      est.verdict = Verdict::kUnboundedLikely;
    } else if (d_extent < config.stability && d_gap < config.stability &&
               c.image_gap > gap_threshold) {
      est.verdict = Verdict::kBoundedLikely;
    } else {
      est.verdict = Verdict::kInconclusive;
    }
  }
  diag << "heuristic thresholds: extent >= " << config.extent_threshold
       << ", image_gap <= " << gap_threshold;
  est.diagnostics = diag.str();
  return est;
}

SiegelEstimate unboundedness_indicators(std::complex<double> lambda, std::span<const double> rhos,
                                        const SiegelConfig& config) {
  if (std::fabs(std::abs(lambda) - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "no Siegel disk at 0 unless |lambda| = 1");
  }
  return unboundedness_indicators(linearizer(lambda, config.coeffs, config.precision_digits), rhos,
                                  config);
}

SiegelEstimate unboundedness_indicators(const RotationNumber& rn, std::span<const double> rhos,
                                        const SiegelConfig& config) {
  return unboundedness_indicators(linearizer(rn, config.coeffs, config.precision_digits), rhos,
                                  config);
}

double orbit_rotation_number(const TangentMap& map, Complex z0, int iterations,
                             const SeriesEvaluator* coords, double escape_radius) {
  if (iterations < 1) throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 1");
  Complex z = z0;
  std::optional<Complex> w;
  if (coords) w = coords->invert(z0, z0);
  long double turn_z = 0.0L;
  long double turn_w = 0.0L;
  for (int i = 0; i < iterations; ++i) {
    const EvalResult next = evaluate(map, z);
    if (next.is_pole() || !(std::abs(next.value()) <= escape_radius)) {
      std::ostringstream msg;
      msg << "orbit left the disk of radius " << escape_radius << " at step " << i + 1;
      throw Error(ErrorCode::kOrbitEscaped, msg.str());
    }
    const Complex zn = next.value();
    turn_z += wrap_angle(std::arg(zn / z));
    if (w) {
      const std::optional<Complex> wn = coords->invert(zn, map.lambda() * *w);
      if (wn) {
        turn_w += wrap_angle(std::arg(*wn / *w));
      }
      w = wn;
    }
    z = zn;
  }
  const long double turn = w ? turn_w : turn_z;
  double theta = static_cast<double>(turn / (2.0L * std::numbers::pi_v<long double> * iterations));
  theta -= std::floor(theta);
  return theta;
}

BoundedScanReport bounded_disk_scan(std::span<const ScanCandidate> candidates,
                                    std::span<const double> rhos, const SiegelConfig& config) {
  BoundedScanReport report;
  report.rhos.assign(rhos.begin(), rhos.end());
  std::vector<CandidateOutcome> outcomes(candidates.size());
  SiegelConfig inner = config;
  inner.threads = 1;
  parallel_for(candidates.size(), config.threads, [&](std::size_t i) {
    CandidateOutcome& out = outcomes[i];
    out.label = candidates[i].label;
    out.theta = candidates[i].rotation.theta();
    try {
      SiegelEstimate est = unboundedness_indicators(candidates[i].rotation, rhos, inner);
      const auto& tr = est.traces;
      if (tr.size() >= 3) {
        const std::size_t n = tr.size();
        const double d_extent = std::max(relative_change(tr[n - 3].extent, tr[n - 2].extent),
                                         relative_change(tr[n - 2].extent, tr[n - 1].extent));
        const double d_gap = std::max(relative_change(tr[n - 3].image_gap, tr[n - 2].image_gap),
                                      relative_change(tr[n - 2].image_gap, tr[n - 1].image_gap));
        out.boundedness_score = std::exp(-(d_extent + d_gap) / config.stability);
      }
      out.estimate = std::move(est);
    } catch (const Error& e) {
      out.error = error_code_name(e.code());
      out.message = e.what();
    }
  });
  std::stable_sort(outcomes.begin(), outcomes.end(),
                   [](const CandidateOutcome& a, const CandidateOutcome& b) {
                     return a.boundedness_score > b.boundedness_score;
                   });
  report.ranked = std::move(outcomes);
  return report;
}

}  // namespace tanlab
