#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multiprec.hpp"
#include "rotation.hpp"
#include "tangent_map.hpp"

namespace tanlab {

// Coefficients of the Schroeder conjugacy phi(lambda w) = f(phi(w)), phi(0) = 0, phi'(0) = 1.
struct LinearizerSeries {
  Complex100 lambda;
  // coeffs[n] is c_n; coeffs[0] = 0, coeffs[1] = 1, even entries exactly zero.
  std::vector<Complex100> coeffs;
  int precision_digits = 0;
  // min over n of |lambda^{n-1} - 1|
  double smallest_denominator = 0.0;
  // Linearizes z -> lambda tan(scale z) / scale; 1 for the tangent family itself.
  double map_scale = 1.0;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  std::complex<double> lambda_double() const { return to_double(lambda); }
};

std::vector<double> tan_series(int N);
std::vector<Real100> tan_series_exact(int N);

// precision_digits is rounded up to 50 or 100.
LinearizerSeries linearizer(std::complex<double> lambda, int N, int precision_digits);
LinearizerSeries linearizer(const RotationNumber& rn, int N, int precision_digits);
LinearizerSeries linearizer(const Complex100& lambda, int N, int precision_digits,
                            double map_scale = 1.0);

struct RadiusEstimate {
  double estimate;
  // RMS residual of the log|c_n| regression.
  double fit_quality;
};

RadiusEstimate conformal_radius(const LinearizerSeries& series);

// Double-precision evaluation of phi on |w| < radius from coefficients rescaled by radius.
class SeriesEvaluator {
 public:
  SeriesEvaluator(const LinearizerSeries& series, double radius);

  double radius() const { return radius_; }
  Complex phi(Complex w) const;
  Complex phi_prime(Complex w) const;
  // Largest of the last four nonzero terms at w, relative to |phi(w)|.
  double tail_ratio(Complex w) const;
  // Newton solve of phi(w) = z from `guess`; nullopt when it fails to converge.
  std::optional<Complex> invert(Complex z, Complex guess) const;

 private:
  double radius_;
  // scaled_[k] = c_{2k+1} * radius^{2k+1}
  std::vector<Complex> scaled_;
};

inline constexpr double kTraceTailTolerance = 1e-8;
inline constexpr double kReliableRho = 0.995;

// phi(rho * radius * e^{it}) at `samples` equally spaced t; closed, point-symmetric.
Polyline trace_invariant_curve(const LinearizerSeries& series, double rho, int samples);
Polyline trace_invariant_curve(const SeriesEvaluator& eval, double rho, int samples);

enum class Verdict { kUnboundedLikely, kBoundedLikely, kInconclusive };
const char* verdict_name(Verdict v);

struct SiegelConfig {
  int coeffs = 4000;
  int precision_digits = 50;
  int samples = 4096;
  // Heuristic thresholds.
  double extent_threshold = 3.0;
  double gap_threshold = 0.05;  // times |lambda|
  double stability = 0.02;
  int threads = 0;
};

struct InvariantTrace {
  double rho;
  Polyline curve;
  double extent;
  double image_gap;
};

struct SiegelEstimate {
  std::complex<double> lambda;
  double radius_estimate = 0.0;
  double fit_quality = 0.0;
  std::vector<InvariantTrace> traces;
  double extent = 0.0;
  double image_gap = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  std::string diagnostics;
  int coeffs = 0;
  int precision_digits = 0;
  double smallest_denominator = 0.0;
};

double trace_extent(const Polyline& curve);
double trace_image_gap(const TangentMap& map, const Polyline& curve);

SiegelEstimate unboundedness_indicators(const LinearizerSeries& series, std::span<const double> rhos,
                                        const SiegelConfig& config = {});
SiegelEstimate unboundedness_indicators(std::complex<double> lambda, std::span<const double> rhos,
                                        const SiegelConfig& config = {});
SiegelEstimate unboundedness_indicators(const RotationNumber& rn, std::span<const double> rhos,
                                        const SiegelConfig& config = {});

// Mean angular step of the orbit of z0 over 2*pi, in (0,1). Measured in the linearizing
// coordinate when `coords` is given, otherwise on z itself.
double orbit_rotation_number(const TangentMap& map, Complex z0, int iterations,
                             const SeriesEvaluator* coords, double escape_radius);

struct ScanCandidate {
  std::string label;
  RotationNumber rotation;
};

struct CandidateOutcome {
  std::string label;
  double theta;
  std::optional<SiegelEstimate> estimate;
  std::string error;  // error code name, empty on success
  std::string message;
  double boundedness_score = 0.0;
};

struct BoundedScanReport {
  // Ranked by boundedness score, highest first.
  std::vector<CandidateOutcome> ranked;
  std::vector<double> rhos;
};

BoundedScanReport bounded_disk_scan(std::span<const ScanCandidate> candidates,
                                    std::span<const double> rhos, const SiegelConfig& config = {});

}  // namespace tanlab
