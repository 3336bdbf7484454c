// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "error.hpp"
#include "plane_scan.hpp"
#include "report.hpp"
#include "rotation.hpp"
#include "siegel.hpp"
#include "tangent_map.hpp"

using namespace tanlab;
using std::numbers::pi;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

Outcome decomposition_identity() {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int l = 0; l < 10; ++l) {
    const TangentMap m(std::polar(std::exp(4 * u(rng) - 2), 2 * pi * u(rng)));
    const auto [m1, m2] = decompose(m);
    int taken = 0;
    while (taken < 10000) {
      const Complex z(20 * u(rng) - 10, 4 * u(rng) - 2);
      if (distance_to_pole(z) < 1e-3) continue;
      ++taken;
      const Complex direct = evaluate(m, z).value();
      worst = std::max(worst, std::abs(m1(std::exp(m2(z))).value - direct) / (1 + std::abs(direct)));
    }
  }
  std::ostringstream d;
  d << "max relative deviation " << worst;
  return {worst < 1e-12, d.str()};
}

Outcome strip_containment() {
  const TangentMap m(1.0);
  const double r = 0.5;
  const double R = halfplane_radius_for_disk(m, r).half_width;
  // closed form for lambda = 1: the image circle of Im z = R touches the disk boundary
  // when coth(2R) + 1/sinh(2R) - 1 = r
  double lo = 0.0, hi = 50.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (1.0 / std::tanh(2 * mid) + 1.0 / std::sinh(2 * mid) - 1.0 <= r ? hi : lo) = mid;
  }
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    const double depth = i < 100 ? 0.0 : 10 * u(rng) * u(rng);
    const Complex z(2 * pi * u(rng) - pi, sign * (R + depth));
    if (std::abs(evaluate(m, z).value() - Complex(0, sign)) > r * (1 + 1e-12)) ++violations;
  }
  std::ostringstream d;
  d << "R " << R << ", reference " << hi << ", violations " << violations;
  return {violations == 0 && std::fabs(R - hi) < 1e-6, d.str()};
}

Outcome inverse_branch_translates() {
  const TangentMap m(1.0);
  const Polyline seg({1.0, 2.0});
  const Polyline base = lift_curve(m, seg, pi / 4);
  double worst = 0.0;
  for (long k = -2; k <= 2; ++k) {
    const Polyline lift = lift_curve(m, seg, pi / 4 + static_cast<double>(k) * pi);
    for (std::size_t i = 0; i < lift.size(); ++i) {
      worst = std::max(worst, std::abs(lift[i] - base[i] - static_cast<double>(k) * pi));
    }
  }
  int omitted = 0;
  for (Complex w : {Complex(0, 1), Complex(0, -1)}) {
    try {
      inverse_branch(m, w, 0);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kOmittedValue) ++omitted;
    }
  }
  std::ostringstream d;
  d << "sup translate deviation " << worst << ", omitted-value errors " << omitted << "/2";
  return {worst < 1e-9 && omitted == 2, d.str()};
}

Outcome schroeder_correctness() {
  const RotationNumber g = named_rotation("golden", 60);
  const LinearizerSeries s = linearizer(g, 200, 50);
  const double radius = conformal_radius(s).estimate;
  const SeriesEvaluator ev(s, radius);
  const TangentMap f(s.lambda_double());
  double residual = 0.0;
  for (int j = 0; j < 256; ++j) {
    const Complex w = std::polar(0.5 * radius, 2 * pi * j / 256);
    residual = std::max(residual, std::abs(ev.phi(s.lambda_double() * w) - evaluate(f, ev.phi(w)).value()));
  }

  // independent oracle: compose truncated series degree by degree
  const Complex100 lambda = multiplier_exact(g);
  const int N = 30;
  std::vector<Real100> t(N + 1, 0), sn(N + 1, 0), cs(N + 1, 0);
  Real100 fact = 1;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) fact *= n;
    const int sign = (n / 2) % 2 == 0 ? 1 : -1;
    (n % 2 == 1 ? sn : cs)[n] = sign / fact;
  }
  for (int n = 0; n <= N; ++n) {
    Real100 acc = sn[n];
    for (int k = 0; k < n; ++k) acc -= t[k] * cs[n - k];
    t[n] = acc;
  }
  std::vector<Complex100> phi(N + 1, Complex100(0));
  phi[1] = 1;
  for (int n = 2; n <= N; ++n) {
    std::vector<Complex100> power = phi;
    Complex100 tn = Complex100(t[1]) * power[n];
    for (int k = 2; k <= n; ++k) {
      std::vector<Complex100> next(n + 1, Complex100(0));
      for (int i = 0; i <= n; ++i) {
        for (int j = 0; i + j <= n; ++j) next[i + j] += power[i] * phi[j];
      }
      power = next;
      tn += Complex100(t[k]) * power[n];
    }
    phi[n] = lambda * tn / (pow(lambda, n) - lambda);
  }
  double oracle_err = 0.0;
  for (int n = 1; n <= N; ++n) {
    oracle_err = std::max(oracle_err, static_cast<double>(abs(s.coeffs[n] - phi[n])));
  }
  bool evens_zero = true;
  for (int n = 0; n <= s.order(); n += 2) evens_zero = evens_zero && s.coeffs[n] == Complex100(0);
  const double c3_err = static_cast<double>(
      abs(s.coeffs[3] - Complex100(1) / (3 * (lambda * lambda - Complex100(1)))));

  std::ostringstream d;
  d << "residual " << residual << ", oracle " << oracle_err << ", c3 " << c3_err
    << ", even coefficients zero " << (evens_zero ? "yes" : "no");
  return {residual < 1e-10 && oracle_err < 1e-20 && c3_err < 1e-25 && evens_zero, d.str()};
}

Outcome unboundedness_forward_evidence() {
  const std::vector<double> rhos = {0.9, 0.95, 0.99, 0.995};
  bool ok = true;
  std::ostringstream d;
  const char* sep = "";
  for (const char* name : {"golden", "sqrt2m1"}) {
    d << sep;
    sep = "; ";
    const SiegelEstimate est = unboundedness_indicators(named_rotation(name, 60), rhos, SiegelConfig{});
    if (est.traces.size() != rhos.size()) {
      d << name << ": only " << est.traces.size() << " traces";
      ok = false;
      continue;
    }
    int violations = 0;
    for (std::size_t i = 1; i < est.traces.size(); ++i) {
      if (!(est.traces[i].extent > est.traces[i - 1].extent)) ++violations;
      if (!(est.traces[i].image_gap < est.traces[i - 1].image_gap)) ++violations;
    }
    const double ext_ratio = est.traces.back().extent / est.traces.front().extent;
    const double gap_ratio = est.traces.back().image_gap / est.traces.front().image_gap;
    ok = ok && ext_ratio >= 2.0 && gap_ratio <= 1.0 / 3 && violations == 0 &&
         est.verdict == Verdict::kUnboundedLikely;
    d << name << ": extent x" << ext_ratio << ", gap x" << gap_ratio << ", monotonicity violations "
      << violations << ", " << verdict_name(est.verdict);
  }
  return {ok, d.str()};
}

Outcome rotation_number_recovery() {
  const RotationNumber g = named_rotation("golden", 60);
  const LinearizerSeries s = linearizer(g, 400, 50);
  const double radius = conformal_radius(s).estimate;
  const SeriesEvaluator ev(s, radius);
  const double extent = trace_extent(trace_invariant_curve(ev, 0.9, 1024));
  const double theta = orbit_rotation_number(TangentMap(s.lambda_double()), 0.3 * radius, 10000, &ev, 2 * extent);
  std::ostringstream d;
  d.precision(10);
  d << "theta " << theta << " vs " << g.theta();
  return {std::fabs(theta - g.theta()) < 1e-3, d.str()};
}

Outcome continued_fraction_suite() {
  bool ok = true;
  const RotationNumber g = named_rotation("golden", 30);
  ok = ok && g.depth() == 30;
  for (auto a : g.quotients()) ok = ok && a == 1;
  const RotationNumber s = named_rotation("sqrt2m1", 20);
  ok = ok && s.depth() == 20;
  for (auto a : s.quotients()) ok = ok && a == 2;
  int checked = 0;
  for (const RotationNumber* rn : {&g, &s}) {
    for (const Convergent& c : convergents(*rn)) {
      const Real100 err = abs(rn->theta_exact() - Real100(c.p) / Real100(c.q));
      ok = ok && err < 1 / (Real100(c.q) * Real100(c.q));
      ++checked;
    }
    double prev = 0.0;
    for (int n = 1; n <= rn->depth(); ++n) {
      const double v = brjuno_partial(*rn, n).value;
      ok = ok && v - prev > 0.0;
      prev = v;
    }
  }
  std::ostringstream d;
  d << checked << " convergent inequalities, quotients and Brjuno increments checked";
  return {ok, d.str()};
}

Outcome scan_determinism_and_symmetry() {
  const TangentMap m(0.5);
  const ScanConfig cfg = ScanConfig::defaults(m);
  const Rect rect{{-1.2, -1.2}, {1.2, 1.2}};
  const Palette p = Palette::standard();
  const ClassificationGrid a = scan_dynamical(m, rect, 256, 256, cfg, 1);
  const ClassificationGrid b = scan_dynamical(m, rect, 256, 256, cfg, 1);
  const ClassificationGrid c = scan_dynamical(m, rect, 256, 256, cfg, 4);
  const std::string pa = render_ppm(a, p) + render_legend_json(a, p);
  const bool identical = pa == render_ppm(b, p) + render_legend_json(b, p) &&
                         pa == render_ppm(c, p) + render_legend_json(c, p);
  int asymmetric = 0;
  std::size_t attracted = 0;
  for (int iy = 0; iy < 256; ++iy) {
    for (int ix = 0; ix < 256; ++ix) {
      const CellClass& cell = a.at(ix, iy);
      if (!cell.same_class(a.at(255 - ix, 255 - iy))) ++asymmetric;
      if (cell.tag == CellTag::kAttractedToCycle && cell.period == 1 && std::abs(cell.representative) < 1e-9) {
        ++attracted;
      }
    }
  }
  const double share = static_cast<double>(attracted) / (256.0 * 256.0);
  std::ostringstream d;
  d << "byte-identical " << (identical ? "yes" : "no") << ", asymmetric cells " << asymmetric
    << ", AttractedToCycle(1,0) share " << share;
  return {identical && asymmetric == 0 && share >= 0.99, d.str()};
}

Outcome bounded_scan_honesty() {
  std::vector<ScanCandidate> candidates = {{"golden", named_rotation("golden", 60)},
                                           {"sqrt2m1", named_rotation("sqrt2m1", 60)},
                                           {"e-2", named_rotation("e-2", 60)}};
  for (int depth : {4, 6, 8, 10}) {
    const auto conv = convergents(named_rotation("e-2", depth));
    const Convergent c = conv.back();
    candidates.push_back({"e-2@" + std::to_string(depth),
                          continued_fraction(QuadraticForm{c.p, 0, 0, c.q}, 60)});
  }
  const std::vector<double> rhos = {0.9, 0.95, 0.99, 0.995};
  const SiegelConfig cfg;
  const BoundedScanReport report = bounded_disk_scan(candidates, rhos, cfg);
  int bounded = 0, with_estimate = 0, unlabeled = 0;
  for (const auto& c : report.ranked) {
    if (c.estimate) {
      ++with_estimate;
      if (c.estimate->verdict == Verdict::kBoundedLikely) ++bounded;
    }
  }
  const auto doc = nlohmann::json::parse(bounded_scan_json(report, cfg));
  if (doc["heuristic"] != true) ++unlabeled;
  for (const auto& c : doc["candidates"]) {
    if (c.contains("estimate") && c["estimate"]["heuristic"] != true) ++unlabeled;
  }
  std::ostringstream d;
  d << report.ranked.size() << " candidates, " << with_estimate << " estimated, BoundedLikely " << bounded
    << ", unlabeled outputs " << unlabeled;
  return {report.ranked.size() == candidates.size() && bounded == 0 && unlabeled == 0, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"decomposition identity", 1.0, decomposition_identity},
      {"strip containment", 1.0, strip_containment},
      {"inverse-branch translates", 1.0, inverse_branch_translates},
      {"Schroeder correctness", 60.0, schroeder_correctness},
      {"unboundedness forward evidence", 300.0, unboundedness_forward_evidence},
      {"rotation-number recovery", 1.0, rotation_number_recovery},
      {"continued-fraction suite", 1.0, continued_fraction_suite},
      {"scan determinism and symmetry", 30.0, scan_determinism_and_symmetry},
      {"bounded-disk scan honesty", 600.0, bounded_scan_honesty},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < criteria[i].budget_seconds;
    const bool pass = out.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s %zu %s (%.3f s of %.0f s) %s%s\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                criteria[i].budget_seconds, out.detail.c_str(), in_time ? "" : " [over time budget]");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
