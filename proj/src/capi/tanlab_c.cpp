#include "tanlab/tanlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "plane_scan.hpp"
#include "report.hpp"
#include "rotation.hpp"
#include "siegel.hpp"
#include "tangent_map.hpp"

struct tl_map {
  tanlab::TangentMap map;
};

struct tl_polyline {
  tanlab::Polyline line;
};

struct tl_rotation {
  tanlab::RotationNumber rn;
};

struct tl_series {
  tanlab::LinearizerSeries series;
};

struct tl_estimate {
  tanlab::SiegelEstimate estimate;
  tanlab::SiegelConfig config;
};

struct tl_grid {
  tanlab::ClassificationGrid grid;
};

namespace {

using tanlab::Complex;
using tanlab::ErrorCode;

thread_local std::string g_last_error;
thread_local double g_last_detail = 0.0;

tl_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return TL_ERR_INVALID_ARGUMENT;
    case ErrorCode::kOmittedValue: return TL_ERR_OMITTED_VALUE;
    case ErrorCode::kClearanceViolation: return TL_ERR_CLEARANCE_VIOLATION;
    case ErrorCode::kLiftDivergence: return TL_ERR_LIFT_DIVERGENCE;
    case ErrorCode::kInvalidRadius: return TL_ERR_INVALID_RADIUS;
    case ErrorCode::kDegenerateMoebius: return TL_ERR_DEGENERATE_MOEBIUS;
    case ErrorCode::kRationalInput: return TL_ERR_RATIONAL_INPUT;
    case ErrorCode::kResonantMultiplier: return TL_ERR_RESONANT_MULTIPLIER;
    case ErrorCode::kInsufficientData: return TL_ERR_INSUFFICIENT_DATA;
    case ErrorCode::kSeriesDivergence: return TL_ERR_SERIES_DIVERGENCE;
    case ErrorCode::kOrbitEscaped: return TL_ERR_ORBIT_ESCAPED;
    case ErrorCode::kIoFailure: return TL_ERR_IO_FAILURE;
  }
  return TL_ERR_INTERNAL;
}

tl_status fail(tl_status status, const std::string& message, double detail = 0.0) {
  g_last_error = message;
  g_last_detail = detail;
  return status;
}

template <class F>
tl_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    g_last_detail = 0.0;
    return TL_OK;
  } catch (const tanlab::ResonanceError& e) {
    return fail(TL_ERR_RESONANT_MULTIPLIER, e.what(), e.degree());
  } catch (const tanlab::ClearanceError& e) {
    return fail(TL_ERR_CLEARANCE_VIOLATION, e.what(), e.nearest_approach());
  } catch (const tanlab::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TL_ERR_INTERNAL, e.what());
  }
}

Complex in(tl_complex z) { return {z.re, z.im}; }
tl_complex out(Complex z) { return {z.real(), z.imag()}; }

void require(bool condition, const char* what) {
  if (!condition) throw tanlab::Error(ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

tanlab::ScanConfig from_c(const tl_scan_config& c) {
  tanlab::ScanConfig s;
  s.max_iter = c.max_iter;
  s.escape_im = c.escape_im;
  s.cycle_tol = c.cycle_tol;
  s.cycle_max_period = c.cycle_max_period;
  return s;
}

tl_scan_config to_c(const tanlab::ScanConfig& s) {
  return {s.max_iter, s.escape_im, s.cycle_tol, s.cycle_max_period};
}

tanlab::SiegelConfig from_c(const tl_siegel_config* c) {
  tanlab::SiegelConfig s;
  if (!c) return s;
  s.coeffs = c->coeffs;
  s.precision_digits = c->precision_digits;
  s.samples = c->samples;
  s.extent_threshold = c->extent_threshold;
  s.gap_threshold = c->gap_threshold;
  s.stability = c->stability;
  s.threads = c->threads;
  return s;
}

tl_cell to_c(const tanlab::CellClass& c) {
  return {static_cast<tl_cell_tag>(c.tag), c.period, out(c.representative), c.iterations_used};
}

tanlab::ScanConfig scan_config_or_default(const tanlab::TangentMap& map, const tl_scan_config* c) {
  return c ? from_c(*c) : tanlab::ScanConfig::defaults(map);
}

tl_status run_estimate(const tl_siegel_config* config, tl_estimate** result,
                       const auto& compute) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded([&] {
    const tanlab::SiegelConfig cfg = from_c(config);
    *result = new tl_estimate{compute(cfg), cfg};
  });
}

}  // namespace

extern "C" {

const char* tl_version(void) { return TANLAB_VERSION; }

const char* tl_status_name(tl_status status) {
  switch (status) {
    case TL_OK: return "Ok";
    case TL_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case TL_ERR_OMITTED_VALUE: return "OmittedValue";
    case TL_ERR_CLEARANCE_VIOLATION: return "ClearanceViolation";
    case TL_ERR_LIFT_DIVERGENCE: return "LiftDivergence";
    case TL_ERR_INVALID_RADIUS: return "InvalidRadius";
    case TL_ERR_DEGENERATE_MOEBIUS: return "DegenerateMoebius";
    case TL_ERR_RATIONAL_INPUT: return "RationalInput";
    case TL_ERR_RESONANT_MULTIPLIER: return "ResonantMultiplier";
    case TL_ERR_INSUFFICIENT_DATA: return "InsufficientData";
    case TL_ERR_SERIES_DIVERGENCE: return "SeriesDivergence";
    case TL_ERR_ORBIT_ESCAPED: return "OrbitEscaped";
    case TL_ERR_IO_FAILURE: return "IoFailure";
    case TL_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* tl_last_error(void) { return g_last_error.c_str(); }
double tl_last_error_detail(void) { return g_last_detail; }
void tl_string_free(char* s) { std::free(s); }
void tl_buffer_free(unsigned char* data) { std::free(data); }

/* ---- tangent map ---- */

tl_status tl_map_create(tl_complex lambda, tl_map** result) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded([&] { *result = new tl_map{tanlab::TangentMap(in(lambda))}; });
}

void tl_map_destroy(tl_map* map) { delete map; }

tl_complex tl_map_lambda(const tl_map* map) { return map ? out(map->map.lambda()) : tl_complex{0, 0}; }

tl_status tl_evaluate(const tl_map* map, tl_complex z, tl_complex* value, int* is_pole) {
  return guarded([&] {
    require(map && value && is_pole, "null argument");
    const tanlab::EvalResult r = tanlab::evaluate(map->map, in(z));
    *is_pole = r.is_pole() ? 1 : 0;
    if (r.is_finite()) *value = out(r.value());
  });
}

tl_status tl_derivative(const tl_map* map, tl_complex z, tl_complex* value, int* is_pole) {
  return guarded([&] {
    require(map && value && is_pole, "null argument");
    const tanlab::EvalResult r = tanlab::derivative(map->map, in(z));
    *is_pole = r.is_pole() ? 1 : 0;
    if (r.is_finite()) *value = out(r.value());
  });
}

tl_status tl_asymptotic_values(const tl_map* map, tl_complex result[2]) {
  return guarded([&] {
    require(map && result, "null argument");
    const auto [plus, minus] = tanlab::asymptotic_values(map->map);
    result[0] = out(plus);
    result[1] = out(minus);
  });
}

tl_status tl_decompose(const tl_map* map, tl_moebius* m, tl_linear* a) {
  return guarded([&] {
    require(map && m && a, "null argument");
    const auto [mm, aa] = tanlab::decompose(map->map);
    *m = {out(mm.a), out(mm.b), out(mm.c), out(mm.d)};
    *a = {out(aa.alpha), out(aa.beta)};
  });
}

tl_status tl_inverse_branch(const tl_map* map, tl_complex w, long k, tl_complex* result) {
  return guarded([&] {
    require(map && result, "null argument");
    *result = out(tanlab::inverse_branch(map->map, in(w), k));
  });
}

tl_status tl_line_image_circle(const tl_map* map, double R, int upper, tl_complex* center,
                               double* radius) {
  return guarded([&] {
    require(map && center && radius, "null argument");
    const tanlab::Circle c = tanlab::line_image_circle(
        map->map, R, upper ? tanlab::HalfPlaneSide::kUpper : tanlab::HalfPlaneSide::kLower);
    *center = out(c.center);
    *radius = c.radius;
  });
}

tl_status tl_halfplane_radius_for_disk(const tl_map* map, double r, double* R) {
  return guarded([&] {
    require(map && R, "null argument");
    *R = tanlab::halfplane_radius_for_disk(map->map, r).half_width;
  });
}

tl_status tl_normal_form_singular_values(tl_moebius m, tl_linear a, tl_ext_complex result[2]) {
  return guarded([&] {
    require(result != nullptr, "null argument");
    const auto [zero, inf] = tanlab::normal_form_singular_values(
        tanlab::MoebiusMap{in(m.a), in(m.b), in(m.c), in(m.d)},
        tanlab::LinearMap{in(a.alpha), in(a.beta)});
    result[0] = {out(zero.value), zero.infinite ? 1 : 0};
    result[1] = {out(inf.value), inf.infinite ? 1 : 0};
  });
}

/* ---- polylines ---- */

tl_status tl_polyline_create(const tl_complex* points, size_t count, int closed,
                             tl_polyline** result) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded([&] {
    require(points && count > 0, "polyline needs at least one point");
    std::vector<Complex> pts(count);
    for (size_t i = 0; i < count; ++i) pts[i] = in(points[i]);
    *result = new tl_polyline{tanlab::Polyline(std::move(pts), closed != 0)};
  });
}

tl_status tl_polyline_read_csv(const char* path, tl_polyline** result) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded([&] {
    require(path != nullptr, "null path");
    *result = new tl_polyline{tanlab::read_polyline_csv(path)};
  });
}

void tl_polyline_destroy(tl_polyline* line) { delete line; }
size_t tl_polyline_size(const tl_polyline* line) { return line ? line->line.size() : 0; }

tl_complex tl_polyline_point(const tl_polyline* line, size_t i) {
  if (!line || i >= line->line.size()) return {0, 0};
  return out(line->line[i]);
}

int tl_polyline_closed(const tl_polyline* line) { return line && line->line.closed() ? 1 : 0; }

tl_status tl_polyline_to_csv(const tl_polyline* line, char** result) {
  return guarded([&] {
    require(line && result, "null argument");
    *result = dup_string(tanlab::polyline_csv(line->line));
  });
}

tl_status tl_lift_curve(const tl_map* map, const tl_polyline* curve, tl_complex base,
                        tl_polyline** result) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded([&] {
    require(map && curve, "null argument");
    *result = new tl_polyline{tanlab::lift_curve(map->map, curve->line, in(base))};
  });
}

/* ---- rotation numbers ---- */

tl_status tl_rotation_from_real(double x, int depth, tl_rotation** result) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded([&] { *result = new tl_rotation{tanlab::continued_fraction(x, depth)}; });
}

tl_status tl_rotation_from_named(const char* name, int depth, tl_rotation** result) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded([&] {
    require(name != nullptr, "null name");
    *result = new tl_rotation{tanlab::named_rotation(name, depth)};
  });
}

tl_status tl_rotation_from_quadratic(int64_t p, int64_t q, int64_t d, int64_t r, int depth,
                                     tl_rotation** result) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded([&] {
    *result = new tl_rotation{tanlab::continued_fraction(tanlab::QuadraticForm{p, q, d, r}, depth)};
  });
}

void tl_rotation_destroy(tl_rotation* rn) { delete rn; }
double tl_rotation_theta(const tl_rotation* rn) { return rn ? rn->rn.theta() : 0.0; }
int tl_rotation_is_rational(const tl_rotation* rn) { return rn && rn->rn.rational() ? 1 : 0; }
size_t tl_rotation_depth(const tl_rotation* rn) { return rn ? rn->rn.quotients().size() : 0; }

int64_t tl_rotation_quotient(const tl_rotation* rn, size_t i) {
  if (!rn || i >= rn->rn.quotients().size()) return 0;
  return rn->rn.quotients()[i];
}

int64_t tl_rotation_max_quotient(const tl_rotation* rn) {
  return rn ? tanlab::bounded_type_prefix(rn->rn).max_quotient : 0;
}

tl_status tl_rotation_convergents(const tl_rotation* rn, int64_t* p, int64_t* q, size_t capacity,
                                  size_t* count) {
  return guarded([&] {
    require(rn && count, "null argument");
    const auto conv = tanlab::convergents(rn->rn);
    *count = conv.size();
    for (size_t i = 0; i < conv.size() && i < capacity; ++i) {
      if (p) p[i] = conv[i].p;
      if (q) q[i] = conv[i].q;
    }
  });
}

tl_status tl_rotation_brjuno(const tl_rotation* rn, int n, double* value, double* beta_tail) {
  return guarded([&] {
    require(rn && value, "null argument");
    const auto b = tanlab::brjuno_partial(rn->rn, n);
    *value = b.value;
    if (beta_tail) *beta_tail = b.beta_tail;
  });
}

tl_complex tl_rotation_multiplier(const tl_rotation* rn) {
  return rn ? out(tanlab::multiplier(rn->rn)) : tl_complex{0, 0};
}

tl_status tl_rotation_to_json(const tl_rotation* rn, char** result) {
  return guarded([&] {
    require(rn && result, "null argument");
    *result = dup_string(tanlab::rotation_json(rn->rn));
  });
}

/* ---- linearization ---- */

tl_status tl_tan_series(int N, double* result) {
  return guarded([&] {
    require(result != nullptr, "null output");
    const auto t = tanlab::tan_series(N);
    std::copy(t.begin(), t.end(), result);
  });
}

tl_status tl_linearizer_create(tl_complex lambda, int N, int precision_digits, tl_series** result) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded(
      [&] { *result = new tl_series{tanlab::linearizer(in(lambda), N, precision_digits)}; });
}

tl_status tl_linearizer_from_rotation(const tl_rotation* rn, int N, int precision_digits,
                                      tl_series** result) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded([&] {
    require(rn != nullptr, "null rotation");
    *result = new tl_series{tanlab::linearizer(rn->rn, N, precision_digits)};
  });
}

void tl_series_destroy(tl_series* s) { delete s; }
int tl_series_order(const tl_series* s) { return s ? s->series.order() : 0; }
int tl_series_precision_digits(const tl_series* s) { return s ? s->series.precision_digits : 0; }

tl_complex tl_series_coeff(const tl_series* s, int n) {
  if (!s || n < 0 || n > s->series.order()) return {0, 0};
  return out(tanlab::to_double(s->series.coeffs[n]));
}

double tl_series_smallest_denominator(const tl_series* s) {
  return s ? s->series.smallest_denominator : 0.0;
}

tl_status tl_conformal_radius(const tl_series* s, double* estimate, double* fit_quality) {
  return guarded([&] {
    require(s && estimate, "null argument");
    const auto r = tanlab::conformal_radius(s->series);
    *estimate = r.estimate;
    if (fit_quality) *fit_quality = r.fit_quality;
  });
}

tl_status tl_trace_invariant_curve(const tl_series* s, double rho, int samples, tl_polyline** result) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded([&] {
    require(s != nullptr, "null series");
    *result = new tl_polyline{tanlab::trace_invariant_curve(s->series, rho, samples)};
  });
}

void tl_siegel_config_default(tl_siegel_config* config) {
  if (!config) return;
  const tanlab::SiegelConfig d;
  *config = {d.coeffs,          d.precision_digits, d.samples, d.extent_threshold,
             d.gap_threshold,   d.stability,        d.threads};
}

tl_status tl_siegel_run_rotation(const tl_rotation* rn, const double* rhos, size_t count,
                                 const tl_siegel_config* config, tl_estimate** result) {
  return run_estimate(config, result, [&](const tanlab::SiegelConfig& cfg) {
    require(rn && rhos, "null argument");
    return tanlab::unboundedness_indicators(rn->rn, std::span<const double>(rhos, count), cfg);
  });
}

tl_status tl_siegel_run_lambda(tl_complex lambda, const double* rhos, size_t count,
                               const tl_siegel_config* config, tl_estimate** result) {
  return run_estimate(config, result, [&](const tanlab::SiegelConfig& cfg) {
    require(rhos != nullptr, "null rhos");
    return tanlab::unboundedness_indicators(in(lambda), std::span<const double>(rhos, count), cfg);
  });
}

tl_status tl_siegel_run_series(const tl_series* s, const double* rhos, size_t count,
                               const tl_siegel_config* config, tl_estimate** result) {
  return run_estimate(config, result, [&](const tanlab::SiegelConfig& cfg) {
    require(s && rhos, "null argument");
    return tanlab::unboundedness_indicators(s->series, std::span<const double>(rhos, count), cfg);
  });
}

void tl_estimate_destroy(tl_estimate* est) { delete est; }

tl_verdict tl_estimate_verdict(const tl_estimate* est) {
  if (!est) return TL_VERDICT_INCONCLUSIVE;
  return static_cast<tl_verdict>(est->estimate.verdict);
}

double tl_estimate_radius(const tl_estimate* est) { return est ? est->estimate.radius_estimate : 0.0; }
double tl_estimate_extent(const tl_estimate* est) { return est ? est->estimate.extent : 0.0; }
double tl_estimate_image_gap(const tl_estimate* est) { return est ? est->estimate.image_gap : 0.0; }
size_t tl_estimate_trace_count(const tl_estimate* est) { return est ? est->estimate.traces.size() : 0; }

tl_status tl_estimate_trace(const tl_estimate* est, size_t i, double* rho, double* extent,
                            double* image_gap) {
  return guarded([&] {
    require(est && i < est->estimate.traces.size(), "trace index out of range");
    const auto& t = est->estimate.traces[i];
    if (rho) *rho = t.rho;
    if (extent) *extent = t.extent;
    if (image_gap) *image_gap = t.image_gap;
  });
}

tl_status tl_estimate_to_json(const tl_estimate* est, char** result) {
  return guarded([&] {
    require(est && result, "null argument");
    *result = dup_string(tanlab::siegel_estimate_json(est->estimate, est->config));
  });
}

tl_status tl_estimate_traces_csv(const tl_estimate* est, char** result) {
  return guarded([&] {
    require(est && result, "null argument");
    *result = dup_string(tanlab::traces_csv(est->estimate));
  });
}

tl_status tl_orbit_rotation_number(const tl_map* map, tl_complex z0, int iterations,
                                   const tl_series* coords, double escape_radius, double* theta) {
  return guarded([&] {
    require(map && theta, "null argument");
    if (coords) {
      const auto r = tanlab::conformal_radius(coords->series);
      const tanlab::SeriesEvaluator eval(coords->series, r.estimate);
      *theta = tanlab::orbit_rotation_number(map->map, in(z0), iterations, &eval, escape_radius);
    } else {
      *theta = tanlab::orbit_rotation_number(map->map, in(z0), iterations, nullptr, escape_radius);
    }
  });
}

tl_status tl_bounded_disk_scan(const tl_rotation* const* candidates, const char* const* labels,
                               size_t count, const double* rhos, size_t rho_count,
                               const tl_siegel_config* config, char** json_out,
                               size_t* bounded_likely) {
  return guarded([&] {
    require(json_out != nullptr, "null output");
    require(count == 0 || candidates, "null candidates");
    require(rho_count == 0 || rhos, "null rhos");
    std::vector<tanlab::ScanCandidate> list;
    list.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      require(candidates[i] != nullptr, "null candidate");
      std::string label = labels && labels[i] ? labels[i] : "candidate" + std::to_string(i);
      list.push_back({std::move(label), candidates[i]->rn});
    }
    const tanlab::SiegelConfig cfg = from_c(config);
    const auto report =
        tanlab::bounded_disk_scan(list, std::span<const double>(rhos, rho_count), cfg);
    if (bounded_likely) {
      *bounded_likely = 0;
      for (const auto& c : report.ranked) {
        if (c.estimate && c.estimate->verdict == tanlab::Verdict::kBoundedLikely) ++*bounded_likely;
      }
    }
    *json_out = dup_string(tanlab::bounded_scan_json(report, cfg));
  });
}

/* ---- scans ---- */

tl_status tl_scan_config_default(const tl_map* map, tl_scan_config* config) {
  return guarded([&] {
    require(map && config, "null argument");
    *config = to_c(tanlab::ScanConfig::defaults(map->map));
  });
}

tl_status tl_orbit(const tl_map* map, tl_complex z0, int n, const tl_scan_config* config,
                   tl_complex* values, int* deep, size_t capacity, size_t* count, int* pole_hit) {
  return guarded([&] {
    require(map && count && pole_hit, "null argument");
    const auto pts = tanlab::orbit(map->map, in(z0), n, scan_config_or_default(map->map, config));
    *pole_hit = !pts.empty() && pts.back().value.is_pole() ? 1 : 0;
    *count = pts.size() - static_cast<size_t>(*pole_hit);
    for (size_t i = 0; i < *count && i < capacity; ++i) {
      if (values) values[i] = out(pts[i].value.value());
      if (deep) deep[i] = pts[i].deep_half_plane ? 1 : 0;
    }
  });
}

tl_status tl_detect_cycle(const tl_map* map, const tl_scan_config* config, tl_cycle* result,
                          int* found) {
  return guarded([&] {
    require(map && result && found, "null argument");
    const auto c = tanlab::detect_cycle(map->map, scan_config_or_default(map->map, config));
    *found = c ? 1 : 0;
    if (c) *result = {c->period, out(c->multiplier), out(c->representative)};
  });
}

tl_status tl_classify_point(const tl_map* map, tl_complex z0, const tl_scan_config* config,
                            tl_cell* result) {
  return guarded([&] {
    require(map && result, "null argument");
    *result = to_c(
        tanlab::classify_point(map->map, in(z0), scan_config_or_default(map->map, config)));
  });
}

tl_status tl_scan_dynamical(const tl_map* map, const double rect[4], int nx, int ny,
                            const tl_scan_config* config, int threads, tl_grid** result) {
  if (!result) return fail(TL_ERR_INVALID_ARGUMENT, "null output");
  *result = nullptr;
  return guarded([&] {
    require(map && rect, "null argument");
    const tanlab::Rect r{{rect[0], rect[1]}, {rect[2], rect[3]}};
    *result = new tl_grid{tanlab::scan_dynamical(map->map, r, nx, ny,
                                                 scan_config_or_default(map->map, config), threads)};
  });
}

void tl_grid_destroy(tl_grid* grid) { delete grid; }
int tl_grid_nx(const tl_grid* grid) { return grid ? grid->grid.nx() : 0; }
int tl_grid_ny(const tl_grid* grid) { return grid ? grid->grid.ny() : 0; }

tl_status tl_grid_cell(const tl_grid* grid, int ix, int iy, tl_cell* result) {
  return guarded([&] {
    require(grid && result, "null argument");
    require(ix >= 0 && iy >= 0 && ix < grid->grid.nx() && iy < grid->grid.ny(),
            "cell index out of range");
    *result = to_c(grid->grid.at(ix, iy));
  });
}

tl_status tl_grid_histogram_json(const tl_grid* grid, char** result) {
  return guarded([&] {
    require(grid && result, "null argument");
    nlohmann::ordered_json j = grid->grid.histogram();
    *result = dup_string(j.dump());
  });
}

tl_status tl_grid_ppm(const tl_grid* grid, unsigned char** data, size_t* size) {
  return guarded([&] {
    require(grid && data && size, "null argument");
    const std::string bytes = tanlab::render_ppm(grid->grid, tanlab::Palette::standard());
    auto* p = static_cast<unsigned char*>(std::malloc(bytes.size()));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, bytes.data(), bytes.size());
    *data = p;
    *size = bytes.size();
  });
}

tl_status tl_grid_render(const tl_grid* grid, const char* ppm_path, const char* legend_path) {
  return guarded([&] {
    require(grid && ppm_path && legend_path, "null argument");
    tanlab::render(grid->grid, tanlab::Palette::standard(), ppm_path, legend_path);
  });
}

void tl_probe_config_default(tl_probe_config* config) {
  if (!config) return;
  const tanlab::ParameterProbeConfig d;
  *config = {d.epsilon, to_c(d.scan), d.cf_depth, d.bounded_type_bound, d.linearizer_coeffs,
             d.precision_digits};
}

tl_status tl_scan_parameter(double theta_lo, double theta_hi, int resolution,
                            const tl_probe_config* config, int threads, char** csv_out) {
  return guarded([&] {
    require(csv_out != nullptr, "null output");
    tanlab::ParameterProbeConfig cfg;
    if (config) {
      cfg.epsilon = config->epsilon;
      cfg.scan = from_c(config->scan);
      cfg.cf_depth = config->cf_depth;
      cfg.bounded_type_bound = config->bounded_type_bound;
      cfg.linearizer_coeffs = config->linearizer_coeffs;
      cfg.precision_digits = config->precision_digits;
    }
    const auto samples = tanlab::scan_parameter(theta_lo, theta_hi, resolution, cfg, threads);
    *csv_out = dup_string(tanlab::parameter_scan_csv(samples));
  });
}

}  // extern "C"
