#include "plane_scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "rotation.hpp"
#include "siegel.hpp"

namespace tanlab {

namespace {

constexpr double kPi = std::numbers::pi;
// Circular spread (rad) of per-step angle increments allowed for a Siegel candidate.
constexpr double kSiegelAngleSpread = 0.5;
constexpr int kSiegelMinSamples = 64;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool canonical_less(Complex a, Complex b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma < mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

// Newton on g(z) = f^p(z) - z. Returns the refined cycle or nullopt.
std::optional<CycleInfo> refine_cycle(const TangentMap& map, Complex start, int period) {
  Complex z = start;
  for (int iter = 0; iter < 40; ++iter) {
    Complex w = z;
    Complex d{1.0, 0.0};
    for (int j = 0; j < period; ++j) {
      const EvalResult dv = derivative(map, w);
      const EvalResult v = scan_step(map, w);
      if (dv.is_pole() || v.is_pole()) return std::nullopt;
      d *= dv.value();
      w = v.value();
    }
    const Complex g = w - z;
    const Complex gp = d - 1.0;
    if (gp == Complex{0.0, 0.0}) break;
    const Complex step = g / gp;
    z -= step;
    if (!finite(z)) return std::nullopt;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
  }
  CycleInfo info;
  info.period = period;
  info.multiplier = {1.0, 0.0};
  Complex w = z;
  for (int j = 0; j < period; ++j) {
    const EvalResult dv = derivative(map, w);
    const EvalResult v = scan_step(map, w);
    if (dv.is_pole() || v.is_pole()) return std::nullopt;
    info.points.push_back(w);
    info.multiplier *= dv.value();
    w = v.value();
  }
  info.representative = *std::min_element(info.points.begin(), info.points.end(), canonical_less);
  return info;
}

}  // namespace

double min_escape_height(const TangentMap& map) {
  return halfplane_radius_for_disk(map, 0.25 * std::abs(map.lambda())).half_width;
}

ScanConfig ScanConfig::defaults(const TangentMap& map) {
  ScanConfig c;
  c.escape_im = std::max(kTanSaturation, min_escape_height(map));
  return c;
}

void ScanConfig::validate(const TangentMap& map) const {
  if (max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "max_iter must be >= 1");
  if (cycle_max_period < 1) throw Error(ErrorCode::kInvalidArgument, "cycle_max_period must be >= 1");
  if (!(cycle_tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "cycle_tol must be positive");
  if (!(escape_im >= min_escape_height(map))) {
    throw Error(ErrorCode::kInvalidArgument,
                "escape_im must reach the half-plane radius for r = |lambda|/4");
  }
}

EvalResult scan_step(const TangentMap& map, Complex z) {
  if (std::fabs(z.imag()) > kTanSaturation) {
    return EvalResult::finite(std::copysign(1.0, z.imag()) * Complex{0.0, 1.0} * map.lambda());
  }
  return evaluate(map, z);
}

std::vector<OrbitPoint> orbit(const TangentMap& map, Complex z0, int n, const ScanConfig& config) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "orbit length must be >= 1");
  std::vector<OrbitPoint> out;
  out.reserve(n);
  Complex z = z0;
  for (int k = 0; k < n; ++k) {
    const bool deep = std::fabs(z.imag()) > config.escape_im;
    const EvalResult next = scan_step(map, z);
    out.push_back({next, deep});
    if (next.is_pole()) break;
    z = next.value();
  }
  return out;
}

std::optional<CycleInfo> detect_cycle(const TangentMap& map, const ScanConfig& config) {
  const int history = config.cycle_max_period + 1;
  std::vector<Complex> ring(history);
  Complex z = map.asymptotic_values().first;
  ring[0] = z;
  for (int k = 1; k <= config.max_iter; ++k) {
    const EvalResult next = scan_step(map, z);
    if (next.is_pole() || !finite(next.value())) return std::nullopt;
    z = next.value();
    ring[k % history] = z;
    for (int p = 1; p <= config.cycle_max_period && p <= k; ++p) {
      if (std::abs(z - ring[(k - p) % history]) < config.cycle_tol) {
        auto info = refine_cycle(map, z, p);
        if (info && std::abs(info->multiplier) < 1.0) return info;
        break;
      }
    }
  }
  return std::nullopt;
}

const char* cell_tag_name(CellTag tag) {
  switch (tag) {
    case CellTag::kAttractedToCycle: return "AttractedToCycle";
    case CellTag::kSiegelCandidate: return "SiegelCandidate";
    case CellTag::kNearPoleEscape: return "NearPoleEscape";
    case CellTag::kUndecided: return "Undecided";
  }
  return "Undecided";
}

std::string CellClass::label() const {
  if (tag == CellTag::kAttractedToCycle) {
    return std::string(cell_tag_name(tag)) + "(" + std::to_string(period) + ")";
  }
  return cell_tag_name(tag);
}

CellClass classify_point(const TangentMap& map, Complex z0, const ScanConfig& config) {
  return classify_point(map, z0, config, detect_cycle(map, config));
}

CellClass classify_point(const TangentMap& map, Complex z0, const ScanConfig& config,
                         const std::optional<CycleInfo>& cycle_hint) {
  // The map is odd, so -cycle is a cycle too; both attract.
  std::vector<Complex> targets;
  if (cycle_hint) {
    for (const Complex& p : cycle_hint->points) {
      targets.push_back(p);
      targets.push_back(-p);
    }
  }
  auto attracted = [&](Complex z, int used) -> std::optional<CellClass> {
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (std::abs(z - targets[i]) < config.cycle_tol) {
        const Complex rep = i % 2 == 0 ? cycle_hint->representative : -cycle_hint->representative;
        return CellClass{CellTag::kAttractedToCycle, cycle_hint->period, rep, used};
      }
    }
    return std::nullopt;
  };

  if (auto hit = attracted(z0, 0)) return *hit;

  const double window = 4.0 * config.escape_im;
  bool bounded = std::abs(z0) < window;
  // Mean resultant of unit vectors e^{i*step} over the second half of the orbit.
  const int half = config.max_iter / 2;
  Complex resultant{0.0, 0.0};
  int counted = 0;
  Complex z = z0;
  for (int k = 1; k <= config.max_iter; ++k) {
    const EvalResult next = scan_step(map, z);
    if (next.is_pole() || !finite(next.value())) {
      return CellClass{CellTag::kNearPoleEscape, 0, Complex{}, k};
    }
    const Complex zn = next.value();
    if (auto hit = attracted(zn, k)) return *hit;
    if (!(std::abs(zn) < window)) bounded = false;
    if (k > half && z != Complex{0.0, 0.0} && zn != Complex{0.0, 0.0}) {
      const Complex ratio = zn / z;
      resultant += ratio / std::abs(ratio);
      ++counted;
    }
    z = zn;
  }
  // An attracting cycle absorbs both asymptotic orbits, leaving no room for a rotation domain.
  if (bounded && !cycle_hint && counted >= kSiegelMinSamples) {
    const double r = std::min(1.0, std::abs(resultant) / counted);
    const double spread = std::sqrt(-2.0 * std::log(std::max(r, 1e-300)));
    if (spread < kSiegelAngleSpread) {
      return CellClass{CellTag::kSiegelCandidate, 0, Complex{}, config.max_iter};
    }
  }
  return CellClass{CellTag::kUndecided, 0, Complex{}, config.max_iter};
}

ClassificationGrid::ClassificationGrid(Rect rect, int nx, int ny, Complex lambda, ScanConfig config)
    : rect_(rect), nx_(nx), ny_(ny), lambda_(lambda), config_(config) {
  if (nx < 1 || ny < 1 || nx > kMaxResolution || ny > kMaxResolution) {
    throw Error(ErrorCode::kInvalidArgument, "resolution must lie in [1, 8192] per axis");
  }
  cells_.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
}

Complex ClassificationGrid::cell_center(int ix, int iy) const {
  // mid + half * (2i + 1 - n) / n keeps mirrored cells exact negatives on symmetric rectangles.
  const double mx = 0.5 * (rect_.lo.real() + rect_.hi.real());
  const double hx = 0.5 * (rect_.hi.real() - rect_.lo.real());
  const double my = 0.5 * (rect_.lo.imag() + rect_.hi.imag());
  const double hy = 0.5 * (rect_.hi.imag() - rect_.lo.imag());
  return {mx + hx * static_cast<double>(2 * ix + 1 - nx_) / nx_,
          my + hy * static_cast<double>(2 * iy + 1 - ny_) / ny_};
}

std::map<std::string, std::size_t> ClassificationGrid::histogram() const {
  std::map<std::string, std::size_t> h;
  for (const CellClass& c : cells_) ++h[c.label()];
  return h;
}

ClassificationGrid scan_dynamical(const TangentMap& map, Rect rect, int nx, int ny,
                                  const ScanConfig& config, int threads) {
  config.validate(map);
  if (!(rect.hi.real() > rect.lo.real()) || !(rect.hi.imag() > rect.lo.imag())) {
    throw Error(ErrorCode::kInvalidArgument, "rectangle corners must be ordered lo < hi");
  }
  ClassificationGrid grid(rect, nx, ny, map.lambda(), config);
  grid.set_cycle(detect_cycle(map, config));
  const int tiles_x = (nx + kScanTile - 1) / kScanTile;
  const int tiles_y = (ny + kScanTile - 1) / kScanTile;
  parallel_for(static_cast<std::size_t>(tiles_x) * tiles_y, threads, [&](std::size_t tile) {
    const int tx = static_cast<int>(tile % tiles_x);
    const int ty = static_cast<int>(tile / tiles_x);
    for (int iy = ty * kScanTile; iy < std::min(ny, (ty + 1) * kScanTile); ++iy) {
      for (int ix = tx * kScanTile; ix < std::min(nx, (tx + 1) * kScanTile); ++ix) {
        grid.at(ix, iy) = classify_point(map, grid.cell_center(ix, iy), config, grid.cycle());
      }
    }
  });
  return grid;
}

ParameterSample probe_parameter(double theta, const ParameterProbeConfig& config) {
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "probe epsilon must lie in (0,1)");
  }
  ParameterSample sample{theta, std::nullopt, false, {}};
  const Complex on_circle = multiplier(theta);
  const TangentMap probe((1.0 - config.epsilon) * on_circle);
  ScanConfig scan = config.scan;
  scan.escape_im = std::max(scan.escape_im, min_escape_height(probe));
  sample.cycle = detect_cycle(probe, scan);

  try {
    const RotationNumber rn = continued_fraction(theta, config.cf_depth);
    if (!bounded_type_prefix(rn).is_bounded_by(config.bounded_type_bound)) {
      sample.error = "UnboundedPrefix";
      return sample;
    }
    const LinearizerSeries series = linearizer(rn, config.linearizer_coeffs, config.precision_digits);
    if (rn.rational()) {
      sample.error = error_code_name(ErrorCode::kRationalInput);
      return sample;
    }
    if (config.linearizer_coeffs >= 50) {
      const RadiusEstimate r = conformal_radius(series);
      sample.siegel_flag = std::isfinite(r.estimate) && r.estimate > 0.0;
    } else {
      sample.siegel_flag = true;
    }
  } catch (const Error& e) {
    sample.error = error_code_name(e.code());
  }
  return sample;
}

std::vector<ParameterSample> scan_parameter(double theta_lo, double theta_hi, int resolution,
                                            const ParameterProbeConfig& config, int threads) {
  if (resolution < 1) throw Error(ErrorCode::kInvalidArgument, "resolution must be >= 1");
  if (!(theta_lo >= 0.0 && theta_hi <= 1.0 && theta_lo < theta_hi)) {
    throw Error(ErrorCode::kInvalidArgument, "theta range must satisfy 0 <= lo < hi <= 1");
  }
  std::vector<ParameterSample> out(resolution);
  parallel_for(out.size(), threads, [&](std::size_t j) {
    const double theta = theta_lo + (theta_hi - theta_lo) * (static_cast<double>(j) + 0.5) /
                                        static_cast<double>(resolution);
    try {
      out[j] = probe_parameter(theta, config);
    } catch (const Error& e) {
      out[j] = ParameterSample{theta, std::nullopt, false, error_code_name(e.code())};
    }
  });
  return out;
}

std::string parameter_scan_csv(const std::vector<ParameterSample>& samples) {
  std::ostringstream out;
  out.precision(17);
  out << "theta,period,multiplier_abs,siegel_flag,error\n";
  for (const ParameterSample& s : samples) {
    out << s.theta << ',';
    if (s.cycle) {
      out << s.cycle->period << ',' << std::abs(s.cycle->multiplier);
    } else {
      out << "0,";
    }
    out << ',' << (s.siegel_flag ? 1 : 0) << ',' << s.error << '\n';
  }
  return out.str();
}

Palette Palette::standard() {
  Palette p;
  p.cycle = {{30, 90, 200},  {230, 140, 20}, {40, 170, 80},  {200, 50, 60},
             {140, 80, 190}, {120, 200, 220}, {220, 200, 60}, {100, 100, 100}};
  p.siegel = {250, 250, 240};
  p.near_pole = {10, 10, 10};
  p.undecided = {90, 0, 40};
  return p;
}

Rgb Palette::color(const CellClass& cell) const {
  switch (cell.tag) {
    case CellTag::kAttractedToCycle: {
      if (cycle.empty()) return undecided;
      const std::size_t i = std::clamp<std::size_t>(cell.period, 1, cycle.size()) - 1;
      return cycle[i];
    }
    case CellTag::kSiegelCandidate: return siegel;
    case CellTag::kNearPoleEscape: return near_pole;
    case CellTag::kUndecided: return undecided;
  }
  return undecided;
}

std::string render_ppm(const ClassificationGrid& grid, const Palette& palette) {
  std::string header = "P6\n" + std::to_string(grid.nx()) + " " + std::to_string(grid.ny()) + "\n255\n";
  std::string out = header;
  out.reserve(header.size() + static_cast<std::size_t>(grid.nx()) * grid.ny() * 3);
  for (int row = 0; row < grid.ny(); ++row) {
    const int iy = grid.ny() - 1 - row;  // top row has the largest Im
    for (int ix = 0; ix < grid.nx(); ++ix) {
      const Rgb c = palette.color(grid.at(ix, iy));
      out.append(reinterpret_cast<const char*>(c.data()), 3);
    }
  }
  return out;
}

namespace {

std::string hex(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

}  // namespace

std::string render_legend_json(const ClassificationGrid& grid, const Palette& palette) {
  nlohmann::ordered_json legend;
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (std::size_t p = 1; p <= palette.cycle.size(); ++p) {
    classes["AttractedToCycle(" + std::to_string(p) + ")"] = hex(palette.cycle[p - 1]);
  }
  classes["SiegelCandidate"] = hex(palette.siegel);
  classes["NearPoleEscape"] = hex(palette.near_pole);
  classes["Undecided"] = hex(palette.undecided);
  legend["classes"] = classes;
  legend["heuristic"] = {
      {"SiegelCandidate",
       "bounded orbit with steady rotation for max_iter steps; not a certificate of Siegel-disk "
       "membership"}};
  legend["lambda"] = {grid.lambda().real(), grid.lambda().imag()};
  legend["rect"] = {grid.rect().lo.real(), grid.rect().lo.imag(), grid.rect().hi.real(),
                    grid.rect().hi.imag()};
  legend["resolution"] = {grid.nx(), grid.ny()};
  const ScanConfig& c = grid.config();
  legend["config"] = {{"max_iter", c.max_iter},
                      {"escape_im", c.escape_im},
                      {"cycle_tol", c.cycle_tol},
                      {"cycle_max_period", c.cycle_max_period}};
  if (grid.cycle()) {
    legend["cycle"] = {{"period", grid.cycle()->period},
                       {"multiplier", {grid.cycle()->multiplier.real(), grid.cycle()->multiplier.imag()}},
                       {"representative",
                        {grid.cycle()->representative.real(), grid.cycle()->representative.imag()}}};
  } else {
    legend["cycle"] = nullptr;
  }
  legend["histogram"] = grid.histogram();
  return legend.dump(2) + "\n";
}

void render(const ClassificationGrid& grid, const Palette& palette, const std::string& ppm_path,
            const std::string& legend_path) {
  write_file(ppm_path, render_ppm(grid, palette));
  write_file(legend_path, render_legend_json(grid, palette));
}

}  // namespace tanlab
