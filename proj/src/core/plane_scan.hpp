#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tangent_map.hpp"

namespace tanlab {

// Above this |Im z|, tan z equals +-i to within 1e-14.
inline constexpr double kTanSaturation = 17.0;

struct ScanConfig {
  int max_iter = 2000;
  double escape_im = kTanSaturation;
  double cycle_tol = 1e-9;
  int cycle_max_period = 8;

  // escape_im = max(17, R) with R from halfplane_radius_for_disk(0.25 |lambda|).
  static ScanConfig defaults(const TangentMap& map);
  void validate(const TangentMap& map) const;
};

double min_escape_height(const TangentMap& map);

struct OrbitPoint {
  EvalResult value;
  // The preimage had |Im z| > escape_im.
  bool deep_half_plane;
};

// f(z), with tan z replaced by its limit +-i once |Im z| > kTanSaturation.
EvalResult scan_step(const TangentMap& map, Complex z);

// Up to n iterates f(z0), f^2(z0), ...; a trailing pole entry ends the orbit early.
std::vector<OrbitPoint> orbit(const TangentMap& map, Complex z0, int n, const ScanConfig& config);

struct CycleInfo {
  int period;
  Complex multiplier;
  // Cycle point of least modulus.
  Complex representative;
  std::vector<Complex> points;
};

// Follows the asymptotic value i*lambda looking for an attracting cycle.
std::optional<CycleInfo> detect_cycle(const TangentMap& map, const ScanConfig& config);

enum class CellTag : std::uint8_t {
  kAttractedToCycle,
  kSiegelCandidate,
  kNearPoleEscape,
  kUndecided,
};
const char* cell_tag_name(CellTag tag);

struct CellClass {
  CellTag tag = CellTag::kUndecided;
  int period = 0;  // AttractedToCycle only
  Complex representative{0.0, 0.0};
  int iterations_used = 0;

  // Tag and period; the representative of a symmetric cycle pair is not compared.
  bool same_class(const CellClass& other) const {
    return tag == other.tag && period == other.period;
  }
  std::string label() const;
};

// Detects the cycle itself.
CellClass classify_point(const TangentMap& map, Complex z0, const ScanConfig& config);
// Uses an already detected cycle (nullopt: none exists).
CellClass classify_point(const TangentMap& map, Complex z0, const ScanConfig& config,
                         const std::optional<CycleInfo>& cycle_hint);

struct Rect {
  Complex lo;
  Complex hi;
};

class ClassificationGrid {
 public:
  ClassificationGrid(Rect rect, int nx, int ny, Complex lambda, ScanConfig config);

  const Rect& rect() const { return rect_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  Complex lambda() const { return lambda_; }
  const ScanConfig& config() const { return config_; }
  const std::optional<CycleInfo>& cycle() const { return cycle_; }
  void set_cycle(std::optional<CycleInfo> c) { cycle_ = std::move(c); }

  // Row iy = 0 is the bottom (lowest Im) row.
  const CellClass& at(int ix, int iy) const { return cells_[index(ix, iy)]; }
  CellClass& at(int ix, int iy) { return cells_[index(ix, iy)]; }
  Complex cell_center(int ix, int iy) const;
  const std::vector<CellClass>& cells() const { return cells_; }

  std::map<std::string, std::size_t> histogram() const;

 private:
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) + ix;
  }

  Rect rect_;
  int nx_;
  int ny_;
  Complex lambda_;
  ScanConfig config_;
  std::optional<CycleInfo> cycle_;
  std::vector<CellClass> cells_;
};

inline constexpr int kScanTile = 64;
inline constexpr int kMaxResolution = 8192;

ClassificationGrid scan_dynamical(const TangentMap& map, Rect rect, int nx, int ny,
                                  const ScanConfig& config, int threads = 0);

struct ParameterProbeConfig {
  double epsilon = 0.01;
  ScanConfig scan;
  int cf_depth = 12;
  std::int64_t bounded_type_bound = 50;
  int linearizer_coeffs = 64;
  int precision_digits = 50;
};

struct ParameterSample {
  double theta;
  std::optional<CycleInfo> cycle;
  bool siegel_flag = false;
  std::string error;  // error code name, empty if none
};

ParameterSample probe_parameter(double theta, const ParameterProbeConfig& config);
// theta_j = lo + (hi - lo) (j + 1/2) / resolution
std::vector<ParameterSample> scan_parameter(double theta_lo, double theta_hi, int resolution,
                                            const ParameterProbeConfig& config, int threads = 0);
std::string parameter_scan_csv(const std::vector<ParameterSample>& samples);

using Rgb = std::array<std::uint8_t, 3>;

struct Palette {
  // Indexed by period - 1; periods beyond the table reuse the last entry.
  std::vector<Rgb> cycle;
  Rgb siegel;
  Rgb near_pole;
  Rgb undecided;

  static Palette standard();
  Rgb color(const CellClass& cell) const;
};

std::string render_ppm(const ClassificationGrid& grid, const Palette& palette);
std::string render_legend_json(const ClassificationGrid& grid, const Palette& palette);
// Writes the PPM and a JSON legend sidecar. Throws kIoFailure.
void render(const ClassificationGrid& grid, const Palette& palette, const std::string& ppm_path,
            const std::string& legend_path);

}  // namespace tanlab
