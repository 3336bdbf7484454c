// Command-line front end. Everything goes through the C API in tanlab/tanlab.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tanlab/tanlab.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResonant = 3;
constexpr int kExitInsufficientData = 4;
constexpr int kExitIo = 5;
constexpr int kExitClearance = 6;

struct CliError {
  int exit_code;
  std::string message;
};

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using MapPtr = std::unique_ptr<tl_map, Deleter<tl_map, tl_map_destroy>>;
using RotationPtr = std::unique_ptr<tl_rotation, Deleter<tl_rotation, tl_rotation_destroy>>;
using EstimatePtr = std::unique_ptr<tl_estimate, Deleter<tl_estimate, tl_estimate_destroy>>;
using GridPtr = std::unique_ptr<tl_grid, Deleter<tl_grid, tl_grid_destroy>>;
using PolylinePtr = std::unique_ptr<tl_polyline, Deleter<tl_polyline, tl_polyline_destroy>>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  tl_string_free(s);
  return out;
}

int exit_code_for(tl_status status) {
  switch (status) {
    case TL_ERR_INVALID_ARGUMENT: return kExitUsage;
    case TL_ERR_RESONANT_MULTIPLIER: return kExitResonant;
    case TL_ERR_INSUFFICIENT_DATA: return kExitInsufficientData;
    case TL_ERR_IO_FAILURE: return kExitIo;
    case TL_ERR_CLEARANCE_VIOLATION: return kExitClearance;
    default: return kExitFailure;
  }
}

void check(tl_status status) {
  if (status == TL_OK) return;
  std::ostringstream msg;
  msg << tl_status_name(status) << ": " << tl_last_error();
  if (status == TL_ERR_RESONANT_MULTIPLIER) {
    msg << " (offending n = " << static_cast<long>(tl_last_error_detail()) << ")";
  } else if (status == TL_ERR_CLEARANCE_VIOLATION) {
    msg.precision(17);
    msg << " (nearest approach " << tl_last_error_detail() << ")";
  }
  throw CliError{exit_code_for(status), msg.str()};
}

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// "a+bi", "a", "bi", "i", "-i"; spaces are ignored.
std::optional<tl_complex> parse_complex(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i' && s.back() != 'j') {
    auto re = parse_double(s);
    if (!re) return std::nullopt;
    return tl_complex{*re, 0.0};
  }
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  const auto im = parse_double(im_part);
  if (!im) return std::nullopt;
  double re = 0.0;
  if (!re_part.empty()) {
    const auto r = parse_double(re_part);
    if (!r) return std::nullopt;
    re = *r;
  }
  return tl_complex{re, *im};
}

tl_complex require_complex(const std::string& text, const char* flag) {
  const auto z = parse_complex(text);
  if (!z) throw CliError{kExitUsage, std::string("cannot parse ") + flag + " '" + text + "'"};
  return *z;
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::string trimmed;
    for (char c : item) {
      if (c != ' ') trimmed.push_back(c);
    }
    const auto v = parse_double(trimmed);
    if (!v) throw CliError{kExitUsage, std::string("cannot parse ") + flag + " '" + text + "'"};
    out.push_back(*v);
  }
  return out;
}

Json complex_json(tl_complex z) { return Json::array({z.re, z.im}); }

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "unreadable";
  std::ostringstream buf;
  buf << in.rdbuf();
  char hex[32];
  std::snprintf(hex, sizeof hex, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a(buf.str())));
  return hex;
}

void write_text(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError{kExitIo, "IoFailure: cannot open " + path.string() + " for writing"};
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CliError{kExitIo, "IoFailure: write failed for " + path.string()};
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw CliError{kExitIo, "IoFailure: cannot create output directory " + dir};
  }
  return dir;
}

// Source of lambda: a complex literal, a decimal rotation number or a named quadratic.
struct LambdaSource {
  std::string lambda;
  std::optional<double> theta;
  std::string quadratic;

  bool given() const { return !lambda.empty() || theta || !quadratic.empty(); }

  Json describe() const {
    Json j;
    if (!lambda.empty()) j["lambda"] = lambda;
    if (theta) j["theta"] = *theta;
    if (!quadratic.empty()) j["quadratic"] = quadratic;
    return j;
  }

  RotationPtr rotation(int depth) const {
    tl_rotation* rn = nullptr;
    if (!quadratic.empty()) {
      check(tl_rotation_from_named(quadratic.c_str(), depth, &rn));
    } else if (theta) {
      check(tl_rotation_from_real(*theta, depth, &rn));
    } else {
      throw CliError{kExitUsage, "need --theta or --quadratic"};
    }
    return RotationPtr(rn);
  }

  tl_complex value() const {
    if (!lambda.empty()) return require_complex(lambda, "--lambda");
    return tl_rotation_multiplier(rotation(40).get());
  }

  MapPtr map() const {
    const tl_complex l = value();
    if (l.re == 0.0 && l.im == 0.0) throw CliError{kExitUsage, "lambda must be nonzero"};
    tl_map* m = nullptr;
    check(tl_map_create(l, &m));
    return MapPtr(m);
  }
};

void add_lambda_flags(CLI::App* cmd, LambdaSource& source) {
  cmd->add_option("--lambda", source.lambda, "parameter as a complex literal a+bi");
  cmd->add_option("--theta", source.theta, "rotation number; lambda = exp(2 pi i theta)");
  cmd->add_option("--quadratic", source.quadratic, "named rotation number: golden, sqrt2m1, e-2");
}

struct Globals {
  std::string out_dir = ".";
  int threads = 0;
  int precision = 50;
};

class Manifest {
 public:
  explicit Manifest(std::string subcommand) : start_(std::chrono::steady_clock::now()) {
    doc_["subcommand"] = std::move(subcommand);
    doc_["config"] = Json::object();
    doc_["input_hashes"] = Json::object();
    doc_["tool_version"] = tl_version();
  }

  Json& config() { return doc_["config"]; }
  Json& inputs() { return doc_["input_hashes"]; }
  Json& extra() { return extra_; }
  void add_output(const std::filesystem::path& p) { outputs_.push_back(p.filename().string()); }

  void write(const std::filesystem::path& path) {
    doc_["outputs"] = outputs_;
    for (auto& [k, v] : extra_.items()) doc_[k] = v;
    doc_["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    write_text(path, doc_.dump(2) + "\n");
  }

 private:
  Json doc_;
  Json extra_ = Json::object();
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

// ---- subcommands ----

struct EvalArgs {
  LambdaSource source;
  std::string z;
};

int cmd_eval(const EvalArgs& a) {
  if (!a.source.given()) throw CliError{kExitUsage, "need --lambda, --theta or --quadratic"};
  const MapPtr map = a.source.map();
  const tl_complex z = require_complex(a.z, "--z");
  tl_complex value{}, deriv{}, asym[2];
  int pole = 0, dpole = 0;
  check(tl_evaluate(map.get(), z, &value, &pole));
  check(tl_derivative(map.get(), z, &deriv, &dpole));
  check(tl_asymptotic_values(map.get(), asym));
  Json j;
  j["lambda"] = complex_json(tl_map_lambda(map.get()));
  j["z"] = complex_json(z);
  j["value"] = pole ? Json("pole") : complex_json(value);
  j["derivative"] = dpole ? Json("pole") : complex_json(deriv);
  j["asymptotic_values"] = Json::array({complex_json(asym[0]), complex_json(asym[1])});
  std::cout << j.dump() << "\n";
  return 0;
}

struct SiegelArgs {
  LambdaSource source;
  int coeffs = 4000;
  std::string rhos = "0.9,0.95,0.99,0.995";
  int samples = 4096;
  std::optional<double> extent_threshold;
  std::optional<double> gap_threshold;
};

int cmd_siegel(const SiegelArgs& a, const Globals& g) {
  if (a.source.quadratic.empty() && !a.source.theta) {
    throw CliError{kExitUsage, "need --theta or --quadratic"};
  }
  const std::vector<double> rhos = parse_list(a.rhos, "--rhos");
  tl_siegel_config cfg;
  tl_siegel_config_default(&cfg);
  cfg.coeffs = a.coeffs;
  cfg.precision_digits = g.precision;
  cfg.samples = a.samples;
  cfg.threads = g.threads;
  if (a.extent_threshold) cfg.extent_threshold = *a.extent_threshold;
  if (a.gap_threshold) cfg.gap_threshold = *a.gap_threshold;

  const auto dir = prepare_out_dir(g.out_dir);
  Manifest manifest("siegel");
  manifest.config() = a.source.describe();
  manifest.config()["coeffs"] = a.coeffs;
  manifest.config()["rhos"] = rhos;
  manifest.config()["samples"] = a.samples;
  manifest.config()["precision_digits"] = g.precision;
  manifest.config()["extent_threshold"] = cfg.extent_threshold;
  manifest.config()["gap_threshold"] = cfg.gap_threshold;

  const RotationPtr rn = a.source.rotation(60);
  tl_estimate* raw = nullptr;
  check(tl_siegel_run_rotation(rn.get(), rhos.data(), rhos.size(), &cfg, &raw));
  const EstimatePtr est(raw);
  char* json = nullptr;
  char* csv = nullptr;
  check(tl_estimate_to_json(est.get(), &json));
  const std::string json_text = take_string(json);
  check(tl_estimate_traces_csv(est.get(), &csv));
  const std::string csv_text = take_string(csv);

  write_text(dir / "siegel.json", json_text);
  write_text(dir / "traces.csv", csv_text);
  manifest.add_output(dir / "siegel.json");
  manifest.add_output(dir / "traces.csv");
  manifest.write(dir / "siegel.manifest.json");

  static const char* kVerdicts[] = {"UnboundedLikely", "BoundedLikely", "Inconclusive"};
  Json summary;
  summary["verdict"] = kVerdicts[tl_estimate_verdict(est.get())];
  summary["heuristic"] = true;
  summary["radius_estimate"] = tl_estimate_radius(est.get());
  summary["extent"] = tl_estimate_extent(est.get());
  summary["image_gap"] = tl_estimate_image_gap(est.get());
  std::cout << summary.dump() << "\n";
  return 0;
}

struct ScanArgs {
  LambdaSource source;
  std::string rect = "-1.2,-1.2,1.2,1.2";
  std::string res = "256";
  std::optional<int> max_iter;
  std::optional<double> escape_im;
  std::optional<double> cycle_tol;
  std::optional<int> cycle_max_period;
};

int cmd_scan(const ScanArgs& a, const Globals& g) {
  if (!a.source.given()) throw CliError{kExitUsage, "need --lambda, --theta or --quadratic"};
  const MapPtr map = a.source.map();
  const std::vector<double> rect = parse_list(a.rect, "--rect");
  if (rect.size() != 4) throw CliError{kExitUsage, "--rect needs four numbers"};
  int nx = 0, ny = 0;
  const auto x = a.res.find('x');
  const auto parse_int = [&](const std::string& s) {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw CliError{kExitUsage, "cannot parse --res '" + a.res + "'"};
    }
    return v;
  };
  if (x == std::string::npos) {
    nx = ny = parse_int(a.res);
  } else {
    nx = parse_int(a.res.substr(0, x));
    ny = parse_int(a.res.substr(x + 1));
  }

  tl_scan_config cfg;
  check(tl_scan_config_default(map.get(), &cfg));
  if (a.max_iter) cfg.max_iter = *a.max_iter;
  if (a.escape_im) cfg.escape_im = *a.escape_im;
  if (a.cycle_tol) cfg.cycle_tol = *a.cycle_tol;
  if (a.cycle_max_period) cfg.cycle_max_period = *a.cycle_max_period;

  const auto dir = prepare_out_dir(g.out_dir);
  tl_grid* raw = nullptr;
  check(tl_scan_dynamical(map.get(), rect.data(), nx, ny, &cfg, g.threads, &raw));
  const GridPtr grid(raw);
  check(tl_grid_render(grid.get(), (dir / "scan.ppm").c_str(), (dir / "scan.legend.json").c_str()));

  Manifest manifest("scan");
  manifest.config() = a.source.describe();
  manifest.config()["rect"] = rect;
  manifest.config()["resolution"] = {nx, ny};
  manifest.config()["max_iter"] = cfg.max_iter;
  manifest.config()["escape_im"] = cfg.escape_im;
  manifest.config()["cycle_tol"] = cfg.cycle_tol;
  manifest.config()["cycle_max_period"] = cfg.cycle_max_period;
  manifest.config()["threads"] = g.threads;
  manifest.add_output(dir / "scan.ppm");
  manifest.add_output(dir / "scan.legend.json");
  manifest.write(dir / "scan.manifest.json");

  char* hist = nullptr;
  check(tl_grid_histogram_json(grid.get(), &hist));
  std::cout << take_string(hist) << "\n";
  return 0;
}

struct ParamScanArgs {
  std::string theta_range = "0,1";
  int res = 256;
  double epsilon = 0.01;
  std::optional<int> max_iter;
  int linearizer_coeffs = 64;
};

int cmd_param_scan(const ParamScanArgs& a, const Globals& g) {
  const std::vector<double> range = parse_list(a.theta_range, "--theta-range");
  if (range.size() != 2) throw CliError{kExitUsage, "--theta-range needs two numbers"};
  tl_probe_config cfg;
  tl_probe_config_default(&cfg);
  cfg.epsilon = a.epsilon;
  cfg.linearizer_coeffs = a.linearizer_coeffs;
  cfg.precision_digits = g.precision;
  if (a.max_iter) cfg.scan.max_iter = *a.max_iter;

  const auto dir = prepare_out_dir(g.out_dir);
  char* csv = nullptr;
  check(tl_scan_parameter(range[0], range[1], a.res, &cfg, g.threads, &csv));
  write_text(dir / "param_scan.csv", take_string(csv));

  Manifest manifest("param-scan");
  manifest.config()["theta_range"] = range;
  manifest.config()["resolution"] = a.res;
  manifest.config()["epsilon"] = a.epsilon;
  manifest.config()["max_iter"] = cfg.scan.max_iter;
  manifest.config()["linearizer_coeffs"] = a.linearizer_coeffs;
  manifest.config()["precision_digits"] = g.precision;
  manifest.add_output(dir / "param_scan.csv");
  manifest.write(dir / "param_scan.manifest.json");
  return 0;
}

struct CfArgs {
  std::optional<double> x;
  std::string quadratic;
  int depth = 30;
};

int cmd_cf(const CfArgs& a) {
  tl_rotation* raw = nullptr;
  if (!a.quadratic.empty()) {
    check(tl_rotation_from_named(a.quadratic.c_str(), a.depth, &raw));
  } else if (a.x) {
    check(tl_rotation_from_real(*a.x, a.depth, &raw));
  } else {
    throw CliError{kExitUsage, "need --x or --quadratic"};
  }
  const RotationPtr rn(raw);
  char* json = nullptr;
  check(tl_rotation_to_json(rn.get(), &json));
  std::cout << take_string(json) << "\n";
  return 0;
}

struct LiftArgs {
  LambdaSource source;
  std::string curve;
  std::string base;
};

int cmd_lift(const LiftArgs& a, const Globals& g) {
  if (!a.source.given()) throw CliError{kExitUsage, "need --lambda, --theta or --quadratic"};
  const MapPtr map = a.source.map();
  const tl_complex base = require_complex(a.base, "--base");
  tl_polyline* raw_curve = nullptr;
  check(tl_polyline_read_csv(a.curve.c_str(), &raw_curve));
  const PolylinePtr curve(raw_curve);
  tl_polyline* raw_lift = nullptr;
  check(tl_lift_curve(map.get(), curve.get(), base, &raw_lift));
  const PolylinePtr lift(raw_lift);

  // Round trip: f(lift) against the curve vertices.
  double max_dev = 0.0;
  const std::size_t n = std::min(tl_polyline_size(lift.get()), tl_polyline_size(curve.get()));
  for (std::size_t i = 0; i < n; ++i) {
    tl_complex v{};
    int pole = 0;
    check(tl_evaluate(map.get(), tl_polyline_point(lift.get(), i), &v, &pole));
    if (pole) throw CliError{kExitFailure, "lifted point landed on a pole"};
    const tl_complex c = tl_polyline_point(curve.get(), i);
    max_dev = std::max(max_dev, std::hypot(v.re - c.re, v.im - c.im));
  }

  const auto dir = prepare_out_dir(g.out_dir);
  char* csv = nullptr;
  check(tl_polyline_to_csv(lift.get(), &csv));
  write_text(dir / "lift.csv", take_string(csv));

  Manifest manifest("lift");
  manifest.config() = a.source.describe();
  manifest.config()["curve"] = a.curve;
  manifest.config()["base"] = complex_json(base);
  manifest.inputs()["curve"] = hash_file(a.curve);
  manifest.extra()["max_roundtrip_deviation"] = max_dev;
  manifest.add_output(dir / "lift.csv");
  manifest.write(dir / "lift.manifest.json");

  const tl_complex end = tl_polyline_point(lift.get(), tl_polyline_size(lift.get()) - 1);
  Json summary;
  summary["points"] = tl_polyline_size(lift.get());
  summary["end"] = complex_json(end);
  summary["max_roundtrip_deviation"] = max_dev;
  std::cout << summary.dump() << "\n";
  return 0;
}

struct BoundedScanArgs {
  std::string candidates = "golden,sqrt2m1,e-2,e-2@6,e-2@10";
  int coeffs = 4000;
  std::string rhos = "0.9,0.95,0.99,0.995";
  int samples = 4096;
};

// "name", "name@d" (rational truncation after d quotients) or a decimal in (0,1).
RotationPtr candidate_rotation(const std::string& source) {
  tl_rotation* raw = nullptr;
  const auto at = source.find('@');
  if (at != std::string::npos) {
    int depth = 0;
    const std::string d = source.substr(at + 1);
    const auto [p, ec] = std::from_chars(d.data(), d.data() + d.size(), depth);
    if (ec != std::errc() || p != d.data() + d.size() || depth < 1) {
      throw CliError{kExitUsage, "bad truncation depth in '" + source + "'"};
    }
    check(tl_rotation_from_named(source.substr(0, at).c_str(), depth, &raw));
    const RotationPtr full(raw);
    std::vector<int64_t> p_conv(depth), q_conv(depth);
    std::size_t count = 0;
    check(tl_rotation_convergents(full.get(), p_conv.data(), q_conv.data(), p_conv.size(), &count));
    if (count == 0) throw CliError{kExitUsage, "no convergents for '" + source + "'"};
    const std::size_t last = std::min<std::size_t>(count, p_conv.size()) - 1;
    tl_rotation* trunc = nullptr;
    check(tl_rotation_from_quadratic(p_conv[last], 0, 0, q_conv[last], 60, &trunc));
    return RotationPtr(trunc);
  }
  if (const auto v = parse_double(source)) {
    check(tl_rotation_from_real(*v, 60, &raw));
  } else {
    check(tl_rotation_from_named(source.c_str(), 60, &raw));
  }
  return RotationPtr(raw);
}

int cmd_bounded_scan(const BoundedScanArgs& a, const Globals& g) {
  std::vector<std::string> labels;
  std::stringstream in(a.candidates);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) labels.push_back(item);
  }
  std::vector<RotationPtr> owned;
  std::vector<const tl_rotation*> rotations;
  std::vector<const char*> label_ptrs;
  for (const auto& l : labels) {
    owned.push_back(candidate_rotation(l));
    rotations.push_back(owned.back().get());
    label_ptrs.push_back(l.c_str());
  }
  const std::vector<double> rhos = parse_list(a.rhos, "--rhos");
  tl_siegel_config cfg;
  tl_siegel_config_default(&cfg);
  cfg.coeffs = a.coeffs;
  cfg.samples = a.samples;
  cfg.precision_digits = g.precision;
  cfg.threads = g.threads;

  const auto dir = prepare_out_dir(g.out_dir);
  char* json = nullptr;
  std::size_t bounded = 0;
  check(tl_bounded_disk_scan(rotations.data(), label_ptrs.data(), rotations.size(), rhos.data(),
                             rhos.size(), &cfg, &json, &bounded));
  write_text(dir / "bounded_scan.json", take_string(json));

  Manifest manifest("bounded-scan");
  manifest.config()["candidates"] = labels;
  manifest.config()["coeffs"] = a.coeffs;
  manifest.config()["rhos"] = rhos;
  manifest.config()["samples"] = a.samples;
  manifest.config()["precision_digits"] = g.precision;
  manifest.add_output(dir / "bounded_scan.json");
  manifest.write(dir / "bounded_scan.manifest.json");

  Json summary;
  summary["candidates"] = labels.size();
  summary["bounded_likely"] = bounded;
  summary["heuristic"] = true;
  std::cout << summary.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the tangent family f(z) = lambda tan z", "tanlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--out", globals.out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", globals.threads, "worker threads, 0 = auto")->capture_default_str();
  app.add_option("--precision", globals.precision, "internal series precision in digits")
      ->capture_default_str();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate f, f' and the asymptotic values");
  add_lambda_flags(eval_cmd, eval.source);
  eval_cmd->add_option("--z", eval.z, "point z")->required();

  SiegelArgs siegel;
  auto* siegel_cmd = app.add_subcommand("siegel", "linearize at 0 and trace invariant curves");
  siegel_cmd->add_option("--theta", siegel.source.theta, "rotation number");
  siegel_cmd->add_option("--quadratic", siegel.source.quadratic, "golden, sqrt2m1 or e-2");
  siegel_cmd->add_option("--coeffs", siegel.coeffs, "number of series coefficients")
      ->capture_default_str();
  siegel_cmd->add_option("--rhos", siegel.rhos, "trace radii as fractions of the conformal radius")
      ->capture_default_str();
  siegel_cmd->add_option("--samples", siegel.samples, "points per trace")->capture_default_str();
  siegel_cmd->add_option("--extent-threshold", siegel.extent_threshold);
  siegel_cmd->add_option("--gap-threshold", siegel.gap_threshold);

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "classify a dynamical-plane grid and render it");
  add_lambda_flags(scan_cmd, scan.source);
  scan_cmd->add_option("--rect", scan.rect, "re_lo,im_lo,re_hi,im_hi")->capture_default_str();
  scan_cmd->add_option("--res", scan.res, "N or NXxNY")->capture_default_str();
  scan_cmd->add_option("--max-iter", scan.max_iter);
  scan_cmd->add_option("--escape-im", scan.escape_im);
  scan_cmd->add_option("--cycle-tol", scan.cycle_tol);
  scan_cmd->add_option("--cycle-max-period", scan.cycle_max_period);

  ParamScanArgs param;
  auto* param_cmd = app.add_subcommand("param-scan", "sweep theta on the unit circle");
  param_cmd->add_option("--theta-range", param.theta_range, "lo,hi")->capture_default_str();
  param_cmd->add_option("--res", param.res, "number of theta samples")->capture_default_str();
  param_cmd->add_option("--epsilon", param.epsilon, "radial probe offset")->capture_default_str();
  param_cmd->add_option("--max-iter", param.max_iter);
  param_cmd->add_option("--coeffs", param.linearizer_coeffs, "short linearizer length")
      ->capture_default_str();

  CfArgs cf;
  auto* cf_cmd = app.add_subcommand("cf", "continued fraction, convergents and Brjuno partials");
  cf_cmd->add_option("--x", cf.x, "real number in (0,1)");
  cf_cmd->add_option("--quadratic", cf.quadratic, "golden, sqrt2m1 or e-2");
  cf_cmd->add_option("--depth", cf.depth, "expansion depth")->capture_default_str();

  LiftArgs lift;
  auto* lift_cmd = app.add_subcommand("lift", "lift a polyline through an inverse branch");
  add_lambda_flags(lift_cmd, lift.source);
  lift_cmd->add_option("--curve", lift.curve, "CSV of re,im rows")->required();
  lift_cmd->add_option("--base", lift.base, "preimage of the first curve point")->required();

  BoundedScanArgs bscan;
  auto* bscan_cmd =
      app.add_subcommand("bounded-scan", "rank rotation numbers by boundedness indicators");
  bscan_cmd->add_option("--candidates", bscan.candidates, "comma list: name, name@depth, decimal")
      ->capture_default_str();
  bscan_cmd->add_option("--coeffs", bscan.coeffs, "series coefficients")->capture_default_str();
  bscan_cmd->add_option("--rhos", bscan.rhos, "trace radii")->capture_default_str();
  bscan_cmd->add_option("--samples", bscan.samples, "points per trace")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*eval_cmd) return cmd_eval(eval);
    if (*siegel_cmd) return cmd_siegel(siegel, globals);
    if (*scan_cmd) return cmd_scan(scan, globals);
    if (*param_cmd) return cmd_param_scan(param, globals);
    if (*cf_cmd) return cmd_cf(cf);
    if (*lift_cmd) return cmd_lift(lift, globals);
    if (*bscan_cmd) return cmd_bounded_scan(bscan, globals);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  }
  return kExitUsage;
}
