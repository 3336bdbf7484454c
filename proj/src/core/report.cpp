#include "report.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace tanlab {

namespace {

using Json = nlohmann::ordered_json;

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json estimate_body(const SiegelEstimate& est) {
  Json j;
  j["lambda"] = complex_json(est.lambda);
  j["radius_estimate"] = est.radius_estimate;
  j["fit_quality"] = est.fit_quality;
  Json traces = Json::array();
  for (const auto& t : est.traces) {
    traces.push_back({{"rho", t.rho},
                      {"samples", t.curve.size()},
                      {"extent", t.extent},
                      {"image_gap", t.image_gap}});
  }
  j["traces"] = traces;
  j["extent"] = est.extent;
  j["image_gap"] = est.image_gap;
  j["verdict"] = verdict_name(est.verdict);
  j["heuristic"] = true;
  j["diagnostics"] = est.diagnostics;
  j["coeffs"] = est.coeffs;
  j["precision_digits"] = est.precision_digits;
  j["smallest_denominator"] = est.smallest_denominator;
  return j;
}

Json config_json(const SiegelConfig& c) {
  return {{"coeffs", c.coeffs},
          {"precision_digits", c.precision_digits},
          {"samples", c.samples},
          {"extent_threshold", c.extent_threshold},
          {"gap_threshold", c.gap_threshold},
          {"stability", c.stability}};
}

}  // namespace

std::string siegel_estimate_json(const SiegelEstimate& est, const SiegelConfig& config) {
  Json j = estimate_body(est);
  j["config"] = config_json(config);
  return j.dump(2) + "\n";
}

std::string traces_csv(const SiegelEstimate& est) {
  std::ostringstream out;
  out.precision(17);
  out << "rho,t,re,im\n";
  for (const auto& trace : est.traces) {
    const std::size_t n = trace.curve.size();
    for (std::size_t k = 0; k < n; ++k) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      out << trace.rho << ',' << t << ',' << trace.curve[k].real() << ',' << trace.curve[k].imag()
          << '\n';
    }
  }
  return out.str();
}

std::string bounded_scan_json(const BoundedScanReport& report, const SiegelConfig& config) {
  Json j;
  j["heuristic"] = true;
  j["note"] =
      "exploratory ranking by stability of extent and image_gap; no verdict here certifies a "
      "bounded Siegel disk";
  j["rhos"] = report.rhos;
  j["config"] = config_json(config);
  Json entries = Json::array();
  for (const auto& c : report.ranked) {
    Json e;
    e["label"] = c.label;
    e["theta"] = c.theta;
    e["boundedness_score"] = c.boundedness_score;
    if (c.estimate) {
      e["verdict"] = verdict_name(c.estimate->verdict);
      e["estimate"] = estimate_body(*c.estimate);
    } else {
      e["verdict"] = verdict_name(Verdict::kInconclusive);
      e["error"] = c.error;
      e["message"] = c.message;
    }
    entries.push_back(std::move(e));
  }
  j["candidates"] = entries;
  return j.dump(2) + "\n";
}

std::string rotation_json(const RotationNumber& rn) {
  Json j;
  j["theta"] = rn.theta();
  j["depth"] = rn.depth();
  j["requested_depth"] = rn.requested_depth();
  j["rational"] = rn.rational();
  if (rn.exact_quadratic()) {
    const auto& q = *rn.exact_quadratic();
    j["exact_quadratic"] = {{"p", q.p}, {"q", q.q}, {"d", q.d}, {"r", q.r}};
  } else {
    j["exact_quadratic"] = nullptr;
  }
  j["quotients"] = std::vector<std::int64_t>(rn.quotients().begin(), rn.quotients().end());
  Json conv = Json::array();
  if (!rn.quotients().empty()) {
    for (const auto& c : convergents(rn)) conv.push_back({c.p, c.q});
  }
  j["convergents"] = conv;
  j["max_quotient"] = bounded_type_prefix(rn).max_quotient;
  Json brjuno = Json::array();
  if (!rn.rational()) {
    for (int n = 1; n <= rn.depth(); ++n) brjuno.push_back(brjuno_partial(rn, n).value);
  }
  j["brjuno_partials"] = brjuno;
  return j.dump();
}

std::string polyline_csv(const Polyline& line) {
  std::ostringstream out;
  out.precision(17);
  out << "index,re,im\n";
  for (std::size_t i = 0; i < line.size(); ++i) {
    out << i << ',' << line[i].real() << ',' << line[i].imag() << '\n';
  }
  return out.str();
}

Polyline parse_polyline_csv(const std::string& text) {
  std::istringstream in(text);
  std::string row;
  std::vector<Complex> pts;
  bool first = true;
  while (std::getline(in, row)) {
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    std::istringstream fields(row);
    std::string a, b;
    std::getline(fields, a, ',');
    std::getline(fields, b, ',');
    try {
      std::size_t ea = 0, eb = 0;
      const double re = std::stod(a, &ea);
      const double im = std::stod(b, &eb);
      pts.emplace_back(re, im);
    } catch (const std::exception&) {
      if (first) {
        first = false;
        continue;
      }
      throw Error(ErrorCode::kInvalidArgument, "malformed curve row: " + row);
    }
    first = false;
  }
  if (pts.empty()) throw Error(ErrorCode::kInvalidArgument, "curve file has no points");
  return Polyline(std::move(pts));
}

Polyline read_polyline_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_polyline_csv(buf.str());
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path);
}

}  // namespace tanlab
