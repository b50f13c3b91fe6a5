// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cszego/boundary_operator.hpp"
#include "cszego/curve_spec.hpp"
#include "cszego/error.hpp"
#include "cszego/geometry.hpp"
#include "cszego/lambda.hpp"
#include "cszego/verify.hpp"
#include "json.hpp"

namespace {

using namespace cszego;
using json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;
constexpr int kMaxResolution = 512;
constexpr double kCollar = 1e-6;
constexpr double kSandwichTol = 1e-6;

enum Exit { kOk = 0, kCheckFailed = 1, kParse = 2, kDomain = 3, kIo = 4 };

struct Globals {
  int nodes = 512;
  std::string out;
  std::string format;  // empty: the command's default
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point_literal(const ScalarPoint& p) {
  if (p.is_infinity()) return "inf";
  const cplx z = p.value();
  return num(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

// Opens --out before any work so an unwritable path fails fast.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) fail(ErrorKind::Io, "write failed");
  }

 private:
  std::ofstream file_;
};

std::string scalar_text(const json& v) {
  if (v.is_null()) return "none";
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const json& e : v) s += (s.empty() ? "" : " ") + scalar_text(e);
    return s;
  }
  return v.dump();
}

// Flat key/value reports: `key value` lines, `key,value` CSV, or JSON.
void emit_report(const json& report, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << report.dump(2) << '\n';
    return;
  }
  if (format == "csv") out << "key,value\n";
  for (const auto& [k, v] : report.items()) out << k << (format == "csv" ? "," : " ") << scalar_text(v) << '\n';
}

void emit_table(const std::vector<std::string>& columns, const std::vector<std::vector<json>>& rows,
                const std::string& format, std::ostream& out) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
      arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << scalar_text(row[i]);
    out << '\n';
  }
}

// Evaluates Lambda at every point, in parallel for canonical curves. Results
// keep the input order.
std::vector<LambdaValue> evaluate_all(const Curve& c, const std::vector<cplx>& pts) {
  std::vector<LambdaValue> out(pts.size());
  if (c.is_sampled()) {
    const SampledLambdaEvaluator eval(c);
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = eval(pts[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < pts.size();) {
        try {
          out[i] = lambda(c, pts[i]);
        } catch (...) {
          const std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = pts.size();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

void check_resolution(int n, const char* what) {
  if (n < 1 || n > kMaxResolution) {
    fail(ErrorKind::Parse, std::string(what) + " must be between 1 and " + std::to_string(kMaxResolution));
  }
}

double grid_value(double lo, double hi, int i, int n) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }

int cmd_lambda(const Globals& g, const std::string& spec, const std::string& z_text) {
  const ScalarPoint z = parse_point(z_text);
  const Curve c = parse_curve(spec, g.nodes);
  Sink sink(g.out);
  const LambdaValue v = lambda(c, z);
  json r;
  r["curve"] = spec;
  r["z"] = point_literal(z);
  r["lambda"] = v.value;
  r["regime"] = std::string(to_string(v.regime));
  r["accuracy"] = v.accuracy;
  emit_report(r, g.format.empty() ? "text" : g.format, sink.stream());
  sink.finish();
  return kOk;
}

struct ScanArgs {
  std::string curve;
  std::vector<double> box;
  std::vector<int> res;
  std::optional<double> ray;
  std::vector<double> phi_range;
  std::vector<double> r_range;
  int samples = 500;
};

int cmd_scan(const Globals& g, const ScanArgs& a) {
  const int modes = !a.box.empty() + a.ray.has_value() + !a.r_range.empty();
  if (modes != 1) fail(ErrorKind::Parse, "scan needs exactly one of --box, --ray, --r-range");
  const std::string format = g.format.empty() ? "csv" : g.format;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  if (!a.r_range.empty()) {
    check_resolution(a.samples, "--samples");
    Sink sink(g.out);
    columns = {"r", "lambda0", "lambda_inf"};
    for (int k = 0; k < a.samples; ++k) {
      const double r = grid_value(a.r_range[0], a.r_range[1], k, a.samples);
      rows.push_back({r, lambda_ellipse_0(r), lambda_ellipse_inf(r)});
    }
    emit_table(columns, rows, format, sink.stream());
    sink.finish();
    return kOk;
  }

  if (a.curve.empty()) fail(ErrorKind::Parse, "--curve is required for box and ray scans");
  const Curve c = parse_curve(a.curve, g.nodes);
  std::vector<cplx> pts;
  std::vector<double> phis;
  if (!a.box.empty()) {
    const int nx = a.res[0], ny = a.res.size() > 1 ? a.res[1] : a.res[0];
    check_resolution(nx, "--res");
    check_resolution(ny, "--res");
    if (!(a.box[0] <= a.box[1] && a.box[2] <= a.box[3])) fail(ErrorKind::Parse, "--box needs xmin<=xmax,ymin<=ymax");
    for (int i = 0; i < ny; ++i) {
      for (int j = 0; j < nx; ++j) {
        const cplx z(grid_value(a.box[0], a.box[1], j, nx), grid_value(a.box[2], a.box[3], i, ny));
        if (distance_to_curve(c, z) > kCollar) pts.push_back(z);
      }
    }
    columns = {"x", "y", "lambda", "regime"};
  } else {
    check_resolution(a.samples, "--samples");
    if (!(*a.ray > 0)) fail(ErrorKind::Domain, "--ray radius must be positive");
    double lo, hi;
    if (!a.phi_range.empty()) {
      lo = a.phi_range[0];
      hi = a.phi_range[1];
    } else if (const Wedge* w = c.get_if<Wedge>()) {
      lo = -w->theta;
      hi = 2 * kPi - w->theta;
    } else {
      lo = -kPi;
      hi = kPi;
    }
    // Open interval: the endpoints are excluded.
    for (int k = 1; k <= a.samples; ++k) {
      const double phi = lo + (hi - lo) * k / (a.samples + 1);
      const cplx z = std::polar(*a.ray, phi);
      if (distance_to_curve(c, z) > kCollar) {
        pts.push_back(z);
        phis.push_back(phi);
      }
    }
    columns = {"phi", "lambda"};
  }
  Sink sink(g.out);
  const std::vector<LambdaValue> vals = evaluate_all(c, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (phis.empty()) {
      rows.push_back({pts[i].real(), pts[i].imag(), vals[i].value, std::string(to_string(vals[i].regime))});
    } else {
      rows.push_back({phis[i], vals[i].value});
    }
  }
  emit_table(columns, rows, format, sink.stream());
  sink.finish();
  return kOk;
}

int cmd_verify(const Globals& g, const std::string& level) {
  Sink sink(g.out);
  const std::vector<CheckResult> results = run_verification(level == "full" ? VerifyLevel::Full : VerifyLevel::Quick);
  bool all = true;
  for (const CheckResult& r : results) all = all && r.passed;
  const std::string format = g.format.empty() ? "json" : g.format;
  if (format == "json") {
    json doc;
    doc["level"] = level;
    doc["passed"] = all;
    doc["checks"] = json::array();
    for (const CheckResult& r : results) {
      doc["checks"].push_back({{"suite", r.suite},
                               {"name", r.name},
                               {"value", r.value},
                               {"reference", r.reference},
                               {"tolerance", r.tolerance},
                               {"margin", r.margin},
                               {"passed", r.passed}});
    }
    sink.stream() << doc.dump(2) << '\n';
  } else {
    std::vector<std::vector<json>> rows;
    for (const CheckResult& r : results) {
      rows.push_back({r.suite, r.name, r.value, r.reference, r.tolerance, r.margin, r.passed ? "pass" : "fail"});
    }
    emit_table({"suite", "name", "value", "reference", "tolerance", "margin", "status"}, rows, format, sink.stream());
  }
  sink.finish();
  if (all) return kOk;
  for (const CheckResult& r : results) {
    if (!r.passed) std::cerr << "FAILED " << r.suite << '/' << r.name << " margin " << num(r.margin) << '\n';
  }
  return kCheckFailed;
}

int cmd_spectrum(const Globals& g, const std::string& spec, int count) {
  const Curve c = parse_curve(spec, g.nodes);
  const Ellipse* e = c.get_if<Ellipse>();
  if (!e && !c.get_if<Circle>()) fail(ErrorKind::Domain, "spectrum supports ellipse and circle curves");
  if (count < 1) fail(ErrorKind::Parse, "--count must be positive");
  Sink sink(g.out);
  const BoundaryOperatorMatrix cm = discretize_cauchy(c, Side::Interior, g.nodes);
  const std::vector<double> lam = spectrum_A(kerzman_stein(cm), count);
  const double norm = operator_norm(cm);
  const double predicted = std::sqrt(std::max(0.0, norm * norm - 1.0));

  json r;
  r["curve"] = spec;
  r["nodes"] = g.nodes;
  r["lambda"] = lam;
  json residuals = json::array();
  for (std::size_t i = 0; i + 1 < lam.size(); i += 2) residuals.push_back(std::abs(lam[i] - lam[i + 1]));
  r["pair_residuals"] = residuals;
  r["bolt_ratio"] = (e && e->r > 1.0 && !lam.empty()) ? json(lam[0] * 2 * (e->r + 1) / (e->r - 1)) : json(nullptr);
  r["operator_norm"] = norm;
  r["sqrt_norm_sq_minus_1"] = predicted;
  r["lambda1_residual"] = lam.empty() ? json(nullptr) : json(std::abs(lam[0] - predicted));
  emit_report(r, g.format.empty() ? "text" : g.format, sink.stream());
  sink.finish();
  return kOk;
}

int cmd_bounds(const Globals& g, const std::string& spec) {
  const Curve c = parse_curve(spec, g.nodes);
  Sink sink(g.out);
  const NormBounds b = cauchy_norm_bounds(c, default_bounds_grid(c));
  std::optional<double> upper = b.upper;
  if (c.get_if<Circle>()) upper = fks_upper_bound(1.0);
  std::optional<double> numeric;
  if (c.is_bounded()) numeric = operator_norm(discretize_cauchy(c, Side::Interior, g.nodes));

  bool ordered = true;
  if (numeric) ordered = ordered && b.lower <= *numeric + kSandwichTol;
  if (upper) ordered = ordered && b.lower <= *upper + kSandwichTol;
  if (numeric && upper) ordered = ordered && *numeric <= *upper + kSandwichTol;

  json r;
  r["curve"] = spec;
  r["lower"] = b.lower;
  r["argmax"] = point_literal(b.argmax);
  r["grid_points"] = b.evaluated;
  r["upper"] = upper ? json(*upper) : json(nullptr);
  r["operator_norm"] = numeric ? json(*numeric) : json(nullptr);
  r["sandwich"] = ordered ? "ok" : "violated";
  emit_report(r, g.format.empty() ? "text" : g.format, sink.stream());
  sink.finish();
  if (!ordered) {
    std::cerr << "bounds: ordering lower <= norm <= upper violated\n";
    return kCheckFailed;
  }
  return kOk;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
      return kParse;
    case ErrorKind::Io:
      return kIo;
    default:
      return kDomain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cauchy-Szego Lambda function toolkit", "cszego"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--nodes", g.nodes, "Boundary nodes for sampled curves and operators")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "csv | json (text reports by default)")
      ->check(CLI::IsMember({"csv", "json", "text"}));

  std::string curve, z_text, level = "quick";
  int count = 8;
  ScanArgs scan;

  CLI::App* lam = app.add_subcommand("lambda", "Evaluate Lambda at a point");
  lam->add_option("--curve", curve, "Curve spec")->required();
  lam->add_option("--z", z_text, "Point: a+bi, a-bi or inf")->required();

  CLI::App* sc = app.add_subcommand("scan", "Tabulate Lambda over a box, a ray or the ellipse family");
  sc->add_option("--curve", scan.curve, "Curve spec");
  sc->add_option("--box", scan.box, "xmin,xmax,ymin,ymax")->delimiter(',')->expected(4);
  sc->add_option("--res", scan.res, "Resolution nx[,ny]")->delimiter(',')->expected(1, 2);
  sc->add_option("--ray", scan.ray, "Ray radius |z|");
  sc->add_option("--phi-range", scan.phi_range, "phi_min,phi_max (open interval)")->delimiter(',')->expected(2);
  sc->add_option("--r-range", scan.r_range, "Ellipse r_min,r_max")->delimiter(',')->expected(2);
  sc->add_option("--samples", scan.samples, "Samples for ray and r scans")->capture_default_str();

  CLI::App* ver = app.add_subcommand("verify", "Run the verification suites");
  ver->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();

  CLI::App* spc = app.add_subcommand("spectrum", "Leading eigenvalues of the Kerzman-Stein operator");
  spc->add_option("--curve", curve, "Ellipse or circle spec")->required();
  spc->add_option("--count", count, "Number of eigenvalues")->capture_default_str();

  CLI::App* bnd = app.add_subcommand("bounds", "Lower, upper and numerical Cauchy norm bounds");
  bnd->add_option("--curve", curve, "Curve spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  if (!scan.box.empty() && scan.res.empty()) {
    std::cerr << "cszego: --box requires --res\n";
    return kParse;
  }

  try {
    if (*lam) return cmd_lambda(g, curve, z_text);
    if (*sc) return cmd_scan(g, scan);
    if (*ver) return cmd_verify(g, level);
    if (*spc) return cmd_spectrum(g, curve, count);
    return cmd_bounds(g, curve);
  } catch (const Error& e) {
    std::cerr << "cszego: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "cszego: " << e.what() << '\n';
    return kDomain;
  }
}
