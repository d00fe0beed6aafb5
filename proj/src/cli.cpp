#include "msmoments/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "msmoments/errors.hpp"
#include "msmoments/explicit_formula.hpp"
#include "msmoments/mangoldt.hpp"
#include "msmoments/moments.hpp"
#include "msmoments/parallel.hpp"
#include "msmoments/testfn.hpp"
#include "msmoments/zeros.hpp"

namespace msm::cli {

using nlohmann::ordered_json;

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_significant(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

namespace {

enum class Format { text, csv, json };

struct Options {
  unsigned threads = 1;
  std::string format = "text";
  std::string zeros;
  std::string cache;
  bool strict = false;

  std::string zeros_path;  // positional for `zeros check`
  int points = 200;

  std::uint64_t limit = 0;
  std::vector<double> psi_at;

  double x = 0.0;
  double delta = 0.1;
  std::string eta = "fejer";
  std::string phi = "fejer";
  double c_env = 10.0;
  double c_uni = 10.0;
  bool json_flag = false;

  int j = 1;

  std::vector<int> n = {2};
  double X = 1e5;
  std::string csv_path;
  bool zero_side = false;

  double xmin = 100.0;
  double xmax = 1e6;
  double ratio = 1.01;
  std::size_t top = 20;
};

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  return Format::text;
}

// Echo of the effective configuration, printed first by every report.
using Config = std::vector<std::pair<std::string, std::string>>;

void emit_header(std::ostream& out, const std::string& command, const Config& config, Format fmt) {
  if (fmt == Format::json) return;
  out << "# msm " << command << "\n";
  for (const auto& [k, v] : config) out << "# " << k << " = " << v << "\n";
}

ordered_json config_json(const Config& config) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : config) j[k] = v;
  return j;
}

void emit_json(std::ostream& out, const std::string& command, const Config& config, ordered_json body) {
  ordered_json doc;
  doc["command"] = command;
  doc["config"] = config_json(config);
  doc["report"] = std::move(body);
  out << doc.dump(2) << "\n";
}

void kv(std::ostream& out, const std::string& key, double v) {
  out << key << std::string(key.size() < 24 ? 24 - key.size() : 1, ' ') << format_number(v) << "\n";
}

void kv(std::ostream& out, const std::string& key, const std::string& v) {
  out << key << std::string(key.size() < 24 ? 24 - key.size() : 1, ' ') << v << "\n";
}

double num(double v) { return round_significant(v); }

ZeroTable resolve_zeros(const Options& o) {
  if (!o.zeros.empty()) return load_zeros(o.zeros);
  return load_default_zeros();
}

std::string zeros_source(const Options& o) {
  if (!o.zeros.empty()) return o.zeros;
  const char* env = std::getenv("ZERO_TABLE_PATH");
  return env ? std::string(env) + " (ZERO_TABLE_PATH)" : "";
}

MangoldtTable sieve(std::uint64_t limit, const Options& o) {
  return load_or_build_mangoldt(limit, o.cache);
}

TestFunction resolve_eta(const Options& o) {
  TestFunction eta = test_function_by_name(o.eta);
  if (o.strict) {
    ValidationOptions v;
    v.strict = true;
    validate_class(eta, v);
  }
  return eta;
}

Config base_config(const Options& o) {
  return {{"format", o.format}, {"strict", o.strict ? "true" : "false"},
          {"cache", o.cache.empty() ? "none" : o.cache}};
}

int cmd_sieve(const Options& o, std::ostream& out) {
  if (o.limit < 2) throw DomainError("sieve: --limit must be >= 2");
  const auto table = sieve(o.limit, o);
  const Format fmt = parse_format(o.format);
  Config config = base_config(o);
  config.emplace_back("limit", std::to_string(o.limit));
  emit_header(out, "sieve", config, fmt);
  ordered_json body;
  body["entries"] = table.size();
  body["psi_limit"] = num(psi(static_cast<double>(o.limit), table));
  ordered_json values = ordered_json::array();
  for (double x : o.psi_at) values.push_back({{"x", num(x)}, {"psi", num(psi(x, table))}});
  body["psi"] = values;
  if (fmt == Format::json) {
    emit_json(out, "sieve", config, body);
  } else if (fmt == Format::csv) {
    out << "x,psi\n";
    out << o.limit << "," << format_number(psi(static_cast<double>(o.limit), table)) << "\n";
    for (double x : o.psi_at) out << format_number(x) << "," << format_number(psi(x, table)) << "\n";
  } else {
    kv(out, "prime_powers", std::to_string(table.size()));
    kv(out, "psi(limit)", psi(static_cast<double>(o.limit), table));
    for (double x : o.psi_at) kv(out, "psi(" + format_number(x) + ")", psi(x, table));
  }
  return 0;
}

int cmd_zeros_check(const Options& o, std::ostream& out) {
  const std::string path = o.zeros_path.empty() ? o.zeros : o.zeros_path;
  const ZeroTable table = path.empty() ? load_default_zeros() : load_zeros(path);
  const auto report = check_zero_table(table, o.points);
  const Format fmt = parse_format(o.format);
  Config config = base_config(o);
  config.emplace_back("table", table.source());
  config.emplace_back("points", std::to_string(o.points));
  emit_header(out, "zeros check", config, fmt);
  const bool census_ok = std::all_of(report.census.begin(), report.census.end(), [](const CensusRow& r) { return r.passed; });
  if (fmt == Format::json) {
    ordered_json body;
    body["size"] = report.size;
    body["height"] = num(report.height);
    body["ascending"] = report.ascending;
    body["above_thirteen"] = report.above_thirteen;
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.census) {
      rows.push_back({{"T", num(r.T)}, {"count", r.count}, {"prediction", num(r.prediction)}, {"bound", num(r.bound)}, {"passed", r.passed}});
    }
    body["census"] = rows;
    body["passed"] = report.passed();
    emit_json(out, "zeros check", config, body);
  } else {
    const char sep = fmt == Format::csv ? ',' : ' ';
    if (fmt == Format::text) {
      kv(out, "ordinates", std::to_string(report.size));
      kv(out, "height", report.height);
      kv(out, "ascending", report.ascending ? "PASS" : "FAIL");
      kv(out, "all_above_13", report.above_thirteen ? "PASS" : "FAIL");
      kv(out, "rvm_census", census_ok ? "PASS" : "FAIL");
    }
    out << "T" << sep << "count" << sep << "prediction" << sep << "bound" << sep << "status\n";
    for (const auto& r : report.census) {
      out << format_number(r.T) << sep << r.count << sep << format_number(r.prediction) << sep
          << format_number(r.bound) << sep << (r.passed ? "PASS" : "FAIL") << "\n";
    }
  }
  return report.passed() ? 0 : 1;
}

int cmd_ef_verify(const Options& o, std::ostream& out) {
  const TestFunction eta = resolve_eta(o);
  const ZeroTable zeros = resolve_zeros(o);
  if (!(o.x >= 2.0)) throw DomainError("ef verify: --x must be >= 2");
  const auto limit =
      static_cast<std::uint64_t>(std::ceil(o.x * std::exp(o.delta * effective_radius(eta)))) + 1;
  const auto table = sieve(std::max<std::uint64_t>(limit, 2), o);
  VerifyOptions vo;
  vo.c_env = o.c_env;
  vo.c_uni = o.c_uni;
  const auto r = verify(o.x, o.delta, eta, zeros, table, vo);
  const Format fmt = o.json_flag ? Format::json : parse_format(o.format);
  Config config = base_config(o);
  config.emplace_back("x", format_number(o.x));
  config.emplace_back("delta", format_number(o.delta));
  config.emplace_back("eta", eta.name);
  config.emplace_back("zeros", zeros_source(o));
  config.emplace_back("zero_count", std::to_string(zeros.size()));
  config.emplace_back("sieve_limit", std::to_string(table.limit()));
  config.emplace_back("c_env", format_number(o.c_env));
  config.emplace_back("c_uni", format_number(o.c_uni));
  emit_header(out, "ef verify", config, fmt);
  const std::vector<std::pair<std::string, double>> fields = {
      {"t", r.t},
      {"delta", r.delta},
      {"prime_side", r.prime_side},
      {"main_term", r.main_term},
      {"zero_side", r.zero_side},
      {"archimedean", r.archimedean},
      {"residual", r.residual},
      {"envelope", r.envelope},
      {"tail_estimate", r.tail_estimate},
      {"threshold", r.threshold},
      {"uniform_constant", r.uniform_constant},
  };
  if (fmt == Format::json) {
    ordered_json body;
    for (const auto& [k, v] : fields) body[k] = num(v);
    body["uniform_passed"] = r.uniform_passed;
    body["passed"] = r.passed;
    emit_json(out, "ef verify", config, body);
  } else if (fmt == Format::csv) {
    for (const auto& [k, v] : fields) out << k << ",";
    out << "status\n";
    for (const auto& [k, v] : fields) out << format_number(v) << ",";
    out << (r.passed ? "PASS" : "FAIL") << "\n";
  } else {
    for (const auto& [k, v] : fields) kv(out, k, v);
    kv(out, "uniform_bound", r.uniform_passed ? "PASS" : "FAIL");
    kv(out, "status", r.passed ? "PASS" : "FAIL");
  }
  return r.passed ? 0 : 1;
}

int cmd_zerosum(const Options& o, std::ostream& out) {
  const TestFunction eta = resolve_eta(o);
  const ZeroTable zeros = resolve_zeros(o);
  const auto s = s_moment(o.j, o.delta, eta, zeros);
  const Format fmt = parse_format(o.format);
  Config config = base_config(o);
  config.emplace_back("delta", format_number(o.delta));
  config.emplace_back("eta", eta.name);
  config.emplace_back("j", std::to_string(o.j));
  config.emplace_back("zeros", zeros_source(o));
  config.emplace_back("zero_count", std::to_string(zeros.size()));
  emit_header(out, "zerosum", config, fmt);
  std::vector<std::pair<std::string, double>> fields = {{"value", s.value}, {"tail", s.tail}, {"delta_times_value", o.delta * s.value}};
  if (o.j == 1) {
    const auto [alpha, beta] = square_functionals(eta);
    const double main = alpha * std::log(1.0 / o.delta) + beta;
    fields.emplace_back("alpha", alpha);
    fields.emplace_back("beta", beta);
    fields.emplace_back("asymptotic", main / o.delta);
    fields.emplace_back("residual", o.delta * s.value - main);
  }
  if (fmt == Format::json) {
    ordered_json body;
    for (const auto& [k, v] : fields) body[k] = num(v);
    body["tail_warning"] = s.tail_warning;
    emit_json(out, "zerosum", config, body);
  } else if (fmt == Format::csv) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << fields[i].first << (i + 1 < fields.size() ? "," : "\n");
    for (std::size_t i = 0; i < fields.size(); ++i) out << format_number(fields[i].second) << (i + 1 < fields.size() ? "," : "\n");
  } else {
    for (const auto& [k, v] : fields) kv(out, k, v);
    if (s.tail_warning) kv(out, "warning", "tail exceeds 10% of the value");
  }
  return 0;
}

int cmd_moment(const Options& o, std::ostream& out) {
  MomentRequest req;
  req.X = o.X;
  req.delta = o.delta;
  req.eta = resolve_eta(o);
  req.phi = weight_function_by_name(o.phi);
  std::optional<ZeroTable> zeros;
  if (!o.zeros.empty() || std::getenv("ZERO_TABLE_PATH") != nullptr) zeros = resolve_zeros(o);
  const auto table = sieve(moment_required_limit(req), o);

  std::vector<MomentResult> results;
  for (int n : o.n) {
    req.n = n;
    results.push_back(moment_prime_side(req, table, zeros ? &*zeros : nullptr));
  }
  std::optional<PairSum> pair;
  if (o.zero_side) {
    if (!zeros) throw DomainError("moment: --zero-side needs --zeros or ZERO_TABLE_PATH");
    pair = moment_zero_side_pair(req.X, req.delta, req.eta, req.phi, *zeros);
  }

  Config config = base_config(o);
  config.emplace_back("X", format_number(o.X));
  config.emplace_back("delta", format_number(o.delta));
  config.emplace_back("eta", req.eta.name);
  config.emplace_back("phi", req.phi.name);
  config.emplace_back("zeros", zeros ? zeros_source(o) : "none");
  config.emplace_back("sieve_limit", std::to_string(table.limit()));

  const std::vector<std::string> columns = {"n", "X", "delta", "value", "prediction_ms", "theorem_main_term", "pairing_bound", "quadrature_error"};
  auto row = [](const MomentResult& r) {
    return std::vector<double>{static_cast<double>(r.n), r.X, r.delta, r.value, r.prediction_ms, r.theorem_main_term, r.pairing_bound, r.quadrature_error};
  };
  auto write_csv = [&](std::ostream& s) {
    for (std::size_t i = 0; i < columns.size(); ++i) s << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& r : results) {
      const auto v = row(r);
      for (std::size_t i = 0; i < v.size(); ++i) s << format_number(v[i]) << (i + 1 < v.size() ? "," : "\n");
    }
  };
  if (!o.csv_path.empty()) {
    std::ofstream f(o.csv_path);
    if (!f) throw FormatError("moment: cannot write " + o.csv_path);
    write_csv(f);
  }

  const Format fmt = parse_format(o.format);
  emit_header(out, "moment compute", config, fmt);
  if (fmt == Format::json) {
    ordered_json body = ordered_json::array();
    for (const auto& r : results) {
      ordered_json j;
      const auto v = row(r);
      for (std::size_t i = 0; i < columns.size(); ++i) j[columns[i]] = columns[i] == "n" ? ordered_json(r.n) : ordered_json(num(v[i]));
      j["main_term_base_negative"] = r.main_term_base_negative;
      j["samples"] = r.samples;
      j["t_min"] = num(r.t_min);
      j["t_max"] = num(r.t_max);
      j["step"] = num(r.step);
      j["warnings"] = r.warnings;
      body.push_back(j);
    }
    ordered_json doc = {{"moments", body}};
    if (pair) doc["zero_side_pair"] = {{"value", num(pair->value)}, {"tail", num(pair->tail)}, {"zeros_used", pair->zeros_used}};
    emit_json(out, "moment compute", config, doc);
  } else if (fmt == Format::csv) {
    write_csv(out);
  } else {
    for (const auto& r : results) {
      out << "n = " << r.n << "\n";
      kv(out, "  value", r.value);
      kv(out, "  prediction_ms", r.prediction_ms);
      kv(out, "  theorem_main_term", r.theorem_main_term);
      kv(out, "  pairing_bound", r.pairing_bound);
      kv(out, "  quadrature_error", r.quadrature_error);
      kv(out, "  samples", std::to_string(r.samples));
      kv(out, "  window", "[" + format_number(r.t_min) + ", " + format_number(r.t_max) + "]");
      for (const auto& w : r.warnings) kv(out, "  warning", w);
    }
    if (pair) {
      kv(out, "zero_side_pair", pair->value);
      kv(out, "zero_side_tail", pair->tail);
    }
  }
  return 0;
}

int cmd_constants(const Options& o, std::ostream& out) {
  const auto c = constant_C();
  const Format fmt = parse_format(o.format);
  const Config config = base_config(o);
  emit_header(out, "constants", config, fmt);
  std::vector<std::pair<std::string, double>> fields = {
      {"C_piece_hyperbolic_0_1", c.pieces[0]}, {"C_piece_hyperbolic_1_inf", c.pieces[1]},
      {"C_piece_digamma_log_pi", c.pieces[2]}, {"C_piece_cosine_0_1", c.pieces[3]},
      {"C_piece_cosine_1_inf", c.pieces[4]},   {"C_assembled", c.assembled},
      {"C_collapsed", c.collapsed},            {"C_difference", c.difference()},
      {"digamma_quarter", c.digamma_quarter},  {"fejer_alpha", fejer_alpha()},
      {"fejer_beta", fejer_beta()},
  };
  for (int n = 0; n <= 12; ++n) fields.emplace_back("mu_" + std::to_string(n), gaussian_moment(n));
  if (fmt == Format::json) {
    ordered_json body;
    for (const auto& [k, v] : fields) body[k] = num(v);
    emit_json(out, "constants", config, body);
  } else if (fmt == Format::csv) {
    out << "name,value\n";
    for (const auto& [k, v] : fields) out << k << "," << format_number(v) << "\n";
  } else {
    for (const auto& [k, v] : fields) kv(out, k, v);
  }
  return 0;
}

int cmd_scan(const Options& o, std::ostream& out) {
  const auto limit = static_cast<std::uint64_t>(std::ceil(o.xmax * (1.0 + o.delta))) + 1;
  const auto table = sieve(limit, o);
  ScanOptions so;
  so.ratio = o.ratio;
  const double d = o.delta;
  auto points = omega_scan(o.xmin, o.xmax, [d](double) { return d; }, table, so);
  if (points.size() > o.top) points.resize(o.top);
  const Format fmt = parse_format(o.format);
  Config config = base_config(o);
  config.emplace_back("xmin", format_number(o.xmin));
  config.emplace_back("xmax", format_number(o.xmax));
  config.emplace_back("delta", format_number(o.delta));
  config.emplace_back("ratio", format_number(o.ratio));
  config.emplace_back("top", std::to_string(o.top));
  emit_header(out, "scan", config, fmt);
  if (fmt == Format::json) {
    ordered_json body = ordered_json::array();
    for (const auto& p : points) {
      body.push_back({{"x", num(p.x)}, {"delta", num(p.delta)}, {"deviation", num(p.deviation)}, {"normalized", num(p.normalized_deviation)}});
    }
    emit_json(out, "scan", config, body);
  } else {
    const char sep = fmt == Format::csv ? ',' : ' ';
    out << "x" << sep << "delta" << sep << "deviation" << sep << "normalized\n";
    for (const auto& p : points) {
      out << format_number(p.x) << sep << format_number(p.delta) << sep << format_number(p.deviation) << sep
          << format_number(p.normalized_deviation) << "\n";
    }
  }
  return 0;
}

// Closest long option name, for "did you mean" hints.
std::string suggest(const std::string& word, const std::vector<std::string>& candidates) {
  auto distance = [](const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      cur[0] = i;
      for (std::size_t j = 1; j <= b.size(); ++j) {
        cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
      }
      std::swap(prev, cur);
    }
    return prev[b.size()];
  };
  std::string best;
  std::size_t best_d = 4;
  for (const auto& c : candidates) {
    const auto d = distance(word, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

void collect_names(const CLI::App* app, std::vector<std::string>& names) {
  for (const auto* opt : app->get_options()) {
    for (const auto& l : opt->get_lnames()) names.push_back("--" + l);
  }
  for (const auto* sub : app->get_subcommands({})) {
    names.push_back(sub->get_name());
    collect_names(sub, names);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Moments of primes in short intervals: sieve, zero sums, explicit formula and moments.", "msm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--zeros", o.zeros, "Zero table (default: $ZERO_TABLE_PATH)");
  app.add_option("--cache", o.cache, "Binary cache file for the sieve");
  app.add_flag("--strict", o.strict, "Reject test functions that fail class validation");

  auto* sieve_cmd = app.add_subcommand("sieve", "Sieve Lambda(n) and print psi");
  sieve_cmd->add_option("--limit", o.limit, "Sieve limit")->required();
  sieve_cmd->add_option("--psi", o.psi_at, "Evaluate psi at these x");

  auto* zeros_cmd = app.add_subcommand("zeros", "Zero-table utilities");
  zeros_cmd->require_subcommand(1);
  auto* zeros_check = zeros_cmd->add_subcommand("check", "Validate a zero table against Riemann-von Mangoldt");
  zeros_check->add_option("path", o.zeros_path, "Zero table");
  zeros_check->add_option("--points", o.points, "Number of log-spaced heights")->check(CLI::PositiveNumber);

  auto* ef_cmd = app.add_subcommand("ef", "Explicit formula");
  ef_cmd->require_subcommand(1);
  auto* ef_verify = ef_cmd->add_subcommand("verify", "Check the explicit formula at one (x, delta)");
  ef_verify->add_option("--x", o.x, "x >= 2")->required();
  ef_verify->add_option("--delta", o.delta, "Window width");
  ef_verify->add_option("--eta", o.eta, "fejer | gauss-conv(sigma) | csv:<path>");
  ef_verify->add_option("--c-env", o.c_env, "Envelope multiplier in the PASS rule");
  ef_verify->add_option("--c-uni", o.c_uni, "Constant in the uniform bound");
  ef_verify->add_flag("--json", o.json_flag, "JSON report");

  auto* zs_cmd = app.add_subcommand("zerosum", "Sum of |eta_hat|^{2j} over zeros and its asymptotic");
  zs_cmd->add_option("--delta", o.delta, "delta in (0, 1)");
  zs_cmd->add_option("--eta", o.eta, "Test function");
  zs_cmd->add_option("--j", o.j, "Power index j >= 1")->check(CLI::PositiveNumber);

  auto* moment_cmd = app.add_subcommand("moment", "Moments M_n(X, delta; eta, Phi)");
  moment_cmd->require_subcommand(1);
  auto* moment_compute = moment_cmd->add_subcommand("compute", "Compute moments from the prime side");
  moment_compute->add_option("--n", o.n, "Moment orders (comma separated)")->delimiter(',');
  moment_compute->add_option("--X", o.X, "X >= 2");
  moment_compute->add_option("--delta", o.delta, "delta in (0, 1)");
  moment_compute->add_option("--eta", o.eta, "Test function");
  moment_compute->add_option("--phi", o.phi, "fejer | gauss(sigma)");
  moment_compute->add_option("--csv", o.csv_path, "Also write the CSV table here");
  moment_compute->add_flag("--zero-side", o.zero_side, "Add the zero-side n = 2 oracle");

  app.add_subcommand("constants", "C (both forms), digamma(1/4), Fejer functionals, Gaussian moments");

  auto* scan_cmd = app.add_subcommand("scan", "Largest normalized short-interval deviations");
  scan_cmd->add_option("--xmin", o.xmin, "Start of the geometric grid");
  scan_cmd->add_option("--xmax", o.xmax, "End of the geometric grid");
  scan_cmd->add_option("--delta", o.delta, "Relative window");
  scan_cmd->add_option("--ratio", o.ratio, "Grid ratio > 1");
  scan_cmd->add_option("--top", o.top, "Rows to print");

  if (args.empty()) {
    out << app.help();
    return 2;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "msm: " << e.what() << "\n";
    std::vector<std::string> names;
    collect_names(&app, names);
    for (const auto& a : args) {
      if (a.empty() || a == "--") continue;
      const bool is_flag = a.rfind("--", 0) == 0;
      if (!is_flag && !std::isalpha(static_cast<unsigned char>(a[0]))) continue;
      const std::string word = is_flag ? a.substr(0, a.find('=')) : a;
      if (std::find(names.begin(), names.end(), word) != names.end()) continue;
      const auto hint = suggest(word, names);
      if (hint.empty()) continue;
      err << "msm: unknown " << (is_flag ? "flag " : "command ") << word << "; did you mean " << hint << "?\n";
    }
    err << "Run with --help for usage.\n";
    return 2;
  }

  set_thread_count(o.threads);
  try {
    if (sieve_cmd->parsed()) return cmd_sieve(o, out);
    if (zeros_check->parsed()) return cmd_zeros_check(o, out);
    if (ef_verify->parsed()) return cmd_ef_verify(o, out);
    if (zs_cmd->parsed()) return cmd_zerosum(o, out);
    if (moment_compute->parsed()) return cmd_moment(o, out);
    if (app.got_subcommand("constants")) return cmd_constants(o, out);
    if (scan_cmd->parsed()) return cmd_scan(o, out);
  } catch (const DomainError& e) {
    err << "msm: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "msm: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace msm::cli
