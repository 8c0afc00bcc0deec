#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qes/curves.hpp"
#include "qes/ensemble_run.hpp"
#include "qes/errors.hpp"
#include "qes/histogram.hpp"
#include "qes/io.hpp"
#include "qes/sampler.hpp"
#include "qes/verify.hpp"

namespace qes::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

struct RunConfig {
  EnsembleKind kind = EnsembleKind::RealS3;
  std::uint64_t n = 10'000'000;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
  double delta_c = 0.01;
  double delta_i = 0.01;
  std::string out = "-";
  Format format = Format::Csv;
};

void validate(const RunConfig& cfg) {
  if (cfg.n < 1) throw UsageError("--n must be at least 1");
  if (cfg.workers < 1) throw UsageError("--workers must be at least 1");
  for (double d : {cfg.delta_c, cfg.delta_i}) {
    if (!(d > 0.0 && d <= 1.0)) throw UsageError("bin widths must lie in (0, 1]");
  }
}

// Integer counts; scientific notation such as 1e7 is accepted when it
// denotes a whole number.
std::uint64_t parse_count(const std::string& text, const char* flag) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  if (auto [ptr, ec] = std::from_chars(text.data(), end, value); ec == std::errc() && ptr == end) return value;
  double d = 0.0;
  if (auto [ptr, ec] = std::from_chars(text.data(), end, d); ec == std::errc() && ptr == end && d >= 0.0 &&
                                                             d < 1.8e19 && std::floor(d) == d) {
    return static_cast<std::uint64_t>(d);
  }
  throw UsageError(std::string(flag) + " expects a non-negative integer, got '" + text + "'");
}

unsigned resolve_workers(const std::optional<std::string>& flag) {
  if (flag) {
    const auto w = parse_count(*flag, "--workers");
    if (w < 1 || w > 4096) throw UsageError("--workers must lie in [1, 4096]");
    return static_cast<unsigned>(w);
  }
  if (const char* env = std::getenv("QES_WORKERS"); env != nullptr && *env != '\0') {
    const auto w = parse_count(env, "QES_WORKERS");
    if (w < 1 || w > 4096) throw UsageError("QES_WORKERS must lie in [1, 4096]");
    return static_cast<unsigned>(w);
  }
  return hardware_workers();
}

EnsembleKind parse_kind(const std::string& name) {
  const auto kind = parse_ensemble_kind(name);
  if (!kind) throw UsageError("unknown ensemble '" + name + "' (real-s3, complex-s7, param, zero-mi)");
  return *kind;
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw UsageError("unknown format '" + name + "' (csv, json)");
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

HistogramFile load_histogram(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open histogram '" + path + "'");
  try {
    return read_histogram_csv(file);
  } catch (const Error& e) {
    throw IoError("'" + path + "': " + e.what());
  }
}

// Provenance comment carried by every derived CSV.
std::string provenance(const HistogramFile& file) {
  std::ostringstream os;
  os << "delta_c=" << format_double(file.histogram.delta_c())
     << " delta_i=" << format_double(file.histogram.delta_i()) << " total=" << file.histogram.total();
  if (file.metadata) {
    os << " ensemble=" << to_string(file.metadata->kind) << " master_seed=" << file.metadata->master_seed;
  }
  return os.str();
}

std::string cmd_sample(const RunConfig& cfg) {
  validate(cfg);
  const EnsembleSpec spec{cfg.kind, cfg.n, SeedSpec{cfg.master_seed, 0}};
  const Joint2DHistogram h = sample_histogram(spec, BinSpec{cfg.delta_c, cfg.delta_i}, cfg.workers);
  const RunMetadata meta{cfg.kind, cfg.master_seed, cfg.n};
  std::ostringstream os;
  if (cfg.format == Format::Json) {
    write_histogram_json(os, h, meta);
  } else {
    write_histogram_csv(os, h, meta);
  }
  return os.str();
}

std::string cmd_table(const std::string& hist_path, const std::vector<double>& centers, double halfwidth,
                      Format format) {
  if (!(halfwidth > 0.0 && halfwidth <= 0.5)) throw UsageError("--halfwidth must lie in (0, 0.5]");
  for (double c : centers) {
    if (!(c >= 0.0 && c <= 1.0)) throw UsageError("slice centers must lie in [0, 1]");
  }
  const HistogramFile file = load_histogram(hist_path);

  struct Row {
    double center;
    std::optional<SliceStats> stats;
    double ridge_c;
  };
  std::vector<Row> rows;
  for (double center : centers) {
    Row row{center, std::nullopt, ridge_C(EntropyBits{center}).value};
    try {
      row.stats = slice_stats(file.histogram, center, halfwidth);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptySlice) throw;
    }
    rows.push_back(row);
  }

  std::ostringstream os;
  if (format == Format::Json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json j;
      j["i_center"] = r.center;
      j["c_star"] = r.stats ? nlohmann::ordered_json(r.stats->c_star) : nlohmann::ordered_json(nullptr);
      j["mean_c"] = r.stats ? nlohmann::ordered_json(r.stats->mean_c) : nlohmann::ordered_json(nullptr);
      j["std_c"] = r.stats ? nlohmann::ordered_json(r.stats->std_c) : nlohmann::ordered_json(nullptr);
      j["count"] = r.stats ? r.stats->count : 0;
      j["ridge_c"] = r.ridge_c;
      j["status"] = r.stats ? "ok" : "empty";
      arr.push_back(std::move(j));
    }
    os << arr.dump() << '\n';
    return os.str();
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  os << "# slice_stats halfwidth=" << format_double(halfwidth) << ' ' << provenance(file) << '\n';
  os << "i_center,c_star,mean_c,std_c,count,ridge_c,status\n";
  for (const auto& r : rows) {
    const SliceStats s = r.stats.value_or(SliceStats{r.center, halfwidth, nan, nan, nan, 0});
    os << format_double(r.center) << ',' << format_double(s.c_star) << ',' << format_double(s.mean_c) << ','
       << format_double(s.std_c) << ',' << s.count << ',' << format_double(r.ridge_c) << ','
       << (r.stats ? "ok" : "empty") << '\n';
  }
  return os.str();
}

std::string cmd_curve(std::uint64_t points, Format format) {
  if (points < 2 || points > 100'000'000) throw UsageError("--points must lie in [2, 1e8]");
  std::ostringstream os;
  auto value_at = [points](std::uint64_t k) {
    return k + 1 == points ? 1.0 : static_cast<double>(k) / static_cast<double>(points - 1);
  };
  if (format == Format::Json) {
    auto arr = nlohmann::ordered_json::array();
    for (std::uint64_t k = 0; k < points; ++k) {
      const Concurrence c{value_at(k)};
      arr.push_back({{"c", c.value}, {"ridge_i", ridge_I(c).value}, {"bound_e", bound_E(c).value}});
    }
    os << arr.dump() << '\n';
    return os.str();
  }
  os << "# ridge_curve points=" << points << '\n';
  os << "c,ridge_i,bound_e\n";
  for (std::uint64_t k = 0; k < points; ++k) {
    const Concurrence c{value_at(k)};
    os << format_double(c.value) << ',' << format_double(ridge_I(c).value) << ','
       << format_double(bound_E(c).value) << '\n';
  }
  return os.str();
}

std::string cmd_density(const std::string& hist_path, const std::string& axis_name,
                        const std::vector<double>& slice, Format format) {
  Axis axis;
  if (axis_name == "c" || axis_name == "C") {
    axis = Axis::C;
  } else if (axis_name == "i" || axis_name == "I") {
    axis = Axis::I;
  } else {
    throw UsageError("--axis must be c or i");
  }
  if (!slice.empty() && slice.size() != 2) throw UsageError("--slice takes two values: lo hi");
  if (slice.size() == 2 && !(slice[0] >= 0.0 && slice[1] <= 1.0 && slice[0] < slice[1])) {
    throw UsageError("--slice bounds must satisfy 0 <= lo < hi <= 1");
  }
  const HistogramFile file = load_histogram(hist_path);

  Density1D d;
  std::string what;
  if (slice.empty()) {
    d = marginal(file.histogram, axis);
    what = "marginal";
  } else if (axis == Axis::C) {
    d = conditional_slice(file.histogram, slice[0], slice[1]);
    what = "given_i=" + format_double(slice[0]) + ":" + format_double(slice[1]);
  } else {
    d = conditional_slice_given_c(file.histogram, slice[0], slice[1]);
    what = "given_c=" + format_double(slice[0]) + ":" + format_double(slice[1]);
  }

  std::ostringstream os;
  if (format == Format::Json) {
    nlohmann::ordered_json j;
    j["axis"] = axis == Axis::C ? "C" : "I";
    j["kind"] = what;
    j["delta"] = d.delta;
    j["density"] = d.values;
    os << j.dump() << '\n';
    return os.str();
  }
  os << "# density axis=" << (axis == Axis::C ? "C" : "I") << ' ' << what << ' ' << provenance(file) << '\n';
  write_density_csv(os, d);
  return os.str();
}

struct VerifyOptions {
  bool all = false;
  std::vector<std::string> checks;
  std::optional<std::string> ensemble;
  std::uint64_t n = 1'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double bins = 0.01;
  std::string hist;
};

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"bound", "appendix", "param-oracle", "extrema",
                                              "route", "polar",    "ridge"};
  return names;
}

std::vector<VerificationReport> cmd_verify(const VerifyOptions& opt) {
  if (opt.n < 1) throw UsageError("--n must be at least 1");
  if (!opt.all && opt.checks.empty()) throw UsageError("select checks with --all or --check");
  for (const auto& c : opt.checks) {
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end()) {
      throw UsageError("unknown check '" + c + "'");
    }
  }
  std::vector<EnsembleKind> kinds;
  if (opt.ensemble) {
    const EnsembleKind k = parse_kind(*opt.ensemble);
    if (k != EnsembleKind::RealS3 && k != EnsembleKind::ComplexS7) {
      throw UsageError("--ensemble for verify must be real-s3 or complex-s7");
    }
    kinds.push_back(k);
  } else if (opt.all) {
    kinds = {EnsembleKind::RealS3, EnsembleKind::ComplexS7};
  } else {
    kinds = {EnsembleKind::RealS3};
  }

  auto wanted = [&](const std::string& name) {
    return opt.all ? (name != "ridge" || !opt.hist.empty())
                   : std::find(opt.checks.begin(), opt.checks.end(), name) != opt.checks.end();
  };

  const SeedSpec seed{opt.seed, 0};
  std::vector<VerificationReport> reports;
  if (wanted("bound")) {
    for (auto k : kinds) reports.push_back(check_bound(opt.n, seed, k, opt.workers));
  }
  if (wanted("appendix")) reports.push_back(check_appendix(opt.n, seed, opt.workers));
  if (wanted("param-oracle")) reports.push_back(check_param_oracle(opt.n, seed));
  if (wanted("extrema")) reports.push_back(check_extrema(opt.n, seed));
  if (wanted("route")) {
    for (auto k : kinds) reports.push_back(check_route_consistency(opt.n, seed, k, opt.workers));
  }
  if (wanted("polar")) reports.push_back(check_polar_consistency(opt.n, seed, opt.workers));
  if (wanted("ridge")) {
    Joint2DHistogram h = opt.hist.empty()
                             ? sample_histogram(EnsembleSpec{EnsembleKind::RealS3, opt.n, seed},
                                                BinSpec{opt.bins, opt.bins}, opt.workers)
                             : load_histogram(opt.hist).histogram;
    try {
      reports.push_back(check_ridge_empirical(h));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InsufficientData) throw UsageError(e.what());
      throw;
    }
  }
  return reports;
}

std::vector<double> default_centers() {
  std::vector<double> c;
  for (int k = 0; k <= 9; ++k) c.push_back(k / 10.0);
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo statistics of concurrence and post-measurement mutual information", "qes"};
  app.require_subcommand(1);

  // sample
  RunConfig sample_cfg;
  std::string sample_kind = "real-s3", sample_n = "10000000", sample_format = "csv";
  std::optional<std::string> sample_workers;
  std::optional<double> sample_bins, sample_dc, sample_di;
  auto* sample = app.add_subcommand("sample", "Sample an ensemble and write the joint (C, I) histogram");
  sample->add_option("--ensemble", sample_kind, "real-s3 | complex-s7 | param | zero-mi");
  sample->add_option("--n", sample_n, "Number of states");
  sample->add_option("--seed", sample_cfg.master_seed, "Master seed");
  sample->add_option("--workers", sample_workers, "Worker threads (default: QES_WORKERS or core count)");
  sample->add_option("--bins", sample_bins, "Bin width on both axes (default 0.01)");
  sample->add_option("--delta-c", sample_dc, "Bin width on the C axis");
  sample->add_option("--delta-i", sample_di, "Bin width on the I axis");
  sample->add_option("--out", sample_cfg.out, "Output path, '-' for stdout");
  sample->add_option("--format", sample_format, "csv | json");

  // table
  std::string table_hist, table_out = "-", table_format = "csv";
  std::vector<double> table_centers = default_centers();
  double table_halfwidth = 0.005;
  auto* table = app.add_subcommand("table", "Per-slice statistics of p(C | I)");
  table->add_option("--hist", table_hist, "Histogram CSV written by 'sample'")->required();
  table->add_option("--centers", table_centers, "Slice centers in I")->delimiter(',');
  table->add_option("--halfwidth", table_halfwidth, "Slice half-width in I");
  table->add_option("--out", table_out, "Output path, '-' for stdout");
  table->add_option("--format", table_format, "csv | json");

  // curve
  std::string curve_points = "101", curve_out = "-", curve_format = "csv";
  auto* curve = app.add_subcommand("curve", "Ridge curve and upper bound on a uniform C grid");
  curve->add_option("--points", curve_points, "Grid points including both ends");
  curve->add_option("--out", curve_out, "Output path, '-' for stdout");
  curve->add_option("--format", curve_format, "csv | json");

  // density
  std::string density_hist, density_axis = "c", density_out = "-", density_format = "csv";
  std::vector<double> density_slice;
  auto* density = app.add_subcommand("density", "Marginal or conditional density from a histogram");
  density->add_option("--hist", density_hist, "Histogram CSV written by 'sample'")->required();
  density->add_option("--axis", density_axis, "c or i: the axis of the emitted density");
  density->add_option("--slice", density_slice, "Condition on the other axis lying in [lo, hi]")
      ->expected(2);
  density->add_option("--out", density_out, "Output path, '-' for stdout");
  density->add_option("--format", density_format, "csv | json");

  // verify
  VerifyOptions vopt;
  std::string verify_n = "1000000", verify_out = "-";
  std::optional<std::string> verify_workers;
  auto* verify = app.add_subcommand("verify", "Run sampled checks; JSON lines report");
  verify->add_flag("--all", vopt.all, "Run every check (ridge only with --hist)");
  verify->add_option("--check", vopt.checks,
                     "bound | appendix | param-oracle | extrema | route | polar | ridge (repeatable)");
  verify->add_option("--ensemble", vopt.ensemble, "real-s3 | complex-s7 for bound and route");
  verify->add_option("--n", verify_n, "Samples per check");
  verify->add_option("--seed", vopt.seed, "Master seed");
  verify->add_option("--workers", verify_workers, "Worker threads");
  verify->add_option("--bins", vopt.bins, "Bin width for the sampled ridge histogram");
  verify->add_option("--hist", vopt.hist, "Histogram CSV for the ridge check");
  verify->add_option("--out", verify_out, "Output path, '-' for stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qes: " << e.what() << '\n';
    return kExitBadArguments;
  }

  try {
    if (*sample) {
      sample_cfg.kind = parse_kind(sample_kind);
      sample_cfg.n = parse_count(sample_n, "--n");
      sample_cfg.workers = resolve_workers(sample_workers);
      sample_cfg.format = parse_format(sample_format);
      if (sample_bins) sample_cfg.delta_c = sample_cfg.delta_i = *sample_bins;
      if (sample_dc) sample_cfg.delta_c = *sample_dc;
      if (sample_di) sample_cfg.delta_i = *sample_di;
      emit(sample_cfg.out, cmd_sample(sample_cfg), out);
    } else if (*table) {
      emit(table_out, cmd_table(table_hist, table_centers, table_halfwidth, parse_format(table_format)), out);
    } else if (*curve) {
      emit(curve_out, cmd_curve(parse_count(curve_points, "--points"), parse_format(curve_format)), out);
    } else if (*density) {
      emit(density_out, cmd_density(density_hist, density_axis, density_slice, parse_format(density_format)),
           out);
    } else if (*verify) {
      vopt.n = parse_count(verify_n, "--n");
      vopt.workers = resolve_workers(verify_workers);
      const auto reports = cmd_verify(vopt);
      std::ostringstream os;
      bool ok = true;
      for (const auto& r : reports) {
        write_report_jsonl(os, r);
        ok = ok && r.pass;
      }
      emit(verify_out, os.str(), out);
      return ok ? kExitOk : kExitCheckFailed;
    }
  } catch (const UsageError& e) {
    err << "qes: " << e.what() << '\n';
    return kExitBadArguments;
  } catch (const IoError& e) {
    err << "qes: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "qes: " << e.what() << '\n';
    return e.kind() == ErrorKind::Io || e.kind() == ErrorKind::Parse ? kExitIo : kExitBadArguments;
  }
  return kExitOk;
}

}  // namespace qes::cli
