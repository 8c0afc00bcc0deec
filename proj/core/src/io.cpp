#include "qes/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <system_error>

#include "json.hpp"
#include "qes/errors.hpp"

namespace qes {
namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Reads `key=value` tokens after a leading '#' marker and tag word.
template <class OnField>
void parse_fields(std::string_view line, std::size_t line_no, std::string_view tag, OnField on_field) {
  std::istringstream ss{std::string(line)};
  std::string hash, word;
  ss >> hash >> word;
  if (hash != "#" || word != tag) parse_error(line_no, "expected '# " + std::string(tag) + "'");
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) parse_error(line_no, "malformed field '" + token + "'");
    on_field(std::string_view(token).substr(0, eq), std::string_view(token).substr(eq + 1));
  }
}

// `# ensemble=<kind> master_seed=<s> samples=<n>`; other comments are ignored.
std::optional<RunMetadata> parse_metadata(const std::string& line, std::size_t line_no) {
  std::istringstream ss(line);
  std::string hash, token;
  ss >> hash;
  RunMetadata meta;
  bool any = false;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) return std::nullopt;
    const std::string_view key = std::string_view(token).substr(0, eq);
    const std::string_view value = std::string_view(token).substr(eq + 1);
    bool ok = true;
    if (key == "ensemble") {
      const auto kind = parse_ensemble_kind(value);
      ok = kind.has_value();
      if (ok) meta.kind = *kind;
    } else if (key == "master_seed") {
      ok = parse_number(value, meta.master_seed);
    } else if (key == "samples") {
      ok = parse_number(value, meta.samples);
    } else {
      return std::nullopt;
    }
    if (!ok) parse_error(line_no, "malformed metadata field '" + token + "'");
    any = true;
  }
  return any ? std::optional<RunMetadata>(meta) : std::nullopt;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_histogram_csv(std::ostream& os, const Joint2DHistogram& h, const std::optional<RunMetadata>& meta) {
  os << "# joint_histogram delta_c=" << format_double(h.delta_c()) << " delta_i=" << format_double(h.delta_i())
     << " total=" << h.total() << '\n';
  if (meta) {
    os << "# ensemble=" << to_string(meta->kind) << " master_seed=" << meta->master_seed
       << " samples=" << meta->samples << '\n';
  }
  for (std::size_t ci = 0; ci < h.bins_c(); ++ci) {
    for (std::size_t ii = 0; ii < h.bins_i(); ++ii) {
      if (const auto n = h.count(ci, ii); n != 0) os << ci << ',' << ii << ',' << n << '\n';
    }
  }
}

HistogramFile read_histogram_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(is, line)) parse_error(line_no, "missing joint_histogram header");

  double delta_c = 0.0, delta_i = 0.0;
  std::uint64_t total = 0;
  bool have_c = false, have_i = false, have_total = false;
  parse_fields(line, line_no, "joint_histogram", [&](std::string_view key, std::string_view value) {
    bool ok = true;
    if (key == "delta_c") ok = have_c = parse_number(value, delta_c);
    else if (key == "delta_i") ok = have_i = parse_number(value, delta_i);
    else if (key == "total") ok = have_total = parse_number(value, total);
    if (!ok) parse_error(line_no, "bad value for " + std::string(key));
  });
  if (!have_c || !have_i || !have_total) parse_error(line_no, "header needs delta_c, delta_i and total");

  HistogramFile file{Joint2DHistogram(delta_c, delta_i), std::nullopt};

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (auto meta = parse_metadata(line, line_no)) file.metadata = meta;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) parse_error(line_no, "expected c_bin_index,i_bin_index,count");
    std::string_view sv(line);
    std::size_t ci = 0, ii = 0;
    std::uint64_t n = 0;
    if (!parse_number(sv.substr(0, c1), ci) || !parse_number(sv.substr(c1 + 1, c2 - c1 - 1), ii) ||
        !parse_number(sv.substr(c2 + 1), n)) {
      parse_error(line_no, "non-numeric histogram row");
    }
    try {
      file.histogram.add_count(ci, ii, n);
    } catch (const Error&) {
      parse_error(line_no, "bin index outside the declared histogram");
    }
  }
  if (file.histogram.total() != total) {
    parse_error(line_no, "row counts sum to " + std::to_string(file.histogram.total()) + " but header says " +
                             std::to_string(total));
  }
  return file;
}

void write_histogram_json(std::ostream& os, const Joint2DHistogram& h, const std::optional<RunMetadata>& meta) {
  nlohmann::ordered_json j;
  j["format"] = "joint_histogram";
  j["delta_c"] = h.delta_c();
  j["delta_i"] = h.delta_i();
  j["total"] = h.total();
  if (meta) {
    j["ensemble"] = std::string(to_string(meta->kind));
    j["master_seed"] = meta->master_seed;
    j["samples"] = meta->samples;
  }
  auto bins = nlohmann::ordered_json::array();
  for (std::size_t ci = 0; ci < h.bins_c(); ++ci) {
    for (std::size_t ii = 0; ii < h.bins_i(); ++ii) {
      if (const auto n = h.count(ci, ii); n != 0) bins.push_back({ci, ii, n});
    }
  }
  j["bins"] = std::move(bins);
  os << j.dump() << '\n';
}

void write_density_csv(std::ostream& os, const Density1D& d) {
  os << "bin_center,density\n";
  for (std::size_t k = 0; k < d.values.size(); ++k) {
    os << format_double(d.bin_center(k)) << ',' << format_double(d.values[k]) << '\n';
  }
}

void write_slice_stats_csv(std::ostream& os, std::span<const SliceStats> rows) {
  os << "i_center,c_star,mean_c,std_c,count\n";
  for (const auto& r : rows) {
    os << format_double(r.i_center) << ',' << format_double(r.c_star) << ',' << format_double(r.mean_c) << ','
       << format_double(r.std_c) << ',' << r.count << '\n';
  }
}

}  // namespace qes
