#include "dynrigid/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "dynrigid/errors.hpp"

namespace dynrigid::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

void reject_unknown(const YAML::Node& root, const std::set<std::string>& allowed, const std::string& where) {
  if (!root.IsMap()) parse_error(where + ": expected a mapping at the top level");
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) parse_error(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T scalar(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) parse_error(what + " must be a scalar");
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    parse_error(what + " has the wrong type");
  }
}

std::vector<std::pair<int, double>> pair_table(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence()) parse_error(what + " must be a list of [k, value] pairs");
  std::vector<std::pair<int, double>> out;
  for (const auto& e : n) {
    if (!e.IsSequence() || e.size() != 2) parse_error(what + " entries must be [k, value]");
    out.emplace_back(scalar<int>(e[0], what + " mode"), scalar<double>(e[1], what + " value"));
  }
  return out;
}

YAML::Node load_yaml(const std::string& text, const std::string& where) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    parse_error(where + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

DomainSpec domain_from_node(const YAML::Node& root, const std::string& where) {
  reject_unknown(root, {"smoothness_r", "n_samples", "coefficients", "sine"}, where);
  if (!root["coefficients"]) parse_error(where + ": missing 'coefficients'");
  DomainSpec s;
  s.support_coeffs = pair_table(root["coefficients"], "coefficients");
  if (root["sine"]) s.sine_coeffs = pair_table(root["sine"], "sine");
  if (root["smoothness_r"]) s.smoothness_r = scalar<int>(root["smoothness_r"], "smoothness_r");
  if (root["n_samples"]) {
    const auto n = scalar<long long>(root["n_samples"], "n_samples");
    if (n <= 0) parse_error("n_samples must be positive");
    s.n_samples = static_cast<std::size_t>(n);
  }
  return s;
}

}  // namespace

DomainSpec parse_domain(const std::string& text) { return domain_from_node(load_yaml(text, "domain"), "domain"); }

DomainSpec load_domain(const std::filesystem::path& path) {
  return domain_from_node(load_yaml(read_file(path), path.string()), path.string());
}

DeformationFamily load_family(const std::filesystem::path& path) {
  const YAML::Node root = load_yaml(read_file(path), path.string());
  reject_unknown(root, {"base", "direction", "tau_range", "tau_grid"}, path.string());
  for (const char* key : {"base", "direction", "tau_range"}) {
    if (!root[key]) parse_error(path.string() + ": missing '" + key + "'");
  }
  DeformationFamily f;
  const auto base = scalar<std::string>(root["base"], "base");
  f.base = load_domain(path.parent_path() / base);
  f.direction = pair_table(root["direction"], "direction");
  const YAML::Node range = root["tau_range"];
  if (!range.IsSequence() || range.size() != 2) parse_error("tau_range must be [min, max]");
  f.tau_min = scalar<double>(range[0], "tau_range");
  f.tau_max = scalar<double>(range[1], "tau_range");
  if (root["tau_grid"]) {
    if (!root["tau_grid"].IsSequence()) parse_error("tau_grid must be a list");
    for (const auto& t : root["tau_grid"]) f.tau_grid.push_back(scalar<double>(t, "tau_grid"));
  } else {
    f.tau_grid = {0.5 * (f.tau_min + f.tau_max)};
  }
  return f;
}

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::string canonical(const DomainSpec& spec) {
  std::ostringstream os;
  os << "r=" << spec.smoothness_r << ";n=" << spec.n_samples << ";h=";
  for (auto [k, h] : spec.support_coeffs) os << k << ':' << fmt(h) << ',';
  os << ";b=";
  for (auto [k, b] : spec.sine_coeffs) os << k << ':' << fmt(b) << ',';
  return os.str();
}

std::string canonical(const DeformationFamily& family) {
  std::ostringstream os;
  os << canonical(family.base) << ";d=";
  for (auto [k, h] : family.direction) os << k << ':' << fmt(h) << ',';
  os << ";tau=" << fmt(family.tau_min) << ',' << fmt(family.tau_max) << ";grid=";
  for (double t : family.tau_grid) os << fmt(t) << ',';
  return os.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(const std::string& bytes) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(bytes);
  return os.str();
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& config_hash,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out_ << "# config_hash=" << config_hash << '\n';
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw Error(ErrorKind::InvalidArgument, "CSV row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

void write_sidecar(const std::filesystem::path& path, const std::string& command, const std::string& config_hash,
                   const std::vector<std::pair<std::string, std::string>>& params) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["timestamp"] = ts.str();
  for (const auto& [k, v] : params) j["parameters"][k] = v;
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace dynrigid::io
