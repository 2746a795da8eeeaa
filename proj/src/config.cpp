#include "mtirl/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mtirl/error.hpp"

namespace mtirl {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::invalid_input,
                "bad value '" + std::string(value) + "' for key '" + std::string(key) + "'");
  }
  return out;
}

std::vector<int> parse_list(std::string_view key, std::string_view value) {
  std::vector<int> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    out.push_back(parse_number<int>(key, trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value = value.substr(comma + 1);
  }
  return out;
}

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

void ExperimentConfig::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::invalid_input, what);
  };
  require(width > 0 && height > 0, "width and height must be positive");
  require(features >= 2, "features must be at least 2");
  require(discount >= 0.0 && discount < 1.0, "discount must lie in [0, 1)");
  require(replicates > 0, "replicates must be positive");
  require(threads >= 0, "threads must be non-negative");
  require(alpha >= 0.0, "alpha must be non-negative");
  require(lambda >= 0.0, "lambda must be non-negative");
  require(chain_length > 0, "chain_length must be positive");
  require(step_size > 0.0, "step_size must be positive");
  require(uvm_samples > 0, "uvm_samples must be positive");
  require(horizon > 0 && m > 0, "horizon and m must be positive");
  require(random_pairs > 0, "random_pairs must be positive");
  require(queries > 0 && trajectory_length > 0, "queries and trajectory_length must be positive");
  for (int k : sweep_features) require(k >= 2, "sweep_features entries must be at least 2");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::invalid_input, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "width") c.width = parse_number<int>(key, value);
    else if (key == "height") c.height = parse_number<int>(key, value);
    else if (key == "features") c.features = parse_number<int>(key, value);
    else if (key == "discount") c.discount = parse_number<double>(key, value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "replicates") c.replicates = parse_number<int>(key, value);
    else if (key == "threads") c.threads = parse_number<int>(key, value);
    else if (key == "alpha") c.alpha = parse_number<double>(key, value);
    else if (key == "lambda") c.lambda = parse_number<double>(key, value);
    else if (key == "chain_length") c.chain_length = parse_number<int>(key, value);
    else if (key == "step_size") c.step_size = parse_number<double>(key, value);
    else if (key == "uvm_samples") c.uvm_samples = parse_number<std::size_t>(key, value);
    else if (key == "horizon") c.horizon = parse_number<int>(key, value);
    else if (key == "m") c.m = parse_number<int>(key, value);
    else if (key == "random_pairs") c.random_pairs = parse_number<int>(key, value);
    else if (key == "queries") c.queries = parse_number<int>(key, value);
    else if (key == "trajectory_length") c.trajectory_length = parse_number<int>(key, value);
    else if (key == "sweep_features") c.sweep_features = parse_list(key, value);
    else throw Error(ErrorCode::invalid_input, "unknown config key '" + std::string(key) + "'");
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "width = " << c.width << '\n'
      << "height = " << c.height << '\n'
      << "features = " << c.features << '\n'
      << "discount = " << format_double(c.discount) << '\n'
      << "seed = " << c.seed << '\n'
      << "replicates = " << c.replicates << '\n'
      << "threads = " << c.threads << '\n'
      << "alpha = " << format_double(c.alpha) << '\n'
      << "lambda = " << format_double(c.lambda) << '\n'
      << "chain_length = " << c.chain_length << '\n'
      << "step_size = " << format_double(c.step_size) << '\n'
      << "uvm_samples = " << c.uvm_samples << '\n'
      << "horizon = " << c.horizon << '\n'
      << "m = " << c.m << '\n'
      << "random_pairs = " << c.random_pairs << '\n'
      << "queries = " << c.queries << '\n'
      << "trajectory_length = " << c.trajectory_length << '\n'
      << "sweep_features = ";
  for (std::size_t i = 0; i < c.sweep_features.size(); ++i) {
    out << (i ? "," : "") << c.sweep_features[i];
  }
  out << '\n';
  return out.str();
}

}  // namespace mtirl
