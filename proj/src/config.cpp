#include "hlq/config.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "hlq/error.hpp"

namespace hlq {

namespace {

constexpr std::array<std::string_view, 5> kRequired{"model", "omega", "dt", "steps", "zeta"};
constexpr std::array<std::string_view, 13> kKnown{
    "model", "omega", "dt",     "steps",   "zeta",    "dim",     "eta",
    "schedule", "phase", "phase_multiplicity", "engine", "initial", "outputs"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* why) {
  throw Error(ErrorKind::ValidationError, "invalid value for '" + std::string(key) + "': '" +
                                              std::string(value) + "' " + why);
}

double parse_double(std::string_view key, std::string_view value) {
  const std::string s(trim(value));
  if (s.empty()) bad_value(key, value, "is empty");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    bad_value(key, value, "is not a finite number");
  }
  return v;
}

int parse_int(std::string_view key, std::string_view value) {
  const std::string s(trim(value));
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || v < INT32_MIN ||
      v > INT32_MAX) {
    bad_value(key, value, "is not an integer");
  }
  return static_cast<int>(v);
}

// "x" or "(x,y)".
Complex parse_complex(std::string_view key, std::string_view value) {
  std::string_view s = trim(value);
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') bad_value(key, value, "is missing ')'");
    s = s.substr(1, s.size() - 2);
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) return {parse_double(key, s), 0.0};
    return {parse_double(key, s.substr(0, comma)), parse_double(key, s.substr(comma + 1))};
  }
  return {parse_double(key, s), 0.0};
}

InitialState parse_initial(std::string_view value) {
  const std::string_view s = trim(value);
  if (s == "vacuum") return {};
  constexpr std::string_view prefix = "coherent";
  if (s.starts_with(prefix)) {
    return {InitialState::Kind::Coherent, parse_complex("initial", s.substr(prefix.size()))};
  }
  bad_value("initial", value, "must be vacuum or coherent(re,im)");
}

std::vector<std::string> parse_list(std::string_view value) {
  std::vector<std::string> out;
  std::string_view rest = value;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")";
}

}  // namespace

void set_config_value(SimConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  try {
    if (key == "model") c.model = parse_model(value);
    else if (key == "omega") c.omega = parse_double(key, value);
    else if (key == "dt") c.dt = parse_double(key, value);
    else if (key == "steps") c.steps = parse_int(key, value);
    else if (key == "zeta") c.zeta_abs = parse_double(key, value);
    else if (key == "dim") c.dim = parse_int(key, value);
    else if (key == "eta") c.eta = parse_complex(key, value);
    else if (key == "schedule") c.schedule = parse_schedule_kind(value);
    else if (key == "phase") c.phase = parse_double(key, value);
    else if (key == "phase_multiplicity") c.phase_multiplicity = parse_int(key, value);
    else if (key == "engine") c.engine = parse_engine_kind(value);
    else if (key == "initial") c.initial = parse_initial(value);
    else if (key == "outputs") c.outputs = parse_list(value);
    else throw Error(ErrorKind::ValidationError, "unknown key '" + std::string(key) + "'");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidModel) {
      throw Error(ErrorKind::ValidationError, "invalid value for 'model': " + std::string(e.what()));
    }
    throw;
  }
}

SimConfig parse_config(std::string_view text) {
  SimConfig config;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(view.substr(0, eq)));
    if (key.empty()) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": missing key");
    }
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      throw Error(ErrorKind::ValidationError,
                  "unknown key '" + key + "' on line " + std::to_string(line_no));
    }
    if (const auto it = seen.find(key); it != seen.end()) {
      throw Error(ErrorKind::ValidationError, "duplicate key '" + key + "' on line " +
                                                  std::to_string(line_no) + " (first on line " +
                                                  std::to_string(it->second) + ")");
    }
    seen.emplace(key, line_no);
    set_config_value(config, key, view.substr(eq + 1));
  }

  std::string missing;
  for (const auto key : kRequired) {
    if (!seen.contains(key)) missing += (missing.empty() ? "" : ", ") + std::string(key);
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::ValidationError, "missing required keys: " + missing);
  }
  validate(config);
  return config;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const SimConfig& c) {
  std::ostringstream out;
  out << "model = " << to_string(c.model) << '\n'
      << "omega = " << format_double(c.omega) << '\n'
      << "dt = " << format_double(c.dt) << '\n'
      << "steps = " << c.steps << '\n'
      << "zeta = " << format_double(c.zeta_abs) << '\n'
      << "dim = " << c.dim << '\n'
      << "eta = " << format_complex(c.eta) << '\n'
      << "schedule = " << to_string(c.schedule) << '\n'
      << "phase = " << format_double(c.phase) << '\n'
      << "phase_multiplicity = " << c.phase_multiplicity << '\n'
      << "engine = " << to_string(c.engine) << '\n';
  if (c.initial.kind == InitialState::Kind::Vacuum) {
    out << "initial = vacuum\n";
  } else {
    out << "initial = coherent(" << format_double(c.initial.gamma.real()) << ','
        << format_double(c.initial.gamma.imag()) << ")\n";
  }
  out << "outputs = ";
  for (std::size_t i = 0; i < c.outputs.size(); ++i) out << (i ? "," : "") << c.outputs[i];
  out << '\n';
  return out.str();
}

}  // namespace hlq
