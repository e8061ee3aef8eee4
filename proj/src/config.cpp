#include "misq/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "misq/numerics.hpp"

namespace misq {

namespace {

using FailFn = std::function<void(const std::string&)>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok, const FailFn& fail) {
  if (tok == "inf" || tok == "+inf") return kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) fail("trailing characters in number '" + tok + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail("expected a number, got '" + tok + "'");
  }
  return 0.0;  // unreachable
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

// Splits "[a, b, c]" into element strings; separators are commas and spaces.
std::vector<std::string> split_bracket_list(const std::string& s, const FailFn& fail) {
  const std::string body = trim(s);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    fail("expected a bracketed list, got '" + s + "'");
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 1; i + 1 < body.size(); ++i) {
    const char c = body[i];
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
    if (cfg.entries_.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.entries_[key] = {value, lineno};
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

const Config::Entry& Config::entry(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
  return it->second;
}

void Config::fail(const std::string& key, const std::string& msg) const {
  const auto it = entries_.find(key);
  const std::string where =
      it == entries_.end() ? origin_ : origin_ + ":" + std::to_string(it->second.line);
  throw ConfigError(where + ": key '" + key + "': " + msg);
}

void Config::set(const std::string& key, const std::string& value) {
  entries_[key] = {value, 0};
}

double Config::number(const std::string& key) const {
  const auto toks = split_tokens(entry(key).value);
  if (toks.size() != 1) fail(key, "expected a single number");
  return parse_number(toks[0], [&](const std::string& m) { fail(key, m); });
}

double Config::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long long Config::integer(const std::string& key) const {
  const double v = number(key);
  if (v != std::floor(v) || std::abs(v) > 9e15) fail(key, "expected an integer");
  return static_cast<long long>(v);
}

long long Config::integer_or(const std::string& key, long long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string Config::word(const std::string& key) const {
  const auto toks = split_tokens(entry(key).value);
  if (toks.size() != 1) fail(key, "expected a single word");
  return toks[0];
}

std::string Config::word_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? word(key) : fallback;
}

std::vector<std::string> Config::tokens(const std::string& key) const {
  return split_tokens(entry(key).value);
}

std::vector<double> Config::vector(const std::string& key) const {
  const auto fail_fn = [&](const std::string& m) { fail(key, m); };
  const auto elems = split_bracket_list(entry(key).value, fail_fn);
  std::vector<double> out;
  out.reserve(elems.size());
  for (const auto& e : elems) out.push_back(parse_number(e, fail_fn));
  return out;
}

std::vector<std::vector<double>> Config::matrix(const std::string& key) const {
  const auto fail_fn = [&](const std::string& m) { fail(key, m); };
  const std::string body = trim(entry(key).value);
  if (body.size() < 4 || body.front() != '[' || body.back() != ']')
    fail(key, "expected a matrix like [[a, b], [c, d]]");
  std::vector<std::vector<double>> rows;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 1; i + 1 < body.size(); ++i) {
    const char c = body[i];
    if (depth == 0 && c != '[') {
      if (c == ',' || c == ' ' || c == '\t') continue;
      fail(key, "unexpected character between matrix rows");
    }
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (depth < 0) fail(key, "unbalanced brackets");
    cur += c;
    if (depth == 0 && c == ']') {
      std::vector<double> row;
      for (const auto& e : split_bracket_list(trim(cur), fail_fn)) row.push_back(parse_number(e, fail_fn));
      rows.push_back(std::move(row));
      cur.clear();
    }
  }
  const auto rest = trim(cur);
  if (depth != 0 || (!rest.empty() && rest != ",")) fail(key, "unbalanced or trailing matrix content");
  if (rows.empty()) fail(key, "empty matrix");
  return rows;
}

StateSpace space_from_config(const Config& cfg) {
  const auto toks = cfg.tokens("space");
  const auto fail_fn = [&](const std::string& m) { cfg.fail("space", m); };
  const std::string& kind = toks[0];
  try {
    if (kind == "finite") {
      if (toks.size() != 2) cfg.fail("space", "usage: finite <size>");
      return StateSpace::finite(static_cast<int>(parse_number(toks[1], fail_fn)));
    }
    if (kind == "interval") {
      if (toks.size() != 3) cfg.fail("space", "usage: interval <lo> <hi>");
      return StateSpace::interval(parse_number(toks[1], fail_fn), parse_number(toks[2], fail_fn));
    }
    if (kind == "nonneg_int") return StateSpace::nonneg_int();
    if (kind == "line") return StateSpace::real_line();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    cfg.fail("space", e.what());
  }
  cfg.fail("space", "unknown space kind '" + kind + "'");
}

namespace {

RateMap rate_map_from_config(const Config& cfg, const std::string& key) {
  const auto toks = cfg.tokens(key);
  const auto fail_fn = [&](const std::string& m) { cfg.fail(key, m); };
  if (toks.empty()) cfg.fail(key, "empty rate map");
  try {
    if (toks[0] == "table") {
      // `table [1.0, 2.0]` (also accepts bare `table 1.0 2.0`).
      std::string rest;
      for (std::size_t i = 1; i < toks.size(); ++i) rest += (i > 1 ? " " : "") + toks[i];
      std::vector<double> vals;
      const auto elems = trim(rest).rfind('[', 0) == 0
                             ? split_bracket_list(rest, fail_fn)
                             : std::vector<std::string>(toks.begin() + 1, toks.end());
      for (const auto& e : elems) vals.push_back(parse_number(e, fail_fn));
      return RateMap::table(std::move(vals));
    }
    if (toks[0] == "constant") {
      if (toks.size() != 2) cfg.fail(key, "usage: constant <c>");
      return RateMap::constant(parse_number(toks[1], fail_fn));
    }
    if (toks[0] == "affine") {
      if (toks.size() != 3) cfg.fail(key, "usage: affine <a> <b>");
      return RateMap::affine(parse_number(toks[1], fail_fn), parse_number(toks[2], fail_fn));
    }
    if (toks[0] == "identity") return RateMap::identity();
    if (toks[0] == "one_minus") return RateMap::one_minus();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    cfg.fail(key, e.what());
  }
  cfg.fail(key, "unknown rate form '" + toks[0] + "'");
}

}  // namespace

Modulation modulation_from_config(const Config& cfg) {
  const StateSpace space = space_from_config(cfg);
  try {
    return Modulation(space, rate_map_from_config(cfg, "lambda"), rate_map_from_config(cfg, "kappa"),
                      rate_map_from_config(cfg, "mu"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    cfg.fail("lambda", e.what());
  }
}

BackgroundSpec background_from_config(const Config& cfg) {
  const std::string kind = cfg.word("background");
  try {
    if (kind == "deterministic") {
      const StateSpace space = space_from_config(cfg);
      return BackgroundSpec::deterministic(read_csv_file(space, cfg.word("path_file")));
    }
    if (kind == "ctmc")
      return BackgroundSpec::ctmc(GeneratorMatrix(cfg.matrix("Q")), cfg.vector("initial"));
    if (kind == "timescaled_ctmc")
      return BackgroundSpec::time_scaled_ctmc(GeneratorMatrix(cfg.matrix("Q")), cfg.vector("initial"),
                                              cfg.number("epsilon"),
                                              static_cast<int>(cfg.integer_or("n", 1)));
    if (kind == "rbm")
      return BackgroundSpec::reflected_bm(cfg.number("x0"), cfg.number("grid_h"));
    if (kind == "scaled_bm")
      return BackgroundSpec::scaled_bm(static_cast<int>(cfg.integer_or("n", 1)), cfg.number("grid_h"));
    if (kind == "mmis_feed")
      return BackgroundSpec::mmis_feed(GeneratorMatrix(cfg.matrix("inner_Q")), cfg.vector("inner_initial"),
                                       cfg.vector("inner_lambda"), cfg.vector("inner_mu"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    cfg.fail("background", e.what());
  }
  cfg.fail("background", "unknown background kind '" + kind + "'");
}

}  // namespace misq
