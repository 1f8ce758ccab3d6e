#include <cmath>
#include <fstream>
#include <string>

#include "cmgeval/align_metrics.hpp"
#include "cmgeval/error.hpp"

namespace cmgeval {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_ascii_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view value, std::string_view key, std::size_t line) {
  try {
    std::size_t used = 0;
    const std::string v(value);
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ValidationError("line " + std::to_string(line) + ": bad value for " + std::string(key) +
                              ": '" + std::string(value) + "'",
                          line);
  }
}

}  // namespace

MeteorParams MeteorParams::classic() { return MeteorParams{}; }

MeteorParams MeteorParams::next() { return MeteorParams{}; }

MeteorParams MeteorParams::log_mnext() {
  MeteorParams p = next();
  p.frag_mode = FragMode::kLogMnext;
  return p;
}

void MeteorParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInputError("alpha must lie in (0, 1)");
  if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidInputError("beta must lie in [0, 1]");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidInputError("gamma must be >= 0");
  for (double w : {weights.exact, weights.stem, weights.synonym}) {
    if (!(w >= 0.0 && w <= 1.0)) throw InvalidInputError("matcher weights must lie in [0, 1]");
  }
}

MeteorParams parse_meteor_params(std::istream& in, MeteorParams base, std::string_view source) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(std::string(source) + ": line " + std::to_string(line_no) +
                                ": expected key = value",
                            line_no);
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "alpha") {
      base.alpha = parse_real(value, key, line_no);
    } else if (key == "beta") {
      base.beta = parse_real(value, key, line_no);
    } else if (key == "gamma") {
      base.gamma = parse_real(value, key, line_no);
    } else if (key == "w_exact") {
      base.weights.exact = parse_real(value, key, line_no);
    } else if (key == "w_stem") {
      base.weights.stem = parse_real(value, key, line_no);
    } else if (key == "w_syn") {
      base.weights.synonym = parse_real(value, key, line_no);
    } else if (key == "frag_mode") {
      const std::string v = ascii_lower(value);
      if (v == "meteor_classic" || v == "classic") {
        base.frag_mode = FragMode::kMeteorClassic;
      } else if (v == "log_mnext") {
        base.frag_mode = FragMode::kLogMnext;
      } else {
        throw ValidationError(std::string(source) + ": line " + std::to_string(line_no) +
                                  ": unknown frag_mode '" + std::string(value) + "'",
                              line_no);
      }
    } else {
      throw ValidationError(std::string(source) + ": line " + std::to_string(line_no) +
                                ": unknown key '" + std::string(key) + "'",
                            line_no);
    }
  }
  try {
    base.validate();
  } catch (const InvalidInputError& e) {
    throw ValidationError(std::string(source) + ": " + e.what());
  }
  return base;
}

MeteorParams load_meteor_params(const std::filesystem::path& path, MeteorParams base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read parameter file: " + path.string());
  return parse_meteor_params(in, base, path.string());
}

}  // namespace cmgeval
