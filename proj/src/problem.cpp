#include "dhred/problem.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace dhred {

namespace {

constexpr std::array<const char*, 22> kKnownKeys = {
    "n",    "y",    "z",    "v",    "w",    "F",    "V",     "W",
    "h",    "phi",  "Phi",  "Psi",  "rhat", "qhat", "shat",  "Rhat",
    "Shat", "lambda", "N",  "C",    "case", "entry"};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ProblemFile ProblemFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemError("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

ProblemFile ProblemFile::parse_text(const std::string& text, const std::string& origin) {
  ProblemFile pf;
  pf.origin = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ProblemError("line " + std::to_string(lineno) + ": expected 'key: value'", lineno);
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    bool known = false;
    for (const char* k : kKnownKeys)
      if (key == k) known = true;
    if (!known)
      throw ProblemError("line " + std::to_string(lineno) + ": unknown key '" + key + "'", lineno);
    if (pf.entries.count(key))
      throw ProblemError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'",
                         lineno);
    if (value.empty())
      throw ProblemError("line " + std::to_string(lineno) + ": empty value for '" + key + "'",
                         lineno);
    pf.entries[key] = {value, lineno};
  }
  return pf;
}

const std::string& ProblemFile::require(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) throw ProblemError("missing required key: " + key);
  return it->second.first;
}

std::optional<std::string> ProblemFile::get(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) return std::nullopt;
  return it->second.first;
}

}  // namespace dhred
