#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace dhred {

class ProblemError : public std::runtime_error {
 public:
  ProblemError(const std::string& what, int line = 0) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Line-oriented problem file: one `key: value` per line, '#' comments.
/// Keys: n, y, z, v, w, F, V, W, h, phi, Phi, Psi, rhat, qhat, shat, Rhat,
/// Shat, lambda, N, C, case, entry. Keys are case-sensitive.
struct ProblemFile {
  std::string origin;
  std::map<std::string, std::pair<std::string, int>> entries;  // key -> (value, line)

  static ProblemFile parse_file(const std::string& path);
  static ProblemFile parse_text(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const { return entries.count(key) > 0; }
  const std::string& require(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
};

}  // namespace dhred
