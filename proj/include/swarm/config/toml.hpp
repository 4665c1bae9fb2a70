#pragma once

#include "swarm/core/error.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace swarm::config {

/// Invalid experiment description. Distinguished from runtime failures by
/// the command line (exit status 2).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A value from the supported TOML subset: integers, floats, booleans,
/// basic strings and single-line arrays of those.
struct Value {
  enum class Kind { integer, real, boolean, string, array };

  Kind kind = Kind::integer;
  std::int64_t integer = 0;
  double real = 0.0;
  bool boolean = false;
  std::string string;
  std::vector<Value> items;
  int line = 0;

  bool is_number() const { return kind == Kind::integer || kind == Kind::real; }
  double number() const { return kind == Kind::integer ? static_cast<double>(integer) : real; }
};

struct Entry {
  std::string key;
  Value value;
  int line = 0;
};

struct Section {
  std::vector<std::string> path;  // empty for keys before the first header
  std::vector<Entry> entries;
  int line = 0;

  std::string name() const;
};

struct Document {
  std::vector<Section> sections;
};

/// Sections keep file order; duplicate sections or keys are errors.
Document parse_toml(const std::string& text);

std::string quote(const std::string& s);
std::string format_value(const Value& v);

Value make_integer(std::int64_t v);
Value make_real(double v);
Value make_boolean(bool v);
Value make_string(std::string v);
Value make_array(std::vector<Value> items);

}  // namespace swarm::config
