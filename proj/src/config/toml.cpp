#include "swarm/config/toml.hpp"

#include "swarm/orchestrate/persistence.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace swarm::config {

std::string Section::name() const {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) out += (i ? "." : "") + path[i];
  return out;
}

namespace {

bool bare_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

class LineParser {
 public:
  LineParser(const std::string& text, int line) : s_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(what, line_); }

  std::string key() {
    skip_ws();
    if (peek() == '"') return basic_string();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && bare_char(s_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a key");
    return s_.substr(start, pos_ - start);
  }

  std::vector<std::string> dotted_key() {
    std::vector<std::string> parts{key()};
    while (peek() == '.') {
      ++pos_;
      parts.push_back(key());
    }
    return parts;
  }

  std::string basic_string() {
    expect('"');
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("unterminated escape");
        const char e = s_[pos_++];
        switch (e) {
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          default: fail(std::string("unsupported escape '\\") + e + "'");
        }
      }
      out.push_back(c);
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  Value value() {
    Value v;
    v.line = line_;
    const char c = peek();
    if (c == '"') {
      v.kind = Value::Kind::string;
      v.string = basic_string();
    } else if (c == '[') {
      ++pos_;
      v.kind = Value::Kind::array;
      if (peek() == ']') {
        ++pos_;
        return v;
      }
      for (;;) {
        v.items.push_back(value());
        if (v.items.back().kind == Value::Kind::array) fail("nested arrays are not supported");
        const char n = peek();
        ++pos_;
        if (n == ']') break;
        if (n != ',') fail("expected ',' or ']' in array");
        if (peek() == ']') {
          ++pos_;
          break;
        }
      }
    } else {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != ' ' && s_[pos_] != '\t' &&
             s_[pos_] != '#')
        ++pos_;
      std::string token = s_.substr(start, pos_ - start);
      if (token.empty()) fail("expected a value");
      if (token == "true" || token == "false") {
        v.kind = Value::Kind::boolean;
        v.boolean = token == "true";
        return v;
      }
      if (token.front() == '+') token.erase(0, 1);
      const bool real = token.find_first_of(".eE") != std::string::npos;
      const char* first = token.data();
      const char* last = token.data() + token.size();
      if (real) {
        v.kind = Value::Kind::real;
        auto [p, ec] = std::from_chars(first, last, v.real);
        if (ec != std::errc() || p != last || !std::isfinite(v.real)) fail("invalid number '" + token + "'");
      } else {
        v.kind = Value::Kind::integer;
        auto [p, ec] = std::from_chars(first, last, v.integer);
        if (ec != std::errc() || p != last) fail("invalid value '" + token + "'");
      }
    }
    return v;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
};

}  // namespace

Document parse_toml(const std::string& text) {
  Document doc;
  doc.sections.push_back(Section{});
  std::set<std::string> seen_sections{""};
  std::set<std::string> seen_keys;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    LineParser p(raw, line_no);
    if (p.done()) continue;
    if (p.peek() == '[') {
      p.expect('[');
      Section s;
      s.path = p.dotted_key();
      s.line = line_no;
      p.expect(']');
      if (!p.done()) p.fail("unexpected text after section header");
      if (!seen_sections.insert(s.name()).second) p.fail("duplicate section [" + s.name() + "]");
      seen_keys.clear();
      doc.sections.push_back(std::move(s));
      continue;
    }
    Entry e;
    e.line = line_no;
    e.key = p.key();
    p.expect('=');
    e.value = p.value();
    if (!p.done()) p.fail("unexpected text after value");
    if (!seen_keys.insert(e.key).second) p.fail("duplicate key '" + e.key + "'");
    doc.sections.back().entries.push_back(std::move(e));
  }
  if (doc.sections.front().entries.empty()) doc.sections.erase(doc.sections.begin());
  return doc;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out + "\"";
}

std::string format_value(const Value& v) {
  switch (v.kind) {
    case Value::Kind::integer: return std::to_string(v.integer);
    case Value::Kind::real: {
      std::string s = format_double(v.real);
      if (s.find_first_of(".e") == std::string::npos) s += ".0";
      return s;
    }
    case Value::Kind::boolean: return v.boolean ? "true" : "false";
    case Value::Kind::string: return quote(v.string);
    case Value::Kind::array: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.items.size(); ++i) out += (i ? ", " : "") + format_value(v.items[i]);
      return out + "]";
    }
  }
  return {};
}

Value make_integer(std::int64_t v) {
  Value out;
  out.kind = Value::Kind::integer;
  out.integer = v;
  return out;
}

Value make_real(double v) {
  Value out;
  out.kind = Value::Kind::real;
  out.real = v;
  return out;
}

Value make_boolean(bool v) {
  Value out;
  out.kind = Value::Kind::boolean;
  out.boolean = v;
  return out;
}

Value make_string(std::string v) {
  Value out;
  out.kind = Value::Kind::string;
  out.string = std::move(v);
  return out;
}

Value make_array(std::vector<Value> items) {
  Value out;
  out.kind = Value::Kind::array;
  out.items = std::move(items);
  return out;
}

}  // namespace swarm::config
