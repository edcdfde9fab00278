#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phh/diagnostics.hpp"
#include "phh/money.hpp"

namespace phh {

// Value model for the TOML v1.0.0 subset used by hand files: top-level
// key/value pairs with strings, numbers, booleans, dates/times, arrays, and
// inline tables. One extension on top of TOML: the bare token `null`
// (unknown starting stacks). Comments are captured so canonical output can
// carry them over.
struct TomlValue {
  enum class Kind {
    Null, Boolean, Integer, Float, String, Date, Time, DateTime, Array, Table
  };

  Kind kind = Kind::Null;
  bool boolean = false;
  Decimal number;             // Integer / exactly-representable Float
  bool number_exact = true;   // false: Float kept only as `text` (inf, nan, huge)
  std::string text;           // String value; Date/Time/DateTime/inexact-Float lexeme
  std::vector<TomlValue> array;
  std::vector<std::pair<std::string, TomlValue>> table;

  // Presentation: comments attached to this value as an array element.
  std::vector<std::string> pre_comments;
  std::optional<std::string> line_comment;

  bool is_number() const { return kind == Kind::Integer || kind == Kind::Float; }

  static TomlValue of_string(std::string s) {
    TomlValue v;
    v.kind = Kind::String;
    v.text = std::move(s);
    return v;
  }
  static TomlValue of_number(Decimal d) {
    TomlValue v;
    v.kind = d.float_form() ? Kind::Float : Kind::Integer;
    v.number = d;
    return v;
  }
  static TomlValue of_bool(bool b) {
    TomlValue v;
    v.kind = Kind::Boolean;
    v.boolean = b;
    return v;
  }
};

struct TomlEntry {
  std::string key;
  TomlValue value;
  std::vector<std::string> pre_comments;
  std::optional<std::string> line_comment;
  std::size_t line = 0;
};

struct TomlDocument {
  std::vector<TomlEntry> entries;
  std::vector<std::string> trailing_comments;

  const TomlValue* find(std::string_view key) const {
    for (const auto& e : entries)
      if (e.key == key) return &e.value;
    return nullptr;
  }
};

namespace toml_detail {

inline bool is_ws(char c) { return c == ' ' || c == '\t'; }
inline bool is_bare_key_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-';
}
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    int extra;
    unsigned min_cp;
    unsigned cp;
    if (c < 0x80) { ++i; continue; }
    else if ((c >> 5) == 0x6) { extra = 1; min_cp = 0x80; cp = c & 0x1F; }
    else if ((c >> 4) == 0xE) { extra = 2; min_cp = 0x800; cp = c & 0x0F; }
    else if ((c >> 3) == 0x1E) { extra = 3; min_cp = 0x10000; cp = c & 0x07; }
    else return false;
    if (i + extra >= s.size()) return false;
    for (int k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc >> 6) != 0x2) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      return false;
    i += extra + 1;
  }
  return true;
}

inline void append_utf8(std::string& out, unsigned cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Scalar token shapes (manual scanners; <regex> is far too slow here).

inline bool is_full_date(std::string_view s) {
  return s.size() == 10 && is_digit(s[0]) && is_digit(s[1]) && is_digit(s[2]) &&
         is_digit(s[3]) && s[4] == '-' && is_digit(s[5]) && is_digit(s[6]) &&
         s[7] == '-' && is_digit(s[8]) && is_digit(s[9]);
}

inline bool is_partial_time(std::string_view s) {
  if (s.size() < 8) return false;
  if (!(is_digit(s[0]) && is_digit(s[1]) && s[2] == ':' && is_digit(s[3]) &&
        is_digit(s[4]) && s[5] == ':' && is_digit(s[6]) && is_digit(s[7])))
    return false;
  if (s.size() == 8) return true;
  if (s[8] != '.' || s.size() == 9) return false;
  for (std::size_t i = 9; i < s.size(); ++i)
    if (!is_digit(s[i])) return false;
  return true;
}

inline bool is_time_offset(std::string_view s) {
  if (s == "Z" || s == "z") return true;
  return s.size() == 6 && (s[0] == '+' || s[0] == '-') && is_digit(s[1]) &&
         is_digit(s[2]) && s[3] == ':' && is_digit(s[4]) && is_digit(s[5]);
}

// Underscore-aware digit run check for a whole token slice.
inline bool digits_with_underscores(std::string_view s, bool hex = false) {
  if (s.empty()) return false;
  bool last_digit = false;
  for (char c : s) {
    bool dig = hex ? (is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'))
                   : is_digit(c);
    if (dig) {
      last_digit = true;
    } else if (c == '_') {
      if (!last_digit) return false;
      last_digit = false;
    } else {
      return false;
    }
  }
  return last_digit;
}

inline bool is_toml_integer(std::string_view s) {
  if (s.empty()) return false;
  if (s.starts_with("0x")) return digits_with_underscores(s.substr(2), true);
  if (s.starts_with("0o")) {
    s.remove_prefix(2);
    if (!digits_with_underscores(s)) return false;
    for (char c : s)
      if (c > '7' && c != '_') return false;
    return true;
  }
  if (s.starts_with("0b")) {
    s.remove_prefix(2);
    if (!digits_with_underscores(s)) return false;
    for (char c : s)
      if (c != '0' && c != '1' && c != '_') return false;
    return true;
  }
  if (s[0] == '+' || s[0] == '-') s.remove_prefix(1);
  if (!digits_with_underscores(s)) return false;
  return !(s.size() > 1 && s[0] == '0');  // no leading zeros
}

inline bool is_toml_float(std::string_view s) {
  if (s.empty()) return false;
  if (s[0] == '+' || s[0] == '-') s.remove_prefix(1);
  if (s == "inf" || s == "nan") return true;
  std::size_t e = s.find_first_of("eE");
  std::string_view mant = e == std::string_view::npos ? s : s.substr(0, e);
  std::size_t dot = mant.find('.');
  std::string_view ip = dot == std::string_view::npos ? mant : mant.substr(0, dot);
  if (!digits_with_underscores(ip) || (ip.size() > 1 && ip[0] == '0')) return false;
  if (dot != std::string_view::npos &&
      !digits_with_underscores(mant.substr(dot + 1)))
    return false;
  if (e != std::string_view::npos) {
    std::string_view ex = s.substr(e + 1);
    if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) ex.remove_prefix(1);
    if (!digits_with_underscores(ex)) return false;
  } else if (dot == std::string_view::npos) {
    return false;  // needs a fraction or exponent to be a float
  }
  return true;
}

}  // namespace toml_detail

// Recursive-descent reader. Problems are reported through diagnostics; in
// lenient mode the offending line or construct is skipped and parsing
// continues. The reader never throws and always makes forward progress.
class TomlReader {
 public:
  TomlReader(std::string_view text, ParsePolicy policy,
             std::vector<Diagnostic>& diags)
      : text_(text), policy_(policy), diags_(diags) {}

  TomlDocument parse() {
    TomlDocument doc;
    if (text_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
    if (!toml_detail::valid_utf8(text_)) {
      error("NotToml", "", "input is not valid UTF-8");
      return doc;
    }

    std::vector<std::string> pending;
    bool skipping_table = false;
    while (!eof()) {
      skip_ws();
      if (eof()) break;
      char c = peek();
      if (c == '\n' || c == '\r') {
        consume_newline();
        continue;
      }
      if (c == '#') {
        pending.push_back(read_comment());
        consume_newline();
        continue;
      }
      if (c == '[') {
        // [table] / [[array-of-tables]] headers: hand documents are flat,
        // so the whole section is skipped.
        diag("UnknownField", "",
             "table sections are not part of a hand document");
        skip_to_newline();
        consume_newline();
        skipping_table = true;
        pending.clear();
        continue;
      }

      TomlEntry entry;
      entry.line = line_;
      bool dotted = false;
      if (!parse_key(entry.key, dotted)) {
        skip_to_newline();
        consume_newline();
        pending.clear();
        continue;
      }
      skip_ws();
      if (eof() || peek() != '=') {
        error("NotToml", entry.key, "expected '=' after key");
        skip_to_newline();
        consume_newline();
        pending.clear();
        continue;
      }
      ++pos_;
      skip_ws();
      if (!parse_value(entry.value, 0)) {
        skip_to_newline();
        consume_newline();
        pending.clear();
        continue;
      }
      skip_ws();
      if (!eof() && peek() == '#') entry.line_comment = read_comment();
      if (!eof() && peek() != '\n' && peek() != '\r') {
        error("NotToml", entry.key, "unexpected text after value");
        skip_to_newline();
      }
      consume_newline();

      if (dotted) {
        diag("UnknownField", entry.key,
             "dotted keys are not part of a hand document");
        pending.clear();
        continue;
      }
      if (skipping_table) continue;  // keys inside a skipped section

      bool duplicate = false;
      for (const auto& e : doc.entries)
        if (e.key == entry.key) duplicate = true;
      if (duplicate) {
        diag("DuplicateKey", entry.key, "key defined more than once");
        pending.clear();
        continue;
      }
      entry.pre_comments = std::exchange(pending, {});
      doc.entries.push_back(std::move(entry));
    }
    doc.trailing_comments = std::move(pending);
    return doc;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char peek_at(std::size_t off) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  void skip_ws() {
    while (!eof() && toml_detail::is_ws(peek())) ++pos_;
  }

  void skip_to_newline() {
    while (!eof() && peek() != '\n' && peek() != '\r') ++pos_;
  }

  void consume_newline() {
    if (eof()) return;
    if (peek() == '\r') {
      ++pos_;
      if (!eof() && peek() == '\n') ++pos_;
      ++line_;
    } else if (peek() == '\n') {
      ++pos_;
      ++line_;
    }
  }

  std::string read_comment() {
    ++pos_;  // '#'
    std::size_t start = pos_;
    skip_to_newline();
    std::string_view c = text_.substr(start, pos_ - start);
    while (!c.empty() && toml_detail::is_ws(c.front())) c.remove_prefix(1);
    while (!c.empty() && toml_detail::is_ws(c.back())) c.remove_suffix(1);
    return std::string(c);
  }

  void diag(std::string code, std::string loc, std::string msg) {
    Severity sev =
        policy_ == ParsePolicy::Strict ? Severity::Error : Severity::Warning;
    add_diag(diags_, sev, std::move(code),
             loc.empty() ? "line " + std::to_string(line_) : std::move(loc),
             std::move(msg));
  }

  void error(std::string code, std::string loc, std::string msg) {
    add_diag(diags_, policy_ == ParsePolicy::Strict ? Severity::Error
                                                    : Severity::Warning,
             std::move(code),
             loc.empty() ? "line " + std::to_string(line_) : std::move(loc),
             std::move(msg));
  }

  bool parse_key(std::string& out, bool& dotted) {
    while (true) {
      std::string part;
      char c = peek();
      if (c == '"') {
        if (!parse_basic_string(part, false)) return false;
      } else if (c == '\'') {
        if (!parse_literal_string(part, false)) return false;
      } else if (toml_detail::is_bare_key_char(c)) {
        while (!eof() && toml_detail::is_bare_key_char(peek())) part += text_[pos_++];
      } else {
        error("NotToml", "", std::string("unexpected character '") + c + "' at key position");
        return false;
      }
      if (!out.empty()) out += '.';
      out += part;
      skip_ws();
      if (!eof() && peek() == '.') {
        dotted = true;
        ++pos_;
        skip_ws();
        continue;
      }
      return true;
    }
  }

  bool parse_value(TomlValue& out, int depth) {
    if (depth > 24) {
      error("NotToml", "", "value nesting too deep");
      return false;
    }
    if (eof()) {
      error("NotToml", "", "missing value");
      return false;
    }
    char c = peek();
    if (c == '"') {
      out.kind = TomlValue::Kind::String;
      if (peek_at(1) == '"' && peek_at(2) == '"')
        return parse_multiline_basic(out.text);
      return parse_basic_string(out.text, true);
    }
    if (c == '\'') {
      out.kind = TomlValue::Kind::String;
      if (peek_at(1) == '\'' && peek_at(2) == '\'')
        return parse_multiline_literal(out.text);
      return parse_literal_string(out.text, true);
    }
    if (c == '[') return parse_array(out, depth);
    if (c == '{') return parse_inline_table(out, depth);
    return parse_scalar(out);
  }

  bool parse_basic_string(std::string& out, bool value_context) {
    (void)value_context;
    ++pos_;  // opening quote
    while (!eof()) {
      char c = peek();
      if (c == '"') {
        ++pos_;
        return true;
      }
      if (c == '\n' || c == '\r') break;
      if (c == '\\') {
        ++pos_;
        if (eof()) break;
        char e = text_[pos_++];
        switch (e) {
          case 'b': out += '\b'; break;
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'f': out += '\f'; break;
          case 'r': out += '\r'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'u':
          case 'U': {
            int n = e == 'u' ? 4 : 8;
            unsigned cp = 0;
            for (int k = 0; k < n; ++k) {
              if (eof()) { error("NotToml", "", "truncated unicode escape"); return false; }
              char h = text_[pos_++];
              unsigned d;
              if (h >= '0' && h <= '9') d = h - '0';
              else if (h >= 'a' && h <= 'f') d = h - 'a' + 10;
              else if (h >= 'A' && h <= 'F') d = h - 'A' + 10;
              else { error("NotToml", "", "bad unicode escape"); return false; }
              cp = cp * 16 + d;
            }
            if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
              error("NotToml", "", "unicode escape out of range");
              return false;
            }
            toml_detail::append_utf8(out, cp);
            break;
          }
          default:
            error("NotToml", "", std::string("invalid escape '\\") + e + "'");
            return false;
        }
        continue;
      }
      if (static_cast<unsigned char>(c) < 0x20 && c != '\t') {
        error("NotToml", "", "raw control character in string");
        return false;
      }
      out += c;
      ++pos_;
    }
    error("NotToml", "", "unterminated string");
    return false;
  }

  bool parse_literal_string(std::string& out, bool value_context) {
    (void)value_context;
    ++pos_;
    while (!eof()) {
      char c = peek();
      if (c == '\'') {
        ++pos_;
        return true;
      }
      if (c == '\n' || c == '\r') break;
      if (static_cast<unsigned char>(c) < 0x20 && c != '\t') {
        error("NotToml", "", "raw control character in string");
        return false;
      }
      out += c;
      ++pos_;
    }
    error("NotToml", "", "unterminated string");
    return false;
  }

  bool parse_multiline_basic(std::string& out) {
    pos_ += 3;
    if (!eof() && peek() == '\r') { ++pos_; }
    if (!eof() && peek() == '\n') { ++pos_; ++line_; }
    while (!eof()) {
      if (peek() == '"' && peek_at(1) == '"' && peek_at(2) == '"') {
        // up to two extra quotes may belong to the content
        std::size_t quotes = 3;
        while (quotes < 5 && peek_at(quotes) == '"') ++quotes;
        for (std::size_t k = 0; k < quotes - 3; ++k) out += '"';
        pos_ += quotes;
        return true;
      }
      char c = peek();
      if (c == '\\') {
        // line-ending backslash trims all following whitespace
        std::size_t look = pos_ + 1;
        while (look < text_.size() && toml_detail::is_ws(text_[look])) ++look;
        if (look < text_.size() && (text_[look] == '\n' || text_[look] == '\r')) {
          pos_ = look;
          while (!eof() && (peek() == '\n' || peek() == '\r' ||
                            toml_detail::is_ws(peek()))) {
            if (peek() == '\n') ++line_;
            ++pos_;
          }
          continue;
        }
        ++pos_;
        if (eof()) break;
        char e = text_[pos_++];
        switch (e) {
          case 'b': out += '\b'; break;
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'f': out += '\f'; break;
          case 'r': out += '\r'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'u':
          case 'U': {
            int n = e == 'u' ? 4 : 8;
            unsigned cp = 0;
            for (int k = 0; k < n; ++k) {
              if (eof()) { error("NotToml", "", "truncated unicode escape"); return false; }
              char h = text_[pos_++];
              unsigned d;
              if (h >= '0' && h <= '9') d = h - '0';
              else if (h >= 'a' && h <= 'f') d = h - 'a' + 10;
              else if (h >= 'A' && h <= 'F') d = h - 'A' + 10;
              else { error("NotToml", "", "bad unicode escape"); return false; }
              cp = cp * 16 + d;
            }
            if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
              error("NotToml", "", "unicode escape out of range");
              return false;
            }
            toml_detail::append_utf8(out, cp);
            break;
          }
          default:
            error("NotToml", "", std::string("invalid escape '\\") + e + "'");
            return false;
        }
        continue;
      }
      if (c == '\n') ++line_;
      if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n' &&
          c != '\r') {
        error("NotToml", "", "raw control character in string");
        return false;
      }
      out += c;
      ++pos_;
    }
    error("NotToml", "", "unterminated multi-line string");
    return false;
  }

  bool parse_multiline_literal(std::string& out) {
    pos_ += 3;
    if (!eof() && peek() == '\r') ++pos_;
    if (!eof() && peek() == '\n') { ++pos_; ++line_; }
    while (!eof()) {
      if (peek() == '\'' && peek_at(1) == '\'' && peek_at(2) == '\'') {
        std::size_t quotes = 3;
        while (quotes < 5 && peek_at(quotes) == '\'') ++quotes;
        for (std::size_t k = 0; k < quotes - 3; ++k) out += '\'';
        pos_ += quotes;
        return true;
      }
      char c = peek();
      if (c == '\n') ++line_;
      out += c;
      ++pos_;
    }
    error("NotToml", "", "unterminated multi-line string");
    return false;
  }

  bool parse_array(TomlValue& out, int depth) {
    out.kind = TomlValue::Kind::Array;
    ++pos_;  // '['
    std::vector<std::string> pending;
    while (true) {
      // skip whitespace, newlines, separators, and full-line comments
      while (!eof()) {
        skip_ws();
        if (eof()) break;
        char c = peek();
        if (c == '\n' || c == '\r') {
          consume_newline();
        } else if (c == '#') {
          pending.push_back(read_comment());
        } else if (c == ',') {
          ++pos_;
        } else {
          break;
        }
      }
      if (eof()) {
        error("NotToml", "", "unterminated array");
        return false;
      }
      if (peek() == ']') {
        ++pos_;
        return true;
      }
      TomlValue elem;
      if (!parse_value(elem, depth + 1)) return false;
      elem.pre_comments = std::exchange(pending, {});
      skip_ws();
      if (!eof() && peek() == ',') {
        ++pos_;
        skip_ws();
      }
      if (!eof() && peek() == '#') elem.line_comment = read_comment();
      out.array.push_back(std::move(elem));
    }
  }

  bool parse_inline_table(TomlValue& out, int depth) {
    out.kind = TomlValue::Kind::Table;
    ++pos_;  // '{'
    skip_ws();
    if (!eof() && peek() == '}') {
      ++pos_;
      return true;
    }
    while (true) {
      skip_ws();
      if (eof() || peek() == '\n' || peek() == '\r') {
        error("NotToml", "", "unterminated inline table");
        return false;
      }
      std::string key;
      bool dotted = false;
      if (!parse_key(key, dotted)) return false;
      skip_ws();
      if (eof() || peek() != '=') {
        error("NotToml", "", "expected '=' in inline table");
        return false;
      }
      ++pos_;
      skip_ws();
      TomlValue v;
      if (!parse_value(v, depth + 1)) return false;
      out.table.emplace_back(std::move(key), std::move(v));
      skip_ws();
      if (!eof() && peek() == ',') {
        ++pos_;
        continue;
      }
      if (!eof() && peek() == '}') {
        ++pos_;
        return true;
      }
      error("NotToml", "", "expected ',' or '}' in inline table");
      return false;
    }
  }

  bool parse_scalar(TomlValue& out) {
    std::size_t start = pos_;
    while (!eof()) {
      char c = peek();
      if (toml_detail::is_ws(c) || c == '\n' || c == '\r' || c == ',' ||
          c == ']' || c == '}' || c == '#')
        break;
      ++pos_;
    }
    std::string_view tok = text_.substr(start, pos_ - start);
    if (tok.empty()) {
      error("NotToml", "", "missing value");
      return false;
    }

    if (tok == "true" || tok == "false") {
      out.kind = TomlValue::Kind::Boolean;
      out.boolean = tok == "true";
      return true;
    }
    if (tok == "null") {  // hand-file extension for unknown stacks
      out.kind = TomlValue::Kind::Null;
      return true;
    }

    if (tok.size() >= 10 && toml_detail::is_full_date(tok.substr(0, 10))) {
      std::string lexeme(tok);
      if (tok.size() == 10) {
        // the time part of a datetime may follow after a single space
        out.kind = TomlValue::Kind::Date;
        if (pos_ < text_.size() && text_[pos_] == ' ' &&
            pos_ + 1 < text_.size() && toml_detail::is_digit(text_[pos_ + 1])) {
          std::size_t t0 = pos_ + 1, t = t0;
          while (t < text_.size() && !toml_detail::is_ws(text_[t]) &&
                 text_[t] != '\n' && text_[t] != '\r' && text_[t] != ',' &&
                 text_[t] != ']' && text_[t] != '}' && text_[t] != '#')
            ++t;
          std::string_view rest = text_.substr(t0, t - t0);
          if (time_with_offset_ok(rest)) {
            lexeme += ' ';
            lexeme += rest;
            pos_ = t;
            out.kind = TomlValue::Kind::DateTime;
          }
        }
      } else if ((tok[10] == 'T' || tok[10] == 't') &&
                 time_with_offset_ok(tok.substr(11))) {
        out.kind = TomlValue::Kind::DateTime;
      } else {
        error("NotToml", "", "malformed date-time '" + lexeme + "'");
        return false;
      }
      out.text = lexeme;
      return true;
    }
    if (tok.size() >= 8 && tok[2] == ':' && toml_detail::is_partial_time(tok)) {
      out.kind = TomlValue::Kind::Time;
      out.text = std::string(tok);
      return true;
    }

    if (toml_detail::is_toml_integer(tok)) {
      if (tok.starts_with("0x") || tok.starts_with("0o") || tok.starts_with("0b")) {
        std::string digits;
        for (char c : tok.substr(2))
          if (c != '_') digits += c;
        int base = tok[1] == 'x' ? 16 : tok[1] == 'o' ? 8 : 2;
        std::int64_t v = 0;
        auto [p, ec] =
            std::from_chars(digits.data(), digits.data() + digits.size(), v, base);
        if (ec != std::errc() || p != digits.data() + digits.size()) {
          error("NotToml", "", "integer out of range '" + std::string(tok) + "'");
          return false;
        }
        out = TomlValue::of_number(Decimal::from_int(v));
        return true;
      }
      auto d = Decimal::parse(tok);
      if (!d) {
        error("NotToml", "", "integer out of range '" + std::string(tok) + "'");
        return false;
      }
      out = TomlValue::of_number(*d);
      return true;
    }
    if (toml_detail::is_toml_float(tok)) {
      auto d = Decimal::parse(tok);
      if (d) {
        d->set_float_form(true);
        out = TomlValue::of_number(*d);
      } else {
        // inf, nan, or beyond exact range: keep the lexeme only
        out.kind = TomlValue::Kind::Float;
        out.number_exact = false;
        out.text = std::string(tok);
      }
      return true;
    }

    error("NotToml", "", "cannot parse value '" + std::string(tok) + "'");
    return false;
  }

  static bool time_with_offset_ok(std::string_view s) {
    using namespace toml_detail;
    if (is_partial_time(s)) return true;
    // strip a trailing offset
    if (s.size() >= 9 && (s.back() == 'Z' || s.back() == 'z'))
      return is_partial_time(s.substr(0, s.size() - 1));
    if (s.size() >= 14) {
      std::size_t off = s.size() - 6;
      if ((s[off] == '+' || s[off] == '-') && is_time_offset(s.substr(off)))
        return is_partial_time(s.substr(0, off));
    }
    return false;
  }

  std::string_view text_;
  ParsePolicy policy_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

inline TomlDocument parse_toml(std::string_view text, ParsePolicy policy,
                               std::vector<Diagnostic>& diags) {
  return TomlReader(text, policy, diags).parse();
}

// --- canonical value emission ---

inline std::string toml_escape(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\f': out += "\\f"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04X", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

inline std::string toml_value_to_string(const TomlValue& v) {
  switch (v.kind) {
    case TomlValue::Kind::Null: return "null";
    case TomlValue::Kind::Boolean: return v.boolean ? "true" : "false";
    case TomlValue::Kind::Integer: return v.number.to_string();
    case TomlValue::Kind::Float:
      return v.number_exact ? v.number.to_string() : v.text;
    case TomlValue::Kind::String: return toml_escape(v.text);
    case TomlValue::Kind::Date:
    case TomlValue::Kind::Time:
    case TomlValue::Kind::DateTime: return v.text;
    case TomlValue::Kind::Array: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.array.size(); ++i) {
        if (i) out += ", ";
        out += toml_value_to_string(v.array[i]);
      }
      out += ']';
      return out;
    }
    case TomlValue::Kind::Table: {
      std::string out = "{";
      for (std::size_t i = 0; i < v.table.size(); ++i) {
        if (i) out += ", ";
        out += v.table[i].first + " = " + toml_value_to_string(v.table[i].second);
      }
      out += '}';
      return out;
    }
  }
  return {};
}

// Semantic value equality: numbers compare numerically, inexact floats by
// lexeme, arrays/tables recursively. Comment attachments are ignored.
inline bool toml_value_equal(const TomlValue& a, const TomlValue& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TomlValue::Kind::Null: return true;
    case TomlValue::Kind::Boolean: return a.boolean == b.boolean;
    case TomlValue::Kind::Integer:
    case TomlValue::Kind::Float:
      if (a.number_exact != b.number_exact) return false;
      return a.number_exact ? a.number == b.number : a.text == b.text;
    case TomlValue::Kind::String:
    case TomlValue::Kind::Date:
    case TomlValue::Kind::Time:
    case TomlValue::Kind::DateTime: return a.text == b.text;
    case TomlValue::Kind::Array: {
      if (a.array.size() != b.array.size()) return false;
      for (std::size_t i = 0; i < a.array.size(); ++i)
        if (!toml_value_equal(a.array[i], b.array[i])) return false;
      return true;
    }
    case TomlValue::Kind::Table: {
      if (a.table.size() != b.table.size()) return false;
      for (std::size_t i = 0; i < a.table.size(); ++i) {
        if (a.table[i].first != b.table[i].first) return false;
        if (!toml_value_equal(a.table[i].second, b.table[i].second)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace phh
