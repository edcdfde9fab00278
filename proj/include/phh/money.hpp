#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace phh {

// Exact decimal quantity: units * 10^-scale. Chip accounting has to balance
// to the last cent, so binary floating point is never used. Whether the
// source lexeme was a TOML integer or float is kept so re-serialization can
// reproduce "0" vs "0.0".
//
// Values are normalized: no trailing fractional zeros, zero has scale 0.
class Decimal {
 public:
  static constexpr int kMaxScale = 12;

  constexpr Decimal() = default;

  static Decimal from_int(std::int64_t value, bool float_form = false) {
    Decimal d;
    d.units_ = value;
    d.scale_ = 0;
    d.float_form_ = float_form;
    return d;
  }

  static std::optional<Decimal> from_units(std::int64_t units, int scale,
                                           bool float_form) {
    if (scale < 0 || scale > kMaxScale) return std::nullopt;
    Decimal d;
    d.units_ = units;
    d.scale_ = static_cast<std::uint8_t>(scale);
    d.float_form_ = float_form;
    d.normalize();
    return d;
  }

  // Parses a plain decimal integer or float lexeme (TOML syntax: optional
  // sign, underscores between digits, fraction, exponent). Rejects inf/nan,
  // hex/octal/binary, and values that cannot be represented exactly.
  static std::optional<Decimal> parse(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      negative = text[i] == '-';
      ++i;
    }
    if (i >= text.size()) return std::nullopt;
    if (text.substr(i) == "inf" || text.substr(i) == "nan") return std::nullopt;

    std::string int_digits, frac_digits, exp_digits;
    if (!read_digit_run(text, i, int_digits)) return std::nullopt;
    // TOML forbids leading zeros on the integer part.
    if (int_digits.size() > 1 && int_digits[0] == '0') return std::nullopt;

    bool is_float = false;
    if (i < text.size() && text[i] == '.') {
      ++i;
      is_float = true;
      if (!read_digit_run(text, i, frac_digits)) return std::nullopt;
    }
    long long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
      ++i;
      is_float = true;
      bool exp_neg = false;
      if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        exp_neg = text[i] == '-';
        ++i;
      }
      if (!read_digit_run(text, i, exp_digits)) return std::nullopt;
      if (exp_digits.size() > 6) return std::nullopt;
      for (char c : exp_digits) exponent = exponent * 10 + (c - '0');
      if (exp_neg) exponent = -exponent;
    }
    if (i != text.size()) return std::nullopt;

    // Mantissa = int digits followed by fraction digits.
    unsigned __int128 mantissa = 0;
    for (char c : int_digits + frac_digits) {
      mantissa = mantissa * 10 + static_cast<unsigned>(c - '0');
      if (mantissa > kInt128Cap) return std::nullopt;
    }
    long long scale = static_cast<long long>(frac_digits.size()) - exponent;

    // Shed trailing zeros to bring the scale into range.
    while (scale > kMaxScale && mantissa != 0 && mantissa % 10 == 0) {
      mantissa /= 10;
      --scale;
    }
    if (mantissa == 0) scale = 0;
    if (scale > kMaxScale) return std::nullopt;
    while (scale < 0) {
      mantissa *= 10;
      if (mantissa > kInt128Cap) return std::nullopt;
      ++scale;
    }
    if (mantissa > static_cast<unsigned __int128>(INT64_MAX)) return std::nullopt;

    Decimal d;
    d.units_ = negative ? -static_cast<std::int64_t>(mantissa)
                        : static_cast<std::int64_t>(mantissa);
    d.scale_ = static_cast<std::uint8_t>(scale);
    d.float_form_ = is_float;
    d.normalize();
    return d;
  }

  std::int64_t units() const { return units_; }
  int scale() const { return scale_; }
  bool float_form() const { return float_form_; }
  void set_float_form(bool f) { float_form_ = f; }

  bool is_zero() const { return units_ == 0; }
  bool is_negative() const { return units_ < 0; }

  // Exact value * 10^target, or nullopt when that is not an integer or
  // does not fit in 64 bits.
  std::optional<std::int64_t> units_at_scale(int target) const {
    if (target < scale_) {
      if (units_ == 0) return 0;
      return std::nullopt;  // normalized, so no trailing zeros to drop
    }
    __int128 v = units_;
    for (int k = scale_; k < target; ++k) {
      v *= 10;
      if (v > INT64_MAX || v < INT64_MIN) return std::nullopt;
    }
    return static_cast<std::int64_t>(v);
  }

  std::optional<Decimal> plus(const Decimal& o) const {
    int s = std::max(scale_, o.scale_);
    auto a = units_at_scale(s), b = o.units_at_scale(s);
    if (!a || !b) return std::nullopt;
    __int128 sum = static_cast<__int128>(*a) + *b;
    if (sum > INT64_MAX || sum < INT64_MIN) return std::nullopt;
    return from_units(static_cast<std::int64_t>(sum), s,
                      float_form_ || o.float_form_);
  }

  std::optional<Decimal> minus(const Decimal& o) const {
    Decimal neg = o;
    neg.units_ = -neg.units_;
    return plus(neg);
  }

  friend Decimal operator+(const Decimal& a, const Decimal& b) {
    auto r = a.plus(b);
    if (!r) throw std::overflow_error("decimal addition overflow");
    return *r;
  }

  friend Decimal operator-(const Decimal& a, const Decimal& b) {
    auto r = a.minus(b);
    if (!r) throw std::overflow_error("decimal subtraction overflow");
    return *r;
  }

  // Numeric comparison; lexical form does not participate.
  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    int s = std::max(a.scale_, b.scale_);
    __int128 av = a.units_, bv = b.units_;
    for (int k = a.scale_; k < s; ++k) av *= 10;
    for (int k = b.scale_; k < s; ++k) bv *= 10;
    if (av < bv) return std::strong_ordering::less;
    if (av > bv) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend bool operator==(const Decimal& a, const Decimal& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  std::string to_string() const {
    std::string digits = std::to_string(units_ < 0 ? -units_ : units_);
    std::string out = units_ < 0 ? "-" : "";
    if (scale_ == 0) {
      out += digits;
      if (float_form_) out += ".0";
      return out;
    }
    if (digits.size() <= static_cast<std::size_t>(scale_))
      digits.insert(0, scale_ + 1 - digits.size(), '0');
    out += digits.substr(0, digits.size() - scale_);
    out += '.';
    out += digits.substr(digits.size() - scale_);
    return out;
  }

 private:
  static constexpr unsigned __int128 kInt128Cap =
      static_cast<unsigned __int128>(INT64_MAX) * 1000;

  static bool read_digit_run(std::string_view text, std::size_t& i,
                             std::string& out) {
    // One or more digits with single underscores allowed between them.
    bool last_digit = false;
    std::size_t start = i;
    while (i < text.size()) {
      char c = text[i];
      if (c >= '0' && c <= '9') {
        out += c;
        last_digit = true;
        ++i;
      } else if (c == '_') {
        if (!last_digit) return false;
        last_digit = false;
        ++i;
      } else {
        break;
      }
    }
    return i > start && last_digit;
  }

  void normalize() {
    while (scale_ > 0 && units_ % 10 == 0) {
      units_ /= 10;
      --scale_;
    }
    if (units_ == 0) scale_ = 0;
  }

  std::int64_t units_ = 0;
  std::uint8_t scale_ = 0;
  bool float_form_ = false;
};

using Money = Decimal;

}  // namespace phh
