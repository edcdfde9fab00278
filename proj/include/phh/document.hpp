#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "phh/action.hpp"
#include "phh/cards.hpp"
#include "phh/diagnostics.hpp"
#include "phh/money.hpp"
#include "phh/toml.hpp"
#include "phh/variant.hpp"

namespace phh {

// Comments attached to a top-level field, carried through canonicalization.
struct FieldNotes {
  std::vector<std::string> pre_comments;
  std::optional<std::string> line_comment;
};

// A fully typed hand file. Player count is defined by starting_stacks;
// every per-player array must have exactly that many elements.
struct HandDocument {
  Variant variant;
  std::vector<Money> antes;
  std::optional<std::vector<Money>> blinds_or_straddles;
  std::optional<Money> bring_in;
  std::optional<Money> small_bet;
  std::optional<Money> big_bet;
  std::optional<Money> min_bet;
  std::vector<std::optional<Money>> starting_stacks;  // nullopt = unknown
  std::vector<ActionRecord> actions;

  std::optional<std::string> author, event, url, address, city, region,
      postal_code, country, time, time_zone, currency;
  std::optional<std::int64_t> day, month, year, hand, level, seat_count,
      table_number;
  std::optional<std::vector<std::int64_t>> seats;
  std::optional<std::vector<std::string>> players;
  std::optional<std::vector<Money>> finishing_stacks;
  std::optional<bool> ante_trimming_status;
  std::optional<Money> time_limit;
  std::optional<std::vector<Money>> time_banks;

  // Underscore-prefixed passthrough fields, in source order.
  std::vector<std::pair<std::string, TomlValue>> user_fields;

  // Original bytes plus comment attachments for faithful re-emission.
  std::string source;
  std::map<std::string, FieldNotes> field_notes;
  std::vector<std::string> trailing_comments;

  int player_count() const { return static_cast<int>(starting_stacks.size()); }

  std::set<std::string> present_fields() const {
    std::set<std::string> s;
    s.insert("variant");
    if (!antes.empty() || antes_present) s.insert("antes");
    if (blinds_or_straddles) s.insert("blinds_or_straddles");
    if (bring_in) s.insert("bring_in");
    if (small_bet) s.insert("small_bet");
    if (big_bet) s.insert("big_bet");
    if (min_bet) s.insert("min_bet");
    if (!starting_stacks.empty() || stacks_present) s.insert("starting_stacks");
    if (actions_present) s.insert("actions");
    return s;
  }

  // Set during parsing so empty arrays still count as present.
  bool antes_present = false;
  bool stacks_present = false;
  bool actions_present = false;
};

inline constexpr std::string_view kRequiredFieldOrder[] = {
    "variant",       "antes",     "blinds_or_straddles",
    "bring_in",      "small_bet", "big_bet",
    "min_bet",       "starting_stacks", "actions",
};

inline constexpr std::string_view kOptionalFieldOrder[] = {
    "author",      "event",   "url",           "address",
    "city",        "region",  "postal_code",   "country",
    "time",        "time_zone", "day",         "month",
    "year",        "hand",    "level",         "seats",
    "seat_count",  "table",   "players",       "finishing_stacks",
    "currency",    "ante_trimming_status",     "time_limit",
    "time_banks",
};

inline bool is_known_field(std::string_view key) {
  for (auto f : kRequiredFieldOrder)
    if (f == key) return true;
  for (auto f : kOptionalFieldOrder)
    if (f == key) return true;
  return false;
}

// Applies the per-variant required-field composition: a required field that
// is absent is always an error; a field the variant does not use is an
// error under Strict and a warning under Lenient.
inline std::vector<Diagnostic> check_required_matrix(
    VariantCode code, const std::set<std::string>& present,
    ParsePolicy policy = ParsePolicy::Strict) {
  std::vector<Diagnostic> out;
  RequiredStakes req = required_stakes(code);
  Severity extra_sev =
      policy == ParsePolicy::Strict ? Severity::Error : Severity::Warning;

  auto check = [&](std::string_view field, bool required) {
    bool here = present.count(std::string(field)) > 0;
    if (required && !here) {
      add_diag(out, Severity::Error, "MissingRequiredField", std::string(field),
               std::string(field) + " is required for variant " +
                   std::string(to_string(code)));
    } else if (!required && here) {
      add_diag(out, extra_sev, "FieldNotApplicable", std::string(field),
               std::string(field) + " does not apply to variant " +
                   std::string(to_string(code)));
    }
  };

  check("antes", req.antes);
  check("blinds_or_straddles", req.blinds_or_straddles);
  check("bring_in", req.bring_in);
  check("small_bet", req.small_bet);
  check("big_bet", req.big_bet);
  check("min_bet", req.min_bet);
  check("starting_stacks", true);
  check("actions", true);
  return out;
}

namespace doc_detail {

inline std::optional<Money> to_money(const TomlValue& v) {
  if (!v.is_number() || !v.number_exact) return std::nullopt;
  return v.number;
}

inline bool plausible_iana_zone(std::string_view s) {
  if (s.empty()) return false;
  if (s == "UTC" || s == "GMT" || s == "Local") return true;
  bool segment_start = true;
  bool saw_slash = false;
  for (char c : s) {
    if (c == '/') {
      if (segment_start) return false;
      segment_start = true;
      saw_slash = true;
      continue;
    }
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '+';
    if (!ok) return false;
    if (segment_start && !((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')))
      return false;
    segment_start = false;
  }
  return saw_slash && !segment_start;
}

inline bool plausible_currency(std::string_view s) {
  if (s.size() != 3) return false;
  for (char c : s)
    if (c < 'A' || c > 'Z') return false;
  return true;
}

}  // namespace doc_detail

// Shape checks over the optional fields (types are handled during mapping).
inline std::vector<Diagnostic> check_optional_types(const HandDocument& doc) {
  std::vector<Diagnostic> out;
  auto warn = [&](std::string code, std::string loc, std::string msg) {
    add_diag(out, Severity::Warning, std::move(code), std::move(loc),
             std::move(msg));
  };

  if (doc.month && (*doc.month < 1 || *doc.month > 12))
    warn("BadCalendarField", "month", "month outside 1..12");
  if (doc.day && (*doc.day < 1 || *doc.day > 31))
    warn("BadCalendarField", "day", "day outside 1..31");
  if (doc.time_zone && !doc_detail::plausible_iana_zone(*doc.time_zone))
    warn("BadTimeZone", "time_zone",
         "'" + *doc.time_zone + "' does not look like an IANA zone name");
  if (doc.currency && !doc_detail::plausible_currency(*doc.currency))
    warn("BadCurrency", "currency",
         "'" + *doc.currency + "' is not a three-letter uppercase code");
  if (doc.seats) {
    for (std::size_t i = 0; i < doc.seats->size(); ++i) {
      if ((*doc.seats)[i] < 1)
        warn("BadSeat", "seats", "seat numbers are 1-based");
      else if (doc.seat_count && (*doc.seats)[i] > *doc.seat_count)
        warn("BadSeat", "seats",
             "seat " + std::to_string((*doc.seats)[i]) + " exceeds seat_count");
    }
  }
  if (doc.seat_count && *doc.seat_count < doc.player_count())
    warn("BadSeat", "seat_count", "fewer seats than players");
  if (doc.time_limit && doc.time_limit->is_negative())
    warn("BadAmount", "time_limit", "negative time limit");
  return out;
}

struct ParsedDocument {
  std::optional<HandDocument> document;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return document.has_value() && !has_errors(diagnostics); }
};

// Reads a hand file: TOML layer first, then field mapping and validation.
// Never throws; arbitrary bytes yield diagnostics, not crashes.
inline ParsedDocument parse_document(std::string_view bytes,
                                     ParsePolicy policy) {
  ParsedDocument result;
  std::vector<Diagnostic>& diags = result.diagnostics;

  TomlDocument toml = parse_toml(bytes, policy, diags);
  if (toml.entries.empty() && has_errors(diags)) return result;  // NotToml

  HandDocument doc;
  doc.source = std::string(bytes);
  doc.trailing_comments = toml.trailing_comments;

  Severity lenient_sev =
      policy == ParsePolicy::Strict ? Severity::Error : Severity::Warning;

  auto note_field = [&](const TomlEntry& e) {
    if (e.pre_comments.empty() && !e.line_comment) return;
    FieldNotes n;
    n.pre_comments = e.pre_comments;
    n.line_comment = e.line_comment;
    doc.field_notes[e.key] = std::move(n);
  };

  auto wrong_type = [&](const std::string& key, std::string_view expected) {
    add_diag(diags, lenient_sev, "WrongFieldType", key,
             key + " must be " + std::string(expected));
  };

  auto money_scalar = [&](const TomlEntry& e) -> std::optional<Money> {
    auto m = doc_detail::to_money(e.value);
    if (!m) {
      wrong_type(e.key, "an integer or float");
      return std::nullopt;
    }
    if (m->is_negative()) {
      add_diag(diags, Severity::Error, "BadAmount", e.key, "negative amount");
      return std::nullopt;
    }
    return m;
  };

  auto money_array = [&](const TomlEntry& e,
                         std::vector<Money>& out) -> bool {
    if (e.value.kind != TomlValue::Kind::Array) {
      wrong_type(e.key, "an array of integers or floats");
      return false;
    }
    std::vector<std::string> folded;
    for (std::size_t i = 0; i < e.value.array.size(); ++i) {
      const TomlValue& el = e.value.array[i];
      for (const auto& c : el.pre_comments) folded.push_back(c);
      if (el.line_comment) folded.push_back(*el.line_comment);
      auto m = doc_detail::to_money(el);
      if (!m) {
        wrong_type(e.key + "[" + std::to_string(i) + "]",
                   "an integer or float");
        return false;
      }
      if (m->is_negative()) {
        add_diag(diags, Severity::Error, "BadAmount",
                 e.key + "[" + std::to_string(i) + "]", "negative amount");
        return false;
      }
      out.push_back(*m);
    }
    // Element comments on plain money arrays fold into the field's notes.
    if (!folded.empty()) {
      auto& n = doc.field_notes[e.key];
      for (auto& c : folded) n.pre_comments.push_back(std::move(c));
    }
    return true;
  };

  auto int_scalar = [&](const TomlEntry& e) -> std::optional<std::int64_t> {
    if (e.value.kind != TomlValue::Kind::Integer || !e.value.number_exact) {
      wrong_type(e.key, "an integer");
      return std::nullopt;
    }
    auto u = e.value.number.units_at_scale(0);
    if (!u) {
      wrong_type(e.key, "an integer");
      return std::nullopt;
    }
    return *u;
  };

  auto string_scalar = [&](const TomlEntry& e) -> std::optional<std::string> {
    if (e.value.kind != TomlValue::Kind::String) {
      wrong_type(e.key, "a string");
      return std::nullopt;
    }
    return e.value.text;
  };

  for (const TomlEntry& e : toml.entries) {
    const std::string& key = e.key;
    note_field(e);

    if (!key.empty() && key[0] == '_') {
      if (key.size() > 1 && key[1] == '_')
        add_diag(diags, Severity::Warning, "NonstandardUserField", key,
                 "user fields use a single underscore prefix");
      doc.user_fields.emplace_back(key, e.value);
      continue;
    }
    if (!is_known_field(key)) {
      add_diag(diags, lenient_sev, "UnknownField", key,
               "'" + key + "' is not a hand-file field (user fields start "
               "with '_')");
      continue;
    }

    if (key == "variant") {
      if (auto s = string_scalar(e)) {
        doc.variant.text = *s;
        doc.variant.code = variant_from_string(*s);
        if (!doc.variant.code)
          add_diag(diags, lenient_sev, "BadVariantCode", key,
                   "unknown variant code '" + *s + "'");
      }
    } else if (key == "antes") {
      doc.antes_present = true;
      money_array(e, doc.antes);
    } else if (key == "blinds_or_straddles") {
      std::vector<Money> v;
      if (money_array(e, v)) doc.blinds_or_straddles = std::move(v);
    } else if (key == "bring_in") {
      doc.bring_in = money_scalar(e);
    } else if (key == "small_bet") {
      doc.small_bet = money_scalar(e);
    } else if (key == "big_bet") {
      doc.big_bet = money_scalar(e);
    } else if (key == "min_bet") {
      doc.min_bet = money_scalar(e);
    } else if (key == "starting_stacks") {
      doc.stacks_present = true;
      if (e.value.kind != TomlValue::Kind::Array) {
        wrong_type(key, "an array of integers, floats, or null");
        continue;
      }
      for (std::size_t i = 0; i < e.value.array.size(); ++i) {
        const TomlValue& el = e.value.array[i];
        std::string loc = key + "[" + std::to_string(i) + "]";
        if (el.kind == TomlValue::Kind::Null) {
          doc.starting_stacks.push_back(std::nullopt);
          continue;
        }
        auto m = doc_detail::to_money(el);
        if (!m) {
          wrong_type(loc, "an integer, float, or null");
          doc.starting_stacks.push_back(std::nullopt);
          continue;
        }
        if (*m <= Money::from_int(0))
          add_diag(diags, Severity::Error, "BadStartingStack", loc,
                   "starting stacks must be strictly positive");
        doc.starting_stacks.push_back(*m);
      }
    } else if (key == "actions") {
      doc.actions_present = true;
      if (e.value.kind != TomlValue::Kind::Array) {
        wrong_type(key, "an array of strings");
        continue;
      }
      for (std::size_t i = 0; i < e.value.array.size(); ++i) {
        const TomlValue& el = e.value.array[i];
        std::string loc = "actions[" + std::to_string(i) + "]";
        if (el.kind != TomlValue::Kind::String) {
          wrong_type(loc, "a string");
          continue;
        }
        ActionRecord rec = parse_action(el.text, policy, diags, loc);
        rec.pre_comments = el.pre_comments;
        if (!rec.commentary && el.line_comment)
          rec.commentary = el.line_comment;
        doc.actions.push_back(std::move(rec));
      }
    } else if (key == "author") { doc.author = string_scalar(e);
    } else if (key == "event") { doc.event = string_scalar(e);
    } else if (key == "url") { doc.url = string_scalar(e);
    } else if (key == "address") { doc.address = string_scalar(e);
    } else if (key == "city") { doc.city = string_scalar(e);
    } else if (key == "region") { doc.region = string_scalar(e);
    } else if (key == "postal_code") { doc.postal_code = string_scalar(e);
    } else if (key == "country") { doc.country = string_scalar(e);
    } else if (key == "time") {
      if (e.value.kind == TomlValue::Kind::Time) doc.time = e.value.text;
      else wrong_type(key, "a local time (e.g. 19:30:00)");
    } else if (key == "time_zone") { doc.time_zone = string_scalar(e);
    } else if (key == "day") { doc.day = int_scalar(e);
    } else if (key == "month") { doc.month = int_scalar(e);
    } else if (key == "year") { doc.year = int_scalar(e);
    } else if (key == "hand") { doc.hand = int_scalar(e);
    } else if (key == "level") { doc.level = int_scalar(e);
    } else if (key == "seats") {
      if (e.value.kind != TomlValue::Kind::Array) {
        wrong_type(key, "an array of integers");
        continue;
      }
      std::vector<std::int64_t> v;
      bool ok = true;
      for (const TomlValue& el : e.value.array) {
        if (el.kind != TomlValue::Kind::Integer || !el.number_exact ||
            !el.number.units_at_scale(0)) {
          wrong_type(key, "an array of integers");
          ok = false;
          break;
        }
        v.push_back(*el.number.units_at_scale(0));
      }
      if (ok) doc.seats = std::move(v);
    } else if (key == "seat_count") { doc.seat_count = int_scalar(e);
    } else if (key == "table") { doc.table_number = int_scalar(e);
    } else if (key == "players") {
      if (e.value.kind != TomlValue::Kind::Array) {
        wrong_type(key, "an array of strings");
        continue;
      }
      std::vector<std::string> v;
      bool ok = true;
      for (const TomlValue& el : e.value.array) {
        if (el.kind != TomlValue::Kind::String) {
          wrong_type(key, "an array of strings");
          ok = false;
          break;
        }
        v.push_back(el.text);
      }
      if (ok) doc.players = std::move(v);
    } else if (key == "finishing_stacks") {
      std::vector<Money> v;
      if (money_array(e, v)) doc.finishing_stacks = std::move(v);
    } else if (key == "currency") { doc.currency = string_scalar(e);
    } else if (key == "ante_trimming_status") {
      if (e.value.kind == TomlValue::Kind::Boolean)
        doc.ante_trimming_status = e.value.boolean;
      else wrong_type(key, "a boolean");
    } else if (key == "time_limit") {
      doc.time_limit = money_scalar(e);
    } else if (key == "time_banks") {
      std::vector<Money> v;
      if (money_array(e, v)) doc.time_banks = std::move(v);
    }
  }

  // Required-field composition for the variant.
  if (!doc.stacks_present)
    add_diag(diags, Severity::Error, "MissingRequiredField", "starting_stacks",
             "starting_stacks is required");
  if (!doc.actions_present)
    add_diag(diags, Severity::Error, "MissingRequiredField", "actions",
             "actions is required");
  if (doc.variant.text.empty())
    add_diag(diags, Severity::Error, "MissingRequiredField", "variant",
             "variant is required");
  if (doc.variant.code) {
    auto matrix = check_required_matrix(*doc.variant.code,
                                        doc.present_fields(), policy);
    for (auto& d : matrix) {
      // presence diagnostics for stacks/actions already emitted above
      if (d.code == "MissingRequiredField" &&
          (d.location == "starting_stacks" || d.location == "actions"))
        continue;
      diags.push_back(std::move(d));
    }
  }

  // Per-player array lengths against the player count.
  int n = doc.player_count();
  if (doc.stacks_present && n < 2)
    add_diag(diags, Severity::Error, "BadPlayerCount", "starting_stacks",
             "a hand needs at least two players");
  auto check_len = [&](std::string_view field, std::size_t len, bool present) {
    if (!present) return;
    if (static_cast<int>(len) != n)
      add_diag(diags, lenient_sev, "LengthMismatch", std::string(field),
               std::string(field) + " has " + std::to_string(len) +
                   " entries for " + std::to_string(n) + " players");
  };
  check_len("antes", doc.antes.size(), doc.antes_present);
  if (doc.blinds_or_straddles)
    check_len("blinds_or_straddles", doc.blinds_or_straddles->size(), true);
  if (doc.seats) check_len("seats", doc.seats->size(), true);
  if (doc.players) check_len("players", doc.players->size(), true);
  if (doc.finishing_stacks)
    check_len("finishing_stacks", doc.finishing_stacks->size(), true);
  if (doc.time_banks) check_len("time_banks", doc.time_banks->size(), true);

  // Action player indices must stay within the player count.
  for (std::size_t i = 0; i < doc.actions.size(); ++i) {
    const ActionRecord& a = doc.actions[i];
    PlayerIndex p = a.actor();
    if (const auto* dh = a.as<ActionRecord::DealHole>()) p = dh->player;
    if (p > n && n > 0)
      add_diag(diags, lenient_sev, "BadPlayerIndex",
               "actions[" + std::to_string(i) + "]",
               "p" + std::to_string(p) + " exceeds the player count");
  }

  // Nonstandard card notations (rank or suit known, the other unknown).
  for (std::size_t i = 0; i < doc.actions.size(); ++i) {
    auto flag_mixed = [&](const std::vector<Card>& cards) {
      for (const Card& c : cards)
        if (c.mixed_unknown()) {
          add_diag(diags, Severity::Warning, "MixedUnknownCard",
                   "actions[" + std::to_string(i) + "]",
                   "card '" + c.to_string() + "' is only half known");
          return;
        }
    };
    const ActionRecord& a = doc.actions[i];
    if (const auto* b = a.as<ActionRecord::DealBoard>()) flag_mixed(b->cards);
    if (const auto* h = a.as<ActionRecord::DealHole>()) flag_mixed(h->cards);
    if (const auto* s = a.as<ActionRecord::StandPatDiscard>()) flag_mixed(s->cards);
    if (const auto* s = a.as<ActionRecord::ShowMuck>()) flag_mixed(s->cards);
  }

  auto optional_diags = check_optional_types(doc);
  for (auto& d : optional_diags) diags.push_back(std::move(d));

  result.document = std::move(doc);
  return result;
}

enum class SerializeStyle { Canonical, PreserveSource };

namespace doc_detail {

inline void emit_notes(std::string& out, const HandDocument& doc,
                       std::string_view key) {
  auto it = doc.field_notes.find(std::string(key));
  if (it == doc.field_notes.end()) return;
  for (const auto& c : it->second.pre_comments) {
    out += c.empty() ? "#" : "# " + c;
    out += '\n';
  }
}

inline void emit_line(std::string& out, const HandDocument& doc,
                      std::string_view key, const std::string& value) {
  emit_notes(out, doc, key);
  out += key;
  out += " = ";
  out += value;
  auto it = doc.field_notes.find(std::string(key));
  if (it != doc.field_notes.end() && it->second.line_comment) {
    out += "  # ";
    out += *it->second.line_comment;
  }
  out += '\n';
}

// Money arrays and other scalar arrays: inline up to four elements,
// otherwise one per line.
template <class T, class F>
std::string format_array(const std::vector<T>& items, F&& fmt) {
  std::string out;
  if (items.size() <= 4) {
    out += '[';
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      out += fmt(items[i]);
    }
    out += ']';
    return out;
  }
  out += "[\n";
  for (const T& item : items) {
    out += "  ";
    out += fmt(item);
    out += ",\n";
  }
  out += ']';
  return out;
}

}  // namespace doc_detail

// Canonical bytes: required fields first (fixed order), then optional fields
// (fixed order), then user fields alphabetically. Emitting twice is a fixed
// point. PreserveSource returns the original bytes untouched.
inline Expected<std::string, Diagnostic> serialize_document(
    const HandDocument& doc, SerializeStyle style) {
  if (style == SerializeStyle::PreserveSource) return doc.source;

  if (doc.variant.code) {
    auto matrix =
        check_required_matrix(*doc.variant.code, doc.present_fields());
    if (has_errors(matrix))
      return Diagnostic{Severity::Error, "InvalidDocument", "",
                        "document does not satisfy the required-field matrix"};
  } else {
    return Diagnostic{Severity::Error, "InvalidDocument", "variant",
                      "unrecognized variant cannot be canonicalized"};
  }

  std::string out;
  auto money_str = [](const Money& m) { return m.to_string(); };

  doc_detail::emit_line(out, doc, "variant", toml_escape(doc.variant.text));
  if (doc.antes_present)
    doc_detail::emit_line(out, doc, "antes",
                          doc_detail::format_array(doc.antes, money_str));
  if (doc.blinds_or_straddles)
    doc_detail::emit_line(
        out, doc, "blinds_or_straddles",
        doc_detail::format_array(*doc.blinds_or_straddles, money_str));
  if (doc.bring_in)
    doc_detail::emit_line(out, doc, "bring_in", doc.bring_in->to_string());
  if (doc.small_bet)
    doc_detail::emit_line(out, doc, "small_bet", doc.small_bet->to_string());
  if (doc.big_bet)
    doc_detail::emit_line(out, doc, "big_bet", doc.big_bet->to_string());
  if (doc.min_bet)
    doc_detail::emit_line(out, doc, "min_bet", doc.min_bet->to_string());
  doc_detail::emit_line(
      out, doc, "starting_stacks",
      doc_detail::format_array(doc.starting_stacks,
                               [](const std::optional<Money>& m) {
                                 return m ? m->to_string() : std::string("null");
                               }));

  // Actions always go one per line; record commentary rides along as a
  // trailing comment, full-line comments keep their place above the entry.
  doc_detail::emit_notes(out, doc, "actions");
  out += "actions = [\n";
  for (const ActionRecord& a : doc.actions) {
    for (const auto& c : a.pre_comments) {
      out += c.empty() ? "  #" : "  # " + c;
      out += '\n';
    }
    out += "  ";
    out += toml_escape(serialize_action_body(a));
    out += ',';
    if (a.commentary) {
      out += "  # ";
      out += *a.commentary;
    }
    out += '\n';
  }
  out += "]\n";

  auto str_field = [&](std::string_view key,
                       const std::optional<std::string>& v) {
    if (v) doc_detail::emit_line(out, doc, key, toml_escape(*v));
  };
  auto int_field = [&](std::string_view key,
                       const std::optional<std::int64_t>& v) {
    if (v) doc_detail::emit_line(out, doc, key, std::to_string(*v));
  };

  str_field("author", doc.author);
  str_field("event", doc.event);
  str_field("url", doc.url);
  str_field("address", doc.address);
  str_field("city", doc.city);
  str_field("region", doc.region);
  str_field("postal_code", doc.postal_code);
  str_field("country", doc.country);
  if (doc.time) doc_detail::emit_line(out, doc, "time", *doc.time);
  str_field("time_zone", doc.time_zone);
  int_field("day", doc.day);
  int_field("month", doc.month);
  int_field("year", doc.year);
  int_field("hand", doc.hand);
  int_field("level", doc.level);
  if (doc.seats)
    doc_detail::emit_line(out, doc, "seats",
                          doc_detail::format_array(*doc.seats, [](std::int64_t v) {
                            return std::to_string(v);
                          }));
  int_field("seat_count", doc.seat_count);
  int_field("table", doc.table_number);
  if (doc.players)
    doc_detail::emit_line(out, doc, "players",
                          doc_detail::format_array(*doc.players, [](const std::string& s) {
                            return toml_escape(s);
                          }));
  if (doc.finishing_stacks)
    doc_detail::emit_line(out, doc, "finishing_stacks",
                          doc_detail::format_array(*doc.finishing_stacks, money_str));
  str_field("currency", doc.currency);
  if (doc.ante_trimming_status)
    doc_detail::emit_line(out, doc, "ante_trimming_status",
                          *doc.ante_trimming_status ? "true" : "false");
  if (doc.time_limit)
    doc_detail::emit_line(out, doc, "time_limit", doc.time_limit->to_string());
  if (doc.time_banks)
    doc_detail::emit_line(out, doc, "time_banks",
                          doc_detail::format_array(*doc.time_banks, money_str));

  std::vector<std::pair<std::string, TomlValue>> users = doc.user_fields;
  std::stable_sort(users.begin(), users.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [key, value] : users)
    doc_detail::emit_line(out, doc, key, toml_value_to_string(value));

  for (const auto& c : doc.trailing_comments) {
    out += c.empty() ? "#" : "# " + c;
    out += '\n';
  }
  return out;
}

}  // namespace phh
