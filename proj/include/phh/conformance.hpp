#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phh/document.hpp"
#include "phh/engine.hpp"

namespace phh {

// Field-by-field semantic equality of two parsed hands. Numbers compare
// numerically, action records structurally including their commentary text;
// TOML formatting and whitespace are out of the picture by construction.
// Returns an empty string when equal, otherwise a short description of the
// first difference.
inline std::string semantic_diff(const HandDocument& a, const HandDocument& b) {
  if (a.variant.text != b.variant.text) return "variant differs";

  auto money_eq = [](const Money& x, const Money& y) { return x == y; };
  auto money_vec = [&](const char* what, const std::vector<Money>& x,
                       const std::vector<Money>& y) -> std::string {
    if (x.size() != y.size()) return std::string(what) + " length differs";
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!money_eq(x[i], y[i]))
        return std::string(what) + "[" + std::to_string(i) + "] differs";
    return {};
  };

  if (auto d = money_vec("antes", a.antes, b.antes); !d.empty()) return d;
  if (a.blinds_or_straddles.has_value() != b.blinds_or_straddles.has_value())
    return "blinds_or_straddles presence differs";
  if (a.blinds_or_straddles) {
    if (auto d = money_vec("blinds_or_straddles", *a.blinds_or_straddles,
                           *b.blinds_or_straddles);
        !d.empty())
      return d;
  }
  auto opt_money = [&](const char* what, const std::optional<Money>& x,
                       const std::optional<Money>& y) -> std::string {
    if (x.has_value() != y.has_value())
      return std::string(what) + " presence differs";
    if (x && !money_eq(*x, *y)) return std::string(what) + " differs";
    return {};
  };
  if (auto d = opt_money("bring_in", a.bring_in, b.bring_in); !d.empty()) return d;
  if (auto d = opt_money("small_bet", a.small_bet, b.small_bet); !d.empty()) return d;
  if (auto d = opt_money("big_bet", a.big_bet, b.big_bet); !d.empty()) return d;
  if (auto d = opt_money("min_bet", a.min_bet, b.min_bet); !d.empty()) return d;
  if (auto d = opt_money("time_limit", a.time_limit, b.time_limit); !d.empty()) return d;

  if (a.starting_stacks.size() != b.starting_stacks.size())
    return "starting_stacks length differs";
  for (std::size_t i = 0; i < a.starting_stacks.size(); ++i) {
    const auto& x = a.starting_stacks[i];
    const auto& y = b.starting_stacks[i];
    if (x.has_value() != y.has_value() || (x && !money_eq(*x, *y)))
      return "starting_stacks[" + std::to_string(i) + "] differs";
  }

  if (a.actions.size() != b.actions.size()) return "action count differs";
  for (std::size_t i = 0; i < a.actions.size(); ++i) {
    const ActionRecord& x = a.actions[i];
    const ActionRecord& y = b.actions[i];
    if (serialize_action_body(x) != serialize_action_body(y))
      return "actions[" + std::to_string(i) + "] differs";
    std::string cx = x.commentary.value_or("");
    std::string cy = y.commentary.value_or("");
    if (cx != cy)
      return "actions[" + std::to_string(i) + "] commentary differs";
  }

  auto opt_eq = [](const auto& x, const auto& y, const char* what) -> std::string {
    if (x != y) return std::string(what) + " differs";
    return {};
  };
  if (auto d = opt_eq(a.author, b.author, "author"); !d.empty()) return d;
  if (auto d = opt_eq(a.event, b.event, "event"); !d.empty()) return d;
  if (auto d = opt_eq(a.url, b.url, "url"); !d.empty()) return d;
  if (auto d = opt_eq(a.address, b.address, "address"); !d.empty()) return d;
  if (auto d = opt_eq(a.city, b.city, "city"); !d.empty()) return d;
  if (auto d = opt_eq(a.region, b.region, "region"); !d.empty()) return d;
  if (auto d = opt_eq(a.postal_code, b.postal_code, "postal_code"); !d.empty()) return d;
  if (auto d = opt_eq(a.country, b.country, "country"); !d.empty()) return d;
  if (auto d = opt_eq(a.time, b.time, "time"); !d.empty()) return d;
  if (auto d = opt_eq(a.time_zone, b.time_zone, "time_zone"); !d.empty()) return d;
  if (auto d = opt_eq(a.currency, b.currency, "currency"); !d.empty()) return d;
  if (auto d = opt_eq(a.day, b.day, "day"); !d.empty()) return d;
  if (auto d = opt_eq(a.month, b.month, "month"); !d.empty()) return d;
  if (auto d = opt_eq(a.year, b.year, "year"); !d.empty()) return d;
  if (auto d = opt_eq(a.hand, b.hand, "hand"); !d.empty()) return d;
  if (auto d = opt_eq(a.level, b.level, "level"); !d.empty()) return d;
  if (auto d = opt_eq(a.seat_count, b.seat_count, "seat_count"); !d.empty()) return d;
  if (auto d = opt_eq(a.table_number, b.table_number, "table"); !d.empty()) return d;
  if (auto d = opt_eq(a.seats, b.seats, "seats"); !d.empty()) return d;
  if (auto d = opt_eq(a.players, b.players, "players"); !d.empty()) return d;
  if (auto d = opt_eq(a.ante_trimming_status, b.ante_trimming_status,
                      "ante_trimming_status");
      !d.empty())
    return d;

  if (a.finishing_stacks.has_value() != b.finishing_stacks.has_value())
    return "finishing_stacks presence differs";
  if (a.finishing_stacks) {
    if (auto d = money_vec("finishing_stacks", *a.finishing_stacks,
                           *b.finishing_stacks);
        !d.empty())
      return d;
  }
  if (a.time_banks.has_value() != b.time_banks.has_value())
    return "time_banks presence differs";
  if (a.time_banks) {
    if (auto d = money_vec("time_banks", *a.time_banks, *b.time_banks);
        !d.empty())
      return d;
  }

  if (a.user_fields.size() != b.user_fields.size())
    return "user field count differs";
  for (const auto& [key, value] : a.user_fields) {
    bool found = false;
    for (const auto& [k2, v2] : b.user_fields)
      if (k2 == key) {
        found = true;
        if (!toml_value_equal(value, v2)) return key + " differs";
      }
    if (!found) return key + " missing";
  }
  return {};
}

inline bool semantic_equal(const HandDocument& a, const HandDocument& b) {
  return semantic_diff(a, b).empty();
}

// Positional sanity of a parsed hand: in button games the forced-bet
// pattern should put the small blind first (big blind first heads-up) with
// straddles following, or a lone button straddle. Everything here is a
// warning; table arrangements legitimately vary.
inline std::vector<Diagnostic> validate_positions(const HandDocument& doc) {
  std::vector<Diagnostic> out;
  if (!doc.variant.code || !is_button_variant(*doc.variant.code)) return out;
  if (!doc.blinds_or_straddles) return out;
  const auto& blinds = *doc.blinds_or_straddles;
  int n = doc.player_count();
  if (static_cast<int>(blinds.size()) != n || n < 2) return out;

  Money zero = Money::from_int(0);
  bool all_zero = true;
  for (const auto& b : blinds)
    if (!(b == zero)) all_zero = false;
  if (all_zero) return out;

  // leading non-zero run (small blind, big blind, straddles...)
  std::size_t run = 0;
  while (run < blinds.size() && !(blinds[run] == zero)) ++run;
  bool ok = run >= 2 || (n == 2 && run == blinds.size());
  // nondecreasing within the run
  for (std::size_t i = 1; i + 1 <= run && ok; ++i)
    if (blinds[i] < blinds[i - 1]) ok = false;
  // after the run only zeros, except a final button straddle
  for (std::size_t i = run; i < blinds.size() && ok; ++i) {
    if (blinds[i] == zero) continue;
    if (i + 1 == blinds.size() && run >= 2) continue;  // button straddle
    ok = false;
  }
  if (!ok)
    add_diag(out, Severity::Warning, "NonstandardBlindPlacement",
             "blinds_or_straddles",
             "forced bets do not follow the usual small-blind-first layout");
  return out;
}

struct RoundTripOutcome {
  bool ok = false;
  std::string summary;
};

// parse -> replay -> canonical emit -> parse again -> semantic equality.
// When the input already is canonical, the second emission must match the
// first byte for byte (the canonical form is a fixed point).
inline RoundTripOutcome round_trip(std::string_view bytes, ParsePolicy policy) {
  ParsedDocument first = parse_document(bytes, policy);
  if (!first.document || has_errors(first.diagnostics))
    return {false, "input does not parse cleanly"};

  ReplayResult rep = replay(*first.document, Strictness::Warn);
  if (has_errors(rep.diagnostics))
    return {false, "replay reported errors"};

  auto emitted = serialize_document(*first.document, SerializeStyle::Canonical);
  if (!emitted.ok()) return {false, "canonical serialization refused"};

  ParsedDocument second = parse_document(emitted.value(), ParsePolicy::Strict);
  if (!second.document || has_errors(second.diagnostics))
    return {false, "canonical output does not reparse"};

  std::string diff = semantic_diff(*first.document, *second.document);
  if (!diff.empty()) return {false, "semantic mismatch: " + diff};

  auto again = serialize_document(*second.document, SerializeStyle::Canonical);
  if (!again.ok() || again.value() != emitted.value())
    return {false, "canonical form is not a fixed point"};
  return {true, ""};
}

struct ConformanceReport {
  std::string file_id;
  enum class Verdict { Pass, PassWithWarnings, Fail } verdict = Verdict::Fail;
  std::vector<Diagnostic> diagnostics;
  bool round_trip_ok = false;
  enum class StackCheck { NotApplicable, Match, Mismatch } finishing_stack_check =
      StackCheck::NotApplicable;
};

inline const char* to_string(ConformanceReport::Verdict v) {
  switch (v) {
    case ConformanceReport::Verdict::Pass: return "pass";
    case ConformanceReport::Verdict::PassWithWarnings: return "pass-with-warnings";
    case ConformanceReport::Verdict::Fail: return "fail";
  }
  return "";
}

// Full conformance check of one file: parse + positions + replay +
// round-trip. Fail on any error-severity diagnostic or round-trip break.
inline ConformanceReport check_file(std::string_view bytes, std::string file_id,
                                    ParsePolicy policy,
                                    Strictness strictness = Strictness::Warn) {
  ConformanceReport report;
  report.file_id = std::move(file_id);

  ParsedDocument parsed = parse_document(bytes, policy);
  report.diagnostics = parsed.diagnostics;
  if (!parsed.document) {
    report.verdict = ConformanceReport::Verdict::Fail;
    return report;
  }

  for (auto& d : validate_positions(*parsed.document))
    report.diagnostics.push_back(std::move(d));

  ReplayResult rep = replay(*parsed.document, strictness);
  for (auto& d : rep.diagnostics) {
    if (d.code == "FinishingStackMismatch")
      report.finishing_stack_check = ConformanceReport::StackCheck::Mismatch;
    report.diagnostics.push_back(std::move(d));
  }
  if (report.finishing_stack_check ==
          ConformanceReport::StackCheck::NotApplicable &&
      parsed.document->finishing_stacks && rep.state &&
      rep.state->terminal())
    report.finishing_stack_check = ConformanceReport::StackCheck::Match;

  RoundTripOutcome rt = round_trip(bytes, policy);
  report.round_trip_ok = rt.ok;
  if (!rt.ok)
    add_diag(report.diagnostics, Severity::Error, "RoundTripFailure", "",
             rt.summary);

  if (has_errors(report.diagnostics) || !report.round_trip_ok)
    report.verdict = ConformanceReport::Verdict::Fail;
  else if (has_warnings(report.diagnostics))
    report.verdict = ConformanceReport::Verdict::PassWithWarnings;
  else
    report.verdict = ConformanceReport::Verdict::Pass;
  return report;
}

}  // namespace phh
