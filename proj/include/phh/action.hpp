#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phh/cards.hpp"
#include "phh/diagnostics.hpp"
#include "phh/money.hpp"

namespace phh {

// 1-based position index into the hand's player ordering.
using PlayerIndex = int;

// One parsed entry of the "actions" array. The grammar is
//   [Actor Action[ Arguments...]][ # Commentary]
// with actors "d" (dealer) and "p<n>", verbs db/dh/pb/cbr/cc/f/sd/sm, and
// whitespace-separated tokens. An empty or commentary-only entry is a NoOp.
struct ActionRecord {
  struct NoOp {};
  struct DealBoard {
    std::vector<Card> cards;
  };
  struct DealHole {
    PlayerIndex player = 0;
    std::vector<Card> cards;
  };
  struct PostBringIn {
    PlayerIndex player = 0;
  };
  struct CompleteBetRaiseTo {
    PlayerIndex player = 0;
    Money amount;  // total wagered for the street, not the increment
  };
  struct CheckCall {
    PlayerIndex player = 0;
  };
  struct Fold {
    PlayerIndex player = 0;
  };
  // Empty cards = standing pat, otherwise exactly the discarded cards.
  struct StandPatDiscard {
    PlayerIndex player = 0;
    std::vector<Card> cards;
  };
  enum class Disclosure { Muck, Show, ShowPrevious };
  struct ShowMuck {
    PlayerIndex player = 0;
    Disclosure disclosure = Disclosure::Muck;
    std::vector<Card> cards;  // nonempty only for Show
  };

  using Body = std::variant<NoOp, DealBoard, DealHole, PostBringIn,
                            CompleteBetRaiseTo, CheckCall, Fold,
                            StandPatDiscard, ShowMuck>;

  Body body = NoOp{};
  std::optional<std::string> commentary;

  // Presentation only: the raw source text and any full-line comments that
  // preceded this entry inside the actions array.
  std::string source;
  std::vector<std::string> pre_comments;

  bool is_noop() const { return std::holds_alternative<NoOp>(body); }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&body);
  }

  // The acting player, or 0 for dealer actions and no-ops.
  PlayerIndex actor() const {
    return std::visit(
        [](const auto& b) -> PlayerIndex {
          using B = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<B, NoOp> ||
                        std::is_same_v<B, DealBoard> ||
                        std::is_same_v<B, DealHole>) {
            return 0;
          } else {
            return b.player;
          }
        },
        body);
  }
};

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t'; }

inline std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (is_space(s.front()) || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (is_space(s.back()) || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

inline std::optional<PlayerIndex> parse_player_token(std::string_view tok) {
  if (tok.size() < 2 || tok[0] != 'p') return std::nullopt;
  long long n = 0;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    char c = tok[i];
    if (c < '0' || c > '9') return std::nullopt;
    n = n * 10 + (c - '0');
    if (n > 1'000'000) return std::nullopt;
  }
  if (n < 1) return std::nullopt;
  return static_cast<PlayerIndex>(n);
}

}  // namespace detail

// Parses one action notation. Grammar violations yield a diagnostic (Error
// under Strict, Warning under Lenient) and the record degrades to a NoOp so
// lenient callers can skip it.
inline ActionRecord parse_action(std::string_view text, ParsePolicy policy,
                                 std::vector<Diagnostic>& diags,
                                 const std::string& location = "action") {
  ActionRecord rec;
  rec.source = std::string(text);

  std::string_view body = text;
  std::size_t hash = text.find('#');
  if (hash != std::string_view::npos) {
    std::string_view c = text.substr(hash + 1);
    rec.commentary = std::string(detail::trim(c));
    body = text.substr(0, hash);
  }

  Severity sev = policy == ParsePolicy::Strict ? Severity::Error : Severity::Warning;
  auto fail = [&](std::string code, std::string message) {
    add_diag(diags, sev, std::move(code), location, std::move(message));
    rec.body = ActionRecord::NoOp{};
    return rec;
  };

  auto tokens = detail::split_tokens(body);
  if (tokens.empty()) return rec;  // empty or commentary-only: NoOp

  auto expect_cards = [&](std::string_view tok,
                          std::vector<Card>& out) -> bool {
    auto cards = parse_cards(tok);
    if (!cards.ok()) return false;
    out = std::move(cards.value());
    return true;
  };

  std::string_view actor = tokens[0];
  if (actor == "d") {
    if (tokens.size() < 2) return fail("UnknownVerb", "dealer action without a verb");
    std::string_view verb = tokens[1];
    if (verb == "db") {
      if (tokens.size() < 3) return fail("MissingArgument", "db requires cards");
      if (tokens.size() > 3) return fail("ExtraArgument", "db takes a single card run");
      ActionRecord::DealBoard b;
      if (!expect_cards(tokens[2], b.cards) || b.cards.empty())
        return fail("BadCards", "cannot parse board cards '" + std::string(tokens[2]) + "'");
      rec.body = std::move(b);
    } else if (verb == "dh") {
      if (tokens.size() < 4) return fail("MissingArgument", "dh requires a player and cards");
      if (tokens.size() > 4) return fail("ExtraArgument", "dh takes a player and one card run");
      auto p = detail::parse_player_token(tokens[2]);
      if (!p) return fail("UnknownActor", "bad player token '" + std::string(tokens[2]) + "'");
      ActionRecord::DealHole h;
      h.player = *p;
      if (!expect_cards(tokens[3], h.cards) || h.cards.empty())
        return fail("BadCards", "cannot parse hole cards '" + std::string(tokens[3]) + "'");
      rec.body = std::move(h);
    } else {
      return fail("UnknownVerb", "unknown dealer verb '" + std::string(verb) + "'");
    }
    return rec;
  }

  auto player = detail::parse_player_token(actor);
  if (!player) return fail("UnknownActor", "unknown actor '" + std::string(actor) + "'");
  if (tokens.size() < 2) return fail("UnknownVerb", "player action without a verb");
  std::string_view verb = tokens[1];

  if (verb == "pb") {
    if (tokens.size() > 2) return fail("ExtraArgument", "pb takes no arguments");
    rec.body = ActionRecord::PostBringIn{*player};
  } else if (verb == "cbr") {
    if (tokens.size() < 3) return fail("MissingArgument", "cbr requires an amount");
    if (tokens.size() > 3) return fail("ExtraArgument", "cbr takes a single amount");
    auto amount = Money::parse(tokens[2]);
    if (!amount || amount->is_negative())
      return fail("BadAmount", "cannot parse amount '" + std::string(tokens[2]) + "'");
    rec.body = ActionRecord::CompleteBetRaiseTo{*player, *amount};
  } else if (verb == "cc") {
    if (tokens.size() > 2) return fail("ExtraArgument", "cc takes no arguments");
    rec.body = ActionRecord::CheckCall{*player};
  } else if (verb == "f") {
    if (tokens.size() > 2) return fail("ExtraArgument", "f takes no arguments");
    rec.body = ActionRecord::Fold{*player};
  } else if (verb == "sd") {
    if (tokens.size() > 3) return fail("ExtraArgument", "sd takes at most one card run");
    ActionRecord::StandPatDiscard s;
    s.player = *player;
    if (tokens.size() == 3 && !expect_cards(tokens[2], s.cards))
      return fail("BadCards", "cannot parse discards '" + std::string(tokens[2]) + "'");
    rec.body = std::move(s);
  } else if (verb == "sm") {
    if (tokens.size() > 3) return fail("ExtraArgument", "sm takes at most one argument");
    ActionRecord::ShowMuck s;
    s.player = *player;
    if (tokens.size() == 2) {
      s.disclosure = ActionRecord::Disclosure::Muck;
    } else if (tokens[2] == "-") {
      s.disclosure = ActionRecord::Disclosure::ShowPrevious;
    } else {
      s.disclosure = ActionRecord::Disclosure::Show;
      if (!expect_cards(tokens[2], s.cards) || s.cards.empty())
        return fail("BadCards", "cannot parse shown cards '" + std::string(tokens[2]) + "'");
    }
    rec.body = std::move(s);
  } else {
    return fail("UnknownVerb", "unknown player verb '" + std::string(verb) + "'");
  }
  return rec;
}

// Canonical notation without the commentary suffix.
inline std::string serialize_action_body(const ActionRecord& rec) {
  struct Emit {
    std::string operator()(const ActionRecord::NoOp&) const { return {}; }
    std::string operator()(const ActionRecord::DealBoard& b) const {
      return "d db " + serialize_cards(b.cards);
    }
    std::string operator()(const ActionRecord::DealHole& b) const {
      return "d dh p" + std::to_string(b.player) + " " + serialize_cards(b.cards);
    }
    std::string operator()(const ActionRecord::PostBringIn& b) const {
      return "p" + std::to_string(b.player) + " pb";
    }
    std::string operator()(const ActionRecord::CompleteBetRaiseTo& b) const {
      return "p" + std::to_string(b.player) + " cbr " + b.amount.to_string();
    }
    std::string operator()(const ActionRecord::CheckCall& b) const {
      return "p" + std::to_string(b.player) + " cc";
    }
    std::string operator()(const ActionRecord::Fold& b) const {
      return "p" + std::to_string(b.player) + " f";
    }
    std::string operator()(const ActionRecord::StandPatDiscard& b) const {
      std::string s = "p" + std::to_string(b.player) + " sd";
      if (!b.cards.empty()) s += " " + serialize_cards(b.cards);
      return s;
    }
    std::string operator()(const ActionRecord::ShowMuck& b) const {
      std::string s = "p" + std::to_string(b.player) + " sm";
      if (b.disclosure == ActionRecord::Disclosure::ShowPrevious) s += " -";
      else if (b.disclosure == ActionRecord::Disclosure::Show)
        s += " " + serialize_cards(b.cards);
      return s;
    }
  };
  return std::visit(Emit{}, rec.body);
}

// Canonical notation: single spaces, commentary appended as "  # <text>"
// (a standalone "# <text>" for commentary-only records).
inline std::string serialize_action(const ActionRecord& rec) {
  std::string body = serialize_action_body(rec);
  if (!rec.commentary) return body;
  if (body.empty()) return "# " + *rec.commentary;
  if (rec.commentary->empty()) return body + "  #";
  return body + "  # " + *rec.commentary;
}

}  // namespace phh
