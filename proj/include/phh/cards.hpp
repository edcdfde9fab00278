#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phh/util.hpp"

namespace phh {

enum class Rank : std::uint8_t {
  Deuce, Trey, Four, Five, Six, Seven, Eight, Nine, Ten, Jack, Queen, King,
  Ace, Unknown
};

enum class Suit : std::uint8_t { Club, Diamond, Heart, Spade, Unknown };

inline constexpr char kRankChars[] = "23456789TJQKA?";
inline constexpr char kSuitChars[] = "cdhs?";

constexpr char to_char(Rank r) { return kRankChars[static_cast<int>(r)]; }
constexpr char to_char(Suit s) { return kSuitChars[static_cast<int>(s)]; }

constexpr std::optional<Rank> rank_from_char(char c) {
  for (int i = 0; i < 14; ++i)
    if (kRankChars[i] == c) return static_cast<Rank>(i);
  return std::nullopt;
}

constexpr std::optional<Suit> suit_from_char(char c) {
  for (int i = 0; i < 5; ++i)
    if (kSuitChars[i] == c) return static_cast<Suit>(i);
  return std::nullopt;
}

// A card with either component possibly unknown ("?"). Fully unknown cards
// are routine (hidden hole cards); a card with only one side unknown is
// representable but nonstandard and gets flagged by validation.
struct Card {
  Rank rank = Rank::Unknown;
  Suit suit = Suit::Unknown;

  bool known() const { return rank != Rank::Unknown && suit != Suit::Unknown; }
  bool fully_unknown() const {
    return rank == Rank::Unknown && suit == Suit::Unknown;
  }
  bool mixed_unknown() const { return !known() && !fully_unknown(); }

  std::string to_string() const { return {to_char(rank), to_char(suit)}; }

  friend auto operator<=>(const Card&, const Card&) = default;
};

inline constexpr Card kUnknownCard{Rank::Unknown, Suit::Unknown};

struct CardError {
  enum class Code { BadLength, OddLength, UnknownRankChar, UnknownSuitChar };
  Code code;
  std::size_t offset = 0;  // byte offset of the offending character/chunk

  std::string message() const {
    switch (code) {
      case Code::BadLength: return "card notation must be two characters";
      case Code::OddLength: return "card run must have even length";
      case Code::UnknownRankChar: return "unknown rank character";
      case Code::UnknownSuitChar: return "unknown suit character";
    }
    return {};
  }
};

inline Expected<Card, CardError> parse_card(std::string_view text) {
  if (text.size() != 2)
    return CardError{CardError::Code::BadLength, 0};
  auto r = rank_from_char(text[0]);
  if (!r) return CardError{CardError::Code::UnknownRankChar, 0};
  auto s = suit_from_char(text[1]);
  if (!s) return CardError{CardError::Code::UnknownSuitChar, 1};
  return Card{*r, *s};
}

// Parses a run of concatenated two-character cards, left to right.
inline Expected<std::vector<Card>, CardError> parse_cards(std::string_view text) {
  if (text.size() % 2 != 0)
    return CardError{CardError::Code::OddLength, text.size() - 1};
  std::vector<Card> out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    auto c = parse_card(text.substr(i, 2));
    if (!c.ok()) {
      CardError e = c.error();
      e.offset += i;
      return e;
    }
    out.push_back(c.value());
  }
  return out;
}

inline std::string serialize_cards(std::span<const Card> cards) {
  std::string out;
  out.reserve(cards.size() * 2);
  for (const Card& c : cards) {
    out += to_char(c.rank);
    out += to_char(c.suit);
  }
  return out;
}

}  // namespace phh
