#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "phh/cards.hpp"
#include "phh/util.hpp"
#include "phh/variant.hpp"

namespace phh {

// The six total orders needed by the showdowns of the supported variants.
enum class EvaluationOrder {
  StandardHigh,     // regular high poker
  ShortDeckHigh,    // 36-card deck: flush above full house, A-6-7-8-9 low straight
  EightOrBetterLow, // split-pot low qualifier: five distinct ranks <= 8, aces low
  AceToFiveLow,     // razz: aces low, straights/flushes ignored
  DeuceToSevenLow,  // aces high, straights/flushes count against
  Badugi,           // best rank-distinct suit-distinct subset, low wins
};

// How the hand is assembled from hole and board cards.
enum class HandSelection {
  BestFiveOfAll,      // hold 'em / stud: any five of the union
  TwoHoleThreeBoard,  // Omaha: exactly two hole plus three board
  ExactFiveHole,      // draw games: the five hole cards as-is
  ExactBadugiHole,    // badugi: the four hole cards as-is
};

// Totally ordered strength within one evaluation order. Comparison is
// win-normalized: a lexicographically greater (category, tiebreak) wins,
// so low orders store negated entries.
struct EvaluatedStrength {
  EvaluationOrder order = EvaluationOrder::StandardHigh;
  int category = 0;
  std::array<int, 5> tiebreak{};
};

struct EvalError {
  enum class Code {
    UnknownCardInShowdown,
    DuplicateCard,
    WrongCardCount,
    OrderMismatch,
  };
  Code code;

  const char* message() const {
    switch (code) {
      case Code::UnknownCardInShowdown: return "hand contains unknown cards";
      case Code::DuplicateCard: return "duplicate card";
      case Code::WrongCardCount: return "wrong number of cards";
      case Code::OrderMismatch: return "strengths from different orders";
    }
    return "";
  }
};

enum class Ordering { Less, Equal, Greater };

inline Expected<Ordering, EvalError> compare(const EvaluatedStrength& a,
                                             const EvaluatedStrength& b) {
  if (a.order != b.order)
    return EvalError{EvalError::Code::OrderMismatch};
  if (a.category != b.category)
    return a.category < b.category ? Ordering::Less : Ordering::Greater;
  if (a.tiebreak != b.tiebreak)
    return a.tiebreak < b.tiebreak ? Ordering::Less : Ordering::Greater;
  return Ordering::Equal;
}

namespace eval_detail {

// Category codes for the high-style classifiers.
enum : int {
  kHighCard = 0, kPair, kTwoPair, kTrips, kStraight, kFlushStd,
  kFullHouseStd, kQuads = 7, kStraightFlush = 8
};

inline int rank_high(Rank r) { return static_cast<int>(r) + 2; }  // 2..14
inline int rank_low(Rank r) {                                     // ace = 1
  return r == Rank::Ace ? 1 : static_cast<int>(r) + 2;
}

struct Key {
  int category = 0;
  std::array<int, 5> tiebreak{};

  bool operator<(const Key& o) const {
    if (category != o.category) return category < o.category;
    return tiebreak < o.tiebreak;
  }
};

// Groups the five ranks by multiplicity: (count, rank) pairs sorted by
// count then rank, both descending.
inline std::vector<std::pair<int, int>> rank_groups(
    const std::array<int, 5>& ranks) {
  std::vector<std::pair<int, int>> groups;
  for (int r : ranks) {
    bool found = false;
    for (auto& [count, rank] : groups)
      if (rank == r) {
        ++count;
        found = true;
      }
    if (!found) groups.push_back({1, r});
  }
  std::sort(groups.begin(), groups.end(),
            [](auto& a, auto& b) { return a > b; });
  return groups;
}

// High-poker classification of exactly five known cards. `short_deck`
// switches the flush/full-house order and the low straight; `wheel`
// enables the five-high straight (disabled for deuce-to-seven).
inline Key classify_high(std::span<const Card> cards, bool short_deck,
                         bool wheel) {
  std::array<int, 5> ranks{};
  bool flush = true;
  for (std::size_t i = 0; i < 5; ++i) {
    ranks[i] = rank_high(cards[i].rank);
    if (cards[i].suit != cards[0].suit) flush = false;
  }
  std::sort(ranks.rbegin(), ranks.rend());

  auto groups = rank_groups(ranks);

  int straight_top = 0;
  if (groups.size() == 5) {
    if (ranks[0] - ranks[4] == 4) straight_top = ranks[0];
    else if (wheel && !short_deck &&
             ranks == std::array<int, 5>{14, 5, 4, 3, 2})
      straight_top = 5;
    else if (wheel && short_deck &&
             ranks == std::array<int, 5>{14, 9, 8, 7, 6})
      straight_top = 9;
  }

  Key key;
  const int flush_cat = short_deck ? 6 : kFlushStd;
  const int full_cat = short_deck ? 5 : kFullHouseStd;

  if (straight_top && flush) {
    key.category = kStraightFlush;
    key.tiebreak = {straight_top, 0, 0, 0, 0};
  } else if (groups[0].first == 4) {
    key.category = kQuads;
    key.tiebreak = {groups[0].second, groups[1].second, 0, 0, 0};
  } else if (groups[0].first == 3 && groups[1].first == 2) {
    key.category = full_cat;
    key.tiebreak = {groups[0].second, groups[1].second, 0, 0, 0};
  } else if (flush) {
    key.category = flush_cat;
    key.tiebreak = {ranks[0], ranks[1], ranks[2], ranks[3], ranks[4]};
  } else if (straight_top) {
    key.category = kStraight;
    key.tiebreak = {straight_top, 0, 0, 0, 0};
  } else if (groups[0].first == 3) {
    key.category = kTrips;
    key.tiebreak = {groups[0].second, groups[1].second, groups[2].second, 0, 0};
  } else if (groups[0].first == 2 && groups[1].first == 2) {
    key.category = kTwoPair;
    key.tiebreak = {groups[0].second, groups[1].second, groups[2].second, 0, 0};
  } else if (groups[0].first == 2) {
    key.category = kPair;
    key.tiebreak = {groups[0].second, groups[1].second, groups[2].second,
                    groups[3].second, 0};
  } else {
    key.category = kHighCard;
    key.tiebreak = {ranks[0], ranks[1], ranks[2], ranks[3], ranks[4]};
  }
  return key;
}

// Pairing-only classification with aces low (straights and flushes do not
// exist in ace-to-five orders).
inline Key classify_ace_to_five(std::span<const Card> cards) {
  std::array<int, 5> ranks{};
  for (std::size_t i = 0; i < 5; ++i) ranks[i] = rank_low(cards[i].rank);
  std::sort(ranks.rbegin(), ranks.rend());
  auto groups = rank_groups(ranks);

  Key key;
  if (groups[0].first == 4) {
    key.category = 5;
    key.tiebreak = {groups[0].second, groups[1].second, 0, 0, 0};
  } else if (groups[0].first == 3 && groups[1].first == 2) {
    key.category = 4;
    key.tiebreak = {groups[0].second, groups[1].second, 0, 0, 0};
  } else if (groups[0].first == 3) {
    key.category = 3;
    key.tiebreak = {groups[0].second, groups[1].second, groups[2].second, 0, 0};
  } else if (groups[0].first == 2 && groups[1].first == 2) {
    key.category = 2;
    key.tiebreak = {groups[0].second, groups[1].second, groups[2].second, 0, 0};
  } else if (groups[0].first == 2) {
    key.category = 1;
    key.tiebreak = {groups[0].second, groups[1].second, groups[2].second,
                    groups[3].second, 0};
  } else {
    key.category = 0;
    key.tiebreak = {ranks[0], ranks[1], ranks[2], ranks[3], ranks[4]};
  }
  return key;
}

inline Key negate(Key k) {
  k.category = -k.category;
  for (int& t : k.tiebreak) t = -t;
  return k;
}

// Five distinct ranks, all eight or lower (aces low); nullopt otherwise.
inline std::optional<Key> classify_eight_or_better(std::span<const Card> cards) {
  std::array<int, 5> ranks{};
  for (std::size_t i = 0; i < 5; ++i) ranks[i] = rank_low(cards[i].rank);
  std::sort(ranks.rbegin(), ranks.rend());
  for (int r : ranks)
    if (r > 8) return std::nullopt;
  for (int i = 0; i < 4; ++i)
    if (ranks[i] == ranks[i + 1]) return std::nullopt;
  Key key;
  key.category = 0;
  key.tiebreak = {ranks[0], ranks[1], ranks[2], ranks[3], ranks[4]};
  return negate(key);
}

// Best badugi of up to four cards: more cards beat fewer, then the lower
// sorted ranks win. Subsets must be rank-distinct and suit-distinct.
inline Key classify_badugi(std::span<const Card> cards) {
  Key best;
  best.category = 0;
  int n = static_cast<int>(cards.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    int rank_seen = 0, suit_seen = 0;
    std::vector<int> ranks;
    bool valid = true;
    for (int i = 0; i < n && valid; ++i) {
      if (!(mask & (1 << i))) continue;
      int r = rank_low(cards[i].rank);
      int s = static_cast<int>(cards[i].suit);
      if ((rank_seen >> r) & 1 || (suit_seen >> s) & 1) valid = false;
      rank_seen |= 1 << r;
      suit_seen |= 1 << s;
      ranks.push_back(r);
    }
    if (!valid) continue;
    std::sort(ranks.rbegin(), ranks.rend());
    Key key;
    key.category = static_cast<int>(ranks.size());
    for (std::size_t i = 0; i < ranks.size(); ++i) key.tiebreak[i] = -ranks[i];
    if (best.category == 0 || best < key) best = key;
  }
  return best;
}

inline Key score_five(EvaluationOrder order, std::span<const Card> five) {
  switch (order) {
    case EvaluationOrder::StandardHigh:
      return classify_high(five, false, true);
    case EvaluationOrder::ShortDeckHigh:
      return classify_high(five, true, true);
    case EvaluationOrder::DeuceToSevenLow:
      return negate(classify_high(five, false, false));
    case EvaluationOrder::AceToFiveLow:
      return negate(classify_ace_to_five(five));
    default:
      return {};
  }
}

template <class Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace eval_detail

// Evaluates a hand. All consumed cards must be known and pairwise distinct.
// Returns nullopt (not an error) when an eight-or-better low fails to
// qualify.
inline Expected<std::optional<EvaluatedStrength>, EvalError> evaluate(
    EvaluationOrder order, std::span<const Card> hole,
    std::span<const Card> board, HandSelection selection) {
  using eval_detail::Key;

  if (hole.size() + board.size() > 13)  // no variant consumes more
    return EvalError{EvalError::Code::WrongCardCount};
  std::vector<Card> all(hole.begin(), hole.end());
  all.insert(all.end(), board.begin(), board.end());
  for (const Card& c : all)
    if (!c.known())
      return EvalError{EvalError::Code::UnknownCardInShowdown};
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i] == all[j])
        return EvalError{EvalError::Code::DuplicateCard};

  auto finish = [&](const Key& key) {
    EvaluatedStrength s;
    s.order = order;
    s.category = key.category;
    s.tiebreak = key.tiebreak;
    return std::optional<EvaluatedStrength>(s);
  };

  if (selection == HandSelection::ExactBadugiHole ||
      order == EvaluationOrder::Badugi) {
    if (hole.size() != 4 || !board.empty())
      return EvalError{EvalError::Code::WrongCardCount};
    return finish(eval_detail::classify_badugi(hole));
  }

  // Collect the candidate five-card combinations for this selection.
  std::vector<std::array<Card, 5>> candidates;
  if (selection == HandSelection::ExactFiveHole) {
    if (hole.size() != 5 || !board.empty())
      return EvalError{EvalError::Code::WrongCardCount};
    std::array<Card, 5> c;
    std::copy(hole.begin(), hole.end(), c.begin());
    candidates.push_back(c);
  } else if (selection == HandSelection::TwoHoleThreeBoard) {
    if (hole.size() < 2 || board.size() < 3)
      return EvalError{EvalError::Code::WrongCardCount};
    eval_detail::for_each_combination(
        static_cast<int>(hole.size()), 2, [&](const std::vector<int>& hi) {
          eval_detail::for_each_combination(
              static_cast<int>(board.size()), 3, [&](const std::vector<int>& bi) {
                candidates.push_back({hole[hi[0]], hole[hi[1]], board[bi[0]],
                                      board[bi[1]], board[bi[2]]});
              });
        });
  } else {
    if (all.size() < 5)
      return EvalError{EvalError::Code::WrongCardCount};
    eval_detail::for_each_combination(
        static_cast<int>(all.size()), 5, [&](const std::vector<int>& idx) {
          candidates.push_back(
              {all[idx[0]], all[idx[1]], all[idx[2]], all[idx[3]], all[idx[4]]});
        });
  }

  if (order == EvaluationOrder::EightOrBetterLow) {
    std::optional<Key> best;
    for (const auto& c : candidates) {
      auto key = eval_detail::classify_eight_or_better(c);
      if (key && (!best || *best < *key)) best = key;
    }
    if (!best) return std::optional<EvaluatedStrength>();  // no qualifying low
    return finish(*best);
  }

  std::optional<Key> best;
  for (const auto& c : candidates) {
    Key key = eval_detail::score_five(order, c);
    if (!best || *best < key) best = key;
  }
  return finish(*best);
}

// Orders and hand assembly used at showdown for each variant.
struct ShowdownRules {
  std::vector<EvaluationOrder> orders;  // one, or high+low for split variants
  HandSelection selection;
};

inline ShowdownRules showdown_rules(VariantCode code) {
  switch (code) {
    case VariantCode::FT:
    case VariantCode::NT:
      return {{EvaluationOrder::StandardHigh}, HandSelection::BestFiveOfAll};
    case VariantCode::NS:
      return {{EvaluationOrder::ShortDeckHigh}, HandSelection::BestFiveOfAll};
    case VariantCode::PO:
      return {{EvaluationOrder::StandardHigh}, HandSelection::TwoHoleThreeBoard};
    case VariantCode::FO8:
      return {{EvaluationOrder::StandardHigh, EvaluationOrder::EightOrBetterLow},
              HandSelection::TwoHoleThreeBoard};
    case VariantCode::F7S:
      return {{EvaluationOrder::StandardHigh}, HandSelection::BestFiveOfAll};
    case VariantCode::F7S8:
      return {{EvaluationOrder::StandardHigh, EvaluationOrder::EightOrBetterLow},
              HandSelection::BestFiveOfAll};
    case VariantCode::FR:
      return {{EvaluationOrder::AceToFiveLow}, HandSelection::BestFiveOfAll};
    case VariantCode::N2L1D:
    case VariantCode::F2L3D:
      return {{EvaluationOrder::DeuceToSevenLow}, HandSelection::ExactFiveHole};
    case VariantCode::FB:
      return {{EvaluationOrder::Badugi}, HandSelection::ExactBadugiHole};
  }
  return {{EvaluationOrder::StandardHigh}, HandSelection::BestFiveOfAll};
}

}  // namespace phh
