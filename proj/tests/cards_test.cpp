#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "phh/cards.hpp"

using namespace phh;

TEST_CASE("single card parsing follows the character tables") {
  auto seven_hearts = parse_card("7h");
  REQUIRE(seven_hearts.ok());
  CHECK(seven_hearts.value() == Card{Rank::Seven, Suit::Heart});

  auto unknown = parse_card("??");
  REQUIRE(unknown.ok());
  CHECK(unknown.value().fully_unknown());

  auto bad_suit = parse_card("Tx");
  REQUIRE(!bad_suit.ok());
  CHECK(bad_suit.error().code == CardError::Code::UnknownSuitChar);

  auto bad_rank = parse_card("1h");
  REQUIRE(!bad_rank.ok());
  CHECK(bad_rank.error().code == CardError::Code::UnknownRankChar);

  CHECK(!parse_card("7").ok());
  CHECK(!parse_card("7hh").ok());
}

TEST_CASE("rank and suit character tables are exhaustive") {
  const std::string rank_chars = "23456789TJQKA?";
  const std::string suit_chars = "cdhs?";
  for (int c = 0; c < 256; ++c) {
    char ch = static_cast<char>(c);
    bool rank_ok = rank_from_char(ch).has_value();
    bool suit_ok = suit_from_char(ch).has_value();
    CHECK(rank_ok == (rank_chars.find(ch) != std::string::npos));
    CHECK(suit_ok == (suit_chars.find(ch) != std::string::npos));
  }
}

TEST_CASE("card runs parse left to right") {
  auto run = parse_cards("AsQs");
  REQUIRE(run.ok());
  REQUIRE(run.value().size() == 2);
  CHECK(run.value()[0] == Card{Rank::Ace, Suit::Spade});
  CHECK(run.value()[1] == Card{Rank::Queen, Suit::Spade});

  auto hidden = parse_cards("??????????");
  REQUIRE(hidden.ok());
  REQUIRE(hidden.value().size() == 5);
  for (const Card& c : hidden.value()) CHECK(c.fully_unknown());

  auto empty = parse_cards("");
  REQUIRE(empty.ok());
  CHECK(empty.value().empty());

  auto odd = parse_cards("AsQ");
  REQUIRE(!odd.ok());
  CHECK(odd.error().code == CardError::Code::OddLength);

  auto bad = parse_cards("AsQx");
  REQUIRE(!bad.ok());
  CHECK(bad.error().code == CardError::Code::UnknownSuitChar);
  CHECK(bad.error().offset == 3);
}

TEST_CASE("mixed-unknown cards are representable") {
  auto c = parse_card("A?");
  REQUIRE(c.ok());
  CHECK(c.value().mixed_unknown());
  CHECK(!c.value().known());
  CHECK(!c.value().fully_unknown());
  auto d = parse_card("?h");
  REQUIRE(d.ok());
  CHECK(d.value().mixed_unknown());
}

TEST_CASE("serialize then parse is the identity on card lists") {
  CHECK(serialize_cards(std::vector<Card>{{Rank::Seven, Suit::Heart}}) == "7h");
  CHECK(serialize_cards(std::vector<Card>{}) == "");
  CHECK(serialize_cards(std::vector<Card>(5, kUnknownCard)) == "??????????");

  std::mt19937 rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<Card> cs;
    int n = rng() % 8;
    for (int i = 0; i < n; ++i)
      cs.push_back({static_cast<Rank>(rng() % 14),
                    static_cast<Suit>(rng() % 5)});
    std::string text = serialize_cards(cs);
    auto back = parse_cards(text);
    REQUIRE(back.ok());
    CHECK(back.value() == cs);
    CHECK(serialize_cards(back.value()) == text);
  }
}
