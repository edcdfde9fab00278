#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "phh/action.hpp"
#include "support/test_util.hpp"

using namespace phh;
using test_util::cards;

namespace {

ActionRecord parse_ok(std::string_view text) {
  std::vector<Diagnostic> diags;
  ActionRecord rec = parse_action(text, ParsePolicy::Strict, diags);
  INFO(text);
  REQUIRE(diags.empty());
  return rec;
}

std::string parse_fail_code(std::string_view text) {
  std::vector<Diagnostic> diags;
  ActionRecord rec = parse_action(text, ParsePolicy::Strict, diags);
  INFO(text);
  REQUIRE(!diags.empty());
  CHECK(rec.is_noop());  // a bad entry degrades to a no-op
  return diags.front().code;
}

}  // namespace

TEST_CASE("dealing notations") {
  auto board = parse_ok("d db AhKhQh");
  REQUIRE(board.as<ActionRecord::DealBoard>());
  CHECK(board.as<ActionRecord::DealBoard>()->cards == cards("AhKhQh"));
  CHECK(parse_fail_code("d db") == "MissingArgument");
  CHECK(parse_fail_code("d db Ah Kh") == "ExtraArgument");
  CHECK(parse_fail_code("d db zz") == "BadCards");

  auto hole = parse_ok("d dh p4 AsQs6s5c3c");
  auto* dh = hole.as<ActionRecord::DealHole>();
  REQUIRE(dh);
  CHECK(dh->player == 4);
  CHECK(dh->cards == cards("AsQs6s5c3c"));
  CHECK(parse_fail_code("d dh p4") == "MissingArgument");
  CHECK(parse_fail_code("d dh x4 As") == "UnknownActor");
  CHECK(parse_fail_code("d dh p0 As") == "UnknownActor");
  CHECK(parse_fail_code("d cc") == "UnknownVerb");
}

TEST_CASE("player betting notations") {
  auto bring = parse_ok("p1 pb");
  CHECK(bring.as<ActionRecord::PostBringIn>()->player == 1);
  CHECK(parse_fail_code("p1 pb 5") == "ExtraArgument");

  auto raise = parse_ok("p1 cbr 450000");
  auto* cbr = raise.as<ActionRecord::CompleteBetRaiseTo>();
  REQUIRE(cbr);
  CHECK(cbr->player == 1);
  CHECK(cbr->amount == Money::from_int(450000));
  CHECK(parse_fail_code("p1 cbr") == "MissingArgument");
  CHECK(parse_fail_code("p1 cbr abc") == "BadAmount");
  CHECK(parse_fail_code("p1 cbr -5") == "BadAmount");
  CHECK(parse_fail_code("p1 cbr 1 2") == "ExtraArgument");

  auto half = parse_ok("p2 cbr 0.50");
  CHECK(half.as<ActionRecord::CompleteBetRaiseTo>()->amount ==
        *Money::parse("0.5"));

  CHECK(parse_ok("p4 cc").as<ActionRecord::CheckCall>()->player == 4);
  CHECK(parse_fail_code("p4 cc 5") == "ExtraArgument");
  CHECK(parse_ok("p3 f").as<ActionRecord::Fold>()->player == 3);
  CHECK(parse_fail_code("p3 f now") == "ExtraArgument");
  CHECK(parse_fail_code("px f") == "UnknownActor");
  CHECK(parse_fail_code("p1 xx") == "UnknownVerb");
  CHECK(parse_fail_code("p1") == "UnknownVerb");
}

TEST_CASE("draw and showdown notations") {
  auto pat = parse_ok("p1 sd");
  REQUIRE(pat.as<ActionRecord::StandPatDiscard>());
  CHECK(pat.as<ActionRecord::StandPatDiscard>()->cards.empty());

  auto discard = parse_ok("p4 sd AsQs");
  CHECK(discard.as<ActionRecord::StandPatDiscard>()->cards == cards("AsQs"));
  CHECK(parse_fail_code("p1 sd zz") == "BadCards");
  CHECK(parse_fail_code("p1 sd As Qs") == "ExtraArgument");

  auto muck = parse_ok("p2 sm");
  CHECK(muck.as<ActionRecord::ShowMuck>()->disclosure ==
        ActionRecord::Disclosure::Muck);

  auto dash = parse_ok("p4 sm -");
  CHECK(dash.as<ActionRecord::ShowMuck>()->disclosure ==
        ActionRecord::Disclosure::ShowPrevious);

  auto show = parse_ok("p1 sm 7h6c4c3d2c");
  CHECK(show.as<ActionRecord::ShowMuck>()->disclosure ==
        ActionRecord::Disclosure::Show);
  CHECK(show.as<ActionRecord::ShowMuck>()->cards == cards("7h6c4c3d2c"));
  CHECK(parse_fail_code("p1 sm ***") == "BadCards");
}

TEST_CASE("empty entries and commentary") {
  CHECK(parse_ok("").is_noop());
  CHECK(parse_ok("   ").is_noop());

  auto standalone = parse_ok("# First draw");
  CHECK(standalone.is_noop());
  CHECK(standalone.commentary == "First draw");

  auto fold = parse_ok("p3 f  # Esposito");
  CHECK(fold.as<ActionRecord::Fold>()->player == 3);
  CHECK(fold.commentary == "Esposito");

  auto noise = parse_ok("p1 cc # thinking # twice");
  CHECK(noise.commentary == "thinking # twice");
}

TEST_CASE("lenient parsing degrades to warnings") {
  std::vector<Diagnostic> diags;
  ActionRecord rec = parse_action("p1 cbr", ParsePolicy::Lenient, diags);
  CHECK(rec.is_noop());
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].severity == Severity::Warning);
}

TEST_CASE("canonical serialization matches the notation examples") {
  ActionRecord fold;
  fold.body = ActionRecord::Fold{3};
  fold.commentary = "Esposito";
  CHECK(serialize_action(fold) == "p3 f  # Esposito");

  ActionRecord noop;
  noop.commentary = "First draw";
  CHECK(serialize_action(noop) == "# First draw");

  ActionRecord pat;
  pat.body = ActionRecord::StandPatDiscard{1, {}};
  CHECK(serialize_action(pat) == "p1 sd");

  ActionRecord dash;
  dash.body =
      ActionRecord::ShowMuck{4, ActionRecord::Disclosure::ShowPrevious, {}};
  CHECK(serialize_action(dash) == "p4 sm -");
}

namespace {

ActionRecord random_record(std::mt19937_64& rng) {
  auto rcards = [&rng](int lo, int hi, bool allow_unknown) {
    std::vector<Card> cs;
    int n = lo + static_cast<int>(rng() % (hi - lo + 1));
    for (int i = 0; i < n; ++i) {
      if (allow_unknown && rng() % 4 == 0)
        cs.push_back(kUnknownCard);
      else
        cs.push_back({static_cast<Rank>(rng() % 13),
                      static_cast<Suit>(rng() % 4)});
    }
    return cs;
  };
  int player = 1 + static_cast<int>(rng() % 9);
  ActionRecord rec;
  switch (rng() % 9) {
    case 0: rec.body = ActionRecord::NoOp{}; break;
    case 1: rec.body = ActionRecord::DealBoard{rcards(1, 5, true)}; break;
    case 2: rec.body = ActionRecord::DealHole{player, rcards(1, 7, true)}; break;
    case 3: rec.body = ActionRecord::PostBringIn{player}; break;
    case 4:
      rec.body = ActionRecord::CompleteBetRaiseTo{
          player, *Money::from_units(static_cast<std::int64_t>(rng() % 100000),
                                     static_cast<int>(rng() % 3),
                                     rng() % 2 == 0)};
      break;
    case 5: rec.body = ActionRecord::CheckCall{player}; break;
    case 6: rec.body = ActionRecord::Fold{player}; break;
    case 7:
      rec.body = ActionRecord::StandPatDiscard{player, rcards(0, 5, true)};
      break;
    default: {
      int kind = static_cast<int>(rng() % 3);
      ActionRecord::ShowMuck sm;
      sm.player = player;
      if (kind == 0) {
        sm.disclosure = ActionRecord::Disclosure::Muck;
      } else if (kind == 1) {
        sm.disclosure = ActionRecord::Disclosure::ShowPrevious;
      } else {
        sm.disclosure = ActionRecord::Disclosure::Show;
        sm.cards = rcards(1, 7, false);
      }
      rec.body = std::move(sm);
      break;
    }
  }
  if (rng() % 3 == 0) rec.commentary = "note " + std::to_string(rng() % 100);
  return rec;
}

bool records_equal(const ActionRecord& a, const ActionRecord& b) {
  return serialize_action_body(a) == serialize_action_body(b) &&
         a.commentary.value_or("") == b.commentary.value_or("");
}

}  // namespace

TEST_CASE("parse of serialize is the identity for well-formed records") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 1500; ++iter) {
    ActionRecord rec = random_record(rng);
    std::string text = serialize_action(rec);
    std::vector<Diagnostic> diags;
    ActionRecord back = parse_action(text, ParsePolicy::Strict, diags);
    INFO(text);
    REQUIRE(diags.empty());
    CHECK(records_equal(rec, back));
  }
}

TEST_CASE("parsing is invariant under whitespace inflation") {
  std::mt19937_64 rng(29);
  for (int iter = 0; iter < 1000; ++iter) {
    ActionRecord rec = random_record(rng);
    std::string text = serialize_action(rec);
    // inflate every separator and add leading/trailing whitespace
    std::string fat;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 3); ++i)
      fat += rng() % 2 ? ' ' : '\t';
    for (char c : text) {
      if (c == ' ') {
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) fat += rng() % 2 ? ' ' : '\t';
      } else {
        fat += c;
      }
    }
    fat += "  ";
    std::vector<Diagnostic> diags;
    ActionRecord back = parse_action(fat, ParsePolicy::Strict, diags);
    INFO(fat);
    REQUIRE(diags.empty());
    // commentary may gain interior spacing from inflation; compare bodies
    CHECK(serialize_action_body(rec) == serialize_action_body(back));
  }
}
