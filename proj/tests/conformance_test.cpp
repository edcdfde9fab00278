#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <random>

#include "phh/conformance.hpp"
#include "support/hand_generator.hpp"
#include "support/test_util.hpp"

using namespace phh;
using test_util::read_fixture;

namespace {
const std::string kGolden = "wsop_2019_e58_f2l3d.phh";
}

TEST_CASE("the golden hand round-trips") {
  RoundTripOutcome rt = round_trip(read_fixture(kGolden), ParsePolicy::Strict);
  INFO(rt.summary);
  CHECK(rt.ok);
}

TEST_CASE("every shipped fixture passes with a clean round trip") {
  namespace fs = std::filesystem;
  int checked = 0;
  for (const auto& entry : fs::directory_iterator(PHH_FIXTURE_DIR)) {
    if (entry.path().extension() != ".phh") continue;
    std::string bytes = test_util::slurp(entry.path().string());
    ConformanceReport report =
        check_file(bytes, entry.path().filename().string(),
                   ParsePolicy::Strict, Strictness::Strict);
    for (const auto& d : report.diagnostics) INFO(to_string(d));
    INFO(entry.path().string());
    CHECK(report.verdict == ConformanceReport::Verdict::Pass);
    CHECK(report.round_trip_ok);
    ++checked;
  }
  CHECK(checked >= 3);
}

TEST_CASE("the golden hand passes a full conformance check") {
  ConformanceReport report = check_file(read_fixture(kGolden), "golden",
                                        ParsePolicy::Strict,
                                        Strictness::Strict);
  for (const auto& d : report.diagnostics) INFO(to_string(d));
  CHECK(report.verdict == ConformanceReport::Verdict::Pass);
  CHECK(report.round_trip_ok);
  CHECK(report.finishing_stack_check ==
        ConformanceReport::StackCheck::NotApplicable);
}

TEST_CASE("a corrupted action token fails conformance") {
  std::string text = read_fixture(kGolden);
  auto at = text.find("\"p4 cc\"");
  text.replace(at, 7, "\"p4 qq\"");
  ConformanceReport report =
      check_file(text, "broken", ParsePolicy::Strict, Strictness::Strict);
  CHECK(report.verdict == ConformanceReport::Verdict::Fail);
  bool action_diag = false;
  for (const auto& d : report.diagnostics)
    if (d.location.rfind("actions[", 0) == 0) action_diag = true;
  CHECK(action_diag);
}

TEST_CASE("documented finishing stacks feed the report") {
  std::string base = read_fixture(kGolden);
  SECTION("matching stacks") {
    std::string text =
        base + "finishing_stacks = [0, 4190000, 5910000, 12095000]\n";
    ConformanceReport report =
        check_file(text, "fs", ParsePolicy::Strict, Strictness::Warn);
    CHECK(report.finishing_stack_check == ConformanceReport::StackCheck::Match);
    CHECK(report.verdict == ConformanceReport::Verdict::Pass);
  }
  SECTION("mismatching stacks") {
    std::string text =
        base + "finishing_stacks = [1, 4190000, 5910000, 12094999]\n";
    ConformanceReport report =
        check_file(text, "fs", ParsePolicy::Strict, Strictness::Warn);
    CHECK(report.finishing_stack_check ==
          ConformanceReport::StackCheck::Mismatch);
  }
}

TEST_CASE("blind placement sanity") {
  auto doc_with_blinds = [](const std::string& blinds, int players) {
    std::string stacks = "[";
    for (int i = 0; i < players; ++i)
      stacks += (i ? ", 200" : "200");
    stacks += "]";
    std::string antes = "[";
    for (int i = 0; i < players; ++i) antes += (i ? ", 0" : "0");
    antes += "]";
    std::string text = "variant = \"NT\"\nantes = " + antes +
                       "\nblinds_or_straddles = " + blinds +
                       "\nmin_bet = 2\nstarting_stacks = " + stacks +
                       "\nactions = []\n";
    auto parsed = parse_document(text, ParsePolicy::Strict);
    REQUIRE(parsed.document);
    return *parsed.document;
  };

  CHECK(validate_positions(doc_with_blinds("[1, 2, 0, 0, 0, 0]", 6)).empty());
  CHECK(validate_positions(doc_with_blinds("[1, 2]", 2)).empty());
  CHECK(validate_positions(doc_with_blinds("[1, 2, 4, 0]", 4)).empty());
  CHECK(validate_positions(doc_with_blinds("[1, 2, 4, 8, 0, 0]", 6)).empty());
  CHECK(validate_positions(doc_with_blinds("[1, 2, 0, 0, 0, 4]", 6)).empty());
  CHECK(validate_positions(doc_with_blinds("[0, 0, 0, 0]", 4)).empty());

  auto misplaced = validate_positions(doc_with_blinds("[0, 0, 1, 2]", 4));
  REQUIRE(misplaced.size() == 1);
  CHECK(misplaced[0].code == "NonstandardBlindPlacement");
  CHECK(misplaced[0].severity == Severity::Warning);

  CHECK(!validate_positions(doc_with_blinds("[2, 1, 0, 0]", 4)).empty());
  CHECK(!validate_positions(doc_with_blinds("[1, 0, 2, 0]", 4)).empty());
}

TEST_CASE("generated documents pass conformance end to end") {
  gen::HandGenerator generator(2024);
  int made = 0;
  for (int iter = 0; iter < 40; ++iter) {
    gen::GeneratedHand hand = generator.generate_any();
    INFO(hand.note);
    REQUIRE(hand.ok);
    ++made;
    ConformanceReport report = check_file(
        hand.canonical, "generated", ParsePolicy::Strict, Strictness::Strict);
    for (const auto& d : report.diagnostics) INFO(to_string(d));
    CHECK(report.verdict != ConformanceReport::Verdict::Fail);
    CHECK(report.round_trip_ok);
  }
  CHECK(made == 40);
}

TEST_CASE("semantic equality notices real differences") {
  auto parsed = parse_document(read_fixture(kGolden), ParsePolicy::Strict);
  REQUIRE(parsed.document);
  HandDocument a = *parsed.document;
  HandDocument b = a;
  CHECK(semantic_equal(a, b));
  b.small_bet = Money::from_int(150001);
  CHECK(!semantic_equal(a, b));
  b = a;
  b.actions[4].commentary = "changed";
  CHECK(semantic_diff(a, b) == "actions[4] commentary differs");
}

TEST_CASE("garbage bytes never crash the checker") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 300; ++iter) {
    std::string junk;
    int n = static_cast<int>(rng() % 400);
    for (int i = 0; i < n; ++i) junk += static_cast<char>(rng());
    ConformanceReport report =
        check_file(junk, "junk", ParsePolicy::Lenient, Strictness::Warn);
    CHECK(report.verdict == ConformanceReport::Verdict::Fail);
  }
}
