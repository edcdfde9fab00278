#include <catch2/catch_amalgamated.hpp>

#include "phh/toml.hpp"

using namespace phh;

namespace {

TomlDocument parse_clean(std::string_view text) {
  std::vector<Diagnostic> diags;
  TomlDocument doc = parse_toml(text, ParsePolicy::Strict, diags);
  INFO(text);
  for (const auto& d : diags) INFO(to_string(d));
  REQUIRE(diags.empty());
  return doc;
}

}  // namespace

TEST_CASE("scalar values") {
  TomlDocument doc = parse_clean(
      "a = 1\n"
      "b = -17\n"
      "c = 1_000\n"
      "d = 0xFF\n"
      "e = 0o17\n"
      "f = 0b101\n"
      "g = 3.5\n"
      "h = 5e2\n"
      "i = true\n"
      "j = false\n"
      "k = \"text\"\n"
      "l = 'literal\\no escape'\n"
      "m = 07:32:00\n"
      "n = 1979-05-27\n"
      "o = 1979-05-27T07:32:00Z\n"
      "p = inf\n"
      "q = nan\n"
      "r = null\n");
  auto num = [&](const char* k) { return doc.find(k)->number; };
  CHECK(num("a") == Decimal::from_int(1));
  CHECK(num("b") == Decimal::from_int(-17));
  CHECK(num("c") == Decimal::from_int(1000));
  CHECK(num("d") == Decimal::from_int(255));
  CHECK(num("e") == Decimal::from_int(15));
  CHECK(num("f") == Decimal::from_int(5));
  CHECK(num("g") == *Decimal::parse("3.5"));
  CHECK(doc.find("g")->kind == TomlValue::Kind::Float);
  CHECK(num("h") == Decimal::from_int(500));
  CHECK(doc.find("h")->kind == TomlValue::Kind::Float);
  CHECK(doc.find("i")->boolean);
  CHECK(!doc.find("j")->boolean);
  CHECK(doc.find("k")->text == "text");
  CHECK(doc.find("l")->text == "literal\\no escape");
  CHECK(doc.find("m")->kind == TomlValue::Kind::Time);
  CHECK(doc.find("m")->text == "07:32:00");
  CHECK(doc.find("n")->kind == TomlValue::Kind::Date);
  CHECK(doc.find("o")->kind == TomlValue::Kind::DateTime);
  CHECK(doc.find("p")->kind == TomlValue::Kind::Float);
  CHECK(!doc.find("p")->number_exact);
  CHECK(doc.find("p")->text == "inf");
  CHECK(!doc.find("q")->number_exact);
  CHECK(doc.find("r")->kind == TomlValue::Kind::Null);
}

TEST_CASE("string escapes") {
  TomlDocument doc = parse_clean(
      "a = \"tab\\there\"\n"
      "b = \"quote\\\"end\"\n"
      "c = \"uni\\u0041\"\n"
      "d = \"\"\"\nfirst\nsecond\"\"\"\n"
      "e = \"\"\"folded \\\n   line\"\"\"\n"
      "f = '''raw\n'quoted'\n'''\n");
  CHECK(doc.find("a")->text == "tab\there");
  CHECK(doc.find("b")->text == "quote\"end");
  CHECK(doc.find("c")->text == "uniA");
  CHECK(doc.find("d")->text == "first\nsecond");
  CHECK(doc.find("e")->text == "folded line");
  CHECK(doc.find("f")->text == "raw\n'quoted'\n");
}

TEST_CASE("arrays with newlines, trailing commas, and comments") {
  TomlDocument doc = parse_clean(
      "plain = [1, 2, 3]\n"
      "trail = [\n  10,\n  20,\n]\n"
      "nested = [[1, 2], [3]]\n"
      "mixed = [\n"
      "  \"p1 f\",  # gave up\n"
      "  # about to win\n"
      "  \"p2 cc\",\n"
      "]\n");
  CHECK(doc.find("plain")->array.size() == 3);
  CHECK(doc.find("trail")->array.size() == 2);
  CHECK(doc.find("nested")->array[0].array.size() == 2);
  const auto& mixed = doc.find("mixed")->array;
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].line_comment == "gave up");
  REQUIRE(mixed[1].pre_comments.size() == 1);
  CHECK(mixed[1].pre_comments[0] == "about to win");
}

TEST_CASE("comments attach to entries") {
  TomlDocument doc = parse_clean(
      "# header note\n"
      "# second line\n"
      "key = 1  # trailing\n"
      "# dangling at the end\n");
  REQUIRE(doc.entries.size() == 1);
  CHECK(doc.entries[0].pre_comments ==
        std::vector<std::string>{"header note", "second line"});
  CHECK(doc.entries[0].line_comment == "trailing");
  REQUIRE(doc.trailing_comments.size() == 1);
  CHECK(doc.trailing_comments[0] == "dangling at the end");
}

TEST_CASE("inline tables") {
  TomlDocument doc = parse_clean("t = {x = 1, y = \"z\"}\n");
  REQUIRE(doc.find("t")->table.size() == 2);
  CHECK(doc.find("t")->table[0].first == "x");
  CHECK(doc.find("t")->table[1].second.text == "z");
}

TEST_CASE("violations are reported and recovered from") {
  auto parse_with = [](std::string_view text, ParsePolicy policy,
                       std::vector<Diagnostic>& diags) {
    return parse_toml(text, policy, diags);
  };

  SECTION("duplicate keys keep the first value") {
    std::vector<Diagnostic> diags;
    TomlDocument doc =
        parse_with("a = 1\na = 2\n", ParsePolicy::Lenient, diags);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "DuplicateKey");
    CHECK(diags[0].severity == Severity::Warning);
    CHECK(doc.find("a")->number == Decimal::from_int(1));
  }

  SECTION("table sections are skipped whole") {
    std::vector<Diagnostic> diags;
    TomlDocument doc = parse_with("a = 1\n[table]\nb = 2\n",
                                  ParsePolicy::Strict, diags);
    REQUIRE(!diags.empty());
    CHECK(diags[0].severity == Severity::Error);
    CHECK(doc.find("a"));
    CHECK(!doc.find("b"));
  }

  SECTION("dotted keys are rejected") {
    std::vector<Diagnostic> diags;
    TomlDocument doc = parse_with("a.b = 1\n", ParsePolicy::Lenient, diags);
    REQUIRE(!diags.empty());
    CHECK(doc.entries.empty());
  }

  SECTION("bad lines are skipped, later lines still parse") {
    std::vector<Diagnostic> diags;
    TomlDocument doc = parse_with("a = @@@\nb = 2\n", ParsePolicy::Lenient,
                                  diags);
    CHECK(!diags.empty());
    CHECK(!doc.find("a"));
    REQUIRE(doc.find("b"));
  }

  SECTION("invalid UTF-8 is not a hand file") {
    std::vector<Diagnostic> diags;
    TomlDocument doc = parse_with("a = \"\xFF\xFE\"\n", ParsePolicy::Strict,
                                  diags);
    REQUIRE(!diags.empty());
    CHECK(diags[0].code == "NotToml");
    CHECK(doc.entries.empty());
  }

  SECTION("unterminated string") {
    std::vector<Diagnostic> diags;
    parse_with("a = \"open\n", ParsePolicy::Strict, diags);
    CHECK(!diags.empty());
  }

  SECTION("control characters in strings") {
    std::vector<Diagnostic> diags;
    parse_with("a = \"bad\x01char\"\n", ParsePolicy::Strict, diags);
    CHECK(!diags.empty());
  }

  SECTION("integer overflow") {
    std::vector<Diagnostic> diags;
    parse_with("a = 99999999999999999999\n", ParsePolicy::Strict, diags);
    CHECK(!diags.empty());
  }

  SECTION("value garbage after a value") {
    std::vector<Diagnostic> diags;
    parse_with("a = 1 2\n", ParsePolicy::Strict, diags);
    CHECK(!diags.empty());
  }
}

TEST_CASE("escaping round-trips through the emitter") {
  std::string nasty = "quote\" slash\\ tab\t newline\n bell\x07 end";
  std::string emitted = "a = " + toml_escape(nasty) + "\n";
  TomlDocument doc = parse_clean(emitted);
  CHECK(doc.find("a")->text == nasty);
}

TEST_CASE("value emission is parseable and stable") {
  TomlDocument doc = parse_clean(
      "a = [1, 2.5, \"x\", null, [true]]\n"
      "b = {k = 1}\n"
      "c = inf\n");
  for (const auto& entry : doc.entries) {
    std::string emitted = entry.key + " = " +
                          toml_value_to_string(entry.value) + "\n";
    TomlDocument back = parse_clean(emitted);
    CHECK(toml_value_equal(*back.find(entry.key), entry.value));
  }
}
