#pragma once

// Shared randomized-input driver used by the phh-fuzz tool and the
// robustness checks in the test suite. Every input must produce a
// structured result (a document or diagnostics); any escaped exception is
// a failure.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "phh/phh.hpp"

namespace phh_fuzz {

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  std::uint32_t below(std::uint32_t n) {
    return n ? static_cast<std::uint32_t>(next() % n) : 0;
  }
};

inline const char* kDictionary[] = {
    "variant", "antes", "blinds_or_straddles", "starting_stacks", "actions",
    "small_bet", "big_bet", "min_bet", "bring_in", "finishing_stacks",
    "players", "seats", "null", "true", "false", "inf", "nan",
    "\"NT\"", "\"F2L3D\"", "\"F7S/8\"", "d dh p1 AsKs", "p1 cbr 100",
    "p2 sm -", "p3 sd ????", "= [", "]", "[", "#", "\"\"\"", "'''", "0x10",
    "1_000", "1e99", "07:32:00", "1979-05-27", "??", "-", "p1", "d db",
};

inline const char* kMinimalHand =
    "variant = \"NT\"\n"
    "antes = [0, 0]\n"
    "blinds_or_straddles = [1, 2]\n"
    "min_bet = 2\n"
    "starting_stacks = [200, 200]\n"
    "actions = [\n"
    "  \"d dh p1 AsKs\",\n"
    "  \"d dh p2 ????\",\n"
    "  \"p1 cbr 6\",\n"
    "  \"p2 f\",\n"
    "]\n";

inline std::string mutate(Rng& rng, const std::vector<std::string>& corpus) {
  std::string base =
      corpus[rng.below(static_cast<std::uint32_t>(corpus.size()))];
  int rounds = 1 + rng.below(8);
  for (int k = 0; k < rounds; ++k) {
    if (base.empty()) base = kMinimalHand;
    switch (rng.below(7)) {
      case 0:
        base[rng.below(base.size())] = static_cast<char>(rng.next());
        break;
      case 1: {
        std::string chunk;
        for (std::uint32_t i = 0, n = 1 + rng.below(8); i < n; ++i)
          chunk += static_cast<char>(rng.next());
        base.insert(rng.below(base.size() + 1), chunk);
        break;
      }
      case 2:
        base.erase(rng.below(base.size()), 1 + rng.below(16));
        break;
      case 3:
        base.insert(rng.below(base.size() + 1),
                    kDictionary[rng.below(std::size(kDictionary))]);
        break;
      case 4: {
        std::size_t at = rng.below(base.size());
        std::size_t len =
            std::min<std::size_t>(base.size() - at, 1 + rng.below(32));
        base.insert(rng.below(base.size() + 1), base.substr(at, len));
        break;
      }
      case 5:
        base.resize(rng.below(base.size() + 1));
        break;
      default: {
        const std::string& other =
            corpus[rng.below(static_cast<std::uint32_t>(corpus.size()))];
        if (!other.empty())
          base = base.substr(0, rng.below(base.size() + 1)) +
                 other.substr(rng.below(other.size()));
        break;
      }
    }
    if (base.size() > 1 << 16) base.resize(1 << 16);
  }
  return base;
}

struct FuzzOutcome {
  std::uint64_t iterations = 0;
  std::uint64_t parsed_clean = 0;
  bool crashed = false;
  std::string failure;
};

// Runs one fuzz iteration; returns false (and fills `failure`) when an
// exception escapes the parsing stack.
inline bool fuzz_one(const std::string& input, phh::ParsePolicy policy,
                     bool deep, std::string& failure, bool& clean) {
  try {
    phh::ParsedDocument doc = phh::parse_document(input, policy);
    clean = doc.document && !phh::has_errors(doc.diagnostics);
    if (doc.document) {
      phh::replay(*doc.document, phh::Strictness::Warn);
      if (deep) phh::round_trip(input, phh::ParsePolicy::Lenient);
    }
    std::vector<phh::Diagnostic> diags;
    std::istringstream lines(input);
    std::string line;
    while (std::getline(lines, line)) phh::parse_action(line, policy, diags);
    return true;
  } catch (const std::exception& e) {
    failure = std::string("escaped exception: ") + e.what();
    return false;
  } catch (...) {
    failure = "escaped non-standard exception";
    return false;
  }
}

template <class ProgressFn>
FuzzOutcome run_fuzz(double seconds, std::uint64_t seed,
                     std::vector<std::string> corpus, ProgressFn&& progress) {
  if (corpus.empty()) corpus.push_back(kMinimalHand);
  Rng rng(seed);
  FuzzOutcome out;
  auto t0 = std::chrono::steady_clock::now();
  while (true) {
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (elapsed >= seconds) break;
    std::string input = mutate(rng, corpus);
    phh::ParsePolicy policy = (out.iterations & 1)
                                  ? phh::ParsePolicy::Lenient
                                  : phh::ParsePolicy::Strict;
    bool clean = false;
    if (!fuzz_one(input, policy, (out.iterations & 15) == 0, out.failure,
                  clean)) {
      out.crashed = true;
      out.failure += "\ninput (" + std::to_string(input.size()) +
                     " bytes):\n" + input;
      return out;
    }
    if (clean) ++out.parsed_clean;
    ++out.iterations;
    if ((out.iterations & 0xFFFF) == 0) progress(out.iterations, elapsed);
  }
  return out;
}

}  // namespace phh_fuzz
