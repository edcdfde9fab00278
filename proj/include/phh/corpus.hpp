#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "phh/conformance.hpp"
#include "phh/document.hpp"

namespace phh {

// wc-compatible counts: newlines are '\n' bytes, words are maximal runs of
// non-whitespace, bytes is the file size.
struct TextCounts {
  std::size_t newlines = 0;
  std::size_t words = 0;
  std::size_t bytes = 0;
};

inline TextCounts count_text(std::string_view text) {
  TextCounts c;
  c.bytes = text.size();
  bool in_word = false;
  for (char ch : text) {
    if (ch == '\n') ++c.newlines;
    bool space = ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' ||
                 ch == '\v' || ch == '\f';
    if (!space && !in_word) {
      ++c.words;
      in_word = true;
    } else if (space) {
      in_word = false;
    }
  }
  return c;
}

struct CorpusStats {
  std::size_t files = 0;
  std::size_t total_newlines = 0, total_words = 0, total_bytes = 0;

  void add(const TextCounts& c) {
    ++files;
    total_newlines += c.newlines;
    total_words += c.words;
    total_bytes += c.bytes;
  }

  double avg_newlines() const { return files ? double(total_newlines) / files : 0; }
  double avg_words() const { return files ? double(total_words) / files : 0; }
  double avg_bytes() const { return files ? double(total_bytes) / files : 0; }
};

struct BenchResult {
  std::size_t hands = 0;
  double seconds = 0;
  double hands_per_second = 0;
  double ms_per_hand = 0;
};

// Times parse+validate over in-memory contents (the contents are expected
// to be preloaded; no I/O happens inside the timed region). `threads` > 1
// partitions the corpus for a parallel run.
inline BenchResult run_bench(const std::vector<std::string>& contents,
                             int repeat, ParsePolicy policy,
                             bool with_replay = false, int threads = 1) {
  BenchResult result;
  if (contents.empty() || repeat < 1) return result;

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      ParsedDocument p = parse_document(contents[i], policy);
      if (with_replay && p.document) replay(*p.document, Strictness::Warn);
    }
  };

  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < repeat; ++r) {
    if (threads <= 1) {
      work(0, contents.size());
    } else {
      std::vector<std::thread> pool;
      std::size_t chunk = (contents.size() + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        std::size_t begin = t * chunk;
        std::size_t end = std::min(contents.size(), begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(work, begin, end);
      }
      for (auto& th : pool) th.join();
    }
  }
  auto t1 = std::chrono::steady_clock::now();

  result.hands = contents.size() * static_cast<std::size_t>(repeat);
  result.seconds = std::chrono::duration<double>(t1 - t0).count();
  if (result.seconds > 0)
    result.hands_per_second = double(result.hands) / result.seconds;
  if (result.hands > 0)
    result.ms_per_hand = result.seconds * 1000.0 / double(result.hands);
  return result;
}

}  // namespace phh
