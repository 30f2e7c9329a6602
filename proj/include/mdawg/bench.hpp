#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdawg/lexicon.hpp"

namespace mdawg {

/// The analyzer throughput the benchmark is compared against, in words/sec.
inline constexpr double kReferenceRate = 10000.0;

struct BenchOptions {
  unsigned repeat = 5;
  /// Reader threads; each one analyzes the whole query list per run.
  unsigned threads = 1;
};

struct BenchResult {
  std::size_t queries = 0;
  unsigned repeat = 0;
  unsigned threads = 0;
  /// Analyses returned per pass over the query list.
  std::size_t analyses = 0;
  std::vector<double> run_seconds;
  std::vector<double> run_rates;
  double median_rate = 0;
  double reference_rate = kReferenceRate;
  double speedup = 0;
  bool meets_reference = false;
};

/// Times `repeat` passes of analyze() over `queries`; only query execution
/// is inside the timed region. Throws InvalidArgument for an empty query
/// list or zero repeat/threads.
BenchResult run_bench(const Lexicon& lex, const std::vector<std::string>& queries, BenchOptions options = {});

/// `count` surfaces drawn with replacement from the lexicon, reproducibly.
std::vector<std::string> sample_queries(const Lexicon& lex, std::size_t count, std::uint32_t seed = 1);

std::string bench_json(const BenchResult& r);
std::string bench_text(const BenchResult& r);

}  // namespace mdawg
