#include "mdawg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mdawg/error.hpp"

namespace mdawg {

namespace {

std::size_t analyze_all(const Lexicon& lex, const std::vector<std::string>& queries) {
  std::size_t found = 0;
  for (const auto& q : queries) found += lex.analyze(q).size();
  return found;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace

BenchResult run_bench(const Lexicon& lex, const std::vector<std::string>& queries, BenchOptions options) {
  if (queries.empty()) throw Error(ErrorKind::InvalidArgument, "benchmark needs at least one query");
  if (options.repeat == 0) throw Error(ErrorKind::InvalidArgument, "repeat must be at least 1");
  if (options.threads == 0) throw Error(ErrorKind::InvalidArgument, "threads must be at least 1");

  BenchResult r;
  r.queries = queries.size();
  r.repeat = options.repeat;
  r.threads = options.threads;
  r.analyses = analyze_all(lex, queries);

  for (unsigned run = 0; run < options.repeat; ++run) {
    std::atomic<std::size_t> found{0};
    const auto start = std::chrono::steady_clock::now();
    if (options.threads == 1) {
      found = analyze_all(lex, queries);
    } else {
      std::vector<std::thread> readers;
      for (unsigned t = 0; t < options.threads; ++t) {
        readers.emplace_back([&] { found += analyze_all(lex, queries); });
      }
      for (auto& th : readers) th.join();
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (found != r.analyses * options.threads) {
      throw Error(ErrorKind::InvalidArgument, "benchmark runs disagree on the number of analyses");
    }
    const double seconds = std::max(elapsed.count(), 1e-9);
    r.run_seconds.push_back(seconds);
    r.run_rates.push_back(static_cast<double>(queries.size()) * options.threads / seconds);
  }
  r.median_rate = median(r.run_rates);
  r.speedup = r.median_rate / r.reference_rate;
  r.meets_reference = r.median_rate >= r.reference_rate;
  return r;
}

std::vector<std::string> sample_queries(const Lexicon& lex, std::size_t count, std::uint32_t seed) {
  std::vector<std::string> surfaces;
  for (const auto& e : lex.entries()) {
    if (surfaces.empty() || surfaces.back() != e.surface) surfaces.push_back(e.surface);
  }
  std::sort(surfaces.begin(), surfaces.end());
  surfaces.erase(std::unique(surfaces.begin(), surfaces.end()), surfaces.end());
  std::vector<std::string> out;
  if (surfaces.empty()) return out;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, surfaces.size() - 1);
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(surfaces[pick(rng)]);
  return out;
}

std::string bench_json(const BenchResult& r) {
  nlohmann::ordered_json j;
  j["queries"] = r.queries;
  j["repeat"] = r.repeat;
  j["threads"] = r.threads;
  j["analyses"] = r.analyses;
  j["timing"] = {{"run_seconds", r.run_seconds},
                 {"run_rates", r.run_rates},
                 {"median_rate", r.median_rate},
                 {"speedup", r.speedup}};
  j["reference_rate"] = r.reference_rate;
  j["meets_reference"] = r.meets_reference;
  return j.dump();
}

std::string bench_text(const BenchResult& r) {
  std::ostringstream out;
  out << "queries\t" << r.queries << '\n'
      << "repeat\t" << r.repeat << '\n'
      << "threads\t" << r.threads << '\n'
      << "analyses\t" << r.analyses << '\n'
      << "timing.median_rate\t" << static_cast<long long>(r.median_rate) << " analyses/sec\n";
  out.precision(2);
  out << std::fixed << "timing.speedup\t" << r.speedup << "x\n"
      << "reference_rate\t" << static_cast<long long>(r.reference_rate) << " analyses/sec\n"
      << "meets_reference\t" << (r.meets_reference ? "yes" : "no") << '\n';
  return out.str();
}

}  // namespace mdawg
