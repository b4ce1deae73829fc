#include "rqa/fast_path.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rqa/errors.hpp"
#include "rqa/parallel.hpp"

namespace rqa {
namespace {

constexpr std::size_t kDiagonalsPerTask = 8;

// Accumulates embedded line lengths from the runs of one diagonal.
class RunRecorder {
 public:
  RunRecorder(std::vector<std::uint64_t>& dense, std::size_t m, std::uint64_t weight)
      : dense_(dense), m_(m), weight_(weight) {}

  void extend(std::size_t ones) { run_ += ones; }
  void close() {
    if (run_ >= m_) dense_[run_ - (m_ - 1)] += weight_;
    run_ = 0;
  }

 private:
  std::vector<std::uint64_t>& dense_;
  std::size_t m_;
  std::uint64_t weight_;
  std::size_t run_ = 0;
};

// Reads the runs of the low `valid` bits of `word`.
void scan_word(std::uint64_t word, unsigned valid, RunRecorder& rec) {
  unsigned pos = 0;
  while (pos < valid) {
    const std::uint64_t rest = word >> pos;
    if (rest & 1u) {
      const unsigned ones = std::min<unsigned>(static_cast<unsigned>(std::countr_one(rest)), valid - pos);
      rec.extend(ones);
      pos += ones;
    } else {
      const unsigned zeros =
          rest == 0 ? valid - pos
                    : std::min<unsigned>(static_cast<unsigned>(std::countr_zero(rest)), valid - pos);
      rec.close();
      pos += zeros;
    }
  }
}

template <class Close>
void scan_diagonal(const double* x, std::size_t length, std::size_t offset, Close close,
                   RunRecorder& rec) {
  for (std::size_t base = 0; base < length; base += 64) {
    const auto valid = static_cast<unsigned>(std::min<std::size_t>(64, length - base));
    std::uint64_t word = 0;
    for (unsigned b = 0; b < valid; ++b) {
      const std::size_t t = base + b;
      word |= static_cast<std::uint64_t>(close(x[t], x[t + offset])) << b;
    }
    scan_word(word, valid, rec);
  }
  rec.close();
}

}  // namespace

DiagHistogram embedded_histogram_fast(const Series& x, std::size_t n, std::size_t m, double r,
                                      Metric metric, unsigned threads) {
  if (!is_max_type(metric)) {
    throw DataError("fast path needs a max-type metric, got " + std::string(to_string(metric)));
  }
  EmbedConfig cfg{m, 1, r, metric};
  cfg.validate_for(x);
  if (n < 1) throw DataError("plot side must be >= 1");
  const std::size_t n_unembedded = n + m - 1;
  if (x.size() < n_unembedded) {
    throw DataError("series of length " + std::to_string(x.size()) + " is too short for n=" +
                    std::to_string(n) + ", m=" + std::to_string(m));
  }

  const double* data = x.values().data();
  const unsigned workers = resolve_threads(threads);
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(n + 1, 0));

  // Offsets d >= n hold runs shorter than m and contribute nothing.
  const std::size_t tasks = (n + kDiagonalsPerTask - 1) / kDiagonalsPerTask;
  parallel_for(tasks, workers, [&](std::size_t task, unsigned worker) {
    auto& dense = partial[worker];
    const std::size_t first = task * kDiagonalsPerTask;
    const std::size_t last = std::min(n, first + kDiagonalsPerTask);
    for (std::size_t d = first; d < last; ++d) {
      RunRecorder rec(dense, m, d == 0 ? 1 : 2);  // off-diagonal lines come in mirrored pairs
      const std::size_t length = n_unembedded - d;
      if (metric == Metric::Chebyshev) {
        scan_diagonal(data, length, d, [r](double a, double b) { return std::abs(a - b) <= r; }, rec);
      } else {
        const bool all_close = r >= 1.0;
        scan_diagonal(data, length, d, [all_close](double a, double b) { return all_close || a == b; },
                      rec);
      }
    }
  });

  std::vector<std::uint64_t> dense(n + 1, 0);
  for (const auto& p : partial) {
    for (std::size_t l = 0; l <= n; ++l) dense[l] += p[l];
  }
  return DiagHistogram::from_dense(n, dense);
}

DiagHistogram embedded_histogram_fast(const Series& x, std::size_t n, const EmbedConfig& cfg,
                                      unsigned threads) {
  return embedded_histogram_fast(x, n, cfg.m, cfg.r, cfg.metric, threads);
}

RqaSummary rqa_chebyshev_fast(const Series& x, std::size_t n, std::size_t m, std::size_t k, double r,
                              unsigned threads) {
  return measures_from_histogram(embedded_histogram_fast(x, n, m, r, Metric::Chebyshev, threads), k);
}

RqaSummary rqa_fast(const Series& x, std::size_t n, const EmbedConfig& cfg, unsigned threads) {
  cfg.validate();
  return measures_from_histogram(embedded_histogram_fast(x, n, cfg, threads), cfg.k);
}

RecurrencePlot recurrence_plot_fast(const Series& x, std::size_t n, const EmbedConfig& cfg) {
  if (!is_max_type(cfg.metric)) {
    throw DataError("fast plot needs a max-type metric, got " + std::string(to_string(cfg.metric)));
  }
  cfg.validate_for(x);
  if (n < 1) throw DataError("plot side must be >= 1");
  const std::size_t m = cfg.m;
  if (x.size() < n + m - 1) throw DataError("series too short for n + m - 1 samples");
  const bool all_close = cfg.metric == Metric::Discrete && cfg.r >= 1.0;
  const auto close = [&](double a, double b) {
    return cfg.metric == Metric::Chebyshev ? std::abs(a - b) <= cfg.r : (all_close || a == b);
  };
  RecurrencePlot plot(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::size_t run = 0;
    for (std::size_t t = 0; t + d < n + m - 1; ++t) {
      run = close(x[t], x[t + d]) ? run + 1 : 0;
      if (run >= m) {
        const std::size_t i = t + 1 - m;
        plot.set(i, i + d);
        plot.set(i + d, i);
      }
    }
  }
  return plot;
}

DiagHistogram embed_histogram(const DiagHistogram& unembedded, std::size_t m) {
  if (m < 1) throw DataError("embedding dimension must be >= 1");
  if (unembedded.n < m) throw DataError("unembedded plot smaller than the embedding dimension");
  DiagHistogram out;
  out.n = unembedded.n - (m - 1);
  for (const auto& [length, count] : unembedded.counts) {
    if (length >= m) out.counts.emplace(length - (m - 1), count);
  }
  return out;
}

}  // namespace rqa
