#include "rqa/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "rqa/errors.hpp"
#include "rqa/fast_path.hpp"
#include "rqa/parallel.hpp"
#include "rqa/rng.hpp"

namespace rqa {
namespace {

std::size_t draw_state(std::span<const double> cumulative_source, double u) {
  double acc = 0.0;
  for (std::size_t s = 0; s < cumulative_source.size(); ++s) {
    acc += cumulative_source[s];
    if (u < acc) return s;
  }
  return cumulative_source.size() - 1;
}

std::size_t max_of(std::span<const std::size_t> values) {
  if (values.empty()) throw DataError("empty parameter list");
  return *std::max_element(values.begin(), values.end());
}

std::optional<double> det_value(const RqaSummary& s) {
  const auto det = s.determinism();
  if (!det) return std::nullopt;
  return det->value();
}

}  // namespace

std::size_t ar_burn_in(std::size_t order) { return std::max<std::size_t>(10 * order, 500); }

Series sample(const ProcessSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DataError("path length must be >= 1");
  SplitMix64 rng(seed);
  std::vector<double> out;
  out.reserve(n);
  if (const auto* iid = std::get_if<IidGaussian>(&spec)) {
    for (std::size_t t = 0; t < n; ++t) out.push_back(iid->sigma * rng.normal());
  } else if (const auto* mc = std::get_if<MarkovSpec>(&spec)) {
    const std::size_t q = mc->states();
    std::size_t state = draw_state(mc->stationary(), rng.uniform());
    out.push_back(static_cast<double>(state));
    for (std::size_t t = 1; t < n; ++t) {
      state = draw_state(mc->transition().subspan(state * q, q), rng.uniform());
      out.push_back(static_cast<double>(state));
    }
  } else {
    const auto& ar = std::get<ArSpec>(spec);
    ar.validate();
    const std::size_t p = ar.theta.size();
    const double sigma = std::sqrt(ar.sigma2);
    const std::size_t burn = ar_burn_in(p);
    std::vector<double> history(p, 0.0);  // history[i] = X_{t-1-i}
    for (std::size_t t = 0; t < burn + n; ++t) {
      double x = sigma * rng.normal();
      for (std::size_t i = 0; i < p; ++i) x += ar.theta[i] * history[i];
      if (p > 0) {
        std::rotate(history.rbegin(), history.rbegin() + 1, history.rend());
        history[0] = x;
      }
      if (t >= burn) out.push_back(x);
    }
  }
  return Series(std::move(out));
}

SampleStats summarize(std::span<const double> values) {
  SampleStats s;
  s.count = values.size();
  if (values.empty()) return s;
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(ss / static_cast<double>(s.count - 1));
    s.std_error = s.std_dev / std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

ExperimentResult monte_carlo_det_grid(const ProcessSpec& spec, std::span<const std::size_t> m_list,
                                      std::span<const std::size_t> k_list, double r, std::size_t n,
                                      std::size_t reps, std::uint64_t seed, unsigned threads,
                                      bool exclude_main_diagonal) {
  if (reps < 2) throw DataError("Monte Carlo needs at least 2 replications");
  const std::size_t max_m = max_of(m_list);
  if (max_of(k_list) > n) throw DataError("horizon exceeds the plot size");
  const Metric metric = natural_metric(spec);
  const std::size_t cells = m_list.size() * k_list.size();

  // det[rep * cells + mi * |k| + ki]
  std::vector<std::optional<double>> det(reps * cells);
  parallel_for(reps, threads, [&](std::size_t rep, unsigned) {
    const Series path = sample(spec, n + max_m - 1, derive_seed(seed, rep));
    for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
      auto hist = embedded_histogram_fast(path, n, m_list[mi], r, metric, 1);
      if (exclude_main_diagonal) hist = without_main_diagonal(hist);
      for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
        det[rep * cells + mi * k_list.size() + ki] = det_value(measures_from_histogram(hist, k_list[ki]));
      }
    }
  });

  ExperimentResult out;
  out.add_config("experiment", "monte_carlo_det");
  out.add_config("process", to_json(spec));
  out.add_config("metric", std::string(to_string(metric)));
  out.add_config("r", format_shortest(r));
  out.add_config("n", std::to_string(n));
  out.add_config("reps", std::to_string(reps));
  out.add_config("seed", std::to_string(seed));
  out.add_config("main_diagonal", exclude_main_diagonal ? "excluded" : "included");
  out.columns = {"k", "m", "r", "n", "mean", "std_dev", "std_error", "reps", "undefined"};
  for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
    for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
      std::vector<double> values;
      std::int64_t undefined = 0;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const auto& v = det[rep * cells + mi * k_list.size() + ki];
        if (v) {
          values.push_back(*v);
        } else {
          ++undefined;
        }
      }
      const auto stats = summarize(values);
      out.add_row({static_cast<std::int64_t>(k_list[ki]), static_cast<std::int64_t>(m_list[mi]), r,
                   static_cast<std::int64_t>(n), stats.mean, stats.std_dev, stats.std_error,
                   static_cast<std::int64_t>(stats.count), undefined});
    }
  }
  return out;
}

ExperimentResult monte_carlo_det(const ProcessSpec& spec, std::size_t m, std::size_t k, double r,
                                 std::size_t n, std::size_t reps, std::uint64_t seed, unsigned threads,
                                 bool exclude_main_diagonal) {
  const std::size_t ms[] = {m};
  const std::size_t ks[] = {k};
  return monte_carlo_det_grid(spec, ms, ks, r, n, reps, seed, threads, exclude_main_diagonal);
}

std::vector<AsymptoticDet> reference_det(const ProcessSpec& spec, std::size_t m, std::size_t k,
                                         std::span<const double> r_grid, std::uint64_t mvn_samples,
                                         std::uint64_t seed, unsigned threads) {
  std::vector<AsymptoticDet> out;
  out.reserve(r_grid.size());
  if (const auto* iid = std::get_if<IidGaussian>(&spec)) {
    for (double r : r_grid) out.push_back({iid_asymptotics(gaussian_iid_alpha(r, iid->sigma), m, k).det, 0.0});
  } else if (const auto* mc = std::get_if<MarkovSpec>(&spec)) {
    for (double r : r_grid) out.push_back({markov_exact_asymptotics(*mc, m, k, r).det, 0.0});
  } else {
    for (const auto& e : ar_asymptotics(std::get<ArSpec>(spec), m, k, r_grid, mvn_samples, seed, threads)) {
      out.push_back({e.measures.det, e.det_se});
    }
  }
  return out;
}

ExperimentResult convergence_sweep(const ProcessSpec& spec, std::size_t m, std::size_t k,
                                   std::span<const double> r_grid, std::span<const std::size_t> n_list,
                                   std::uint64_t seed, const ConvergenceOptions& options) {
  if (r_grid.empty()) throw DataError("empty r grid");
  const std::size_t max_n = max_of(n_list);
  const Metric metric = natural_metric(spec);
  const Series path = sample(spec, max_n + m - 1, seed);
  const auto reference = reference_det(spec, m, k, r_grid, options.mvn_samples, derive_seed(seed, 0x4d564e),
                                       options.threads);

  ExperimentResult out;
  out.add_config("experiment", "convergence");
  out.add_config("process", to_json(spec));
  out.add_config("metric", std::string(to_string(metric)));
  out.add_config("m", std::to_string(m));
  out.add_config("k", std::to_string(k));
  out.add_config("seed", std::to_string(seed));
  out.add_config("mvn_samples", std::to_string(options.mvn_samples));
  out.columns = {"n", "r", "empirical_det", "asymptotic_det", "asymptotic_se", "closed_form_det",
                 "abs_deviation"};
  for (std::size_t n : n_list) {
    for (std::size_t g = 0; g < r_grid.size(); ++g) {
      const double r = r_grid[g];
      const auto summary =
          measures_from_histogram(embedded_histogram_fast(path, n, m, r, metric, options.threads), k);
      const auto empirical = det_value(summary);
      std::optional<double> closed_form;
      if (const auto* iid = std::get_if<IidGaussian>(&spec)) {
        closed_form = iid_asymptotics(gaussian_iid_alpha(r, iid->sigma), m, k).det;
      } else if (const auto* mc = std::get_if<MarkovSpec>(&spec)) {
        closed_form = markov_asymptotics(*mc, m, k, r).det;
      }
      std::optional<double> deviation;
      if (empirical) deviation = std::abs(*empirical - reference[g].det);
      out.add_row({static_cast<std::int64_t>(n), r, cell(empirical), reference[g].det, reference[g].std_error,
                   cell(closed_form), cell(deviation)});
    }
  }
  return out;
}

std::vector<double> mean_abs_deviation_by_n(const ExperimentResult& sweep, std::span<const std::size_t> n_list) {
  std::vector<double> out;
  for (std::size_t n : n_list) {
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t row = 0; row < sweep.rows.size(); ++row) {
      if (sweep.number_at(row, "n") != static_cast<double>(n)) continue;
      total += sweep.number_at(row, "abs_deviation");
      ++count;
    }
    out.push_back(count ? total / static_cast<double>(count) : std::nan(""));
  }
  return out;
}

ExperimentResult entropy_det_sweep(double b, std::span<const double> a_grid, std::size_t k) {
  ExperimentResult out;
  out.add_config("experiment", "entropy_det");
  out.add_config("b", format_shortest(b));
  out.add_config("k", std::to_string(k));
  out.columns = {"a", "alpha", "beta", "h_markov", "h_iid", "det_markov", "det_iid"};
  for (double a : a_grid) {
    const MarkovSpec chain = two_state_chain(a, b);
    const AlphaBeta ab = two_state_alpha_beta(a, b);
    out.add_row({a, ab.alpha, ab.beta, markov_entropy(chain), iid_entropy(chain.stationary()),
                 markov_asymptotics(chain, 1, k).det, iid_asymptotics(ab.alpha, 1, k).det});
  }
  return out;
}

double empirical_threshold(const Series& x, std::size_t n, std::size_t m, double rate, std::size_t pairs,
                           std::uint64_t seed) {
  if (!(rate > 0.0 && rate < 1.0)) throw DataError("recurrence rate must lie in (0, 1)");
  if (n < 2 || pairs == 0) throw DataError("need n >= 2 and at least one pair");
  if (x.size() < n + m - 1) throw DataError("series too short for n + m - 1 samples");
  SplitMix64 rng(seed);
  std::vector<double> distances;
  distances.reserve(pairs);
  while (distances.size() < pairs) {
    const auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
    const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
    if (i == j) continue;
    distances.push_back(embedded_distance(x, i, j, m, Metric::Chebyshev));
  }
  const auto rank = static_cast<std::size_t>(std::ceil(rate * static_cast<double>(pairs))) - 1;
  std::nth_element(distances.begin(), distances.begin() + static_cast<std::ptrdiff_t>(rank), distances.end());
  return distances[rank];
}

ExperimentResult spurious_demo(double rate, std::span<const std::size_t> m_list, std::size_t k, std::size_t n,
                               std::uint64_t seed, const SpuriousOptions& options) {
  const std::size_t max_m = max_of(m_list);
  const auto curve = spurious_curve(rate, k, m_list);
  Series path;
  if (options.marginal == Marginal::Gaussian) {
    path = sample(IidGaussian{1.0}, n + max_m - 1, seed);
  } else {
    SplitMix64 rng(seed);
    std::vector<double> v(n + max_m - 1);
    for (auto& x : v) x = rng.uniform();
    path = Series(std::move(v));
  }
  if (options.pbm_dir) std::filesystem::create_directories(*options.pbm_dir);

  ExperimentResult out;
  out.add_config("experiment", "spurious");
  out.add_config("marginal", options.marginal == Marginal::Gaussian ? "gaussian" : "uniform");
  out.add_config("rate", format_shortest(rate));
  out.add_config("k", std::to_string(k));
  out.add_config("n", std::to_string(n));
  out.add_config("seed", std::to_string(seed));
  out.columns = {"m", "r_m", "empirical_rr", "empirical_det", "analytic_det", "analytic_lavg"};
  for (std::size_t idx = 0; idx < m_list.size(); ++idx) {
    const std::size_t m = m_list[idx];
    const double r_m = options.marginal == Marginal::Gaussian
                           ? calibrate_iid_threshold(rate, m).threshold
                           : empirical_threshold(path, n, m, rate, options.calibration_pairs, derive_seed(seed, m));
    const auto hist = embedded_histogram_fast(path, n, m, r_m, Metric::Chebyshev, options.threads);
    const auto summary = measures_from_histogram(hist, k);
    const double rr_1 = static_cast<double>(summary.rr_1) / static_cast<double>(summary.n_squared());
    out.add_row({static_cast<std::int64_t>(m), r_m, rr_1, cell(det_value(summary)), curve[idx].det,
                 curve[idx].lavg});
    if (options.pbm_dir) {
      const auto file = std::filesystem::path(*options.pbm_dir) / ("spurious_m" + std::to_string(m) + ".pbm");
      std::ofstream pbm(file, std::ios::binary);
      if (!pbm) throw DataError("cannot write " + file.string());
      write_pbm(pbm, recurrence_plot_fast(path, n, EmbedConfig{m, k, r_m, Metric::Chebyshev}));
    }
  }
  return out;
}

ExperimentResult indistinguishable_demo(double b, double lo, double hi, std::size_t k_max, std::size_t n,
                                        std::uint64_t seed, unsigned threads) {
  if (k_max < 1) throw DataError("k_max must be >= 1");
  const double a_star = find_indistinguishable(b, lo, hi);
  const MarkovSpec chain = two_state_chain(a_star, b);
  const AlphaBeta ab = two_state_alpha_beta(a_star, b);
  const auto pi = chain.stationary();
  const MarkovSpec iid(2, {pi[0], pi[1], pi[0], pi[1]});

  std::optional<DiagHistogram> hist_markov, hist_iid;
  if (n > 0) {
    if (k_max > n) throw DataError("k_max exceeds the plot size");
    hist_markov = embedded_histogram_fast(sample(chain, n, derive_seed(seed, 0)), n, 1, 0.0, Metric::Discrete, threads);
    hist_iid = embedded_histogram_fast(sample(iid, n, derive_seed(seed, 1)), n, 1, 0.0, Metric::Discrete, threads);
  }

  ExperimentResult out;
  out.add_config("experiment", "indistinguishable");
  out.add_config("b", format_shortest(b));
  out.add_config("bracket", format_shortest(lo) + "," + format_shortest(hi));
  out.add_config("a_star", format_shortest(a_star));
  out.add_config("n", std::to_string(n));
  out.add_config("seed", std::to_string(seed));
  out.columns = {"k", "a_star", "alpha", "beta", "det_markov", "det_iid", "empirical_det_markov",
                 "empirical_det_iid"};
  for (std::size_t k = 1; k <= k_max; ++k) {
    Cell emp_markov = NotAvailable{}, emp_iid = NotAvailable{};
    if (n > 0) {
      emp_markov = cell(det_value(measures_from_histogram(*hist_markov, k)));
      emp_iid = cell(det_value(measures_from_histogram(*hist_iid, k)));
    }
    out.add_row({static_cast<std::int64_t>(k), a_star, ab.alpha, ab.beta, markov_asymptotics(chain, 1, k).det,
                 iid_asymptotics(ab.alpha, 1, k).det, emp_markov, emp_iid});
  }
  return out;
}

}  // namespace rqa
