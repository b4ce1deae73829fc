#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rqa/process.hpp"
#include "rqa/series.hpp"
#include "rqa/table.hpp"

namespace rqa {

// Sample path of length n. Draw t of the path is position t of the SplitMix64
// stream of `seed` (AR burn-in draws come first), so a shorter path with the
// same seed is a prefix of a longer one.
Series sample(const ProcessSpec& spec, std::size_t n, std::uint64_t seed);

// AR paths discard max(10 p, 500) steps started from zero.
std::size_t ar_burn_in(std::size_t order);

struct SampleStats {
  double mean = 0.0;
  double std_dev = 0.0;    // n - 1 denominator
  double std_error = 0.0;  // std_dev / sqrt(count)
  std::size_t count = 0;
};

// Values are reduced in the given order.
SampleStats summarize(std::span<const double> values);

// Replicated empirical DET^m_k at threshold r for every (k, m) pair. One path
// of length n + max(m) - 1 per replication (seed derived from (seed, rep)),
// shared by all m. Columns: k, m, r, n, mean, std_dev, std_error, reps, undefined.
// With exclude_main_diagonal the line i = j is left out of every count.
ExperimentResult monte_carlo_det_grid(const ProcessSpec& spec, std::span<const std::size_t> m_list,
                                      std::span<const std::size_t> k_list, double r, std::size_t n,
                                      std::size_t reps, std::uint64_t seed, unsigned threads = 0,
                                      bool exclude_main_diagonal = false);

ExperimentResult monte_carlo_det(const ProcessSpec& spec, std::size_t m, std::size_t k, double r,
                                 std::size_t n, std::size_t reps, std::uint64_t seed, unsigned threads = 0,
                                 bool exclude_main_diagonal = false);

struct AsymptoticDet {
  double det = 0.0;
  double std_error = 0.0;  // zero for closed forms
};

// Reference det^m_k(r) per grid point: closed form for iid Gaussian, exact
// transfer-matrix correlation integrals for Markov chains, Monte Carlo box
// probabilities for AR.
std::vector<AsymptoticDet> reference_det(const ProcessSpec& spec, std::size_t m, std::size_t k,
                                         std::span<const double> r_grid, std::uint64_t mvn_samples,
                                         std::uint64_t seed, unsigned threads = 0);

struct ConvergenceOptions {
  std::uint64_t mvn_samples = 1'000'000;
  unsigned threads = 0;
};

// One path of length max(n) + m - 1 per seed; each n uses its prefix.
// Columns: n, r, empirical_det, asymptotic_det, asymptotic_se, closed_form_det, abs_deviation.
ExperimentResult convergence_sweep(const ProcessSpec& spec, std::size_t m, std::size_t k,
                                   std::span<const double> r_grid, std::span<const std::size_t> n_list,
                                   std::uint64_t seed, const ConvergenceOptions& options = {});

// Mean of abs_deviation per n, in the order of n_list.
std::vector<double> mean_abs_deviation_by_n(const ExperimentResult& sweep, std::span<const std::size_t> n_list);

// Two-state chain (p_00 = a, p_11 = b) against the iid process with the same
// marginal. Columns: a, alpha, beta, h_markov, h_iid, det_markov, det_iid.
ExperimentResult entropy_det_sweep(double b, std::span<const double> a_grid, std::size_t k);

enum class Marginal { Gaussian, Uniform };

struct SpuriousOptions {
  Marginal marginal = Marginal::Gaussian;
  std::optional<std::string> pbm_dir;  // writes spurious_m<m>.pbm per m
  std::size_t calibration_pairs = 100'000;
  unsigned threads = 0;
};

// iid data with r_m fixing the recurrence rate at `rate` for each m: analytic
// calibration for the Gaussian marginal, empirical quantile of window
// distances over random pairs otherwise. Columns: m, r_m, empirical_rr,
// empirical_det, analytic_det, analytic_lavg.
ExperimentResult spurious_demo(double rate, std::span<const std::size_t> m_list, std::size_t k, std::size_t n,
                               std::uint64_t seed, const SpuriousOptions& options = {});

// Threshold whose share of random window pairs within it equals `rate`.
double empirical_threshold(const Series& x, std::size_t n, std::size_t m, double rate, std::size_t pairs,
                           std::uint64_t seed);

// Root a* of alpha_a = beta_a on [lo, hi] and the det sequences k = 1..k_max
// of the chain and of the iid process with its marginal; with n > 0 also the
// empirical DET of both at plot size n. Columns: k, a_star, alpha, beta,
// det_markov, det_iid, empirical_det_markov, empirical_det_iid.
ExperimentResult indistinguishable_demo(double b, double lo, double hi, std::size_t k_max, std::size_t n,
                                        std::uint64_t seed, unsigned threads = 0);

}  // namespace rqa
