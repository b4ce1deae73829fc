#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rqa/mvn.hpp"

namespace rqa {

// Correlation integrals c_1, c_2, ... of the unembedded process at a fixed r
// under the max metric; c^m_k = c_{k+m-1}. c_0 = 1 by convention.
class CorrelationIntegralSeq {
 public:
  // Requires 0 < c_{j+1} <= c_j <= 1 (monotone within 1e-15).
  explicit CorrelationIntegralSeq(std::vector<double> c, std::vector<double> std_error = {});

  double operator()(std::size_t index) const;  // c_index, index <= size()
  std::size_t size() const { return c_.size(); }
  bool has_std_error() const { return !std_error_.empty(); }
  double std_error(std::size_t index) const;

 private:
  std::vector<double> c_;
  std::vector<double> std_error_;
};

struct AsymptoticMeasures {
  std::size_t m = 1;
  std::size_t k = 1;
  double c_k = 0.0;   // c^m_k
  double c_k1 = 0.0;  // c^m_{k+1}
  double rr = 0.0;    // recurrence integral rr^m_k
  double det = 0.0;   // asymptotic determinism
  double lavg = 0.0;  // mean diagonal line length; +inf when c_k == c_{k+1}
};

// Needs c through index k + m.
AsymptoticMeasures asymptotics_from_c(const CorrelationIntegralSeq& c, std::size_t m, std::size_t k);

// c_{l|h} = c_{h+l} / c_h.
double conditional_correlation(const CorrelationIntegralSeq& c, std::size_t l, std::size_t h);

// det^m_k = k c_{k-1|m} - (k-1) c_{k|m}.
double det_via_conditional(const CorrelationIntegralSeq& c, std::size_t m, std::size_t k);

// --- iid processes -------------------------------------------------------

// alpha = c(r) in (0, 1): c^m_k = alpha^{m+k-1}.
AsymptoticMeasures iid_asymptotics(double alpha, std::size_t m, std::size_t k);

// c(r) = 2 Phi(r / (sqrt(2) sigma)) - 1 for N(0, sigma^2) data.
double gaussian_iid_alpha(double r, double sigma);
// Inverse of gaussian_iid_alpha in r.
double gaussian_iid_threshold(double alpha, double sigma);

// --- finite Markov chains (discrete metric, r < 1) -----------------------

class MarkovSpec {
 public:
  // q x q row-major transition matrix. Throws DataError on malformed rows and
  // NumericError unless the chain is irreducible and aperiodic.
  MarkovSpec(std::size_t q, std::vector<double> transition);

  std::size_t states() const { return q_; }
  double p(std::size_t s, std::size_t t) const { return transition_[s * q_ + t]; }
  std::span<const double> transition() const { return transition_; }
  std::span<const double> stationary() const { return stationary_; }

 private:
  std::size_t q_;
  std::vector<double> transition_;
  std::vector<double> stationary_;
};

// p_00 = a, p_11 = b.
MarkovSpec two_state_chain(double a, double b);

struct AlphaBeta {
  double alpha = 0.0;  // pi' pi
  double beta = 0.0;   // pi' diag(P P') pi / alpha
};

AlphaBeta markov_alpha_beta(const MarkovSpec& spec);
// Same quantities for two_state_chain(a, b) from the explicit two-state formulas.
AlphaBeta two_state_alpha_beta(double a, double b);

// Closed forms c^m_k = alpha beta^{k+m-2}, det = beta^{k-1}[k - (k-1) beta],
// lavg = k + beta / (1 - beta). For r >= 1 every pair recurs.
AsymptoticMeasures markov_asymptotics(const MarkovSpec& spec, std::size_t m, std::size_t k, double r = 0.0);

// Exact correlation integrals c_j = (pi o pi)' Q^{j-1} 1 with Q = P o P
// (elementwise products), j = 1..count. The geometric closed form above is
// exact only when the match-weighted state distribution stays proportional to
// pi o pi; in general c_{j+1} / c_j drifts with j.
CorrelationIntegralSeq markov_correlation_integrals(const MarkovSpec& spec, std::size_t count, double r = 0.0);
AsymptoticMeasures markov_exact_asymptotics(const MarkovSpec& spec, std::size_t m, std::size_t k,
                                            double r = 0.0);

// Natural-log entropies.
double iid_entropy(std::span<const double> marginal);
double markov_entropy(const MarkovSpec& spec);

// Bisection root of alpha_a = beta_a for the two-state chain with fixed b on
// [lo, hi]. Throws NumericError without a sign change.
double find_indistinguishable(double b, double lo, double hi);

// --- Gaussian AR(p) --------------------------------------------------------

struct ArSpec {
  std::vector<double> theta;  // X_t = sum_i theta_i X_{t-i} + eps_t
  double sigma2 = 1.0;        // noise variance

  // Throws DataError for sigma2 <= 0 and NumericError unless the companion
  // matrix has spectral radius < 1 - 1e-9.
  void validate() const;
};

double companion_spectral_radius(std::span<const double> theta);

// gamma_0 .. gamma_{h-1} from the Yule-Walker system, extended by the AR recursion.
std::vector<double> ar_autocovariance(std::span<const double> theta, double noise_var, std::size_t h);

// c^m_k(r) = P{Y in [-r, r]^h}, h = k + m - 1, Y ~ N(0, Sigma) with Sigma the
// Toeplitz autocovariance of the AR process driven by noise variance 2 sigma^2
// (the difference of two independent copies).
MonteCarloEstimate ar_correlation_integral(const ArSpec& spec, std::size_t m, std::size_t k, double r,
                                           std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

struct EstimatedAsymptotics {
  AsymptoticMeasures measures;
  double c_k_se = 0.0;
  double c_k1_se = 0.0;
  double det_se = 0.0;  // delta method on the ratio estimator
};

// Monte Carlo asymptotics for each r in the grid, all from one set of draws.
std::vector<EstimatedAsymptotics> ar_asymptotics(const ArSpec& spec, std::size_t m, std::size_t k,
                                                 std::span<const double> r_grid, std::uint64_t samples,
                                                 std::uint64_t seed, unsigned threads = 1);

// --- threshold calibration for a fixed recurrence rate ---------------------

struct Calibration {
  double alpha = 0.0;      // theta^{1/m}
  double threshold = 0.0;  // r_m for the N(0, sigma^2) marginal
};

Calibration calibrate_iid_threshold(double rate, std::size_t m, double sigma = 1.0);

struct SpuriousPoint {
  std::size_t m = 1;
  double alpha = 0.0;
  double det = 0.0;
  double lavg = 0.0;
};

// det^m_k(r_m) and lavg^m_k(r_m) of an iid process when r_m fixes rr^m_1 = rate.
std::vector<SpuriousPoint> spurious_curve(double rate, std::size_t k, std::span<const std::size_t> m_list);

}  // namespace rqa
