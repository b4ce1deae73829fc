#include "rqa/analytic.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rqa/errors.hpp"

namespace rqa {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lavg_from(double k, double c_k, double c_k1) {
  if (c_k == c_k1) return kInf;
  return k + c_k1 / (c_k - c_k1);
}

void require_positive_index(std::size_t v, const char* name) {
  if (v < 1) throw DataError(std::string(name) + " must be >= 1");
}

}  // namespace

CorrelationIntegralSeq::CorrelationIntegralSeq(std::vector<double> c, std::vector<double> std_error)
    : c_(std::move(c)), std_error_(std::move(std_error)) {
  if (!std_error_.empty() && std_error_.size() != c_.size()) {
    throw DataError("standard errors do not match the correlation integrals");
  }
  double prev = 1.0;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    const double v = c_[j];
    if (!(v > 0.0 && v <= 1.0)) {
      throw DataError("correlation integral c_" + std::to_string(j + 1) + " outside (0, 1]");
    }
    if (v > prev + 1e-15) throw DataError("correlation integrals must be non-increasing");
    prev = v;
  }
}

double CorrelationIntegralSeq::operator()(std::size_t index) const {
  if (index == 0) return 1.0;
  if (index > c_.size()) {
    throw DataError("correlation integral c_" + std::to_string(index) + " not available (have " +
                    std::to_string(c_.size()) + ")");
  }
  return c_[index - 1];
}

double CorrelationIntegralSeq::std_error(std::size_t index) const {
  if (index == 0 || std_error_.empty()) return 0.0;
  if (index > std_error_.size()) throw DataError("standard error index out of range");
  return std_error_[index - 1];
}

AsymptoticMeasures asymptotics_from_c(const CorrelationIntegralSeq& c, std::size_t m, std::size_t k) {
  require_positive_index(m, "embedding dimension");
  require_positive_index(k, "prediction horizon");
  const std::size_t h = k + m - 1;
  AsymptoticMeasures a;
  a.m = m;
  a.k = k;
  a.c_k = c(h);
  a.c_k1 = c(h + 1);
  const double kd = static_cast<double>(k);
  a.rr = kd * a.c_k - (kd - 1.0) * a.c_k1;
  a.det = a.rr / c(m);
  a.lavg = lavg_from(kd, a.c_k, a.c_k1);
  return a;
}

double conditional_correlation(const CorrelationIntegralSeq& c, std::size_t l, std::size_t h) {
  if (l == 0) return 1.0;
  return c(h + l) / c(h);
}

double det_via_conditional(const CorrelationIntegralSeq& c, std::size_t m, std::size_t k) {
  require_positive_index(m, "embedding dimension");
  require_positive_index(k, "prediction horizon");
  const double kd = static_cast<double>(k);
  return kd * conditional_correlation(c, k - 1, m) - (kd - 1.0) * conditional_correlation(c, k, m);
}

// --- iid -------------------------------------------------------------------

AsymptoticMeasures iid_asymptotics(double alpha, std::size_t m, std::size_t k) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("iid alpha must lie in (0, 1)");
  require_positive_index(m, "embedding dimension");
  require_positive_index(k, "prediction horizon");
  const double kd = static_cast<double>(k);
  const double shape = kd - (kd - 1.0) * alpha;
  AsymptoticMeasures a;
  a.m = m;
  a.k = k;
  a.c_k = std::pow(alpha, static_cast<double>(m + k - 1));
  a.c_k1 = a.c_k * alpha;
  a.rr = a.c_k * shape;
  a.det = std::pow(alpha, kd - 1.0) * shape;
  a.lavg = kd + alpha / (1.0 - alpha);
  return a;
}

double gaussian_iid_alpha(double r, double sigma) {
  if (!(r > 0.0) || !(sigma > 0.0)) throw DataError("threshold and sigma must be > 0");
  // 2 Phi(r / (sqrt 2 sigma)) - 1 = erf(r / (2 sigma))
  return std::erf(r / (2.0 * sigma));
}

double gaussian_iid_threshold(double alpha, double sigma) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("alpha must lie in (0, 1)");
  if (!(sigma > 0.0)) throw DataError("sigma must be > 0");
  return std::numbers::sqrt2 * sigma * std_normal_quantile(0.5 * (1.0 + alpha));
}

// --- Markov ----------------------------------------------------------------

namespace {

using BoolMatrix = std::vector<std::uint8_t>;

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b, std::size_t q) {
  BoolMatrix c(q * q, 0);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t l = 0; l < q; ++l) {
      if (!a[i * q + l]) continue;
      for (std::size_t j = 0; j < q; ++j) c[i * q + j] |= b[l * q + j];
    }
  }
  return c;
}

// Irreducible and aperiodic iff some power of the support is all-positive;
// Wielandt bounds the exponent by (q-1)^2 + 1.
bool is_primitive(const std::vector<double>& p, std::size_t q) {
  BoolMatrix base(q * q);
  for (std::size_t i = 0; i < q * q; ++i) base[i] = p[i] > 0.0;
  const std::size_t bound = (q - 1) * (q - 1) + 1;
  BoolMatrix power = base;
  std::size_t exponent = 1;
  while (exponent < bound) {
    power = bool_product(power, power, q);
    exponent *= 2;
  }
  // A primitive matrix stays positive for every exponent past the bound.
  return std::all_of(power.begin(), power.end(), [](std::uint8_t v) { return v != 0; });
}

std::vector<double> solve_stationary(const std::vector<double>& p, std::size_t q) {
  std::vector<double> pi(q, 1.0 / static_cast<double>(q));
  if (q <= 64) {
    Eigen::MatrixXd a(q, q);
    for (std::size_t s = 0; s < q; ++s) {
      for (std::size_t t = 0; t < q; ++t) a(t, s) = p[s * q + t] - (s == t ? 1.0 : 0.0);
    }
    a.row(q - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(q);
    rhs(q - 1) = 1.0;
    const Eigen::VectorXd sol = a.fullPivLu().solve(rhs);
    for (std::size_t s = 0; s < q; ++s) pi[s] = sol(s);
  } else {
    std::vector<double> next(q);
    for (int iter = 0; iter < 1000000; ++iter) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t s = 0; s < q; ++s) {
        for (std::size_t t = 0; t < q; ++t) next[t] += pi[s] * p[s * q + t];
      }
      double diff = 0.0;
      for (std::size_t s = 0; s < q; ++s) diff = std::max(diff, std::abs(next[s] - pi[s]));
      pi.swap(next);
      if (diff < 1e-13) break;
    }
  }
  double total = 0.0;
  for (double& v : pi) {
    if (v < 0.0 && v > -1e-13) v = 0.0;
    if (v < 0.0) throw NumericError("stationary distribution has a negative entry");
    total += v;
  }
  for (double& v : pi) v /= total;
  return pi;
}

}  // namespace

MarkovSpec::MarkovSpec(std::size_t q, std::vector<double> transition)
    : q_(q), transition_(std::move(transition)) {
  if (q_ < 1) throw DataError("Markov chain needs at least one state");
  if (transition_.size() != q_ * q_) throw DataError("transition matrix must be q x q");
  for (std::size_t s = 0; s < q_; ++s) {
    double row = 0.0;
    for (std::size_t t = 0; t < q_; ++t) {
      const double v = transition_[s * q_ + t];
      if (!std::isfinite(v) || v < 0.0) throw DataError("transition probabilities must be finite and >= 0");
      row += v;
    }
    if (std::abs(row - 1.0) > 1e-9) {
      throw DataError("transition row " + std::to_string(s) + " sums to " + std::to_string(row));
    }
  }
  if (!is_primitive(transition_, q_)) {
    throw NumericError("Markov chain is not ergodic (reducible or periodic)");
  }
  stationary_ = solve_stationary(transition_, q_);
}

MarkovSpec two_state_chain(double a, double b) {
  if (!(a > 0.0 && a < 1.0) || !(b > 0.0 && b < 1.0)) {
    throw DataError("two-state chain needs 0 < a, b < 1");
  }
  return MarkovSpec(2, {a, 1.0 - a, 1.0 - b, b});
}

AlphaBeta markov_alpha_beta(const MarkovSpec& spec) {
  const auto pi = spec.stationary();
  const std::size_t q = spec.states();
  AlphaBeta ab;
  double joint = 0.0;
  for (std::size_t s = 0; s < q; ++s) {
    ab.alpha += pi[s] * pi[s];
    for (std::size_t t = 0; t < q; ++t) joint += pi[s] * pi[s] * spec.p(s, t) * spec.p(s, t);
  }
  ab.beta = joint / ab.alpha;
  return ab;
}

AlphaBeta two_state_alpha_beta(double a, double b) {
  if (!(a > 0.0 && a < 1.0) || !(b > 0.0 && b < 1.0)) {
    throw DataError("two-state chain needs 0 < a, b < 1");
  }
  const double ua = (1.0 - a) * (1.0 - a);
  const double ub = (1.0 - b) * (1.0 - b);
  const double s = 2.0 - a - b;
  AlphaBeta ab;
  ab.alpha = (ua + ub) / (s * s);
  ab.beta = (ua * (b * b + ub) + ub * (a * a + ua)) / (ua + ub);
  return ab;
}

AsymptoticMeasures markov_asymptotics(const MarkovSpec& spec, std::size_t m, std::size_t k, double r) {
  require_positive_index(m, "embedding dimension");
  require_positive_index(k, "prediction horizon");
  if (!(r >= 0.0)) throw DataError("threshold must be >= 0");
  const AlphaBeta ab = r >= 1.0 ? AlphaBeta{1.0, 1.0} : markov_alpha_beta(spec);
  const double kd = static_cast<double>(k);
  const double shape = kd - (kd - 1.0) * ab.beta;
  AsymptoticMeasures a;
  a.m = m;
  a.k = k;
  a.c_k = ab.alpha * std::pow(ab.beta, static_cast<double>(k + m - 2));
  a.c_k1 = a.c_k * ab.beta;
  a.rr = a.c_k * shape;
  a.det = std::pow(ab.beta, kd - 1.0) * shape;
  a.lavg = ab.beta == 1.0 ? kInf : kd + ab.beta / (1.0 - ab.beta);
  return a;
}

CorrelationIntegralSeq markov_correlation_integrals(const MarkovSpec& spec, std::size_t count, double r) {
  if (!(r >= 0.0)) throw DataError("threshold must be >= 0");
  if (r >= 1.0) return CorrelationIntegralSeq(std::vector<double>(count, 1.0));
  const std::size_t q = spec.states();
  const auto pi = spec.stationary();
  // w_t = P{Y_j = Z_j = t and all earlier coordinates matched}
  std::vector<double> w(q), next(q), c;
  c.reserve(count);
  for (std::size_t s = 0; s < q; ++s) w[s] = pi[s] * pi[s];
  for (std::size_t j = 0; j < count; ++j) {
    double total = 0.0;
    for (double v : w) total += v;
    c.push_back(total);
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t s = 0; s < q; ++s) {
      for (std::size_t t = 0; t < q; ++t) next[t] += w[s] * spec.p(s, t) * spec.p(s, t);
    }
    w.swap(next);
  }
  return CorrelationIntegralSeq(std::move(c));
}

AsymptoticMeasures markov_exact_asymptotics(const MarkovSpec& spec, std::size_t m, std::size_t k, double r) {
  return asymptotics_from_c(markov_correlation_integrals(spec, k + m, r), m, k);
}

double iid_entropy(std::span<const double> marginal) {
  double h = 0.0;
  for (double p : marginal) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double markov_entropy(const MarkovSpec& spec) {
  const auto pi = spec.stationary();
  double h = 0.0;
  for (std::size_t s = 0; s < spec.states(); ++s) {
    for (std::size_t t = 0; t < spec.states(); ++t) {
      const double p = spec.p(s, t);
      if (p > 0.0) h -= pi[s] * p * std::log(p);
    }
  }
  return h;
}

double find_indistinguishable(double b, double lo, double hi) {
  if (!(lo < hi)) throw DataError("bracket must satisfy lo < hi");
  const auto gap = [b](double a) {
    const AlphaBeta ab = two_state_alpha_beta(a, b);
    return ab.alpha - ab.beta;
  };
  double f_lo = gap(lo);
  const double f_hi = gap(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw NumericError("alpha - beta does not change sign on the bracket");
  }
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = gap(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// --- AR --------------------------------------------------------------------

double companion_spectral_radius(std::span<const double> theta) {
  const std::size_t p = theta.size();
  if (p == 0) return 0.0;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (std::size_t i = 0; i < p; ++i) companion(0, i) = theta[i];
  for (std::size_t i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  const Eigen::VectorXcd eig = companion.eigenvalues();
  return eig.cwiseAbs().maxCoeff();
}

void ArSpec::validate() const {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw DataError("AR noise variance must be > 0");
  for (double t : theta) {
    if (!std::isfinite(t)) throw DataError("AR coefficient is not finite");
  }
  const double rho = companion_spectral_radius(theta);
  if (!(rho < 1.0 - 1e-9)) {
    throw NumericError("AR process is not stationary (companion spectral radius " + std::to_string(rho) + ")");
  }
}

std::vector<double> ar_autocovariance(std::span<const double> theta, double noise_var, std::size_t h) {
  ArSpec{std::vector<double>(theta.begin(), theta.end()), noise_var}.validate();
  if (h < 1) throw DataError("autocovariance length must be >= 1");
  const std::size_t p = theta.size();

  // Unknowns gamma_0..gamma_p:
  //   gamma_0 - sum_i theta_i gamma_i = v
  //   gamma_j - sum_i theta_i gamma_|j-i| = 0, j = 1..p
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(p + 1, p + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p + 1);
  rhs(0) = noise_var;
  for (std::size_t j = 0; j <= p; ++j) {
    for (std::size_t i = 1; i <= p; ++i) {
      const std::size_t lag = j > i ? j - i : i - j;
      a(j, lag) -= theta[i - 1];
    }
  }
  const auto lu = a.fullPivLu();
  if (!lu.isInvertible()) throw NumericError("Yule-Walker system is singular");
  const Eigen::VectorXd sol = lu.solve(rhs);

  std::vector<double> gamma(std::max(h, p + 1));
  for (std::size_t j = 0; j <= p; ++j) gamma[j] = sol(j);
  for (std::size_t j = p + 1; j < gamma.size(); ++j) {
    double g = 0.0;
    for (std::size_t i = 1; i <= p; ++i) g += theta[i - 1] * gamma[j - i];
    gamma[j] = g;
  }
  gamma.resize(h);
  return gamma;
}

MonteCarloEstimate ar_correlation_integral(const ArSpec& spec, std::size_t m, std::size_t k, double r,
                                           std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  require_positive_index(m, "embedding dimension");
  require_positive_index(k, "prediction horizon");
  const auto gamma = ar_autocovariance(spec.theta, 2.0 * spec.sigma2, k + m - 1);
  return mvn_box_probability(CovarianceMatrix::toeplitz(gamma), r, samples, seed, threads);
}

std::vector<EstimatedAsymptotics> ar_asymptotics(const ArSpec& spec, std::size_t m, std::size_t k,
                                                 std::span<const double> r_grid, std::uint64_t samples,
                                                 std::uint64_t seed, unsigned threads) {
  require_positive_index(m, "embedding dimension");
  require_positive_index(k, "prediction horizon");
  const std::size_t h = k + m - 1;
  const auto gamma = ar_autocovariance(spec.theta, 2.0 * spec.sigma2, h + 1);
  const auto prefix = mvn_box_prefix_counts(CovarianceMatrix::toeplitz(gamma), r_grid, samples, seed, threads);

  const double n = static_cast<double>(samples);
  const double kd = static_cast<double>(k);
  std::vector<EstimatedAsymptotics> out;
  out.reserve(r_grid.size());
  for (const auto& counts : prefix.counts) {
    const auto frac = [&](std::size_t j) { return static_cast<double>(counts[j - 1]) / n; };
    const double c_m = frac(m), c_h = frac(h), c_h1 = frac(h + 1);
    if (counts[m - 1] == 0) throw NumericError("no Monte Carlo draw recurred; increase samples or r");

    EstimatedAsymptotics e;
    auto& a = e.measures;
    a.m = m;
    a.k = k;
    a.c_k = c_h;
    a.c_k1 = c_h1;
    a.rr = kd * c_h - (kd - 1.0) * c_h1;
    a.det = a.rr / c_m;
    a.lavg = c_h == 0.0 ? std::nan("") : lavg_from(kd, c_h, c_h1);
    e.c_k_se = std::sqrt(c_h * (1.0 - c_h) / n);
    e.c_k1_se = std::sqrt(c_h1 * (1.0 - c_h1) / n);

    // Numerator A = k I_h - (k-1) I_{h+1}, denominator B = I_m; the
    // indicators are nested, so every moment is a prefix frequency.
    const double mean_a = a.rr;
    const double var_a = kd * kd * c_h - (kd * kd - 1.0) * c_h1 - mean_a * mean_a;
    const double var_b = c_m * (1.0 - c_m);
    const double cov_ab = mean_a * (1.0 - c_m);
    const double ratio = a.det;
    const double var = (var_a - 2.0 * ratio * cov_ab + ratio * ratio * var_b) / (n * c_m * c_m);
    e.det_se = std::sqrt(std::max(0.0, var));
    out.push_back(e);
  }
  return out;
}

// --- calibration -----------------------------------------------------------

Calibration calibrate_iid_threshold(double rate, std::size_t m, double sigma) {
  if (!(rate > 0.0 && rate < 1.0)) throw DataError("recurrence rate must lie in (0, 1)");
  require_positive_index(m, "embedding dimension");
  Calibration c;
  c.alpha = std::pow(rate, 1.0 / static_cast<double>(m));
  c.threshold = gaussian_iid_threshold(c.alpha, sigma);
  return c;
}

std::vector<SpuriousPoint> spurious_curve(double rate, std::size_t k, std::span<const std::size_t> m_list) {
  if (!(rate > 0.0 && rate < 1.0)) throw DataError("recurrence rate must lie in (0, 1)");
  std::vector<SpuriousPoint> out;
  out.reserve(m_list.size());
  for (std::size_t m : m_list) {
    require_positive_index(m, "embedding dimension");
    const double alpha = std::pow(rate, 1.0 / static_cast<double>(m));
    const auto a = iid_asymptotics(alpha, m, k);
    out.push_back({m, alpha, a.det, a.lavg});
  }
  return out;
}

}  // namespace rqa
