// rqa: recurrence quantification on data files, analytic asymptotics and the
// simulation experiments. Every output starts with "#" lines recording the
// resolved configuration.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rqa/analytic.hpp"
#include "rqa/diag_histogram.hpp"
#include "rqa/errors.hpp"
#include "rqa/fast_path.hpp"
#include "rqa/measures.hpp"
#include "rqa/process.hpp"
#include "rqa/recurrence_plot.hpp"
#include "rqa/series.hpp"
#include "rqa/simulate.hpp"
#include "rqa/table.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kNumericError = 3;

struct Options {
  unsigned threads = 0;
  std::string command_line;

  // Shared flags; each subcommand binds the ones it uses.
  std::string input;
  std::string out;
  std::string process;
  std::string metric = "chebyshev";
  std::size_t n = 0;
  std::size_t m = 1;
  std::size_t k = 1;
  std::size_t horizon = 2;  // experiments default to k = 2
  double r = 0.0;
  std::vector<double> r_list;
  std::vector<std::size_t> n_list{100, 1000, 10000};
  std::vector<std::size_t> m_list;
  std::vector<std::size_t> k_list;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1'000'000;
  std::size_t reps = 100;
  bool wide = false;
  bool include_diagonal = false;
  std::string markov_form = "closed";

  double rate = 0.1;
  std::string marginal = "gaussian";
  std::string pbm_dir;
  double b = 0.2;
  std::vector<double> a_grid;
  double lo = 0.5;
  double hi = 0.7;
};

std::string join_args(int argc, char** argv) {
  std::string s = "rqa";
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    const std::string arg = argv[i];
    if (arg.find_first_of(" \"'{}[],") != std::string::npos) s += "'" + arg + "'";
    else s += arg;
  }
  return s;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rqa::DataError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Inline JSON when it starts with '{', a file path otherwise.
rqa::ProcessSpec load_process(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return rqa::parse_process_spec(arg);
  return rqa::parse_process_spec(read_text_file(arg));
}

void write_header(std::ostream& out, const Options& opt) {
  out << "# command: " << opt.command_line << '\n';
  out << "# threads: " << opt.threads << '\n';
}

void emit(const Options& opt, rqa::ExperimentResult result) {
  result.config.insert(result.config.begin(), {{"command", opt.command_line},
                                               {"threads", std::to_string(opt.threads)}});
  if (opt.out.empty()) {
    rqa::write_csv(std::cout, result);
    return;
  }
  std::ofstream file(opt.out);
  if (!file) throw rqa::DataError("cannot write " + opt.out);
  rqa::write_csv(file, result);
}

std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + rqa::format_shortest(v[i]);
  return s;
}

std::size_t resolve_n(const Options& opt, const rqa::Series& x) {
  if (opt.n > 0) return opt.n;
  if (x.size() < opt.m) throw rqa::DataError("series shorter than the embedding dimension");
  return x.size() - opt.m + 1;
}

int run_measures(const Options& opt) {
  const rqa::Series x = rqa::read_series_file(opt.input);
  const rqa::EmbedConfig cfg{opt.m, opt.k, opt.r, rqa::parse_metric(opt.metric)};
  cfg.validate_for(x);
  const std::size_t n = resolve_n(opt, x);
  const rqa::RqaSummary s = rqa::is_max_type(cfg.metric)
                                ? rqa::rqa_fast(x, n, cfg, opt.threads)
                                : rqa::measures_from_histogram(
                                      rqa::diagonal_histogram(rqa::recurrence_plot(x, n, cfg)), cfg.k);

  rqa::ExperimentResult res;
  res.add_config("input", opt.input);
  res.add_config("n", std::to_string(n));
  res.add_config("m", std::to_string(cfg.m));
  res.add_config("k", std::to_string(cfg.k));
  res.add_config("r", rqa::format_shortest(cfg.r));
  res.add_config("metric", std::string(rqa::to_string(cfg.metric)));
  res.columns = {"n", "m", "k", "r", "C_k", "C_k1", "RR_1", "RR_k", "DET_k", "LAVG_k", "LMAX", "DIV", "RATIO"};
  const auto det = s.determinism();
  res.add_row({static_cast<std::int64_t>(n), static_cast<std::int64_t>(cfg.m), static_cast<std::int64_t>(cfg.k),
               cfg.r, s.correlation_sum().value(), s.correlation_sum_next().value(),
               rqa::Fraction{s.rr_1, s.n_squared()}.value(), s.recurrence_rate().value(),
               rqa::cell(det ? std::optional<double>(det->value()) : std::nullopt),
               rqa::cell(s.average_line_length()),
               s.lmax ? rqa::Cell{static_cast<std::int64_t>(*s.lmax)} : rqa::Cell{rqa::NotAvailable{}},
               rqa::cell(s.divergence()), rqa::cell(s.ratio())});
  emit(opt, std::move(res));
  return 0;
}

int run_plot(const Options& opt) {
  const rqa::Series x = rqa::read_series_file(opt.input);
  const rqa::EmbedConfig cfg{opt.m, 1, opt.r, rqa::parse_metric(opt.metric)};
  cfg.validate_for(x);
  const std::size_t n = resolve_n(opt, x);
  const rqa::RecurrencePlot plot =
      rqa::is_max_type(cfg.metric) ? rqa::recurrence_plot_fast(x, n, cfg) : rqa::recurrence_plot(x, n, cfg);
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw rqa::DataError("cannot write " + opt.out);
  rqa::write_pbm(file, plot);

  rqa::ExperimentResult res;
  res.add_config("input", opt.input);
  res.add_config("n", std::to_string(n));
  res.add_config("m", std::to_string(cfg.m));
  res.add_config("r", rqa::format_shortest(cfg.r));
  res.add_config("metric", std::string(rqa::to_string(cfg.metric)));
  res.add_config("pbm", opt.out);
  res.columns = {"n", "recurrences", "RR_1"};
  res.add_row({static_cast<std::int64_t>(n), static_cast<std::int64_t>(plot.count()),
               static_cast<double>(plot.count()) / (static_cast<double>(n) * static_cast<double>(n))});
  Options to_stdout = opt;
  to_stdout.out.clear();
  emit(to_stdout, std::move(res));
  return 0;
}

int run_asympt(const Options& opt) {
  const rqa::ProcessSpec spec = load_process(opt.process);
  if (opt.markov_form != "closed" && opt.markov_form != "exact") {
    throw rqa::DataError("--markov-form must be closed or exact");
  }
  std::vector<double> grid = opt.r_list;
  if (grid.empty()) throw rqa::DataError("--r is required");

  rqa::ExperimentResult res;
  res.add_config("process", rqa::to_json(spec));
  res.add_config("m", std::to_string(opt.m));
  res.add_config("k", std::to_string(opt.k));
  res.add_config("r", join_numbers(grid));
  res.columns = {"m", "k", "r", "c_k", "c_k1", "rr", "det", "lavg", "c_k_se", "c_k1_se", "det_se"};

  auto add = [&](double r, const rqa::AsymptoticMeasures& a, std::optional<double> ck_se,
                 std::optional<double> ck1_se, std::optional<double> det_se) {
    res.add_row({static_cast<std::int64_t>(a.m), static_cast<std::int64_t>(a.k), r, a.c_k, a.c_k1, a.rr, a.det,
                 a.lavg, rqa::cell(ck_se), rqa::cell(ck1_se), rqa::cell(det_se)});
  };

  if (const auto* g = std::get_if<rqa::IidGaussian>(&spec)) {
    for (double r : grid) add(r, rqa::iid_asymptotics(rqa::gaussian_iid_alpha(r, g->sigma), opt.m, opt.k), {}, {}, {});
  } else if (const auto* mc = std::get_if<rqa::MarkovSpec>(&spec)) {
    res.add_config("markov_form", opt.markov_form);
    for (double r : grid) {
      add(r,
          opt.markov_form == "exact" ? rqa::markov_exact_asymptotics(*mc, opt.m, opt.k, r)
                                     : rqa::markov_asymptotics(*mc, opt.m, opt.k, r),
          {}, {}, {});
    }
  } else {
    res.add_config("samples", std::to_string(opt.samples));
    res.add_config("seed", std::to_string(opt.seed));
    const auto est = rqa::ar_asymptotics(std::get<rqa::ArSpec>(spec), opt.m, opt.k, grid, opt.samples, opt.seed,
                                         opt.threads);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      add(grid[g], est[g].measures, est[g].c_k_se, est[g].c_k1_se, est[g].det_se);
    }
  }
  emit(opt, std::move(res));
  return 0;
}

int run_simulate(const Options& opt) {
  const rqa::ProcessSpec spec = load_process(opt.process);
  const rqa::Series x = rqa::sample(spec, opt.n, opt.seed);
  auto write = [&](std::ostream& out) {
    write_header(out, opt);
    out << "# process: " << rqa::to_json(spec) << '\n';
    out << "# n: " << opt.n << '\n';
    out << "# seed: " << opt.seed << '\n';
    rqa::write_series(out, x);
  };
  if (opt.out.empty()) {
    write(std::cout);
  } else {
    std::ofstream file(opt.out);
    if (!file) throw rqa::DataError("cannot write " + opt.out);
    write(file);
  }
  return 0;
}

// Default threshold grids per process family.
std::vector<double> default_r_grid(const rqa::ProcessSpec& spec) {
  if (std::holds_alternative<rqa::IidGaussian>(spec)) return {0.5, 0.8, 1.0, std::sqrt(2.0), 1.5, 2.0};
  if (std::holds_alternative<rqa::MarkovSpec>(spec)) return {0.5};
  return {0.5, 1.0, std::sqrt(1.5), 1.5, 2.0, 2.5};
}

int run_converge(const Options& opt) {
  const rqa::ProcessSpec spec = load_process(opt.process);
  const std::vector<double> grid = opt.r_list.empty() ? default_r_grid(spec) : opt.r_list;
  rqa::ConvergenceOptions copt;
  copt.mvn_samples = opt.samples;
  copt.threads = opt.threads;
  auto res = rqa::convergence_sweep(spec, opt.m, opt.horizon, grid, opt.n_list, opt.seed, copt);
  res.add_config("r_grid", join_numbers(grid));
  emit(opt, std::move(res));
  return 0;
}

int run_table2(const Options& opt) {
  const rqa::ProcessSpec spec =
      opt.process.empty() ? rqa::ProcessSpec{rqa::ArSpec{{0.25, 0.4, 0.3}, 1.5}} : load_process(opt.process);
  const double r = opt.r_list.empty() ? std::sqrt(1.5) : opt.r_list.front();
  const std::vector<std::size_t> ms = opt.m_list.empty() ? std::vector<std::size_t>{1, 2, 3, 4, 5} : opt.m_list;
  const std::vector<std::size_t> ks = opt.k_list.empty() ? std::vector<std::size_t>{2, 3, 4, 5} : opt.k_list;
  const std::size_t n = opt.n > 0 ? opt.n : 2500;
  auto grid = rqa::monte_carlo_det_grid(spec, ms, ks, r, n, opt.reps, opt.seed, opt.threads, !opt.include_diagonal);
  if (!opt.wide) {
    emit(opt, std::move(grid));
    return 0;
  }
  // One row per k, mean and std_dev per m.
  rqa::ExperimentResult wide;
  wide.config = grid.config;
  wide.add_config("layout", "wide");
  wide.columns = {"k"};
  for (std::size_t m : ms) {
    wide.columns.push_back("mean_m" + std::to_string(m));
    wide.columns.push_back("sd_m" + std::to_string(m));
  }
  std::size_t row = 0;
  for (std::size_t k : ks) {
    std::vector<rqa::Cell> cells{static_cast<std::int64_t>(k)};
    for (std::size_t i = 0; i < ms.size(); ++i, ++row) {
      cells.emplace_back(grid.number_at(row, "mean"));
      cells.emplace_back(grid.number_at(row, "std_dev"));
    }
    wide.add_row(std::move(cells));
  }
  emit(opt, std::move(wide));
  return 0;
}

int run_spurious(const Options& opt) {
  const std::vector<std::size_t> ms = opt.m_list.empty() ? std::vector<std::size_t>{1, 2, 5, 10, 20, 50} : opt.m_list;
  rqa::SpuriousOptions sopt;
  if (opt.marginal == "gaussian") sopt.marginal = rqa::Marginal::Gaussian;
  else if (opt.marginal == "uniform") sopt.marginal = rqa::Marginal::Uniform;
  else throw rqa::DataError("--marginal must be gaussian or uniform");
  if (!opt.pbm_dir.empty()) sopt.pbm_dir = opt.pbm_dir;
  sopt.threads = opt.threads;
  const std::size_t n = opt.n > 0 ? opt.n : 5000;
  emit(opt, rqa::spurious_demo(opt.rate, ms, opt.horizon, n, opt.seed, sopt));
  return 0;
}

int run_entropy_det(const Options& opt) {
  std::vector<double> as = opt.a_grid;
  if (as.empty()) {
    for (int i = 1; i <= 19; ++i) as.push_back(0.05 * i);
  }
  emit(opt, rqa::entropy_det_sweep(opt.b, as, opt.horizon));
  return 0;
}

int run_indistinguishable(const Options& opt) {
  const std::size_t k_max = opt.k_list.empty() ? 10 : opt.k_list.front();
  emit(opt, rqa::indistinguishable_demo(opt.b, opt.lo, opt.hi, k_max, opt.n, opt.seed, opt.threads));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  opt.command_line = join_args(argc, argv);

  CLI::App app{"Recurrence quantification analysis: measures, asymptotics and experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", opt.threads, "Worker threads, 0 = all cores")->capture_default_str();

  auto add_embed = [&](CLI::App* sub, bool with_k) {
    sub->add_option("--input", opt.input, "Series file")->required();
    sub->add_option("--n", opt.n, "Plot side (default: all windows)");
    sub->add_option("--m", opt.m, "Embedding dimension")->capture_default_str();
    if (with_k) sub->add_option("--k", opt.k, "Prediction horizon")->capture_default_str();
    sub->add_option("--r", opt.r, "Threshold")->required();
    sub->add_option("--metric", opt.metric, "chebyshev|manhattan|euclidean|discrete|order-pattern")
        ->capture_default_str();
  };

  auto* measures = app.add_subcommand("measures", "RQA measures of a series");
  add_embed(measures, true);
  measures->add_option("--out", opt.out, "CSV output file (default stdout)");

  auto* plot = app.add_subcommand("plot", "Recurrence plot as PBM");
  add_embed(plot, false);
  plot->add_option("--out", opt.out, "PBM file")->required();

  auto* asympt = app.add_subcommand("asympt", "Asymptotic measures of a process");
  asympt->add_option("--process", opt.process, "Process JSON or file")->required();
  asympt->add_option("--m", opt.m)->capture_default_str();
  asympt->add_option("--k", opt.k)->capture_default_str();
  asympt->add_option("--r", opt.r_list, "Threshold(s)")->required()->delimiter(',');
  asympt->add_option("--samples", opt.samples, "MVN samples (AR)")->capture_default_str();
  asympt->add_option("--seed", opt.seed)->capture_default_str();
  asympt->add_option("--markov-form", opt.markov_form, "closed|exact")->capture_default_str();
  asympt->add_option("--out", opt.out);

  auto* simulate = app.add_subcommand("simulate", "Sample a path of a process");
  simulate->add_option("--process", opt.process, "Process JSON or file")->required();
  simulate->add_option("--n", opt.n, "Path length")->required();
  simulate->add_option("--seed", opt.seed)->capture_default_str();
  simulate->add_option("--out", opt.out, "Series file (default stdout)");

  auto* converge = app.add_subcommand("converge", "Empirical vs asymptotic determinism over n and r");
  converge->add_option("--process", opt.process, "Process JSON or file")->required();
  converge->add_option("--m", opt.m)->capture_default_str();
  converge->add_option("--k", opt.horizon)->capture_default_str();
  converge->add_option("--r", opt.r_list, "Threshold grid")->delimiter(',');
  converge->add_option("--n", opt.n_list, "Plot sizes")->delimiter(',')->capture_default_str();
  converge->add_option("--seed", opt.seed)->capture_default_str();
  converge->add_option("--samples", opt.samples, "MVN samples (AR reference)")->capture_default_str();
  converge->add_option("--out", opt.out);

  auto* table2 = app.add_subcommand("table2", "Monte Carlo determinism grid for the AR(3) process");
  table2->add_option("--process", opt.process, "Process JSON or file (default AR(3))");
  table2->add_option("--reps", opt.reps)->capture_default_str();
  table2->add_option("--seed", opt.seed)->capture_default_str();
  table2->add_option("--n", opt.n, "Plot side (default 2500)");
  table2->add_option("--r", opt.r_list, "Threshold (default sqrt(1.5))")->expected(1);
  table2->add_option("--m", opt.m_list, "Embedding dimensions")->delimiter(',');
  table2->add_option("--k", opt.k_list, "Horizons")->delimiter(',');
  table2->add_flag("--wide", opt.wide, "One row per k");
  table2->add_flag("--include-diagonal", opt.include_diagonal,
                   "Count the main diagonal in RR and DET (default leaves it out, as the published table does)");
  table2->add_option("--out", opt.out);

  auto* spurious = app.add_subcommand("spurious", "Determinism of iid data at a fixed recurrence rate");
  spurious->add_option("--rate", opt.rate)->capture_default_str();
  spurious->add_option("--k", opt.horizon)->capture_default_str();
  spurious->add_option("--m", opt.m_list, "Embedding dimensions")->delimiter(',');
  spurious->add_option("--n", opt.n, "Plot side (default 5000)");
  spurious->add_option("--seed", opt.seed)->capture_default_str();
  spurious->add_option("--marginal", opt.marginal, "gaussian|uniform")->capture_default_str();
  spurious->add_option("--pbm-dir", opt.pbm_dir, "Write spurious_m<m>.pbm here");
  spurious->add_option("--out", opt.out);

  auto* entropy = app.add_subcommand("entropy-det", "Entropy and determinism of two-state chains");
  entropy->add_option("--b", opt.b, "p_11")->capture_default_str();
  entropy->add_option("--a", opt.a_grid, "p_00 grid")->delimiter(',');
  entropy->add_option("--k", opt.horizon)->capture_default_str();
  entropy->add_option("--out", opt.out);

  auto* indist = app.add_subcommand("indistinguishable", "Two-state chain indistinguishable from iid by det");
  indist->add_option("--b", opt.b, "p_11")->capture_default_str();
  indist->add_option("--lo", opt.lo)->capture_default_str();
  indist->add_option("--hi", opt.hi)->capture_default_str();
  indist->add_option("--k-max", opt.k_list, "Largest horizon (default 10)")->expected(1);
  indist->add_option("--n", opt.n, "Plot side for the empirical check (0 skips it)");
  indist->add_option("--seed", opt.seed)->capture_default_str();
  indist->add_option("--out", opt.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    if (measures->parsed()) return run_measures(opt);
    if (plot->parsed()) return run_plot(opt);
    if (asympt->parsed()) return run_asympt(opt);
    if (simulate->parsed()) return run_simulate(opt);
    if (converge->parsed()) return run_converge(opt);
    if (table2->parsed()) return run_table2(opt);
    if (spurious->parsed()) return run_spurious(opt);
    if (entropy->parsed()) return run_entropy_det(opt);
    if (indist->parsed()) return run_indistinguishable(opt);
  } catch (const rqa::DataError& e) {
    std::cerr << "rqa: data error: " << e.what() << '\n';
    return kDataError;
  } catch (const rqa::NumericError& e) {
    std::cerr << "rqa: numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    std::cerr << "rqa: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}
