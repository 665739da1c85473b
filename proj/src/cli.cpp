#include "logchisq/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "logchisq/distributions.hpp"
#include "logchisq/errors.hpp"
#include "logchisq/kernels.hpp"
#include "logchisq/logchisq_core.hpp"
#include "logchisq/sampling.hpp"
#include "logchisq/verify.hpp"

namespace logchisq::cli {
namespace {

using nlohmann::json;

// Bad flag combinations found after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string format = "csv";
  std::optional<int> precision;

  int digits() const { return precision.value_or(format == "json" ? 17 : 10); }
};

std::string format_number(double v, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

// JSON numbers carry the same rounded value the CSV text would.
json json_number(double v, int digits) {
  if (!std::isfinite(v)) {
    return nullptr;
  }
  const auto text = format_number(v, digits);
  double parsed = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), parsed);
  return parsed;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  json config = json::object();
  json summary;  // optional, JSON only
};

void emit(const Table& table, const OutputOptions& opts, std::ostream& out) {
  const int digits = opts.digits();
  if (opts.format == "json") {
    json doc;
    doc["config"] = table.config;
    doc["rows"] = json::array();
    for (const auto& row : table.rows) {
      json r = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        const auto& name = table.columns[i];
        if (name == "order" || name == "pass") {
          r[name] = static_cast<std::int64_t>(row[i]);
        } else {
          r[name] = json_number(row[i], digits);
        }
      }
      doc["rows"].push_back(std::move(r));
    }
    if (!table.summary.is_null()) {
      doc["summary"] = table.summary;
    }
    out << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_number(row[i], digits);
    }
    out << '\n';
  }
}

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--precision", opts.precision,
                  "Significant digits (default 10 for csv, 17 for json)")
      ->check(CLI::Range(1, 17));
}

// Terms of a weighted sum given as parallel comma lists.
struct TermFlags {
  std::vector<double> dfs;
  std::vector<double> weights;
  std::vector<double> ncps;

  void add_to(CLI::App* cmd, bool dfs_required) {
    auto* opt = cmd->add_option("--dfs", dfs, "Degrees of freedom per term")
                    ->delimiter(',')
                    ->check(CLI::PositiveNumber);
    if (dfs_required) {
      opt->required();
    }
    cmd->add_option("--weights", weights, "Weight (power) per term, default 1")->delimiter(',');
    cmd->add_option("--ncps", ncps, "Non-centrality per term, default 0")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
  }

  WeightedSumSpec spec() const {
    const std::size_t m = dfs.size();
    if (m == 0) {
      throw UsageError("--dfs must list at least one value");
    }
    if (!weights.empty() && weights.size() != m) {
      throw UsageError("--weights must have as many entries as --dfs");
    }
    if (!ncps.empty() && ncps.size() != m) {
      throw UsageError("--ncps must have as many entries as --dfs");
    }
    WeightedSumSpec s;
    for (std::size_t i = 0; i < m; ++i) {
      const double w = weights.empty() ? 1.0 : weights[i];
      if (!std::isfinite(w)) {
        throw UsageError("--weights entries must be finite");
      }
      s.terms.push_back({w, dfs[i], ncps.empty() ? 0.0 : ncps[i]});
    }
    return s;
  }

  ProductSpec product() const {
    ProductSpec p;
    for (const auto& t : spec().terms) {
      p.factors.push_back({t.weight, t.df, t.ncp});
    }
    return p;
  }

  json to_json() const {
    const auto s = spec();
    json terms = json::array();
    for (const auto& t : s.terms) {
      terms.push_back({{"weight", t.weight}, {"df", t.df}, {"ncp", t.ncp}});
    }
    return terms;
  }
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    parts.push_back(item);
  }
  if (parts.size() != 3) {
    throw UsageError("--grid expects lo:hi:n");
  }
  double lo = 0.0;
  double hi = 0.0;
  long long n = 0;
  try {
    std::size_t used = 0;
    lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("lo");
    hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("hi");
    n = std::stoll(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("n");
  } catch (const std::logic_error&) {
    throw UsageError("--grid expects lo:hi:n with numeric fields, got '" + text + "'");
  }
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi) || n < 2) {
    throw UsageError("--grid needs finite lo < hi and n >= 2");
  }
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] =
        i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return xs;
}

Table sequence_table(std::span<const double> values) {
  Table t;
  t.columns = {"order", "value"};
  for (std::size_t k = 0; k < values.size(); ++k) {
    t.rows.push_back({static_cast<double>(k + 1), values[k]});
  }
  return t;
}

enum class EvalKind { kDensity, kCdf, kQuantile };

struct EvalFlags {
  std::string dist = "sumlog";
  TermFlags terms;
  std::vector<double> at;
  std::string grid;
  std::optional<int> order;
  bool unclamped = false;
  bool log = false;
};

Table run_eval(EvalKind kind, const EvalFlags& f) {
  std::vector<double> xs;
  if (!f.at.empty() && !f.grid.empty()) {
    throw UsageError("give either --at or --grid, not both");
  }
  if (!f.grid.empty()) {
    xs = parse_grid(f.grid);
  } else if (!f.at.empty()) {
    xs = f.at;
  } else {
    throw UsageError("one of --at or --grid is required");
  }
  for (double x : xs) {
    if (kind == EvalKind::kQuantile && !(x > 0.0 && x < 1.0)) {
      throw UsageError("quantile probabilities must lie in (0, 1)");
    }
    if (kind != EvalKind::kQuantile && f.dist != "sumlog" && !(x > 0.0)) {
      throw UsageError("product distributions need evaluation points > 0");
    }
  }
  const int order = f.order.value_or(f.dist == "prod-naive" ? 4 : 6);
  if (order < 2) {
    throw UsageError("--order must be >= 2 for density, cdf and quantile");
  }
  const auto spec = f.terms.spec();
  const DensityMode mode = f.unclamped ? DensityMode::kUnclamped : DensityMode::kClamped;

  std::function<double(double)> fn;
  if (f.dist == "prod-naive") {
    for (const auto& t : spec.terms) {
      if (t.weight != 1.0 || t.ncp != 0.0) {
        throw UsageError("prod-naive supports central factors with unit powers only");
      }
    }
    auto apx = std::make_shared<EdgeworthApproximant>(naive_prod_approximant(f.terms.dfs, order));
    switch (kind) {
      case EvalKind::kDensity:
        fn = f.log ? std::function<double(double)>([apx](double z) { return apx->log_density(z); })
                   : [apx, mode](double z) { return apx->density(z, mode); };
        break;
      case EvalKind::kCdf:
        fn = [apx](double z) { return apx->cdf(z); };
        break;
      case EvalKind::kQuantile:
        fn = [apx](double p) { return apx->quantile(p); };
        break;
    }
  } else {
    auto apx = std::make_shared<EdgeworthApproximant>(sumlog_approximant(spec, order));
    const bool prod = f.dist == "prod";
    switch (kind) {
      case EvalKind::kDensity:
        if (f.log) {
          fn = prod ? std::function<double(double)>(
                          [apx](double z) { return prod_log_density(*apx, z); })
                    : [apx](double x) { return apx->log_density(x); };
        } else {
          fn = prod ? std::function<double(double)>(
                          [apx, mode](double z) { return prod_density(*apx, z, mode); })
                    : [apx, mode](double x) { return apx->density(x, mode); };
        }
        break;
      case EvalKind::kCdf:
        fn = prod ? std::function<double(double)>([apx](double z) { return prod_cdf(*apx, z); })
                  : [apx](double x) { return apx->cdf(x); };
        break;
      case EvalKind::kQuantile:
        fn = prod ? std::function<double(double)>(
                        [apx](double p) { return prod_quantile(*apx, p); })
                  : [apx](double p) { return apx->quantile(p); };
        break;
    }
  }

  std::vector<double> values(xs.size());
  kernels::evaluate(xs, values, fn, kernels::Execution::kParallel);
  Table t;
  t.columns = {kind == EvalKind::kQuantile ? "p" : "x", "value"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    t.rows.push_back({xs[i], values[i]});
  }
  t.config = {{"dist", f.dist}, {"order", order}, {"terms", f.terms.to_json()}};
  if (kind == EvalKind::kDensity) {
    t.config["unclamped"] = f.unclamped;
    t.config["log"] = f.log;
  }
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moments, cumulants and series approximations for log chi-square variables"};
  app.name(args.empty() ? "logchisq" : args.front());
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  OutputOptions output;
  std::uint64_t seed = 1;
  std::function<Table()> action;
  std::optional<bool> verification_pass;

  // moments
  double df = 0.0;
  double ncp = 0.0;
  int order = 6;
  auto* moments = app.add_subcommand("moments", "Raw moments of log X, X ~ chi^2(df, ncp)");
  moments->add_option("--df", df, "Degrees of freedom")->required()->check(CLI::PositiveNumber);
  moments->add_option("--ncp", ncp, "Non-centrality")->check(CLI::NonNegativeNumber)->capture_default_str();
  moments->add_option("--order", order, "Highest order")->check(CLI::Range(1, kMaxOrder))->capture_default_str();
  add_output_flags(moments, output);
  moments->callback([&] {
    action = [&] {
      auto t = sequence_table(noncentral_log_moments({df, ncp}, order).values());
      t.config = {{"df", df}, {"ncp", ncp}, {"order", order}};
      return t;
    };
  });

  // cumulants
  TermFlags cumulant_terms;
  auto* cumulants = app.add_subcommand(
      "cumulants", "Cumulants of log X, or of a weighted sum of logs via --dfs/--weights/--ncps");
  auto* cum_df = cumulants->add_option("--df", df, "Degrees of freedom (single term)")
                     ->check(CLI::PositiveNumber);
  auto* cum_ncp = cumulants->add_option("--ncp", ncp, "Non-centrality (single term)")
                      ->check(CLI::NonNegativeNumber);
  cumulant_terms.add_to(cumulants, false);
  cumulants->add_option("--order", order, "Highest order")->check(CLI::Range(1, kMaxOrder))->capture_default_str();
  add_output_flags(cumulants, output);
  cum_df->excludes("--dfs");
  cum_ncp->excludes("--dfs");
  cumulants->callback([&] {
    action = [&]() -> Table {
      if (cum_df->count() > 0) {
        auto t = sequence_table(noncentral_log_cumulants({df, ncp}, order).values());
        t.config = {{"df", df}, {"ncp", ncp}, {"order", order}};
        return t;
      }
      if (cumulant_terms.dfs.empty()) {
        throw UsageError("cumulants needs --df or --dfs");
      }
      auto t = sequence_table(sumlog_cumulants(cumulant_terms.spec(), order).values());
      t.config = {{"terms", cumulant_terms.to_json()}, {"order", order}};
      return t;
    };
  });

  // density / cdf / quantile
  EvalFlags eval;
  auto add_eval = [&](const char* name, const char* help, EvalKind kind) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--dist", eval.dist, "Distribution family")
        ->check(CLI::IsMember({"sumlog", "prod", "prod-naive"}))
        ->capture_default_str();
    eval.terms.add_to(cmd, true);
    cmd->add_option("--at", eval.at, "Comma separated evaluation points")->delimiter(',');
    cmd->add_option("--grid", eval.grid, "Evenly spaced points lo:hi:n");
    cmd->add_option("--order", eval.order,
                    "Expansion order (default 4 for prod-naive, 6 otherwise)")
        ->check(CLI::Range(2, kMaxOrder));
    if (kind == EvalKind::kDensity) {
      cmd->add_flag("--unclamped", eval.unclamped, "Report negative series values as is");
      cmd->add_flag("--log", eval.log, "Log density");
    }
    add_output_flags(cmd, output);
    cmd->callback([&, kind] { action = [&, kind] { return run_eval(kind, eval); }; });
  };
  add_eval("density", "Approximate density", EvalKind::kDensity);
  add_eval("cdf", "Approximate distribution function", EvalKind::kCdf);
  add_eval("quantile", "Cornish-Fisher quantiles", EvalKind::kQuantile);

  // sample
  std::string sample_dist = "chisq";
  std::size_t n = 1000;
  TermFlags sample_terms;
  auto* sample = app.add_subcommand("sample", "Random draws");
  sample->add_option("--dist", sample_dist, "chisq, sumlog or prod")
      ->check(CLI::IsMember({"chisq", "sumlog", "prod"}))
      ->capture_default_str();
  sample->add_option("--df", df, "Degrees of freedom (chisq)")->check(CLI::PositiveNumber);
  sample->add_option("--ncp", ncp, "Non-centrality (chisq)")->check(CLI::NonNegativeNumber);
  sample_terms.add_to(sample, false);
  sample->add_option("--n", n, "Number of draws")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40))->capture_default_str();
  sample->add_option("--seed", seed, "Seed (decimal 64-bit)")->envname("LOGCHISQ_SEED")->capture_default_str();
  add_output_flags(sample, output);
  sample->callback([&] {
    action = [&]() -> Table {
      RngState rng(seed);
      std::vector<double> draws;
      Table t;
      if (sample_dist == "chisq") {
        if (!(df > 0.0)) {
          throw UsageError("sample --dist chisq needs --df");
        }
        draws = sample_chisq(rng, df, ncp, n);
        t.config = {{"dist", sample_dist}, {"df", df}, {"ncp", ncp}};
      } else if (sample_dist == "sumlog") {
        draws = sample_sumlog(rng, sample_terms.spec(), n);
        t.config = {{"dist", sample_dist}, {"terms", sample_terms.to_json()}};
      } else {
        draws = sample_prod(rng, sample_terms.product(), n);
        t.config = {{"dist", sample_dist}, {"terms", sample_terms.to_json()}};
      }
      t.config["n"] = n;
      t.config["seed"] = seed;
      t.columns = {"value"};
      t.rows.reserve(draws.size());
      for (double d : draws) {
        t.rows.push_back({d});
      }
      return t;
    };
  });

  // verify
  MomentCheckConfig check;
  auto* verify = app.add_subcommand("verify", "Monte Carlo check of the log moments");
  verify->add_option("--df", check.params.df, "Degrees of freedom")->required()->check(CLI::PositiveNumber);
  verify->add_option("--ncp", check.params.ncp, "Non-centrality")->check(CLI::NonNegativeNumber)->capture_default_str();
  verify->add_option("--n", check.n, "Number of draws")
      ->check(CLI::Range(kMinVerifyDraws, std::size_t{1} << 40))
      ->capture_default_str();
  verify->add_option("--order", check.order_max, "Highest order")->check(CLI::Range(1, kMaxOrder))->capture_default_str();
  verify->add_option("--seed", seed, "Seed (decimal 64-bit)")->envname("LOGCHISQ_SEED")->capture_default_str();
  verify->add_option("--threshold", check.threshold, "Largest accepted |z|")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--theory-offset", check.theory_offset,
                     "Test hook: add this to every theoretical moment");
  add_output_flags(verify, output);
  verify->callback([&] {
    action = [&] {
      check.seed = seed;
      const auto report = verify_moments(check);
      verification_pass = report.pass;
      Table t;
      t.columns = {"order", "empirical", "theoretical", "std_error", "z_score", "pass"};
      for (const auto& r : report.rows) {
        t.rows.push_back({static_cast<double>(r.order), r.empirical, r.theoretical, r.std_error,
                          r.z_score, r.pass ? 1.0 : 0.0});
      }
      t.config = {{"df", check.params.df},       {"ncp", check.params.ncp},
                  {"n", check.n},                {"order", check.order_max},
                  {"seed", check.seed},          {"threshold", check.threshold},
                  {"theory_offset", check.theory_offset}};
      t.summary = {{"pass", report.pass}};
      return t;
    };
  });

  // compare
  DensityComparisonConfig cmp;
  cmp.dfs = {40, 30, 50, 20, 10};
  auto* compare = app.add_subcommand(
      "compare", "Histogram of product draws against the naive and log-space densities");
  compare->add_option("--dfs", cmp.dfs, "Degrees of freedom of the factors")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  compare->add_option("--n", cmp.n, "Number of draws")
      ->check(CLI::Range(kMinComparisonDraws, std::size_t{1} << 40))
      ->capture_default_str();
  compare->add_option("--bins", cmp.grid_size, "Histogram bins")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  compare->add_option("--naive-order", cmp.naive_order, "Order of the naive expansion")
      ->check(CLI::Range(2, kMaxOrder))
      ->capture_default_str();
  compare->add_option("--order", cmp.logspace_order, "Order of the log-space expansion")
      ->check(CLI::Range(2, kMaxOrder))
      ->capture_default_str();
  compare->add_option("--seed", seed, "Seed (decimal 64-bit)")->envname("LOGCHISQ_SEED")->capture_default_str();
  add_output_flags(compare, output);
  compare->callback([&] {
    action = [&] {
      cmp.seed = seed;
      const auto report = compare_densities(cmp);
      Table t;
      t.columns = {"x", "empirical", "naive", "naive_unclamped", "logspace"};
      for (std::size_t i = 0; i < report.grid.size(); ++i) {
        t.rows.push_back({report.grid[i], report.empirical[i], report.naive[i],
                          report.naive_unclamped[i], report.logspace[i]});
      }
      t.config = {{"dfs", cmp.dfs},
                  {"n", cmp.n},
                  {"bins", cmp.grid_size},
                  {"naive_order", cmp.naive_order},
                  {"order", cmp.logspace_order},
                  {"seed", cmp.seed}};
      t.summary = {{"iae_naive", report.iae_naive},
                   {"iae_logspace", report.iae_logspace},
                   {"naive_negative", report.naive_negative},
                   {"naive_min", report.naive_min}};
      err << "iae_naive=" << format_number(report.iae_naive, 6)
          << " iae_logspace=" << format_number(report.iae_logspace, 6)
          << " naive_negative=" << (report.naive_negative ? "true" : "false") << '\n';
      return t;
    };
  });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    const Table table = action();
    emit(table, output, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  if (verification_pass.has_value() && !*verification_pass) {
    err << "verification failed\n";
    return kVerificationFailed;
  }
  return kSuccess;
}

}  // namespace logchisq::cli
