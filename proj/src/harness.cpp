#include "qlp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

#include "qlp/classical.hpp"
#include "qlp/evolution.hpp"
#include "qlp/generators.hpp"
#include "qlp/parallel.hpp"

namespace qlp {

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QLP_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::vector<HoldoutSplit> kfold_split(const Graph& g, int folds,
                                      RandomStream& rng) {
  if (folds < 2) throw ParameterError("cross validation needs folds >= 2");
  auto edges = g.edges();
  const std::int64_t m = std::ssize(edges);
  if (m < folds)
    throw ParameterError("too few edges (" + std::to_string(m) + ") for " +
                         std::to_string(folds) + " folds");

  // Fisher-Yates with the caller's stream
  for (std::int64_t i = m - 1; i > 0; --i) {
    const std::int64_t j = rng.next_index(i + 1);
    std::swap(edges[i], edges[j]);
  }

  std::vector<HoldoutSplit> splits;
  splits.reserve(static_cast<std::size_t>(folds));
  for (int f = 0; f < folds; ++f) {
    const std::int64_t begin = m * f / folds;
    const std::int64_t end = m * (f + 1) / folds;
    std::vector<std::pair<NodeId, NodeId>> held(edges.begin() + begin,
                                                edges.begin() + end);
    std::vector<std::pair<NodeId, NodeId>> train;
    train.reserve(static_cast<std::size_t>(m - (end - begin)));
    train.insert(train.end(), edges.begin(), edges.begin() + begin);
    train.insert(train.end(), edges.begin() + end, edges.end());
    splits.push_back({f, Graph::from_edges(g.node_count(), train),
                      SolutionMask(g.node_count(), std::move(held))});
  }
  return splits;
}

namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[i] = lo * std::pow(hi / lo, points == 1
                                         ? 0.0
                                         : static_cast<double>(i) /
                                               static_cast<double>(points - 1));
  return grid;
}

MeanSd mean_sd(std::span<const double> values) {
  MeanSd out;
  if (values.empty()) return out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

std::optional<MeanSd> optional_mean_sd(
    const std::vector<std::optional<double>>& values) {
  std::vector<double> defined;
  defined.reserve(values.size());
  for (const auto& v : values)
    if (v) defined.push_back(*v);
  if (defined.empty()) return std::nullopt;
  return mean_sd(defined);
}

}  // namespace

std::vector<double> default_walk_time_grid() { return log_grid(0.05, 10.0, 60); }

std::vector<double> default_xval_grid() { return log_grid(0.1, 10.0, 60); }

CrossValidationResult sweep_t(const Graph& g, const ExperimentConfig& config) {
  const std::vector<double>& grid =
      config.t_grid.empty() ? default_xval_grid() : config.t_grid;
  RandomStream split_rng = derive_stream(config.master_seed, 0);
  auto splits = kfold_split(g, config.folds, split_rng);

  const std::size_t t_count = grid.size();
  CrossValidationResult result;
  result.rows.resize(splits.size() * t_count);

  parallel_for(splits.size(), resolve_thread_count(config.threads),
               [&](std::size_t f) {
                 const auto& split = splits[f];
                 const auto pcg_a2 =
                     p_cg_classical(split.train, 2, split.solution);
                 const auto pcg_a3 =
                     p_cg_classical(split.train, 3, split.solution);
                 auto spectral = std::make_shared<const SpectralDecomposition>(
                     decompose(split.train));
                 for (std::size_t ti = 0; ti < t_count; ++ti) {
                   const auto evo =
                       QlpEvolution::from_spectral(spectral, grid[ti]);
                   const auto pg = p_good_qlp(split.train, evo);
                   const auto pc =
                       p_correct_qlp(split.train, evo, split.solution);
                   FoldCurveRow row;
                   row.fold = split.fold;
                   row.t = grid[ti];
                   row.pg_even = pg.even;
                   row.pg_odd = pg.odd;
                   row.pcg_even = p_correct_given_good(pc.even, pg.even);
                   row.pcg_odd = p_correct_given_good(pc.odd, pg.odd);
                   row.pcg_a2 = pcg_a2;
                   row.pcg_a3 = pcg_a3;
                   result.rows[f * t_count + ti] = row;
                 }
               });

  result.curve.reserve(t_count);
  for (std::size_t ti = 0; ti < t_count; ++ti) {
    CurvePoint point;
    point.t = grid[ti];
    std::vector<double> pg_even, pg_odd;
    std::vector<std::optional<double>> pcg_even, pcg_odd, pcg_a2, pcg_a3;
    for (std::size_t f = 0; f < splits.size(); ++f) {
      const auto& row = result.rows[f * t_count + ti];
      pg_even.push_back(row.pg_even);
      pg_odd.push_back(row.pg_odd);
      pcg_even.push_back(row.pcg_even);
      pcg_odd.push_back(row.pcg_odd);
      pcg_a2.push_back(row.pcg_a2);
      pcg_a3.push_back(row.pcg_a3);
    }
    point.pg_even = mean_sd(pg_even);
    point.pg_odd = mean_sd(pg_odd);
    point.pcg_even = optional_mean_sd(pcg_even);
    point.pcg_odd = optional_mean_sd(pcg_odd);
    point.pcg_a2 = optional_mean_sd(pcg_a2);
    point.pcg_a3 = optional_mean_sd(pcg_a3);
    result.curve.push_back(point);
  }

  if (config.spot_check_samples > 0) {
    const auto& split = splits.front();
    const auto exact_a2 = p_cg_classical(split.train, 2, split.solution);
    const auto exact_a3 = p_cg_classical(split.train, 3, split.solution);
    if (exact_a2 && exact_a3) {
      SamplerSpotCheck check;
      check.useful_samples = config.spot_check_samples;
      check.exact_a2 = *exact_a2;
      check.exact_a3 = *exact_a3;

      auto in_solution = [&](const UsefulSampleRun& run) {
        std::int64_t hits = 0;
        for (const auto& rec : run.samples)
          if (split.solution.contains(rec.i, rec.j)) ++hits;
        return static_cast<double>(hits) /
               static_cast<double>(run.samples.size());
      };

      QueryLedger ledger;
      RandomStream a2_rng = derive_stream(config.master_seed, 1);
      const auto a2 = a2_prepare(split.train, ledger);
      check.sampled_a2 = in_solution(a2_sample_useful(
          split.train, ledger, a2, a2_rng, config.spot_check_samples));

      RandomStream a3_rng = derive_stream(config.master_seed, 2);
      const auto a3 = a3_prepare(split.train, ledger);
      check.sampled_a3 = in_solution(
          a3_sample_useful(a3, a3_rng, config.spot_check_samples));
      result.spot_check = check;
    }
  }
  return result;
}

namespace {

std::vector<ScalingRow> run_scaling_sweep(
    const std::string& model, std::span<const NodeId> sizes,
    std::span<const double> k_avs, std::span<const double> t_values,
    int seeds_per_cell, std::uint64_t master_seed, unsigned threads,
    bool axis_is_k_av) {
  if (seeds_per_cell < 1) throw ParameterError("need at least one seed");
  const std::size_t axis_count = axis_is_k_av ? k_avs.size() : sizes.size();
  const std::size_t cells = axis_count * static_cast<std::size_t>(seeds_per_cell);
  std::vector<ScalingRow> rows(cells * t_values.size());

  parallel_for(cells, resolve_thread_count(threads), [&](std::size_t cell) {
    const std::size_t axis = cell / static_cast<std::size_t>(seeds_per_cell);
    const std::uint64_t seed_ordinal =
        cell % static_cast<std::size_t>(seeds_per_cell);
    const NodeId n = axis_is_k_av ? sizes[0] : sizes[axis];
    const double k_av = axis_is_k_av ? k_avs[axis] : k_avs[0];

    RandomStream rng =
        derive_stream(master_seed, axis * 1'000'003ULL + seed_ordinal);
    const Graph graph = gen_model(model, n, k_av, rng);
    auto spectral =
        std::make_shared<const SpectralDecomposition>(decompose(graph));
    for (std::size_t ti = 0; ti < t_values.size(); ++ti) {
      const auto evo = QlpEvolution::from_spectral(spectral, t_values[ti]);
      ScalingRow row;
      row.model = model;
      row.n = n;
      row.k_av = k_av;
      row.seed = seed_ordinal;
      row.t = t_values[ti];
      row.p_g = p_good_qlp(graph, evo).total();
      rows[cell * t_values.size() + ti] = row;
    }
  });
  return rows;
}

}  // namespace

std::vector<ScalingRow> sweep_size(const std::string& model,
                                   std::span<const NodeId> sizes, double k_av,
                                   std::span<const double> t_values,
                                   int seeds_per_cell,
                                   std::uint64_t master_seed,
                                   unsigned threads) {
  const double k_avs[] = {k_av};
  return run_scaling_sweep(model, sizes, k_avs, t_values, seeds_per_cell,
                           master_seed, threads, /*axis_is_k_av=*/false);
}

std::vector<ScalingRow> sweep_density(const std::string& model, NodeId n,
                                      std::span<const double> k_av_values,
                                      std::span<const double> t_values,
                                      int seeds_per_cell,
                                      std::uint64_t master_seed,
                                      unsigned threads) {
  const NodeId sizes[] = {n};
  return run_scaling_sweep(model, sizes, k_av_values, t_values, seeds_per_cell,
                           master_seed, threads, /*axis_is_k_av=*/true);
}

double relative_spread(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  return mean > 0.0 ? (*hi - *lo) / mean : 0.0;
}

std::vector<std::pair<double, double>> seed_means_by_axis(
    std::span<const ScalingRow> rows, double t, bool by_k_av) {
  std::map<double, std::pair<double, int>> buckets;
  for (const auto& row : rows) {
    if (row.t != t) continue;
    const double key = by_k_av ? row.k_av : static_cast<double>(row.n);
    auto& [sum, count] = buckets[key];
    sum += row.p_g;
    ++count;
  }
  std::vector<std::pair<double, double>> means;
  means.reserve(buckets.size());
  for (const auto& [key, acc] : buckets)
    means.emplace_back(key, acc.first / acc.second);
  return means;
}

DensityTrend density_trend(std::span<const ScalingRow> rows, double t) {
  const auto means = seed_means_by_axis(rows, t, /*by_k_av=*/true);
  DensityTrend trend;
  if (means.empty()) return trend;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < means.size(); ++i)
    if (means[i].second > means[peak].second) peak = i;
  trend.peak_k_av = means[peak].first;
  trend.non_decreasing_to_peak = true;
  for (std::size_t i = 1; i <= peak; ++i)
    if (means[i].second < means[i - 1].second)
      trend.non_decreasing_to_peak = false;
  trend.flat_after_peak = true;
  for (std::size_t i = peak; i < means.size(); ++i)
    if (std::abs(means[i].second - means[peak].second) >
        0.15 * means[peak].second)
      trend.flat_after_peak = false;
  return trend;
}

DistributionCheckReport distribution_check(SamplerKind kind, const Graph& g,
                                           double t, std::uint64_t draws,
                                           RandomStream& rng) {
  if (g.node_count() > kExactOracleCap)
    throw SizeCapError("distribution check capped at N = " +
                       std::to_string(kExactOracleCap));
  if (draws == 0) throw ParameterError("need at least one draw");
  const std::size_t n = static_cast<std::size_t>(g.node_count());

  std::vector<double> exact;
  std::vector<std::uint64_t> counts;
  DistributionCheckReport report;
  report.draws = draws;

  if (kind == SamplerKind::kQlp) {
    report.sampler = "qlp";
    const auto evo = QlpEvolution::from_graph(g, t);
    const auto dist = qlp_distribution(evo);
    exact.resize(2 * n * n);
    counts.assign(2 * n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        exact[i * n + j] = dist.even(static_cast<NodeId>(i),
                                     static_cast<NodeId>(j));
        exact[n * n + i * n + j] = dist.odd(static_cast<NodeId>(i),
                                            static_cast<NodeId>(j));
      }
    const QlpSampler sampler(dist);
    for (std::uint64_t d = 0; d < draws; ++d) {
      const auto outcome = sampler.sample(rng);
      const std::size_t parity_offset =
          outcome.parity == Method::kQlpOdd ? n * n : 0;
      ++counts[parity_offset + static_cast<std::size_t>(outcome.i) * n +
               static_cast<std::size_t>(outcome.j)];
    }
  } else {
    const int order = kind == SamplerKind::kA2 ? 2 : 3;
    report.sampler = order == 2 ? "a2" : "a3";
    const CountMatrix power = power_counts(g, order);
    const double norm = static_cast<double>(power.sum());
    if (!(norm > 0)) throw EmptySupportError("walk counts have no support");
    exact.resize(n * n);
    counts.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        exact[i * n + j] = static_cast<double>(power(static_cast<NodeId>(i),
                                                     static_cast<NodeId>(j))) /
                           norm;
    QueryLedger ledger;
    if (order == 2) {
      const auto sampler = a2_prepare(g, ledger);
      for (std::uint64_t d = 0; d < draws; ++d) {
        const auto [i, j] = a2_sample_raw(g, ledger, sampler, rng);
        ++counts[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
      }
    } else {
      const auto sampler = a3_prepare(g, ledger);
      for (std::uint64_t d = 0; d < draws; ++d) {
        const auto [i, j] = a3_sample_raw(sampler, rng);
        ++counts[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
      }
    }
  }

  double tv = 0.0;
  for (std::size_t c = 0; c < exact.size(); ++c)
    tv += std::abs(static_cast<double>(counts[c]) /
                       static_cast<double>(draws) -
                   exact[c]);
  report.tv_distance = tv / 2.0;
  return report;
}

// ---- CSV -------------------------------------------------------------------

std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.10g", x);
  return buffer;
}

std::string provenance_line(
    std::span<const std::pair<std::string, std::string>> config) {
  std::string body;
  for (const auto& [key, value] : config) {
    if (!body.empty()) body += ' ';
    body += key + '=' + value;
  }
  std::uint64_t hash = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : body) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(hash));
  return "# config: " + body + " hash=" + hex;
}

namespace {

std::string cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

void write_curves_csv(std::ostream& out, const std::string& provenance,
                      const std::string& network,
                      std::span<const FoldCurveRow> rows) {
  out << provenance << '\n';
  out << "network,fold,t,pG_even,pG_odd,pCG_even,pCG_odd,pCG_A2,pCG_A3\n";
  for (const auto& row : rows) {
    out << network << ',' << row.fold << ',' << format_double(row.t) << ','
        << format_double(row.pg_even) << ',' << format_double(row.pg_odd)
        << ',' << cell(row.pcg_even) << ',' << cell(row.pcg_odd) << ','
        << cell(row.pcg_a2) << ',' << cell(row.pcg_a3) << '\n';
  }
}

void write_scaling_csv(std::ostream& out, const std::string& provenance,
                       std::span<const ScalingRow> rows) {
  out << provenance << '\n';
  out << "model,N,k_av,seed,t,pG\n";
  for (const auto& row : rows) {
    out << row.model << ',' << row.n << ',' << format_double(row.k_av) << ','
        << row.seed << ',' << format_double(row.t) << ','
        << format_double(row.p_g) << '\n';
  }
}

void write_queries_csv(std::ostream& out, const std::string& provenance,
                       std::span<const QueriesRow> rows) {
  out << provenance << '\n';
  out << "method,n_s,degree_queries,neighbour_queries,pair_queries,"
         "raw_attempts\n";
  for (const auto& row : rows) {
    out << row.method << ',' << row.n_s << ',' << row.ledger.degree_queries
        << ',' << row.ledger.neighbour_queries << ','
        << row.ledger.pair_queries << ',' << row.raw_attempts << '\n';
  }
}

}  // namespace qlp
