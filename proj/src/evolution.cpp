#include "qlp/evolution.hpp"

#include <lapacke.h>

#include <cmath>
#include <numbers>
#include <string>

namespace qlp {

SpectralDecomposition decompose(const Graph& g, NodeId dense_cap) {
  const NodeId n = g.node_count();
  if (n < 1) throw EmptyGraphError("cannot decompose an empty graph");
  if (n > dense_cap)
    throw SizeCapError("dense decomposition capped at N = " +
                       std::to_string(dense_cap) + ", graph has N = " +
                       std::to_string(n) +
                       "; use the Chebyshev backend for larger graphs");

  SpectralDecomposition spec;
  spec.eigenvectors = Eigen::MatrixXd::Zero(n, n);
  for (NodeId v = 0; v < n; ++v)
    for (NodeId u : g.neighbours(v)) spec.eigenvectors(u, v) = 1.0;
  spec.eigenvalues.resize(n);

  const lapack_int info = LAPACKE_dsyevd(
      LAPACK_COL_MAJOR, 'V', 'L', n, spec.eigenvectors.data(), n,
      spec.eigenvalues.data());
  if (info != 0)
    throw Error("dsyevd failed with info = " + std::to_string(info));
  return spec;
}

int chebyshev_min_order(double t, int k_max) {
  const double a = std::abs(t) * k_max;
  if (a == 0.0) return 0;
  // Bessel coefficients J_k(a) decay once k passes e*a/2; the extra a/4 + 16
  // keeps the truncated tail below the 1e-8 entry budget across the whole
  // desk-scale range of a.
  return static_cast<int>(std::ceil(std::numbers::e * a / 2.0 + a / 4.0)) + 16;
}

int chebyshev_auto_order(double t, int k_max) {
  const double a = std::abs(t) * k_max;
  if (a == 0.0) return 0;
  int m = chebyshev_min_order(t, k_max);
  while (std::abs(std::cyl_bessel_j(m, a)) > 1e-14) ++m;
  return m + 4;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> chebyshev_entries(const Graph& g,
                                                              double t,
                                                              NodeId column,
                                                              int order) {
  g.check_node(column);
  const NodeId n = g.node_count();
  const int k_max = degree_statistics(g).k_max;
  const double a = std::abs(t) * k_max;

  Eigen::VectorXd cos_col = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sin_col = Eigen::VectorXd::Zero(n);
  if (a == 0.0) {
    // cos(0) = I, sin(0) = 0; order 0 is exact.
    cos_col(column) = 1.0;
    return {cos_col, sin_col};
  }

  if (order == 0) order = chebyshev_auto_order(t, k_max);
  if (order < chebyshev_min_order(t, k_max))
    throw TruncationBoundError(
        "chebyshev order " + std::to_string(order) + " below the minimum " +
        std::to_string(chebyshev_min_order(t, k_max)) + " for t*k_max = " +
        std::to_string(a));

  // cos(a x) = J_0(a) + 2 sum_m (-1)^m J_{2m}(a)  T_{2m}(x)
  // sin(a x) =          2 sum_m (-1)^m J_{2m+1}(a) T_{2m+1}(x)
  // with x = A / k_max so the spectrum sits inside [-1, 1]. The sign of t
  // only flips sin.
  const double sin_sign = t >= 0 ? 1.0 : -1.0;

  auto scaled_matvec = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y(n);
    for (NodeId v = 0; v < n; ++v) {
      double acc = 0.0;
      for (NodeId u : g.neighbours(v)) acc += x(u);
      y(v) = acc / k_max;
    }
    return y;
  };

  Eigen::VectorXd t_prev = Eigen::VectorXd::Zero(n);  // T_0 e_j
  t_prev(column) = 1.0;
  Eigen::VectorXd t_curr = scaled_matvec(t_prev);     // T_1 e_j

  cos_col = std::cyl_bessel_j(0, a) * t_prev;
  sin_col = 2.0 * std::cyl_bessel_j(1, a) * t_curr;

  double parity_sign = -1.0;  // (-1)^m for the m-th even/odd pair
  for (int k = 2; k <= order; ++k) {
    Eigen::VectorXd t_next = 2.0 * scaled_matvec(t_curr) - t_prev;
    const double coeff = 2.0 * std::cyl_bessel_j(k, a);
    if (k % 2 == 0) {
      cos_col += parity_sign * coeff * t_next;
    } else {
      sin_col += parity_sign * coeff * t_next;
      parity_sign = -parity_sign;
    }
    t_prev = std::move(t_curr);
    t_curr = std::move(t_next);
  }
  sin_col *= sin_sign;
  return {cos_col, sin_col};
}

QlpEvolution QlpEvolution::from_spectral(
    std::shared_ptr<const SpectralDecomposition> spectral, double t) {
  QlpEvolution evo;
  evo.node_count_ = static_cast<NodeId>(spectral->eigenvalues.size());
  evo.t_ = t;
  evo.cos_eigs_ = (spectral->eigenvalues.array() * t).cos();
  evo.sin_eigs_ = (spectral->eigenvalues.array() * t).sin();
  evo.spectral_ = std::move(spectral);
  return evo;
}

QlpEvolution QlpEvolution::from_graph(const Graph& g, double t,
                                      NodeId dense_cap) {
  return from_spectral(
      std::make_shared<SpectralDecomposition>(decompose(g, dense_cap)), t);
}

QlpEvolution QlpEvolution::from_chebyshev(const Graph& g, double t,
                                          int order) {
  QlpEvolution evo;
  evo.node_count_ = g.node_count();
  evo.t_ = t;
  evo.graph_ = std::make_shared<const Graph>(g);
  const int k_max = degree_statistics(g).k_max;
  evo.order_ = order == 0 ? chebyshev_auto_order(t, k_max) : order;
  if (evo.order_ < chebyshev_min_order(t, k_max))
    throw TruncationBoundError(
        "chebyshev order " + std::to_string(evo.order_) +
        " below the minimum " +
        std::to_string(chebyshev_min_order(t, k_max)));
  return evo;
}

const SpectralDecomposition& QlpEvolution::spectral() const {
  if (!spectral_) throw Error("evolution has no spectral backend");
  return *spectral_;
}

std::pair<double, double> QlpEvolution::cos_sin_entry(NodeId i,
                                                      NodeId j) const {
  if (spectral_) {
    const auto& v = spectral_->eigenvectors;
    const Eigen::ArrayXd prod =
        v.row(i).transpose().array() * v.row(j).transpose().array();
    return {(prod * cos_eigs_.array()).sum(),
            (prod * sin_eigs_.array()).sum()};
  }
  Eigen::VectorXd cos_col, sin_col;
  cos_sin_column(j, cos_col, sin_col);
  return {cos_col(i), sin_col(i)};
}

void QlpEvolution::cos_sin_column(NodeId j, Eigen::VectorXd& cos_col,
                                  Eigen::VectorXd& sin_col) const {
  if (spectral_) {
    const auto& v = spectral_->eigenvectors;
    const Eigen::VectorXd row = v.row(j).transpose();
    cos_col.noalias() = v * row.cwiseProduct(cos_eigs_);
    sin_col.noalias() = v * row.cwiseProduct(sin_eigs_);
    return;
  }
  auto [c, s] = chebyshev_entries(*graph_, t_, j, order_);
  cos_col = std::move(c);
  sin_col = std::move(s);
}

std::pair<double, double> QlpEvolution::squared_entry_totals() const {
  if (spectral_) {
    // Frobenius norms are basis free: ||f(At)||_F^2 = sum_k f(lambda_k t)^2.
    return {cos_eigs_.squaredNorm(), sin_eigs_.squaredNorm()};
  }
  double cos_total = 0.0, sin_total = 0.0;
  Eigen::VectorXd cos_col, sin_col;
  for (NodeId j = 0; j < node_count_; ++j) {
    cos_sin_column(j, cos_col, sin_col);
    cos_total += cos_col.squaredNorm();
    sin_total += sin_col.squaredNorm();
  }
  return {cos_total, sin_total};
}

std::pair<double, double> QlpEvolution::squared_entry_sums(
    std::span<const std::pair<NodeId, NodeId>> pairs) const {
  double cos_sum = 0.0, sin_sum = 0.0;
  if (spectral_) {
    const auto& v = spectral_->eigenvectors;
    NodeId cached_i = -1;
    Eigen::VectorXd cos_profile, sin_profile;
    for (const auto& [i, j] : pairs) {
      if (i != cached_i) {
        const Eigen::VectorXd row = v.row(i).transpose();
        cos_profile = row.cwiseProduct(cos_eigs_);
        sin_profile = row.cwiseProduct(sin_eigs_);
        cached_i = i;
      }
      const Eigen::VectorXd row_j = v.row(j).transpose();
      const double c = cos_profile.dot(row_j);
      const double s = sin_profile.dot(row_j);
      cos_sum += c * c;
      sin_sum += s * s;
    }
    return {cos_sum, sin_sum};
  }
  NodeId cached_i = -1;
  Eigen::VectorXd cos_col, sin_col;
  for (const auto& [i, j] : pairs) {
    if (i != cached_i) {
      cos_sin_column(i, cos_col, sin_col);  // symmetric matrices
      cached_i = i;
    }
    cos_sum += cos_col(j) * cos_col(j);
    sin_sum += sin_col(j) * sin_col(j);
  }
  return {cos_sum, sin_sum};
}

QlpDistribution qlp_distribution(const QlpEvolution& evo, NodeId dense_cap) {
  const NodeId n = evo.node_count();
  if (n > dense_cap)
    throw SizeCapError("dense distribution tables capped at N = " +
                       std::to_string(dense_cap));
  QlpDistribution dist;
  dist.even.resize(n, n);
  dist.odd.resize(n, n);
  Eigen::VectorXd cos_col, sin_col;
  for (NodeId j = 0; j < n; ++j) {
    evo.cos_sin_column(j, cos_col, sin_col);
    dist.even.col(j) = cos_col.array().square() / n;
    dist.odd.col(j) = sin_col.array().square() / n;
  }
  return dist;
}

QlpSampler::QlpSampler(const QlpEvolution& evo, NodeId dense_cap)
    : QlpSampler(qlp_distribution(evo, dense_cap)) {}

QlpSampler::QlpSampler(const QlpDistribution& dist)
    : node_count_(static_cast<NodeId>(dist.even.rows())) {
  const std::size_t n = static_cast<std::size_t>(node_count_);
  std::vector<double> weights;
  weights.reserve(2 * n * n);
  // row-major even block then odd block
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      weights.push_back(dist.even(static_cast<NodeId>(i),
                                  static_cast<NodeId>(j)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      weights.push_back(dist.odd(static_cast<NodeId>(i),
                                 static_cast<NodeId>(j)));
  table_ = build_cumulative(weights);
}

QlpSampler::Outcome QlpSampler::sample(RandomStream& rng) const {
  const std::size_t n = static_cast<std::size_t>(node_count_);
  const std::size_t flat = sample_index(table_, rng);
  const bool odd = flat >= n * n;
  const std::size_t cell = odd ? flat - n * n : flat;
  return {odd ? Method::kQlpOdd : Method::kQlpEven,
          static_cast<NodeId>(cell / n), static_cast<NodeId>(cell % n)};
}

UsefulSampleRun qlp_sample_useful(const Graph& g, const QlpSampler& sampler,
                                  RandomStream& rng, std::int64_t n_s,
                                  std::uint64_t attempt_cap) {
  if (n_s < 1) throw ParameterError("n_s must be >= 1");
  if (attempt_cap == 0) attempt_cap = default_attempt_cap(n_s);
  UsefulSampleRun run;
  run.samples.reserve(static_cast<std::size_t>(n_s));
  std::uint64_t attempts_this_sample = 0;
  while (std::ssize(run.samples) < n_s) {
    if (run.raw_draws >= attempt_cap)
      throw SupportExhaustedError(run.raw_draws, std::ssize(run.samples), n_s);
    ++run.raw_draws;
    ++attempts_this_sample;
    const auto outcome = sampler.sample(rng);
    if (outcome.i == outcome.j || g.has_edge(outcome.i, outcome.j)) continue;
    run.samples.push_back(
        {outcome.parity, outcome.i, outcome.j, attempts_this_sample});
    attempts_this_sample = 0;
  }
  return run;
}

}  // namespace qlp
