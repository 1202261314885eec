#pragma once
/**
 * @file market_data.hpp
 * @brief Daily price changes, annualized returns and annualized covariances.
 *
 * Pipeline from m+1 daily closing prices per asset to the return vector and
 * covariance matrix consumed by the portfolio cost function:
 *
 *     r_k   = (p_k - p_{k-1}) / p_k                      (k = 1..m)
 *     mu    = [ prod_k (1 + r_k) ]^(252/m)
 *     sigma = (252/m) sum_k (r_a,k - mean_a)(r_b,k - mean_b)
 *
 * The change denominator is the *current* price by default; the conventional
 * previous-price denominator is available through MarketOptions. Covariances
 * use population (1/m) normalization.
 *
 * All functions are pure and may be called concurrently.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaoa {

inline constexpr double kTradingDaysPerYear = 252.0;

struct PriceSeries {
  std::string asset_id;
  std::vector<double> prices; ///< m+1 strictly positive daily prices
};

enum class ChangeDenominator {
  current,  ///< (p_k - p_{k-1}) / p_k
  previous, ///< (p_k - p_{k-1}) / p_{k-1}
};

enum class ReturnForm {
  gross, ///< mu = prod(1 + r)^(252/m), equals 1 for flat prices
  net,   ///< gross - 1
};

struct MarketOptions {
  ChangeDenominator denominator = ChangeDenominator::current;
  ReturnForm return_form = ReturnForm::gross;
};

struct MarketStats {
  std::vector<std::string> asset_ids;
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;

  std::size_t size() const { return asset_ids.size(); }

  /// Restriction to the given asset positions (in the given order).
  MarketStats subset(std::span<const std::size_t> indices) const {
    MarketStats out;
    const auto k = static_cast<Eigen::Index>(indices.size());
    out.mu.resize(k);
    out.sigma.resize(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      const auto ia = static_cast<Eigen::Index>(indices[static_cast<std::size_t>(a)]);
      if (ia >= static_cast<Eigen::Index>(size()))
        throw std::out_of_range("MarketStats::subset: index out of range");
      out.asset_ids.push_back(asset_ids[static_cast<std::size_t>(ia)]);
      out.mu(a) = mu(ia);
      for (Eigen::Index b = 0; b < k; ++b)
        out.sigma(a, b) = sigma(ia, static_cast<Eigen::Index>(indices[static_cast<std::size_t>(b)]));
    }
    return out;
  }
};

/// Throws std::invalid_argument unless dimensions agree and sigma is symmetric
/// with a non-negative diagonal.
inline void validate(const MarketStats &stats) {
  const auto n = static_cast<Eigen::Index>(stats.asset_ids.size());
  if (stats.mu.size() != n || stats.sigma.rows() != n || stats.sigma.cols() != n)
    throw std::invalid_argument("MarketStats: dimensions do not match asset list");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(stats.sigma(i, i) >= 0.0))
      throw std::invalid_argument("MarketStats: negative variance for " +
                                  stats.asset_ids[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = stats.sigma(i, j), b = stats.sigma(j, i);
      if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}))
        throw std::invalid_argument("MarketStats: covariance matrix is not symmetric");
    }
  }
}

inline std::vector<double> daily_changes(const PriceSeries &series,
                                         ChangeDenominator denominator = ChangeDenominator::current) {
  const auto &p = series.prices;
  if (p.size() < 2)
    throw std::invalid_argument("daily_changes: '" + series.asset_id + "' needs at least 2 prices");
  for (double price : p)
    if (!(price > 0.0))
      throw std::invalid_argument("daily_changes: non-positive price in '" + series.asset_id + "'");

  std::vector<double> changes(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) {
    const double base = denominator == ChangeDenominator::current ? p[k] : p[k - 1];
    changes[k - 1] = (p[k] - p[k - 1]) / base;
  }
  return changes;
}

inline double annualized_return(std::span<const double> changes, ReturnForm form = ReturnForm::gross) {
  if (changes.empty())
    throw std::invalid_argument("annualized_return: no daily changes");
  // Summing logs keeps long products in range and makes the result
  // independent of the order of the changes up to rounding.
  double log_growth = 0.0;
  for (double r : changes) {
    if (!(1.0 + r > 0.0))
      throw std::domain_error("annualized_return: daily change <= -1 (total loss)");
    log_growth += std::log1p(r);
  }
  const double gross = std::exp(log_growth * kTradingDaysPerYear / static_cast<double>(changes.size()));
  return form == ReturnForm::gross ? gross : gross - 1.0;
}

inline double annualized_covariance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("annualized_covariance: series length mismatch");
  if (a.empty())
    throw std::invalid_argument("annualized_covariance: empty series");
  const double m = static_cast<double>(a.size());
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    mean_a += a[k];
    mean_b += b[k];
  }
  mean_a /= m;
  mean_b /= m;
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - mean_a) * (b[k] - mean_b);
  return kTradingDaysPerYear / m * acc;
}

inline MarketStats build_market_stats(std::span<const PriceSeries> series_list,
                                      const MarketOptions &options = {}) {
  if (series_list.empty())
    throw std::invalid_argument("build_market_stats: no price series");
  const std::size_t length = series_list.front().prices.size();
  for (const auto &s : series_list)
    if (s.prices.size() != length)
      throw std::invalid_argument("build_market_stats: series '" + s.asset_id +
                                  "' has a different length");

  std::vector<std::vector<double>> changes;
  changes.reserve(series_list.size());
  for (const auto &s : series_list) changes.push_back(daily_changes(s, options.denominator));

  const auto n = static_cast<Eigen::Index>(series_list.size());
  MarketStats stats;
  stats.mu.resize(n);
  stats.sigma.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto si = static_cast<std::size_t>(i);
    stats.asset_ids.push_back(series_list[si].asset_id);
    stats.mu(i) = annualized_return(changes[si], options.return_form);
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double c = annualized_covariance(changes[si], changes[static_cast<std::size_t>(j)]);
      stats.sigma(i, j) = c;
      stats.sigma(j, i) = c;
    }
  }
  return stats;
}

} // namespace qaoa
