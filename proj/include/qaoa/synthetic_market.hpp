#pragma once
// Seeded synthetic price histories for ensemble studies when no market data
// files are supplied. A three-level factor model (market, sector, asset)
// produces heterogeneous correlations and returns of realistic magnitude.

#include "qaoa/market_data.hpp"
#include "qaoa/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace qaoa {

struct SyntheticMarketConfig {
  int assets = 30;
  int trading_days = 1260; ///< m; each series holds m + 1 prices
  int sectors = 4;
  std::uint64_t seed = 2021;
};

inline std::vector<PriceSeries> synthetic_price_pool(const SyntheticMarketConfig &config = {}) {
  if (config.assets < 1 || config.trading_days < 1 || config.sectors < 1)
    throw std::invalid_argument("synthetic_price_pool: sizes must be positive");
  CounterRng rng(config.seed);
  const double sqrt_days = std::sqrt(kTradingDaysPerYear);

  struct Loading {
    int sector;
    double drift, beta, sector_beta, idio;
  };
  std::vector<Loading> loadings;
  for (int a = 0; a < config.assets; ++a) {
    Loading l;
    l.sector = a % config.sectors;
    l.drift = (-0.10 + 0.40 * rng.uniform()) / kTradingDaysPerYear;
    l.beta = 0.5 + 1.0 * rng.uniform();
    l.sector_beta = 1.5 * rng.uniform();
    l.idio = (0.12 + 0.25 * rng.uniform()) / sqrt_days;
    loadings.push_back(l);
  }
  const double market_vol = 0.17 / sqrt_days;
  const double sector_vol = 0.12 / sqrt_days;

  std::vector<PriceSeries> pool(static_cast<std::size_t>(config.assets));
  for (int a = 0; a < config.assets; ++a) {
    pool[static_cast<std::size_t>(a)].asset_id = "SYN" + std::to_string(a + 1);
    pool[static_cast<std::size_t>(a)].prices.reserve(static_cast<std::size_t>(config.trading_days) + 1);
    pool[static_cast<std::size_t>(a)].prices.push_back(20.0 + 180.0 * rng.uniform());
  }
  std::vector<double> sector_move(static_cast<std::size_t>(config.sectors));
  for (int day = 0; day < config.trading_days; ++day) {
    const double market = market_vol * rng.normal();
    for (double &s : sector_move) s = sector_vol * rng.normal();
    for (int a = 0; a < config.assets; ++a) {
      const auto &l = loadings[static_cast<std::size_t>(a)];
      double r = l.drift + l.beta * market + l.sector_beta * sector_move[static_cast<std::size_t>(l.sector)] +
                 l.idio * rng.normal();
      r = std::max(r, -0.5);
      auto &prices = pool[static_cast<std::size_t>(a)].prices;
      prices.push_back(prices.back() * (1.0 + r));
    }
  }
  return pool;
}

/// Pool statistics through the regular pipeline. Net returns by default so
/// that magnitudes look like ordinary annualized equity returns.
inline MarketStats synthetic_market_pool(const SyntheticMarketConfig &config = {},
                                         MarketOptions options = {ChangeDenominator::current, ReturnForm::net}) {
  const auto pool = synthetic_price_pool(config);
  return build_market_stats(pool, options);
}

} // namespace qaoa
