#pragma once
// Five-asset DAX reference instance (annualized returns and covariances,
// daily data 2016-2020). Used by the landscape and noise studies.

#include "qaoa/market_data.hpp"

namespace qaoa {

inline MarketStats reference_dax5() {
  MarketStats s;
  s.asset_ids = {"LIN.DE", "BAYN.DE", "VNA.DE", "MTX.DE", "MUV2.DE"};
  s.mu.resize(5);
  s.mu << 0.26801758, -0.11724968, 0.2109537, 0.21523688, 0.1128935;
  s.sigma.resize(5, 5);
  s.sigma << 0.21117209, 0.03030933, 0.00941277, 0.02972179, 0.02922818, //
      0.03030933, 0.08796365, 0.01833403, 0.0465302, 0.04069187,         //
      0.00941277, 0.01833403, 0.04971719, 0.02303918, 0.02051608,        //
      0.02972179, 0.0465302, 0.02303918, 0.13717214, 0.05638483,         //
      0.02922818, 0.04069187, 0.02051608, 0.05638483, 0.06765634;
  return s;
}

inline constexpr int kReferenceBudget = 2;
inline constexpr double kReferenceRisk = 1.0 / 3.0;

} // namespace qaoa
