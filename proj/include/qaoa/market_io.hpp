#pragma once
// CSV ingest/export for price histories and precomputed market statistics.
//
// Price file:   date,<asset_id>,<asset_id>,...   one row per trading day.
// Covariance:   ,<id_1>,...,<id_n>  then  <id_i>,<sigma_i1>,...,<sigma_in>
// Returns:      <id_i>,<mu_i>  with an optional header row.

#include "qaoa/detail/text.hpp"
#include "qaoa/market_data.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaoa {

struct PriceTable {
  std::vector<std::string> dates;
  std::vector<PriceSeries> series;
  std::size_t rejected_rows = 0; ///< rows dropped because a price was missing
};

/// Rows with a missing or unparsable price in any column are dropped; there
/// is no imputation.
inline PriceTable read_price_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("price CSV: empty input");
  const auto header = detail::split(line);
  if (header.size() < 2) throw std::invalid_argument("price CSV: header needs date and at least one asset");

  PriceTable table;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].empty()) throw std::invalid_argument("price CSV: empty asset id in header");
    table.series.push_back({std::string(header[c]), {}});
  }

  std::vector<double> row(table.series.size());
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line);
    bool complete = fields.size() == header.size();
    for (std::size_t c = 1; complete && c < fields.size(); ++c) {
      const auto v = detail::parse_double(fields[c]);
      if (!v) complete = false;
      else row[c - 1] = *v;
    }
    if (!complete) {
      ++table.rejected_rows;
      continue;
    }
    table.dates.emplace_back(fields[0]);
    for (std::size_t a = 0; a < row.size(); ++a) table.series[a].prices.push_back(row[a]);
  }
  return table;
}

inline PriceTable read_price_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open price file: " + path);
  return read_price_csv(in);
}

inline MarketStats read_stats_csv(std::istream &covariance_in, std::istream &returns_in) {
  std::string line;
  if (!std::getline(covariance_in, line)) throw std::invalid_argument("covariance CSV: empty input");
  const auto header = detail::split(line);
  MarketStats stats;
  for (std::size_t c = 1; c < header.size(); ++c) stats.asset_ids.emplace_back(header[c]);
  const auto n = static_cast<Eigen::Index>(stats.asset_ids.size());
  if (n == 0) throw std::invalid_argument("covariance CSV: no assets in header");

  std::map<std::string, Eigen::Index> position;
  for (Eigen::Index i = 0; i < n; ++i) position[stats.asset_ids[static_cast<std::size_t>(i)]] = i;
  if (static_cast<Eigen::Index>(position.size()) != n)
    throw std::invalid_argument("covariance CSV: duplicate asset id");

  stats.sigma = Eigen::MatrixXd::Constant(n, n, std::nan(""));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  while (std::getline(covariance_in, line)) {
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line);
    if (static_cast<Eigen::Index>(fields.size()) != n + 1)
      throw std::invalid_argument("covariance CSV: row has wrong number of fields");
    const auto it = position.find(std::string(fields[0]));
    if (it == position.end()) throw std::invalid_argument("covariance CSV: unknown row id " + std::string(fields[0]));
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto v = detail::parse_double(fields[static_cast<std::size_t>(j + 1)]);
      if (!v) throw std::invalid_argument("covariance CSV: malformed number");
      stats.sigma(it->second, j) = *v;
    }
    seen[static_cast<std::size_t>(it->second)] = true;
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("covariance CSV: missing row");

  stats.mu = Eigen::VectorXd::Constant(n, std::nan(""));
  std::vector<bool> have(static_cast<std::size_t>(n), false);
  bool first = true;
  while (std::getline(returns_in, line)) {
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line);
    if (fields.size() != 2) throw std::invalid_argument("returns CSV: expected two columns");
    const auto v = detail::parse_double(fields[1]);
    if (!v) {
      if (first) { // header row
        first = false;
        continue;
      }
      throw std::invalid_argument("returns CSV: malformed number");
    }
    first = false;
    const auto it = position.find(std::string(fields[0]));
    if (it == position.end()) continue; // returns file may list more assets
    stats.mu(it->second) = *v;
    have[static_cast<std::size_t>(it->second)] = true;
  }
  for (std::size_t i = 0; i < have.size(); ++i)
    if (!have[i]) throw std::invalid_argument("returns CSV: no return for " + stats.asset_ids[i]);

  validate(stats);
  return stats;
}

inline MarketStats read_stats_csv(const std::string &covariance_path, const std::string &returns_path) {
  std::ifstream cov(covariance_path), ret(returns_path);
  if (!cov) throw std::runtime_error("cannot open covariance file: " + covariance_path);
  if (!ret) throw std::runtime_error("cannot open returns file: " + returns_path);
  return read_stats_csv(cov, ret);
}

inline void write_stats_csv(const MarketStats &stats, std::ostream &covariance_out, std::ostream &returns_out) {
  validate(stats);
  const auto n = static_cast<Eigen::Index>(stats.size());
  for (const auto &id : stats.asset_ids) covariance_out << ',' << id;
  covariance_out << '\n';
  for (Eigen::Index i = 0; i < n; ++i) {
    covariance_out << stats.asset_ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) covariance_out << ',' << detail::format_double(stats.sigma(i, j));
    covariance_out << '\n';
  }
  returns_out << "asset,return\n";
  for (Eigen::Index i = 0; i < n; ++i)
    returns_out << stats.asset_ids[static_cast<std::size_t>(i)] << ',' << detail::format_double(stats.mu(i)) << '\n';
}

inline void write_stats_csv(const MarketStats &stats, const std::string &covariance_path,
                            const std::string &returns_path) {
  std::ofstream cov(covariance_path), ret(returns_path);
  if (!cov || !ret) throw std::runtime_error("cannot write market statistics files");
  write_stats_csv(stats, cov, ret);
}

} // namespace qaoa
