#include "protek/oracle.hpp"

#include <algorithm>
#include <limits>

#include "protek/counting.hpp"
#include "protek/error.hpp"

namespace protek {

OrderedTree OrderedTree::from_degrees(std::vector<int> degrees) {
  if (degrees.empty()) throw Error(ErrorKind::InvalidArgument, "empty degree sequence");
  OrderedTree tree;
  tree.children_.resize(degrees.size());
  // stack of vertices that still have unfilled child slots
  std::vector<std::pair<std::size_t, int>> open;
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    if (degrees[v] < 0) throw Error(ErrorKind::InvalidArgument, "negative outdegree");
    if (v > 0) {
      if (open.empty()) throw Error(ErrorKind::InvalidArgument, "not a Lukasiewicz word");
      auto& [parent, missing] = open.back();
      tree.children_[parent].push_back(v);
      if (--missing == 0) open.pop_back();
    }
    if (degrees[v] > 0) open.emplace_back(v, degrees[v]);
  }
  if (!open.empty()) throw Error(ErrorKind::InvalidArgument, "not a Lukasiewicz word");
  tree.degrees_ = std::move(degrees);
  return tree;
}

std::vector<int> OrderedTree::protection_numbers() const {
  std::vector<int> p(size(), 0);
  for (std::size_t v = size(); v-- > 0;) {
    if (children_[v].empty()) continue;
    int lowest = std::numeric_limits<int>::max();
    for (auto c : children_[v]) lowest = std::min(lowest, p[c]);
    p[v] = lowest + 1;
  }
  return p;
}

int OrderedTree::height() const {
  std::vector<int> h(size(), 0);
  for (std::size_t v = size(); v-- > 0;)
    for (auto c : children_[v]) h[v] = std::max(h[v], h[c] + 1);
  return h[0];
}

int max_protection(const OrderedTree& tree) {
  auto p = tree.protection_numbers();
  return *std::max_element(p.begin(), p.end());
}

namespace {

void extend_word(std::vector<int>& word, std::size_t n, std::size_t open, const std::vector<int>& degrees,
                 const std::function<void(const OrderedTree&)>& visit) {
  const std::size_t placed = word.size();
  if (placed == n) {
    if (open == 0) visit(OrderedTree::from_degrees(word));
    return;
  }
  if (open == 0) return;
  const std::size_t left_after = n - placed - 1;
  for (int d : degrees) {
    const std::size_t next_open = open - 1 + static_cast<std::size_t>(d);
    if (next_open > left_after) break;
    if (next_open == 0 && left_after > 0) continue;
    word.push_back(d);
    extend_word(word, n, next_open, degrees, visit);
    word.pop_back();
  }
}

}  // namespace

void enumerate_trees(std::size_t n, const std::set<int>& allowed_degrees,
                     const std::function<void(const OrderedTree&)>& visit, std::size_t cap) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "tree size must be at least 1");
  if (n > cap)
    throw Error(ErrorKind::CapExceeded,
                "n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(cap));
  std::vector<int> degrees;
  for (int d : allowed_degrees)
    if (d >= 0 && static_cast<std::size_t>(d) < n) degrees.push_back(d);
  std::vector<int> word;
  word.reserve(n);
  extend_word(word, n, 1, degrees, visit);
}

Rational OracleDistribution::total() const {
  Rational s = 0;
  for (const auto& [m, w] : weight_by_max) s += w;
  return s;
}

Rational OracleDistribution::cumulative(int h) const {
  Rational s = 0;
  for (const auto& [m, w] : weight_by_max)
    if (m <= h) s += w;
  return s;
}

OracleDistribution oracle_distribution(const WeightFamily& family, std::size_t n, std::size_t cap) {
  if (n > cap)
    throw Error(ErrorKind::CapExceeded,
                "n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(cap));
  const auto w = family.weights(std::max<std::size_t>(n, 1));
  std::set<int> support;
  for (std::size_t j = 0; j < w.size(); ++j)
    if (w[j] != 0) support.insert(static_cast<int>(j));

  OracleDistribution dist;
  dist.n = n;
  enumerate_trees(
      n, support,
      [&](const OrderedTree& t) {
        Rational weight = 1;
        for (int d : t.degrees()) weight *= w[static_cast<std::size_t>(d)];
        dist.weight_by_max[max_protection(t)] += weight;
      },
      cap);
  return dist;
}

bool OracleReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const OracleCheckRow& r) { return r.pass; });
}

std::optional<OracleCheckRow> OracleReport::first_mismatch() const {
  for (const auto& r : rows)
    if (!r.pass) return r;
  return std::nullopt;
}

OracleReport oracle_check(const WeightFamily& family, std::size_t nmax, std::size_t cap) {
  if (nmax < 1) throw Error(ErrorKind::InvalidArgument, "nmax must be at least 1");
  if (nmax > cap)
    throw Error(ErrorKind::CapExceeded,
                "nmax = " + std::to_string(nmax) + " exceeds the enumeration cap " + std::to_string(cap));
  OracleReport report;
  report.family = family.name();
  report.nmax = nmax;

  std::vector<OracleDistribution> dists;
  for (std::size_t n = 1; n <= nmax; ++n) dists.push_back(oracle_distribution(family, n, cap));

  const int hmax = static_cast<int>(nmax) - 1;
  for (int h = 0; h <= std::max(hmax, 0); ++h) {
    const auto series = bounded_protection_series(family, h, nmax);
    for (std::size_t n = static_cast<std::size_t>(h) + 1; n <= nmax; ++n) {
      OracleCheckRow row;
      row.n = n;
      row.h = h;
      row.oracle = dists[n - 1].cumulative(h);
      row.series = series[n];
      row.pass = row.oracle == row.series;
      report.rows.push_back(std::move(row));
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const OracleCheckRow& a, const OracleCheckRow& b) { return a.n < b.n; });
  return report;
}

}  // namespace protek
