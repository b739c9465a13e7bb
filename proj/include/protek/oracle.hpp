#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "protek/family.hpp"
#include "protek/rational.hpp"

namespace protek {

/// Rooted ordered tree stored by vertex in preorder; vertex 0 is the root.
class OrderedTree {
 public:
  /// Builds the tree whose preorder outdegree sequence is the given
  /// Lukasiewicz word. Throws Error(InvalidArgument) if the word is not one.
  static OrderedTree from_degrees(std::vector<int> degrees);

  std::size_t size() const noexcept { return degrees_.size(); }
  int outdegree(std::size_t v) const { return degrees_[v]; }
  const std::vector<std::size_t>& children(std::size_t v) const { return children_[v]; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }

  /// Protection number of every vertex: 0 for leaves, otherwise one more
  /// than the smallest protection number among the children.
  std::vector<int> protection_numbers() const;
  int height() const;

 private:
  std::vector<int> degrees_;
  std::vector<std::vector<std::size_t>> children_;
};

int max_protection(const OrderedTree& tree);

inline constexpr std::size_t kEnumerationCap = 12;

/// Calls visit once for every ordered tree on n vertices whose outdegrees all
/// lie in allowed_degrees, in lexicographic order of Lukasiewicz words.
/// Throws Error(CapExceeded) if n > cap.
void enumerate_trees(std::size_t n, const std::set<int>& allowed_degrees,
                     const std::function<void(const OrderedTree&)>& visit, std::size_t cap = kEnumerationCap);

/// Maximum protection number -> total weight of n-vertex trees with that maximum.
struct OracleDistribution {
  std::size_t n = 0;
  std::map<int, Rational> weight_by_max;

  Rational total() const;
  /// Total weight of trees whose maximum protection number is at most h.
  Rational cumulative(int h) const;
};

OracleDistribution oracle_distribution(const WeightFamily& family, std::size_t n,
                                       std::size_t cap = kEnumerationCap);

struct OracleCheckRow {
  std::size_t n = 0;
  int h = 0;
  Rational oracle;
  Rational series;
  bool pass = false;
};

struct OracleReport {
  std::string family;
  std::size_t nmax = 0;
  std::vector<OracleCheckRow> rows;

  bool all_pass() const;
  std::optional<OracleCheckRow> first_mismatch() const;
};

/// Compares cumulative oracle weights with [x^n] Y_{h,0} for 1 <= n <= nmax
/// and 0 <= h <= max(n-1, 0).
OracleReport oracle_check(const WeightFamily& family, std::size_t nmax, std::size_t cap = kEnumerationCap);

}  // namespace protek
