#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sossr {

using VarId = std::int32_t;

/// A monomial over the relaxation indeterminates, stored as a sorted multiset
/// of variable ids.  Construction does not reduce; reduction rules (selector
/// idempotence) live on MonomialBasis, which knows which ids are selectors.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<VarId> vars);
  static Monomial one() { return Monomial(); }
  static Monomial variable(VarId v) { return Monomial({v}); }

  const std::vector<VarId>& vars() const { return vars_; }
  int degree() const { return static_cast<int>(vars_.size()); }
  bool isOne() const { return vars_.empty(); }

  bool operator==(const Monomial& o) const { return vars_ == o.vars_; }

  struct Hash {
    std::size_t operator()(const Monomial& m) const {
      std::size_t h = 1469598103934665603ull;
      for (VarId v : m.vars_) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

 private:
  std::vector<VarId> vars_;
};

/// Indexed monomial basis for the moment matrix of a relaxation over
///   - selector variables w_1..w_N (boolean: w^2 reduces to w), and
///   - entries of a symmetric d x d projection candidate, pi_ab with a <= b.
///
/// The basis holds every reduced monomial of degree <= ceil(degree / 2); the
/// moment matrix indexed by this basis represents moments up to `degree`.
/// Degrees >= 3 are supported but experimental: the basis grows as
/// O((N + d^2)^(degree/2)).
class MonomialBasis {
 public:
  MonomialBasis(int numSamples, int ambientDim, int degree = 2);

  int numSamples() const { return num_samples_; }
  int ambientDim() const { return ambient_dim_; }
  int degree() const { return degree_; }
  int basisDegree() const { return (degree_ + 1) / 2; }

  int numVars() const { return num_samples_ + numProjectionVars(); }
  int numProjectionVars() const { return ambient_dim_ * (ambient_dim_ + 1) / 2; }

  VarId selectorVar(int i) const;
  /// Unordered pair (a, b), zero-based; pi_ab and pi_ba share one id.
  VarId projectionVar(int a, int b) const;
  bool isSelector(VarId v) const { return v >= 0 && v < num_samples_; }
  bool isProjection(VarId v) const { return v >= num_samples_ && v < numVars(); }
  int selectorIndex(VarId v) const;
  std::pair<int, int> projectionCoords(VarId v) const;  // (a, b) with a <= b

  /// Number of basis rows.
  int size() const { return static_cast<int>(rows_.size()); }
  const Monomial& monomial(int row) const { return rows_[row]; }
  std::optional<int> indexOf(const Monomial& reduced) const;

  /// Sorts and applies selector idempotence (w^2 -> w).
  Monomial reduce(const Monomial& m) const;
  /// Reduced product of two monomials.
  Monomial product(const Monomial& a, const Monomial& b) const;

  /// A (row, col) pair of basis rows whose product reduces to `reduced`, or
  /// nullopt when the monomial exceeds the matrix's reach.
  std::optional<std::pair<int, int>> locate(const Monomial& reduced) const;

  /// Human-readable name: "1", "w3", "p_1_2" (1-based), products joined by '*'.
  std::string name(const Monomial& m) const;
  std::string rowName(int row) const { return name(rows_[row]); }
  /// Parses a name produced by name(); throws ConfigInvalid on garbage.
  Monomial parse(const std::string& text) const;

  /// Groups of distinct moment-matrix cells (r <= c) whose products reduce to
  /// the same monomial.  Quadratic in basis size; meant for compile time.
  std::vector<std::vector<std::pair<int, int>>> duplicateCellGroups() const;

  bool operator==(const MonomialBasis& o) const {
    return num_samples_ == o.num_samples_ && ambient_dim_ == o.ambient_dim_ &&
           degree_ == o.degree_;
  }

 private:
  int num_samples_;
  int ambient_dim_;
  int degree_;
  std::vector<Monomial> rows_;
  std::unordered_map<Monomial, int, Monomial::Hash> index_;
};

}  // namespace sossr
