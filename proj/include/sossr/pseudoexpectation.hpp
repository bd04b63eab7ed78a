#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "sossr/monomial.hpp"
#include "sossr/polynomial.hpp"

namespace sossr {

inline constexpr double kDefaultPsdTolerance = 1e-7;
inline constexpr double kConditioningFloor = 1e-8;

/// A point assignment to the indeterminates: selector values (one per sample)
/// and a symmetric matrix of projection-candidate entries.
struct Atom {
  Eigen::VectorXd selectors;
  Eigen::MatrixXd projection;
  Atom(Eigen::VectorXd w, Eigen::MatrixXd pi)
      : selectors(std::move(w)), projection(std::move(pi)) {}
};

/// Moment-matrix representation of a pseudoexpectation functional over the
/// monomial basis.  Immutable after construction; all operations are pure.
///
/// Entries of the moment matrix are pE[row * col].  For conditioned
/// functionals not every cell is derivable; such cells are flagged undefined
/// and reads through them raise DegreeTooHigh.
class Pseudoexpectation {
 public:
  Pseudoexpectation(std::shared_ptr<const MonomialBasis> basis, Eigen::MatrixXd moments,
                    double tolerance = kDefaultPsdTolerance);

  /// Embeds a finite mixture of atoms as an exact moment matrix.  Weights
  /// default to uniform and are normalized to sum to one.
  static Pseudoexpectation fromAtoms(std::shared_ptr<const MonomialBasis> basis,
                                     const std::vector<Atom>& atoms,
                                     std::vector<double> weights = {});

  const MonomialBasis& basis() const { return *basis_; }
  std::shared_ptr<const MonomialBasis> basisPtr() const { return basis_; }
  const Eigen::MatrixXd& moments() const { return moments_; }
  double tolerance() const { return tolerance_; }
  /// Largest monomial degree this functional can evaluate.
  int functionalDegree() const { return functional_degree_; }

  bool isDefined(int row, int col) const;

  /// pE of a single monomial (reduced internally).  Throws DegreeTooHigh when
  /// it cannot be located in the matrix.
  double momentOf(const Monomial& m) const;

  struct Validation {
    bool ok = false;
    double normalization_error = 0.0;
    double min_eigenvalue = 0.0;
    double max_consistency_error = 0.0;
    double max_boolean_error = 0.0;
  };
  /// Checks normalization, PSD-ness within tolerance, cell consistency and
  /// the boolean rows.  PSD/consistency are skipped for degree < 2 views.
  Validation validate() const;

  /// Self-describing pair: JSON descriptor (basis listing) + packed binary
  /// lower triangle of the moment matrix, row-major doubles.
  void save(const std::string& jsonPath, const std::string& binPath) const;
  static Pseudoexpectation load(const std::string& jsonPath, const std::string& binPath);

  friend Pseudoexpectation condition(const Pseudoexpectation&, int, int, double);

 private:
  std::shared_ptr<const MonomialBasis> basis_;
  Eigen::MatrixXd moments_;
  double tolerance_;
  int functional_degree_;
  // Empty when every cell is defined.
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> defined_;
};

/// pE[p], linear in the terms of p.
double evaluate(const Pseudoexpectation& pe, const PolynomialExpr& p);

/// Conditions on selector i taking `value` (0 or 1): moments become
/// pE[m w_i]/pE[w_i] (resp. with 1 - w_i).  The result has functional degree
/// one lower; its selector-i first moment equals `value` exactly.
Pseudoexpectation condition(const Pseudoexpectation& pe, int sampleIndex, int value,
                            double floor = kConditioningFloor);

/// pE[v v^T] - pE[v] pE[v]^T over the listed degree-1 variables.
Eigen::MatrixXd pseudoCovariance(const Pseudoexpectation& pe, const std::vector<VarId>& vars);

}  // namespace sossr
