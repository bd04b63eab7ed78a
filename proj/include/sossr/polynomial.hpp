#pragma once

#include <vector>

#include "sossr/monomial.hpp"

namespace sossr {

/// Sparse polynomial: a list of (coefficient, monomial) terms.  Monomials are
/// kept raw; reduction happens against a basis at evaluation or compile time.
class PolynomialExpr {
 public:
  struct Term {
    double coeff;
    Monomial mono;
  };

  PolynomialExpr() = default;

  static PolynomialExpr constant(double c) {
    PolynomialExpr p;
    if (c != 0.0) p.terms_.push_back({c, Monomial::one()});
    return p;
  }
  static PolynomialExpr variable(VarId v, double coeff = 1.0) {
    PolynomialExpr p;
    p.terms_.push_back({coeff, Monomial::variable(v)});
    return p;
  }

  PolynomialExpr& add(double coeff, Monomial m) {
    terms_.push_back({coeff, std::move(m)});
    return *this;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Largest raw monomial degree (upper bound on the reduced degree).
  int rawDegree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  PolynomialExpr operator+(const PolynomialExpr& o) const {
    PolynomialExpr p = *this;
    p.terms_.insert(p.terms_.end(), o.terms_.begin(), o.terms_.end());
    return p;
  }
  PolynomialExpr operator-(const PolynomialExpr& o) const { return *this + o * -1.0; }
  PolynomialExpr operator*(double s) const {
    PolynomialExpr p = *this;
    for (auto& t : p.terms_) t.coeff *= s;
    return p;
  }
  PolynomialExpr operator*(const PolynomialExpr& o) const {
    PolynomialExpr p;
    for (const auto& a : terms_) {
      for (const auto& b : o.terms_) {
        std::vector<VarId> v = a.mono.vars();
        v.insert(v.end(), b.mono.vars().begin(), b.mono.vars().end());
        p.terms_.push_back({a.coeff * b.coeff, Monomial(std::move(v))});
      }
    }
    return p;
  }

  /// Reduces monomials against `basis` and merges equal ones.
  PolynomialExpr normalized(const MonomialBasis& basis) const;

 private:
  std::vector<Term> terms_;
};

}  // namespace sossr
