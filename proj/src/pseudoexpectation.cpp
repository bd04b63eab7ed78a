#include "sossr/pseudoexpectation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "sossr/errors.hpp"

namespace sossr {

namespace {

double atomValue(const MonomialBasis& basis, const Monomial& m, const Atom& atom) {
  double v = 1.0;
  for (VarId id : m.vars()) {
    if (basis.isSelector(id)) {
      v *= atom.selectors[basis.selectorIndex(id)];
    } else {
      auto [a, b] = basis.projectionCoords(id);
      v *= atom.projection(a, b);
    }
  }
  return v;
}

}  // namespace

Pseudoexpectation::Pseudoexpectation(std::shared_ptr<const MonomialBasis> basis,
                                     Eigen::MatrixXd moments, double tolerance)
    : basis_(std::move(basis)),
      moments_(std::move(moments)),
      tolerance_(tolerance),
      functional_degree_(basis_->degree()) {
  if (moments_.rows() != basis_->size() || moments_.cols() != basis_->size()) {
    throw DimensionMismatch("Pseudoexpectation: moment matrix does not match basis size");
  }
  moments_ = ((moments_ + moments_.transpose()) / 2.0).eval();
}

Pseudoexpectation Pseudoexpectation::fromAtoms(std::shared_ptr<const MonomialBasis> basis,
                                               const std::vector<Atom>& atoms,
                                               std::vector<double> weights) {
  if (atoms.empty()) throw ConfigInvalid("fromAtoms: empty atom list");
  if (weights.empty()) weights.assign(atoms.size(), 1.0 / static_cast<double>(atoms.size()));
  if (weights.size() != atoms.size()) {
    throw DimensionMismatch("fromAtoms: weights/atoms length mismatch");
  }
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) throw ConfigInvalid("fromAtoms: weights must have positive mass");

  const int n = basis->size();
  Eigen::MatrixXd moments = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rowValues(n);
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    const Atom& atom = atoms[a];
    if (atom.selectors.size() != basis->numSamples() ||
        atom.projection.rows() != basis->ambientDim() ||
        atom.projection.cols() != basis->ambientDim()) {
      throw DimensionMismatch("fromAtoms: atom dimensions do not match basis");
    }
    for (int i = 0; i < n; ++i) rowValues[i] = atomValue(*basis, basis->monomial(i), atom);
    moments.noalias() += (weights[a] / total) * rowValues * rowValues.transpose();
  }
  return Pseudoexpectation(std::move(basis), std::move(moments));
}

bool Pseudoexpectation::isDefined(int row, int col) const {
  if (defined_.size() == 0) return true;
  return defined_(row, col) != 0;
}

double Pseudoexpectation::momentOf(const Monomial& m) const {
  Monomial reduced = basis_->reduce(m);
  if (reduced.degree() > functional_degree_) {
    throw DegreeTooHigh("momentOf: monomial '" + basis_->name(reduced) +
                        "' exceeds functional degree " + std::to_string(functional_degree_));
  }
  auto cell = basis_->locate(reduced);
  if (!cell) {
    throw DegreeTooHigh("momentOf: monomial '" + basis_->name(reduced) +
                        "' is not reachable in this moment matrix");
  }
  if (!isDefined(cell->first, cell->second)) {
    throw DegreeTooHigh("momentOf: monomial '" + basis_->name(reduced) +
                        "' is undefined in this conditioned view");
  }
  return moments_(cell->first, cell->second);
}

Pseudoexpectation::Validation Pseudoexpectation::validate() const {
  Validation v;
  v.normalization_error = std::abs(moments_(0, 0) - 1.0);
  if (functional_degree_ >= 2 && defined_.size() == 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(moments_, Eigen::EigenvaluesOnly);
    v.min_eigenvalue = eig.eigenvalues().minCoeff();
    for (const auto& group : basis_->duplicateCellGroups()) {
      double first = moments_(group[0].first, group[0].second);
      for (std::size_t j = 1; j < group.size(); ++j) {
        double err = std::abs(moments_(group[j].first, group[j].second) - first);
        v.max_consistency_error = std::max(v.max_consistency_error, err);
      }
    }
    for (int i = 0; i < basis_->numSamples(); ++i) {
      auto wi = basis_->indexOf(Monomial::variable(basis_->selectorVar(i)));
      if (!wi) continue;
      double err = std::abs(moments_(*wi, *wi) - moments_(0, *wi));
      v.max_boolean_error = std::max(v.max_boolean_error, err);
    }
  }
  // Degree < 2 (conditioned) views carry no PSD/consistency semantics.
  v.ok = v.normalization_error <= tolerance_ && v.min_eigenvalue >= -tolerance_ &&
         v.max_consistency_error <= tolerance_ && v.max_boolean_error <= tolerance_;
  return v;
}

double evaluate(const Pseudoexpectation& pe, const PolynomialExpr& p) {
  double total = 0.0;
  for (const auto& term : p.terms()) {
    if (term.coeff == 0.0) continue;
    if (!std::isfinite(term.coeff)) throw ConfigInvalid("evaluate: non-finite coefficient");
    total += term.coeff * pe.momentOf(term.mono);
  }
  return total;
}

PolynomialExpr PolynomialExpr::normalized(const MonomialBasis& basis) const {
  std::unordered_map<Monomial, double, Monomial::Hash> acc;
  for (const auto& t : terms_) acc[basis.reduce(t.mono)] += t.coeff;
  PolynomialExpr out;
  for (int row = 0; row < basis.size(); ++row) {
    auto it = acc.find(basis.monomial(row));
    if (it != acc.end() && it->second != 0.0) out.add(it->second, it->first);
  }
  // Monomials outside the basis listing (degree > basisDegree) keep raw order.
  for (const auto& [m, c] : acc) {
    if (c != 0.0 && !basis.indexOf(m)) out.add(c, m);
  }
  return out;
}

Pseudoexpectation condition(const Pseudoexpectation& pe, int sampleIndex, int value,
                            double floor) {
  const MonomialBasis& basis = pe.basis();
  if (sampleIndex < 0 || sampleIndex >= basis.numSamples()) {
    throw DimensionMismatch("condition: sample index out of range");
  }
  if (value != 0 && value != 1) throw ConfigInvalid("condition: value must be 0 or 1");
  if (pe.functionalDegree() < 2) {
    throw DegreeTooHigh("condition: functional degree too low to condition");
  }

  const Monomial wi = Monomial::variable(basis.selectorVar(sampleIndex));
  const double beta = pe.momentOf(wi);
  const double normalizer = (value == 1) ? beta : 1.0 - beta;
  if (normalizer < floor) {
    throw DegenerateConditioning("condition: normalizer " + std::to_string(normalizer) +
                                 " below floor for sample " + std::to_string(sampleIndex));
  }

  const int n = basis.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> defined(n, n);
  defined.setZero();

  auto tryMoment = [&](const Monomial& m, double& dst) -> bool {
    Monomial reduced = basis.reduce(m);
    auto cell = basis.locate(reduced);
    if (!cell || !pe.isDefined(cell->first, cell->second)) return false;
    dst = pe.moments()(cell->first, cell->second);
    return true;
  };

  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      Monomial m = basis.product(basis.monomial(r), basis.monomial(c));
      Monomial mw = basis.product(m, wi);
      double pm = 0.0, pmw = 0.0;
      if (!tryMoment(mw, pmw)) continue;
      double val;
      if (value == 1) {
        val = pmw / normalizer;
      } else {
        if (!tryMoment(m, pm)) continue;
        val = (pm - pmw) / normalizer;
      }
      out(r, c) = out(c, r) = val;
      defined(r, c) = defined(c, r) = 1;
    }
  }

  // Exactness of the conditioned first moment: cells whose monomial reduces to
  // w_i are pinned to `value` (they are beta/beta or (beta-beta)/(1-beta)
  // up to roundoff and cross-cell inconsistency in the source).
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      if (!defined(r, c)) continue;
      if (basis.product(basis.monomial(r), basis.monomial(c)) == wi) {
        out(r, c) = out(c, r) = static_cast<double>(value);
      }
    }
  }

  Pseudoexpectation result(pe.basisPtr(), std::move(out), pe.tolerance());
  result.functional_degree_ = pe.functionalDegree() - 1;
  result.defined_ = std::move(defined);
  return result;
}

Eigen::MatrixXd pseudoCovariance(const Pseudoexpectation& pe, const std::vector<VarId>& vars) {
  if (pe.functionalDegree() < 2) {
    throw DegreeTooHigh("pseudoCovariance: needs a degree >= 2 functional");
  }
  const int m = static_cast<int>(vars.size());
  Eigen::VectorXd mean(m);
  Eigen::MatrixXd second(m, m);
  for (int a = 0; a < m; ++a) {
    mean[a] = pe.momentOf(Monomial::variable(vars[a]));
    for (int b = a; b < m; ++b) {
      double v = pe.momentOf(Monomial({vars[a], vars[b]}));
      second(a, b) = second(b, a) = v;
    }
  }
  return second - mean * mean.transpose();
}

void Pseudoexpectation::save(const std::string& jsonPath, const std::string& binPath) const {
  nlohmann::ordered_json j;
  j["schema"] = "sossr-moments-v1";
  j["num_samples"] = basis_->numSamples();
  j["ambient_dim"] = basis_->ambientDim();
  j["degree"] = basis_->degree();
  j["functional_degree"] = functional_degree_;
  j["tolerance"] = tolerance_;
  j["size"] = basis_->size();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < basis_->size(); ++i) rows.push_back(basis_->rowName(i));
  j["basis"] = std::move(rows);
  j["binary"] = binPath;

  std::ofstream jf(jsonPath);
  if (!jf) throw IoError("cannot open for write: " + jsonPath);
  jf << j.dump(2) << "\n";

  std::ofstream bf(binPath, std::ios::binary);
  if (!bf) throw IoError("cannot open for write: " + binPath);
  const int n = basis_->size();
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c <= r; ++c) {
      double v = moments_(r, c);
      bf.write(reinterpret_cast<const char*>(&v), sizeof(double));
    }
  }
  if (!bf) throw IoError("short write: " + binPath);
}

Pseudoexpectation Pseudoexpectation::load(const std::string& jsonPath,
                                          const std::string& binPath) {
  std::ifstream jf(jsonPath);
  if (!jf) throw IoError("cannot open: " + jsonPath);
  nlohmann::json j;
  try {
    jf >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad moment descriptor " + jsonPath + ": " + e.what());
  }
  if (j.value("schema", "") != "sossr-moments-v1") {
    throw IoError("unexpected schema in " + jsonPath);
  }
  auto basis = std::make_shared<MonomialBasis>(j.at("num_samples").get<int>(),
                                               j.at("ambient_dim").get<int>(),
                                               j.at("degree").get<int>());
  const int n = basis->size();
  if (j.at("size").get<int>() != n) throw IoError("basis size mismatch in " + jsonPath);
  // The descriptor carries row names so the pair is self-describing; verify
  // they agree with the reconstructed ordering.
  const auto& rows = j.at("basis");
  if (static_cast<int>(rows.size()) != n) throw IoError("basis listing mismatch in " + jsonPath);
  for (int i = 0; i < n; ++i) {
    if (rows[i].get<std::string>() != basis->rowName(i)) {
      throw IoError("basis row " + std::to_string(i) + " mismatch in " + jsonPath);
    }
  }

  std::ifstream bf(binPath, std::ios::binary);
  if (!bf) throw IoError("cannot open: " + binPath);
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c <= r; ++c) {
      double v;
      bf.read(reinterpret_cast<char*>(&v), sizeof(double));
      if (!bf) throw IoError("short read: " + binPath);
      m(r, c) = m(c, r) = v;
    }
  }
  return Pseudoexpectation(std::move(basis), std::move(m), j.value("tolerance", kDefaultPsdTolerance));
}

}  // namespace sossr
