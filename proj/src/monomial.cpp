#include "sossr/monomial.hpp"

#include <algorithm>
#include <functional>

#include "sossr/errors.hpp"

namespace sossr {

Monomial::Monomial(std::vector<VarId> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
}

MonomialBasis::MonomialBasis(int numSamples, int ambientDim, int degree)
    : num_samples_(numSamples), ambient_dim_(ambientDim), degree_(degree) {
  if (numSamples < 1 || ambientDim < 1 || degree < 1) {
    throw ConfigInvalid("MonomialBasis: numSamples, ambientDim and degree must be positive");
  }
  // Enumerate reduced monomials of degree <= basisDegree() by extension with
  // variables >= the last one (selectors strictly greater: idempotence).
  const int cap = basisDegree();
  rows_.push_back(Monomial::one());
  std::vector<VarId> stack;
  std::function<void(VarId)> extend = [&](VarId minVar) {
    if (static_cast<int>(stack.size()) >= cap) return;
    for (VarId v = minVar; v < numVars(); ++v) {
      if (!stack.empty() && v == stack.back() && isSelector(v)) continue;
      stack.push_back(v);
      rows_.push_back(Monomial(std::vector<VarId>(stack)));
      extend(v);
      stack.pop_back();
    }
  };
  extend(0);
  index_.reserve(rows_.size() * 2);
  for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
    index_.emplace(rows_[i], i);
  }
}

VarId MonomialBasis::selectorVar(int i) const {
  if (i < 0 || i >= num_samples_) throw DimensionMismatch("selectorVar: index out of range");
  return i;
}

VarId MonomialBasis::projectionVar(int a, int b) const {
  if (a > b) std::swap(a, b);
  if (a < 0 || b >= ambient_dim_) throw DimensionMismatch("projectionVar: coords out of range");
  // Row-major upper triangle offset.
  int off = a * ambient_dim_ - a * (a - 1) / 2 + (b - a);
  return num_samples_ + off;
}

int MonomialBasis::selectorIndex(VarId v) const {
  if (!isSelector(v)) throw DimensionMismatch("selectorIndex: not a selector variable");
  return v;
}

std::pair<int, int> MonomialBasis::projectionCoords(VarId v) const {
  if (!isProjection(v)) throw DimensionMismatch("projectionCoords: not a projection variable");
  int off = v - num_samples_;
  int a = 0;
  while (off >= ambient_dim_ - a) {
    off -= ambient_dim_ - a;
    ++a;
  }
  return {a, a + off};
}

std::optional<int> MonomialBasis::indexOf(const Monomial& reduced) const {
  auto it = index_.find(reduced);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Monomial MonomialBasis::reduce(const Monomial& m) const {
  std::vector<VarId> v = m.vars();
  std::sort(v.begin(), v.end());
  std::vector<VarId> out;
  out.reserve(v.size());
  for (VarId id : v) {
    if (!out.empty() && out.back() == id && isSelector(id)) continue;
    out.push_back(id);
  }
  Monomial r;
  r = Monomial(std::move(out));
  return r;
}

Monomial MonomialBasis::product(const Monomial& a, const Monomial& b) const {
  std::vector<VarId> v = a.vars();
  v.insert(v.end(), b.vars().begin(), b.vars().end());
  return reduce(Monomial(std::move(v)));
}

std::optional<std::pair<int, int>> MonomialBasis::locate(const Monomial& reduced) const {
  if (reduced.degree() > 2 * basisDegree()) return std::nullopt;
  if (auto idx = indexOf(reduced)) return std::make_pair(0, *idx);
  const auto& v = reduced.vars();
  int half = (reduced.degree() + 1) / 2;
  Monomial lhs(std::vector<VarId>(v.begin(), v.begin() + half));
  Monomial rhs(std::vector<VarId>(v.begin() + half, v.end()));
  auto li = indexOf(lhs);
  auto ri = indexOf(rhs);
  if (!li || !ri) return std::nullopt;
  return std::make_pair(std::min(*li, *ri), std::max(*li, *ri));
}

std::string MonomialBasis::name(const Monomial& m) const {
  if (m.isOne()) return "1";
  std::string out;
  for (std::size_t j = 0; j < m.vars().size(); ++j) {
    if (j) out += '*';
    VarId v = m.vars()[j];
    if (isSelector(v)) {
      out += "w" + std::to_string(v + 1);
    } else {
      auto [a, b] = projectionCoords(v);
      out += "p_" + std::to_string(a + 1) + "_" + std::to_string(b + 1);
    }
  }
  return out;
}

Monomial MonomialBasis::parse(const std::string& text) const {
  if (text == "1") return Monomial::one();
  std::vector<VarId> vars;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('*', pos);
    if (end == std::string::npos) end = text.size();
    std::string tok = text.substr(pos, end - pos);
    try {
      if (tok.size() > 1 && tok[0] == 'w') {
        int i = std::stoi(tok.substr(1));
        vars.push_back(selectorVar(i - 1));
      } else if (tok.rfind("p_", 0) == 0) {
        std::size_t mid = tok.find('_', 2);
        if (mid == std::string::npos) throw ConfigInvalid("bad monomial token: " + tok);
        int a = std::stoi(tok.substr(2, mid - 2));
        int b = std::stoi(tok.substr(mid + 1));
        vars.push_back(projectionVar(a - 1, b - 1));
      } else {
        throw ConfigInvalid("bad monomial token: " + tok);
      }
    } catch (const std::invalid_argument&) {
      throw ConfigInvalid("bad monomial token: " + tok);
    }
    pos = end + 1;
  }
  return reduce(Monomial(std::move(vars)));
}

std::vector<std::vector<std::pair<int, int>>> MonomialBasis::duplicateCellGroups() const {
  std::unordered_map<Monomial, std::vector<std::pair<int, int>>, Monomial::Hash> groups;
  const int n = size();
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      groups[product(rows_[r], rows_[c])].push_back({r, c});
    }
  }
  std::vector<std::vector<std::pair<int, int>>> out;
  for (auto& [mono, cells] : groups) {
    if (cells.size() > 1) {
      std::sort(cells.begin(), cells.end());
      out.push_back(std::move(cells));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sossr
