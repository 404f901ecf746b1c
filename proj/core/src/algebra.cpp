#include "cliffmc/algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cliffmc {

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("algebra dimension must be in [1, " +
                                std::to_string(kMaxDim) + "], got " + std::to_string(n));
}

void check_same_dim(int a, int b) {
  if (a != b)
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
}

// Cached product signs for small dimensions; the multiply kernel is hot
// in the path-functional computations.
const std::vector<signed char>* sign_table(int n) {
  static const auto tables = [] {
    std::vector<std::vector<signed char>> t(9);
    for (int n = 1; n <= 8; ++n) {
      const std::size_t sz = std::size_t{1} << n;
      t[static_cast<std::size_t>(n)].resize(sz * sz);
      for (std::size_t a = 0; a < sz; ++a)
        for (std::size_t b = 0; b < sz; ++b) {
          int swaps = 0;
          for (auto x = a >> 1; x != 0; x >>= 1)
            swaps += __builtin_popcount(static_cast<unsigned>(x & b));
          const int flips = swaps + __builtin_popcount(static_cast<unsigned>(a & b));
          t[static_cast<std::size_t>(n)][(a << n) | b] = (flips & 1) ? -1 : 1;
        }
    }
    return t;
  }();
  return n <= 8 ? &tables[static_cast<std::size_t>(n)] : nullptr;
}

}  // namespace

BladeProduct blade_product(BladeIndex a, BladeIndex b, int n) {
  check_dim(n);
  const BladeIndex limit = BladeIndex{1} << n;
  if (a >= limit || b >= limit)
    throw std::invalid_argument("blade mask out of range for dimension " + std::to_string(n));
  // Swap count: pairs (j in a, i in b) with j > i, i.e. factors of b that
  // must move left past higher-index factors of a.
  int swaps = 0;
  for (BladeIndex x = a >> 1; x != 0; x >>= 1) swaps += __builtin_popcount(x & b);
  // Each shared generator contracts as e_j e_j = -1.
  const int flips = swaps + __builtin_popcount(a & b);
  return {(flips & 1) ? -1.0 : 1.0, a ^ b};
}

Multivector::Multivector(int dim) : dim_(dim) {
  check_dim(dim);
  coeffs_.assign(std::size_t{1} << dim, 0.0);
}

Multivector Multivector::scalar(int dim, double value) {
  Multivector m(dim);
  m.coeffs_[0] = value;
  return m;
}

Multivector Multivector::basis(int dim, BladeIndex blade, double value) {
  Multivector m(dim);
  if (blade >= m.coeffs_.size())
    throw std::invalid_argument("blade mask out of range for dimension " + std::to_string(dim));
  m.coeffs_[blade] = value;
  return m;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  check_same_dim(dim_, o.dim_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  check_same_dim(dim_, o.dim_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Multivector Multivector::operator-() const {
  Multivector m(*this);
  for (double& c : m.coeffs_) c = -c;
  return m;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  check_same_dim(a.dim_, b.dim_);
  Multivector out(a.dim_);
  const std::size_t sz = a.coeffs_.size();
  if (const auto* table = sign_table(a.dim_)) {
    const signed char* signs = table->data();
    for (std::size_t i = 0; i < sz; ++i) {
      const double ai = a.coeffs_[i];
      if (ai == 0.0) continue;
      const signed char* row = signs + (i << a.dim_);
      for (std::size_t j = 0; j < sz; ++j)
        out.coeffs_[i ^ j] += row[j] * ai * b.coeffs_[j];
    }
    return out;
  }
  for (std::size_t i = 0; i < sz; ++i) {
    const double ai = a.coeffs_[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < sz; ++j) {
      const double bj = b.coeffs_[j];
      if (bj == 0.0) continue;
      const auto [sign, blade] =
          blade_product(static_cast<BladeIndex>(i), static_cast<BladeIndex>(j), a.dim_);
      out.coeffs_[blade] += sign * ai * bj;
    }
  }
  return out;
}

Multivector Multivector::vec() const {
  Multivector out(dim_);
  for (int k = 1; k <= dim_; ++k) {
    const BladeIndex b = BladeIndex{1} << (k - 1);
    out.coeffs_[b] = coeffs_[b];
  }
  return out;
}

Multivector Multivector::conj() const {
  Multivector out(dim_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const int g = blade_grade(static_cast<BladeIndex>(i));
    const double sign = ((g * (g + 1) / 2) & 1) ? -1.0 : 1.0;
    out.coeffs_[i] = sign * coeffs_[i];
  }
  return out;
}

double Multivector::norm() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return std::sqrt(s);
}

bool Multivector::all_finite() const {
  for (double c : coeffs_)
    if (!std::isfinite(c)) return false;
  return true;
}

ParaVector::ParaVector(int dim) {
  check_dim(dim);
  comps_.assign(static_cast<std::size_t>(dim) + 1, 0.0);
}

ParaVector::ParaVector(std::vector<double> comps) : comps_(std::move(comps)) {
  if (comps_.size() < 2)
    throw std::invalid_argument("a para-vector needs at least 2 components");
  check_dim(static_cast<int>(comps_.size()) - 1);
}

ParaVector& ParaVector::operator+=(const ParaVector& o) {
  check_same_dim(dim(), o.dim());
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

ParaVector& ParaVector::operator-=(const ParaVector& o) {
  check_same_dim(dim(), o.dim());
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

ParaVector& ParaVector::operator*=(double s) {
  for (double& c : comps_) c *= s;
  return *this;
}

Multivector ParaVector::to_multivector() const {
  Multivector m(dim());
  m[0] = comps_[0];
  for (int k = 1; k <= dim(); ++k) m[BladeIndex{1} << (k - 1)] = comps_[static_cast<std::size_t>(k)];
  return m;
}

double ParaVector::norm() const {
  double s = 0.0;
  for (double c : comps_) s += c * c;
  return std::sqrt(s);
}

double ParaVector::dot(const ParaVector& o) const {
  check_same_dim(dim(), o.dim());
  double s = 0.0;
  for (std::size_t i = 0; i < comps_.size(); ++i) s += comps_[i] * o.comps_[i];
  return s;
}

Multivector clifford_inner_product(std::span<const Multivector> f,
                                   std::span<const Multivector> g,
                                   std::span<const double> weights) {
  if (f.size() != g.size() || f.size() != weights.size())
    throw std::invalid_argument("clifford_inner_product: length mismatch");
  if (f.empty()) throw std::invalid_argument("clifford_inner_product: empty sample set");
  Multivector acc(f[0].dim());
  for (std::size_t i = 0; i < f.size(); ++i) acc += weights[i] * (f[i].conj() * g[i]);
  return acc;
}

}  // namespace cliffmc
