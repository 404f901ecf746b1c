// Arithmetic in the real Clifford algebra Cl(n) with negative-definite
// generators (e_j^2 = -1, e_j e_k = -e_k e_j).  Basis blades are encoded
// as bitmasks: bit k-1 set means e_k is a factor, mask 0 is the scalar.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace cliffmc {

using BladeIndex = std::uint32_t;

inline constexpr int kMaxDim = 16;

struct BladeProduct {
  double sign;  // +1 or -1
  BladeIndex blade;
};

// Product of two basis blades: result mask is a XOR b, sign is the parity
// of the merge-sort swap count plus one flip per shared generator.
// Throws std::invalid_argument if a mask does not fit in dimension n.
BladeProduct blade_product(BladeIndex a, BladeIndex b, int n);

inline int blade_grade(BladeIndex b) { return __builtin_popcount(b); }

class Multivector {
 public:
  explicit Multivector(int dim);
  static Multivector scalar(int dim, double value);
  static Multivector basis(int dim, BladeIndex blade, double value = 1.0);

  int dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }

  double operator[](BladeIndex b) const { return coeffs_[b]; }
  double& operator[](BladeIndex b) { return coeffs_[b]; }
  std::span<const double> coeffs() const { return {coeffs_.data(), coeffs_.size()}; }

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  Multivector operator-() const;

  // Clifford (geometric) product.
  friend Multivector operator*(const Multivector& a, const Multivector& b);

  double sc() const { return coeffs_[0]; }
  Multivector vec() const;   // grade-1 part
  Multivector conj() const;  // anti-automorphism: 1 -> 1, e_k -> -e_k
  double norm() const;       // Euclidean norm of the coefficient vector

  bool all_finite() const;

 private:
  int dim_;
  // Inline storage up to n = 3; the path-functional loops live there.
  boost::container::small_vector<double, 8> coeffs_;
};

// (x_0, ..., x_n) identified with x_0 + sum_k x_k e_k.
class ParaVector {
 public:
  explicit ParaVector(int dim);  // zeros
  explicit ParaVector(std::vector<double> comps);

  int dim() const { return static_cast<int>(comps_.size()) - 1; }
  double operator[](int i) const { return comps_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return comps_[static_cast<std::size_t>(i)]; }
  std::span<const double> comps() const { return comps_; }

  ParaVector& operator+=(const ParaVector& o);
  ParaVector& operator-=(const ParaVector& o);
  ParaVector& operator*=(double s);
  friend ParaVector operator+(ParaVector a, const ParaVector& b) { return a += b; }
  friend ParaVector operator-(ParaVector a, const ParaVector& b) { return a -= b; }
  friend ParaVector operator*(ParaVector a, double s) { return a *= s; }
  friend ParaVector operator*(double s, ParaVector a) { return a *= s; }

  Multivector to_multivector() const;
  double norm() const;  // sqrt(sum x_k^2) = sqrt(sc(x * conj(x)))
  double dot(const ParaVector& o) const;

 private:
  std::vector<double> comps_;
};

// Discrete-quadrature Clifford inner product: sum_i w_i conj(f_i) g_i.
Multivector clifford_inner_product(std::span<const Multivector> f,
                                   std::span<const Multivector> g,
                                   std::span<const double> weights);

}  // namespace cliffmc
