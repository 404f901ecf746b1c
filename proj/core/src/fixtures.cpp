#include "cliffmc/fixtures.hpp"

#include <array>
#include <stdexcept>

namespace cliffmc {

namespace {

CliffordField scalar_x0(int n) {
  CliffordField f;
  f.dim = n;
  f.eval = [n](const ParaVector& x) { return Multivector::scalar(n, x[0]); };
  f.grad.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    f.grad[static_cast<std::size_t>(i)] = [n, i](const ParaVector&) {
      return Multivector::scalar(n, i == 0 ? 1.0 : 0.0);
    };
  f.hess.assign(static_cast<std::size_t>(n) + 1,
                std::vector<FieldFn>(static_cast<std::size_t>(n) + 1,
                                     [n](const ParaVector&) { return Multivector(n); }));
  return f;
}

CliffordField abs_squared(int n) {
  CliffordField f;
  f.dim = n;
  f.eval = [n](const ParaVector& x) {
    double s = 0.0;
    for (int i = 0; i <= n; ++i) s += x[i] * x[i];
    return Multivector::scalar(n, s);
  };
  f.grad.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    f.grad[static_cast<std::size_t>(i)] = [n, i](const ParaVector& x) {
      return Multivector::scalar(n, 2.0 * x[i]);
    };
  f.hess.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    f.hess[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j)
      f.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          [n, same = (i == j)](const ParaVector&) {
            return Multivector::scalar(n, same ? 2.0 : 0.0);
          };
  }
  return f;
}

std::vector<Fixture> build_registry() {
  std::vector<Fixture> reg;
  auto add = [&reg](std::string name, int dim, CliffordField field, bool mono,
                    std::string note) {
    reg.push_back({std::move(name), dim, std::move(field), mono, std::move(note)});
  };
  add("z1", 2, fueter_variable(1, 2), true, "hypercomplex variable z_1, n=2");
  add("z2", 2, fueter_variable(2, 2), true, "hypercomplex variable z_2, n=2");
  add("z3", 3, fueter_variable(3, 3), true, "hypercomplex variable z_3, n=3");
  add("z1z2", 2, fueter_product(std::array{1, 2}, 2), true,
      "symmetrized product z_1 z_2, n=2");
  add("z1z1", 2, fueter_product(std::array{1, 1}, 2), true, "z_1^2, n=2");
  add("z1z1z2", 2, fueter_product(std::array{1, 1, 2}, 2), true,
      "symmetrized degree-3 product, n=2");
  add("z1z2z3", 3, fueter_product(std::array{1, 2, 3}, 3), true,
      "symmetrized degree-3 product, n=3");
  add("x0", 2, scalar_x0(2), false, "scalar field x_0, D x_0 = 1");
  add("abs2", 2, abs_squared(2), false, "|x|^2, harmonic check driver");
  for (auto& fx : reg) {
    fx.field.box_lo.assign(static_cast<std::size_t>(fx.dim) + 1, -8.0);
    fx.field.box_hi.assign(static_cast<std::size_t>(fx.dim) + 1, 8.0);
  }
  return reg;
}

}  // namespace

const std::vector<Fixture>& fixture_registry() {
  static const std::vector<Fixture> reg = build_registry();
  return reg;
}

const Fixture& find_fixture(const std::string& name) {
  for (const Fixture& f : fixture_registry())
    if (f.name == name) return f;
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace cliffmc
