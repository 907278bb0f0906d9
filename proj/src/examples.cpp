#include "courant/builders.hpp"
#include "courant/catalog.hpp"

#include <sstream>

namespace courant {

namespace {

struct Draft {
  SetupDefinition def;

  Draft(std::string name, int n, int d) {
    def.name = std::move(name);
    def.signature = Signature(n, d);
    def.theta = PreCourant::make(SuperPolynomial(def.signature));
  }

  const Signature& sig() const { return def.signature; }

  Draft& theta(PreCourant t) {
    def.theta = std::move(t);
    return *this;
  }
  Draft& function(std::string name, const TensorFunction& f) {
    def.tensors.push_back({std::move(name), false, endo_of(f)});
    return *this;
  }
  Draft& matrix(std::string name, Endomorphism e) {
    def.tensors.push_back({std::move(name), true, std::move(e)});
    return *this;
  }
  Draft& task(const std::string& line) {
    std::istringstream in(line);
    TaskDefinition t;
    for (std::string w; in >> w;) t.words.push_back(w);
    def.tasks.push_back(std::move(t));
    return *this;
  }
};

Matrix diag(std::vector<Rational> v) {
  Matrix m = zero_matrix(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) m[i][i] = v[i];
  return m;
}

// a ^ b for 1-based a, b.
Matrix wedge(int d, int a, int b) {
  Matrix m = zero_matrix(d);
  m[a - 1][b - 1] = 1;
  m[b - 1][a - 1] = -1;
  return m;
}

StructureConstants constants(int d, const std::vector<std::vector<int>>& entries) {
  StructureConstants c = zero_constants(d);
  for (const auto& e : entries) set_bracket(c, e[0], e[1], e[2], e[3]);
  return c;
}

BuiltinExample abelian_zero() {
  Draft x("abelian-zero", 0, 2);
  x.function("I", i_n(x.sig(), identity_matrix(2)))
      .function("J", j_pi(x.sig(), wedge(2, 1, 2)))
      .task("courant")
      .task("classify I=I J=J expect=Poisson-Nijenhuis")
      .task("catalog I=I J=J");
  return {"abelian-zero", "zero structure on a rank-2 bundle over a point; every check holds vacuously", x.def};
}

BuiltinExample heisenberg() {
  Draft x("heisenberg", 0, 3);
  x.theta(lie_algebra_theta(x.sig(), constants(3, {{1, 2, 3, 1}})));
  const auto i = i_n(x.sig(), diag({1, -1, 1}));
  const auto j = j_pi(x.sig(), wedge(3, 1, 3));
  x.function("I", i).function("J", j).matrix("S", endo_of(i) + endo_of(j));
  x.task("courant")
      .task("axioms")
      .task("classify I=I J=J expect=Poisson-Nijenhuis")
      .task("nijenhuis I=S expect=yes")
      .task("T-04 I=S k=4 m=4")
      .task("hierarchy I=I J=J")
      .task("catalog I=I J=J");
  return {"heisenberg", "Heisenberg algebra with a Poisson-Nijenhuis pair I_N, J_pi", x.def};
}

BuiltinExample heisenberg_central() {
  Draft x("heisenberg-central", 0, 3);
  x.theta(lie_algebra_theta(x.sig(), constants(3, {{1, 2, 3, 1}})));
  Matrix n = zero_matrix(3);
  n[2][0] = 1;
  n[2][1] = 2;
  x.function("C", i_n(x.sig(), n));
  x.task("nijenhuis I=C expect=yes")
      .task("deforming J=C expect=0")
      .task("classify I=C J=C expect=Poisson-Nijenhuis")
      .task("catalog I=C J=C");
  return {"heisenberg-central", "Heisenberg algebra with an operator valued in the centre", x.def};
}

BuiltinExample so3() {
  Draft x("so3", 0, 3);
  x.theta(lie_algebra_theta(x.sig(), constants(3, {{1, 2, 3, 1}, {2, 3, 1, 1}, {3, 1, 2, 1}})));
  x.function("W", j_omega(x.sig(), wedge(3, 1, 2)));
  x.task("courant").task("axioms").task("deforming J=W expect=0").task("catalog I=W J=W");
  return {"so3", "so(3) with the closed 2-form e^1 ^ e^2", x.def};
}

BuiltinExample sl2() {
  Draft x("sl2", 0, 3);
  // e1 = h, e2 = e, e3 = f
  x.theta(lie_algebra_theta(x.sig(), constants(3, {{1, 2, 2, 2}, {1, 3, 3, -2}, {2, 3, 1, 1}})));
  x.function("P", j_pi(x.sig(), wedge(3, 1, 2)));
  x.task("courant").task("deforming J=P expect=0").task("catalog I=P J=P");
  return {"sl2", "sl(2) with the Poisson bivector h ^ e", x.def};
}

BuiltinExample jacobi_breaking() {
  Draft x("jacobi-breaking", 0, 3);
  x.theta(lie_algebra_theta(x.sig(), constants(3, {{1, 2, 3, 1}, {1, 3, 1, 1}})));
  x.task("courant expect=no").task("axioms");
  return {"jacobi-breaking", "antisymmetric constants violating the Jacobi identity", x.def};
}

BuiltinExample pn_pair() {
  Draft x("pn-pair", 0, 3);
  x.theta(lie_algebra_theta(x.sig(), constants(3, {{1, 2, 2, 1}, {1, 3, 3, 1}})));
  x.function("I", i_n(x.sig(), diag({1, 1, -1}))).function("J", j_pi(x.sig(), wedge(3, 1, 2)));
  x.task("courant")
      .task("classify I=I J=J expect=Poisson-Nijenhuis")
      .task("hierarchy I=I J=J n=3 k=3")
      .task("catalog I=I J=J");
  return {"pn-pair", "book algebra [e1,e2]=e2, [e1,e3]=e3 with a Poisson-Nijenhuis pair", x.def};
}

BuiltinExample book_nijenhuis() {
  Draft x("book-nijenhuis", 0, 3);
  x.theta(lie_algebra_theta(x.sig(), constants(3, {{1, 2, 2, 1}, {1, 3, 3, 1}})));
  Matrix n = diag({1, -1, -1});
  n[0][1] = -1;
  Matrix omega = zero_matrix(3);
  omega[1][2] = -1;
  omega[2][1] = 1;
  x.function("I", j_general(x.sig(), n, zero_matrix(3), omega));
  x.task("courant").task("nijenhuis I=I expect=yes").task("T-04 I=I k=4 m=4").task("catalog I=I");
  return {"book-nijenhuis", "book algebra with a Nijenhuis tensor whose deformation is not a multiple of theta", x.def};
}

BuiltinExample maurer_cartan_2d() {
  Draft x("maurer-cartan-2d", 0, 2);
  x.theta(bialgebra_theta(x.sig(), constants(2, {{1, 2, 2, 1}}), constants(2, {{1, 2, 1, 1}})));
  x.function("J", j_general(x.sig(), diag({Rational(1, 2), Rational(1, 2)}), wedge(2, 1, 2), zero_matrix(2)));
  x.task("courant").task("maurer-cartan J=J").task("deforming J=J expect=1/4").task("catalog I=J J=J");
  return {"maurer-cartan-2d", "2-dimensional Lie bialgebra with J = 1/2 id + pi, pi a Maurer-Cartan element",
          x.def};
}

BuiltinExample maurer_cartan_3d() {
  Draft x("maurer-cartan-3d", 0, 3);
  x.theta(bialgebra_theta(x.sig(), constants(3, {{1, 2, 3, 1}}),
                          constants(3, {{1, 2, 1, 1}, {1, 3, 1, -1}, {2, 3, 1, -1}, {2, 3, 2, -1}, {2, 3, 3, -1}})));
  const Matrix half = diag({Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  x.function("J1", j_general(x.sig(), half, wedge(3, 2, 3), zero_matrix(3)))
      .function("J2", j_general(x.sig(), half, wedge(3, 1, 2), zero_matrix(3)));
  x.task("courant")
      .task("maurer-cartan J=J1")
      .task("maurer-cartan J=J2")
      .task("deforming J=J1 expect=1/4")
      .task("deforming J=J2 expect=none")
      .task("catalog I=J1 J=J2");
  return {"maurer-cartan-3d", "Lie bialgebra on the Heisenberg algebra; one bivector solves Maurer-Cartan, one does not",
          x.def};
}

BuiltinExample hypercomplex() {
  Draft x("hypercomplex", 0, 4);
  x.theta(lie_algebra_theta(x.sig(), constants(4, {{2, 3, 4, 2}, {3, 4, 2, 2}, {4, 2, 3, 2}})));
  Matrix li = zero_matrix(4);
  li[1][0] = 1;
  li[0][1] = -1;
  li[3][2] = 1;
  li[2][3] = -1;
  Matrix lj = zero_matrix(4);
  lj[2][0] = 1;
  lj[3][1] = -1;
  lj[0][2] = -1;
  lj[1][3] = 1;
  x.function("I", i_n(x.sig(), li)).function("J", i_n(x.sig(), lj));
  x.task("courant").task("classify I=I J=J expect=deforming-Nijenhuis").task("catalog I=I J=J");
  return {"hypercomplex", "left-invariant hypercomplex structure on su(2) + R", x.def};
}

BuiltinExample tangent_plane() {
  Draft x("tangent-plane", 2, 2);
  const Signature& sig = x.sig();
  SuperPolynomial mu(sig);
  for (int a = 1; a <= 2; ++a) {
    mu += multiply(SuperPolynomial::generator(sig, {GeneratorKind::P, a}),
                   SuperPolynomial::generator(sig, {GeneratorKind::Xi, a}));
  }
  x.theta(PreCourant::make(mu));
  Endomorphism j = endo_of(j_pi(sig, wedge(2, 1, 2)));
  const auto x1 = SuperPolynomial::generator(sig, {GeneratorKind::X, 1});
  for (int r = 0; r < j.dim(); ++r) {
    for (int c = 0; c < j.dim(); ++c) j.set(r, c, multiply(j.at(r, c), x1));
  }
  x.function("I", i_n(sig, identity_matrix(2))).matrix("J", j);
  x.task("courant")
      .task("axioms")
      .task("classify I=I J=J expect=Poisson-Nijenhuis")
      .task("catalog I=I J=J");
  return {"tangent-plane", "tangent bundle of the plane with the Poisson bivector x1 d/dx1 ^ d/dx2", x.def};
}

}  // namespace

const std::vector<BuiltinExample>& builtin_examples() {
  static const std::vector<BuiltinExample> all{
      abelian_zero(),    heisenberg(),       heisenberg_central(), so3(),          sl2(),
      jacobi_breaking(), pn_pair(),          book_nijenhuis(),     maurer_cartan_2d(), maurer_cartan_3d(),
      hypercomplex(),    tangent_plane(),
  };
  return all;
}

const BuiltinExample& builtin_example(std::string_view name) {
  for (const auto& ex : builtin_examples()) {
    if (ex.name == name) return ex;
  }
  throw std::out_of_range("unknown example '" + std::string(name) + "'");
}

}  // namespace courant
