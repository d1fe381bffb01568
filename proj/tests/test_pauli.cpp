#include <doctest.h>

#include <random>

#include "nucc/pauli.hpp"

using namespace nucc;

namespace {

PauliTermSum random_sum(uint32_t n_qubits, int n_terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> symbol(0, 3);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  PauliTermSum sum(n_qubits);
  for (int t = 0; t < n_terms; ++t) {
    PauliString s(n_qubits);
    for (uint32_t q = 0; q < n_qubits; ++q) {
      s.set_op(q, static_cast<Pauli>(symbol(rng)));
    }
    sum.add(s, Complex{coeff(rng), coeff(rng)});
  }
  return sum;
}

}  // namespace

TEST_CASE("single-qubit product table") {
  const auto X = PauliString::from_word("X");
  const auto Y = PauliString::from_word("Y");
  const auto Z = PauliString::from_word("Z");

  auto xy = X * Y;
  CHECK(xy.word() == "Z");
  CHECK(xy.phase() == Complex{0, 1});

  auto yx = Y * X;
  CHECK(yx.word() == "Z");
  CHECK(yx.phase() == Complex{0, -1});

  auto zx = Z * X;
  CHECK(zx.word() == "Y");
  CHECK(zx.phase() == Complex{0, 1});

  auto xx = X * X;
  CHECK(xx.is_identity());
  CHECK(xx.phase() == Complex{1, 0});
}

TEST_CASE("phase normalization folds into coefficients") {
  PauliTermSum sum(2);
  sum.add(PauliString::from_word("XZ", 1), 2.0);  // i * XZ * 2
  sum.add(PauliString::from_word("XZ"), Complex{0, -2.0});
  CHECK(sum.empty());
}

TEST_CASE("multiply: X*Y on one qubit gives iZ") {
  const auto a = PauliTermSum::single(PauliString::from_word("X"));
  const auto b = PauliTermSum::single(PauliString::from_word("Y"));
  const auto prod = multiply(a, b);
  REQUIRE(prod.size() == 1);
  CHECK(prod.coefficient(PauliString::from_word("Z")) == Complex{0, 1});
}

TEST_CASE("multiply: nilpotent ladder square vanishes") {
  PauliTermSum s(1);
  s.add(PauliString::from_word("X"), 0.5);
  s.add(PauliString::from_word("Y"), Complex{0, 0.5});
  const auto sq = multiply(s, s);
  CHECK(sq.empty());
}

TEST_CASE("qubit-count mismatch is rejected") {
  const auto a = PauliTermSum::identity(2);
  const auto b = PauliTermSum::identity(3);
  CHECK_THROWS_AS(multiply(a, b), ValidationError);
}

TEST_CASE("dense matrix of Z and of a projector") {
  const auto z = PauliTermSum::single(PauliString::from_word("Z"));
  const auto mz = to_dense_matrix(z);
  CHECK(mz(0, 0) == Complex{1, 0});
  CHECK(mz(1, 1) == Complex{-1, 0});
  CHECK(mz(0, 1) == Complex{0, 0});

  PauliTermSum proj(1);
  proj.add(PauliString::from_word("I"), 0.5);
  proj.add(PauliString::from_word("Z"), 0.5);
  const auto mp = to_dense_matrix(proj);
  CHECK(mp(0, 0) == Complex{1, 0});
  CHECK(mp(1, 1) == Complex{0, 0});
}

TEST_CASE("dense matrix is a ring homomorphism on random sums") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_sum(4, 6, rng);
    const auto b = random_sum(4, 6, rng);
    const auto prod = multiply(a, b);
    const auto sum = a + b;

    const Eigen::MatrixXcd ma = to_dense_matrix(a);
    const Eigen::MatrixXcd mb = to_dense_matrix(b);
    CHECK((to_dense_matrix(prod) - ma * mb).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((to_dense_matrix(sum) - (ma + mb)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("adjoint and hermiticity") {
  std::mt19937_64 rng(11);
  const auto a = random_sum(3, 5, rng);
  const auto adj = a.adjoint();
  const Eigen::MatrixXcd ma = to_dense_matrix(a);
  CHECK((to_dense_matrix(adj) - ma.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);

  PauliTermSum h(2);
  h.add(PauliString::from_word("XY"), 0.25);
  h.add(PauliString::from_word("ZI"), -1.5);
  CHECK(h.is_hermitian());
  h.add(PauliString::from_word("XX"), Complex{0, 0.25});
  CHECK_FALSE(h.is_hermitian());
}

TEST_CASE("proportionality factor") {
  std::mt19937_64 rng(13);
  const auto a = random_sum(3, 4, rng);
  PauliTermSum b = a;
  b.scale(-2.5);
  const auto r = b.proportionality_factor(a);
  REQUIRE(r.has_value());
  CHECK(std::abs(*r - Complex{-2.5, 0}) <= 1e-12);

  PauliTermSum c = a;
  c.add(PauliString(3, 1, 1), 10.0);
  CHECK_FALSE(c.proportionality_factor(a).has_value());
}

TEST_CASE("dense matrix dimension guard") {
  const auto big = PauliTermSum::identity(8);
  CHECK_THROWS_AS(to_dense_matrix(big, 4), ValidationError);
}

TEST_CASE("drop tolerance removes numerical dust") {
  PauliTermSum s(1);
  s.add(PauliString::from_word("X"), 1e-13);
  CHECK(s.empty());
  s.add(PauliString::from_word("X"), 1.0);
  s.add(PauliString::from_word("X"), -1.0 + 1e-14);
  CHECK(s.empty());
}
