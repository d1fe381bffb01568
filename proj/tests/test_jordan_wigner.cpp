#include <doctest.h>

#include "nucc/jordan_wigner.hpp"

using namespace nucc;

TEST_CASE("creation image on one qubit") {
  const auto op = jw_creation(0, 1);
  REQUIRE(op.size() == 2);
  CHECK(op.coefficient(PauliString::from_word("X")) == Complex{0.5, 0});
  CHECK(op.coefficient(PauliString::from_word("Y")) == Complex{0, -0.5});

  // |1><0| in the occupation basis: matrix element (1, 0) only.
  const auto m = to_dense_matrix(op);
  CHECK(std::abs(m(0, 0)) <= 1e-15);
  CHECK(std::abs(m(0, 1)) <= 1e-15);
  CHECK(std::abs(m(1, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(m(1, 1)) <= 1e-15);
}

TEST_CASE("creation image carries the Z string") {
  const auto op = jw_creation(2, 3);
  REQUIRE(op.size() == 2);
  CHECK(op.coefficient(PauliString::from_word("ZZX")) == Complex{0.5, 0});
  CHECK(op.coefficient(PauliString::from_word("ZZY")) == Complex{0, -0.5});
}

TEST_CASE("annihilation image") {
  const auto op = jw_annihilation(0, 1);
  CHECK(op.coefficient(PauliString::from_word("X")) == Complex{0.5, 0});
  CHECK(op.coefficient(PauliString::from_word("Y")) == Complex{0, 0.5});

  const auto op2 = jw_annihilation(1, 2);
  CHECK(op2.coefficient(PauliString::from_word("ZX")) == Complex{0.5, 0});
  CHECK(op2.coefficient(PauliString::from_word("ZY")) == Complex{0, 0.5});
}

TEST_CASE("annihilation is the adjoint of creation") {
  for (uint32_t n = 1; n <= 8; ++n) {
    for (uint32_t p = 0; p < n; ++p) {
      CHECK(jw_creation(p, n).adjoint().approx_equal(jw_annihilation(p, n)));
    }
  }
}

TEST_CASE("index out of range is rejected") {
  CHECK_THROWS_AS(jw_creation(3, 3), ValidationError);
  CHECK_THROWS_AS(jw_annihilation(5, 2), ValidationError);
}

TEST_CASE("number operator from a product") {
  FermionProduct n0{{{0, true}, {0, false}}, 1.0};
  const auto op = jw_transform(n0, 1);
  REQUIRE(op.size() == 2);
  CHECK(op.coefficient(PauliString::from_word("I")) == Complex{0.5, 0});
  CHECK(op.coefficient(PauliString::from_word("Z")) == Complex{-0.5, 0});

  // Independent 2x2 oracle: multiply the dense ladder matrices directly.
  const auto mc = to_dense_matrix(jw_creation(0, 1));
  const auto ma = to_dense_matrix(jw_annihilation(0, 1));
  CHECK((to_dense_matrix(op) - mc * ma).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("double creation vanishes") {
  for (uint32_t p = 0; p < 4; ++p) {
    FermionProduct prod{{{p, true}, {p, true}}, 1.0};
    CHECK(jw_transform(prod, 4).empty());
  }
}

TEST_CASE("canonical anticommutation relations") {
  const uint32_t n = 6;
  for (uint32_t p = 0; p < n; ++p) {
    for (uint32_t q = 0; q < n; ++q) {
      FermionProduct ap_adq{{{p, false}, {q, true}}, 1.0};
      FermionProduct adq_ap{{{q, true}, {p, false}}, 1.0};
      PauliTermSum anti = jw_transform(ap_adq, n);
      anti.add(jw_transform(adq_ap, n));
      if (p == q) {
        REQUIRE(anti.size() == 1);
        CHECK(anti.coefficient(PauliString(n)) == Complex{1.0, 0});
      } else {
        CHECK(anti.empty());
      }
    }
  }
}

TEST_CASE("creation on qubit 1 flips the second bit") {
  const auto m = to_dense_matrix(jw_creation(1, 2));
  // Column |00> = index 0 maps to index 2 (qubit 1 set, qubit 0 clear).
  CHECK(std::abs(m(2, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(m(1, 0)) <= 1e-15);
  CHECK(std::abs(m(0, 0)) <= 1e-15);
}

TEST_CASE("transform respects the product coefficient") {
  FermionProduct prod{{{1, true}, {0, false}}, Complex{0, 2.0}};
  const auto op = jw_transform(prod, 2);
  const auto plain =
      multiply(jw_creation(1, 2), jw_annihilation(0, 2));
  auto scaled = plain;
  scaled.scale(Complex{0, 2.0});
  CHECK(op.approx_equal(scaled));
}

TEST_CASE("number operator matches the summed products") {
  const uint32_t n = 4;
  PauliTermSum total(n);
  for (uint32_t p = 0; p < n; ++p) {
    total.add(jw_transform(FermionProduct{{{p, true}, {p, false}}, 1.0}, n));
  }
  CHECK(total.approx_equal(jw_number_operator(n)));
}
