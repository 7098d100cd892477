#pragma once

// Shared validated fixtures for the test suites: one instance of every
// family over small hyperbolic matrices.

#include "solcrys/groups.hpp"

#include <random>

namespace fixtures {

using namespace solcrys;

inline GroupSpec gamma_a(const Mat2& a = Mat2(2, 1, 1, 1)) {
  GroupSpec s;
  s.family = Family::GammaA;
  s.a = a;
  return validate_spec(s);
}

inline GroupSpec pi1(const Mat2& a = Mat2(2, 1, 1, 1), const Vec2& k = {0, 0}) {
  GroupSpec s;
  s.family = Family::Pi1;
  s.a = a;
  s.params["k"] = k;
  return validate_spec(s);
}

inline GroupSpec pi2_minus() {
  GroupSpec s;
  s.family = Family::Pi2Minus;
  s.a = Mat2(2, 1, 1, 1);
  s.n_matrix = Mat2(-1, -1, -1, 0);
  return validate_spec(s);
}

inline GroupSpec pi2_plus() {
  GroupSpec s;
  s.family = Family::Pi2Plus;
  s.a = Mat2(2, 3, 3, 5);
  s.n_matrix = Mat2(-1, -1, -1, -2);
  return validate_spec(s);
}

inline GroupSpec pi3() {
  GroupSpec s;
  s.family = Family::Pi3;
  s.a = Mat2(2, 1, 1, 1);
  s.m_matrix = Mat2(1, 0, -1, -1);
  return validate_spec(s);
}

inline GroupSpec pi4() {
  GroupSpec s;
  s.family = Family::Pi4;
  s.a = Mat2(2, 1, 1, 1);
  s.n_matrix = Mat2(-1, -1, -1, 0);
  return validate_spec(s);
}

inline GroupSpec pi5() {
  GroupSpec s;
  s.family = Family::Pi5;
  s.a = Mat2(2, 1, 1, 1);
  s.m_matrix = Mat2(1, 0, -1, -1);
  return validate_spec(s);
}

inline GroupSpec pi6() {
  GroupSpec s;
  s.family = Family::Pi6;
  s.a = Mat2(2, 3, 3, 5);
  s.n_matrix = Mat2(-1, -1, -1, -2);
  s.m_matrix = Mat2(1, 1, 0, -1);
  return validate_spec(s);
}

inline GroupSpec pi7() {
  GroupSpec s;
  s.family = Family::Pi7;
  s.a = Mat2(2, 1, 1, 1);
  s.m_matrix = Mat2(0, 1, -1, 0);
  return validate_spec(s);
}

inline GroupSpec pi8() {
  GroupSpec s;
  s.family = Family::Pi8;
  s.a = Mat2(2, 1, 1, 1);
  s.n_matrix = Mat2(-1, -1, -1, 0);
  s.m_matrix = Mat2(0, 1, -1, 0);
  return validate_spec(s);
}

inline std::vector<GroupSpec> all_families() {
  return {gamma_a(), pi1(),  pi2_minus(), pi2_plus(), pi3(),
          pi4(),     pi5(),  pi6(),       pi7(),      pi8()};
}

inline GroupElement random_element(std::mt19937_64& rng, const GroupSpec& s,
                                   long bound, long zb = 2) {
  std::uniform_int_distribution<long> dx(-bound, bound), dz(-zb, zb), dt(0, 3);
  long v = s.ops.alpha_ord ? dt(rng) % s.ops.alpha_ord : 0;
  long w = s.ops.has_beta ? dt(rng) % 2 : 0;
  return make_element(s, Vec2{dx(rng), dx(rng)}, dz(rng), v, w);
}

}  // namespace fixtures
