#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solcrys/reidemeister.hpp"

#include "fixtures.hpp"

using namespace solcrys;
using namespace fixtures;

namespace {

AutomorphismSpec gamma_flip(const GroupSpec& g, const Mat2& f, const Vec2& p,
                            int eps) {
  std::map<std::string, GroupElement> images;
  images["a1"] = make_element(g, f.column(0), 0, 0, 0);
  images["a2"] = make_element(g, f.column(1), 0, 0, 0);
  images["t"] = make_element(g, p, eps, 0, 0);
  return validate_automorphism(g, images);
}

std::map<std::string, GroupElement> identity_images(const GroupSpec& s) {
  std::map<std::string, GroupElement> images;
  for (const auto& n : generator_names(s.family))
    images[n] = generator_element(s, n);
  return images;
}

AutomorphismSpec pi1_aut(const GroupSpec& p, const Mat2& f, const Vec2& x,
                         const Vec2& pp, int eps) {
  std::map<std::string, GroupElement> images;
  images["a1"] = make_element(p, f.column(0), 0, 0, 0);
  images["a2"] = make_element(p, f.column(1), 0, 0, 0);
  images["t"] = make_element(p, pp, eps, 0, 0);
  images["beta"] = make_element(p, x, 0, 0, 1);
  return validate_automorphism(p, images);
}

}  // namespace

TEST_CASE("reidemeister_lattice: the three closed-form branches") {
  Mat2 a(2, 1, 1, 1);

  auto id = reidemeister_lattice(Mat2::identity(), Vec2{0, 0}, 1, a);
  CHECK(!id.finite());
  CHECK(std::holds_alternative<SurjectionToZCert>(*id.certificate));

  auto four = reidemeister_lattice(Mat2(0, 1, -1, 0), Vec2{0, 0}, -1, a);
  REQUIRE(four.finite());
  CHECK(*four.value == 4);
  REQUIRE(four.class_reps.size() == 4);
  CHECK(four.class_reps[2].x == Vec2{1, 0});  // x0 = (1,0), not in im(I-F)
  CHECK(four.class_reps[3].x == Vec2{1, 0});

  auto inf = reidemeister_lattice(Mat2(1, 0, -1, -1), Vec2{0, 0}, -1, a);
  CHECK(!inf.finite());
  REQUIRE(std::holds_alternative<SingularCert>(*inf.certificate));
  auto cert = std::get<SingularCert>(*inf.certificate);
  CHECK((Mat2::identity() - cert.a_sub.pow(cert.witness_j) * cert.f).det() == 0);

  // datum that does not intertwine
  CHECK_THROWS_AS(reidemeister_lattice(Mat2(1, 1, 0, 1), Vec2{0, 0}, -1, a),
                  Error);
}

TEST_CASE("reidemeister_lattice: endomorphism mode counts the base classes") {
  Mat2 a(2, 1, 1, 1);
  // epsilon = 2: only F = 0 satisfies F A = A^2 F over a hyperbolic matrix
  auto v = reidemeister_lattice(Mat2::zero(), Vec2{1, 1}, 2, a);
  REQUIRE(v.finite());
  CHECK(*v.value == 1);
  auto v3 = reidemeister_lattice(Mat2::zero(), Vec2{0, 0}, -2, a);
  REQUIRE(v3.finite());
  CHECK(*v3.value == 3);
  CHECK(v3.class_reps.size() == 3);
}

TEST_CASE("the p translation does not change the lattice count") {
  Mat2 a(2, 1, 1, 1);
  for (long px = -2; px <= 2; ++px)
    for (long py = -2; py <= 2; ++py) {
      auto v = reidemeister_lattice(Mat2(0, 1, -1, 0), Vec2{px, py}, -1, a);
      CHECK(*v.value == 4);
    }
}

TEST_CASE("pi1_decision: value 8 fixture") {
  auto p = pi1();
  auto aut = pi1_aut(p, Mat2(0, 1, -1, 0), Vec2{0, 0}, Vec2{0, 0}, -1);
  auto v = pi1_decision(p, aut);
  REQUIRE(v.finite());
  CHECK(*v.value == 8);
  CHECK(v.class_reps.size() == 8);
}

TEST_CASE("pi1_decision: value 4 fixture over [[3,4],[2,3]]") {
  auto p = pi1(Mat2(3, 4, 2, 3));
  auto aut = pi1_aut(p, Mat2(1, -2, 1, -1), Vec2{1, 0}, Vec2{-1, 1}, -1);
  auto v = pi1_decision(p, aut);
  REQUIRE(v.finite());
  CHECK(*v.value == 4);
  CHECK(v.class_reps.size() == 4);

  // x = 0 flips the same automorphism family to eight classes
  auto aut8 = pi1_aut(p, Mat2(1, -2, 1, -1), Vec2{0, 0}, Vec2{0, 0}, -1);
  CHECK(*pi1_decision(p, aut8).value == 8);
}

TEST_CASE("pi1_decision: type gate sends everything else to infinity") {
  auto p = pi1();
  auto id = validate_automorphism(p, identity_images(p));
  auto v = pi1_decision(p, id);
  CHECK(!v.finite());
}

TEST_CASE("pi1 membership equivalence: (I-F)x and (I+F)x agree") {
  auto p = pi1(Mat2(3, 4, 2, 3));
  for (const auto& aut : enumerate_automorphisms(p, 3, 3)) {
    if (aut.type_tag != AutType::II || aut.det_f() != 1) continue;
    const Mat2 I = Mat2::identity();
    Vec2 x = aut.images.at("beta").x;
    CHECK(even((I - aut.lattice_part.f) * x) ==
          even((I + aut.lattice_part.f) * x));
  }
}

TEST_CASE("averaging: Pi2+ equality with value 4") {
  auto s = pi2_plus();
  int checked = 0;
  for (const auto& aut : enumerate_automorphisms(s, 3, 3)) {
    auto v = averaging(s, aut);
    if (!v.finite()) continue;
    ++checked;
    CHECK(!v.lower_bound_only);
    CHECK(*v.value == 4);
    REQUIRE(v.breakdown.size() == 2);
    Int sum = 0;
    for (const auto& cv : v.breakdown) {
      REQUIRE(cv.value.has_value());
      sum += *cv.value;
    }
    CHECK(sum == 2 * *v.value);
    CHECK(aut.type_tag == AutType::II);
    CHECK(aut.det_phi() == -1);
  }
  CHECK(checked > 0);
}

TEST_CASE("averaging: Pi2- is infinite for every bounded automorphism") {
  auto s = pi2_minus();
  auto auts = enumerate_automorphisms(s, 3, 3);
  CHECK(!auts.empty());
  for (const auto& aut : auts) CHECK(!averaging(s, aut).finite());
}

TEST_CASE("averaging: Pi3 is infinite and the beta twist flips the base sign") {
  auto s = pi3();
  auto auts = enumerate_automorphisms(s, 2, 2);
  CHECK(!auts.empty());
  for (const auto& aut : auts) {
    auto v = averaging(s, aut);
    CHECK(!v.finite());
    REQUIRE(v.breakdown.size() == 2);
    CHECK(v.breakdown[0].epsilon == -v.breakdown[1].epsilon);
  }
}

TEST_CASE("averaging: Pi5 gate automorphism dies by a type-I twist") {
  // For Pi5 the beta image may carry an alpha component, which makes
  // direction-reversing automorphisms with det F = +1 possible; the
  // finite lattice count at the identity coset is then killed by a coset
  // twist of type I.
  auto s = pi5();
  bool saw_gate = false;
  for (const auto& aut : enumerate_automorphisms(s, 2, 2)) {
    auto v = averaging(s, aut);
    CHECK(!v.finite());
    if (aut.type_tag == AutType::II && aut.det_f() == 1) {
      saw_gate = true;
      REQUIRE(v.certificate.has_value());
      CHECK(std::holds_alternative<TypeITwistCert>(*v.certificate));
      REQUIRE(!v.breakdown.empty());
      CHECK(v.breakdown.front().value.has_value());  // identity coset is finite
    }
  }
  CHECK(saw_gate);
}

TEST_CASE("reidemeister dispatch: family theorems") {
  // GammaA: the flip has four classes
  auto g = gamma_a();
  auto flip = gamma_flip(g, Mat2(0, 1, -1, 0), Vec2{0, 0}, -1);
  CHECK(*reidemeister(g, flip).value == 4);

  // Pi1 value 8 through the dispatcher
  auto p = pi1();
  auto aut = pi1_aut(p, Mat2(0, 1, -1, 0), Vec2{0, 0}, Vec2{0, 0}, -1);
  CHECK(*reidemeister(p, aut).value == 8);

  // Pi4: every bounded automorphism is infinite
  auto s4 = pi4();
  auto auts = enumerate_automorphisms(s4, 2, 2);
  CHECK(!auts.empty());
  for (const auto& a4 : auts) CHECK(!reidemeister(s4, a4).finite());
}

TEST_CASE("averaging inequality holds for finite dispatch verdicts") {
  // every finite verdict dominates the mean of its coset values
  auto s = pi2_plus();
  for (const auto& aut : enumerate_automorphisms(s, 2, 2)) {
    auto v = reidemeister(s, aut);
    if (!v.finite()) continue;
    Int sum = 0;
    bool all = true;
    for (const auto& cv : v.breakdown) {
      if (!cv.value) {
        all = false;
        break;
      }
      sum += *cv.value;
    }
    REQUIRE(all);
    CHECK(*v.value * Int(v.breakdown.size()) >= sum);
  }
}

TEST_CASE("squares of type II automorphisms have infinite verdicts") {
  for (const auto& s : all_families()) {
    CAPTURE(family_name(s.family));
    for (const auto& aut : enumerate_automorphisms(s, 2, 1)) {
      if (aut.type_tag != AutType::II) continue;
      auto sq = compose(s, aut, aut);
      CHECK(classify_type(sq) == AutType::I);
      CHECK(!reidemeister(s, sq).finite());
    }
  }
}

TEST_CASE("averaging on a torsion spec flags the lower bound") {
  auto p = pi1();
  auto aut = pi1_aut(p, Mat2(0, 1, -1, 0), Vec2{0, 0}, Vec2{0, 0}, -1);
  auto bound = averaging(p, aut);
  REQUIRE(bound.finite());
  CHECK(bound.lower_bound_only);
  CHECK(*bound.value == 4);  // (4 + 4) / 2; the sharp value is 8
  auto sharp = pi1_decision(p, aut);
  CHECK(*sharp.value >= *bound.value);
}

TEST_CASE("parity classification: cases and admissible classes") {
  auto r1 = parity_classification(Mat2(2, 1, 1, 1), Vec2{0, 0});
  CHECK(r1.case_id == 1);
  CHECK(r1.unconditionally_eight);

  CHECK_THROWS_AS(parity_classification(Mat2(2, 1, 1, 1), Vec2{1, 0}), Error);

  auto r5 = parity_classification(Mat2(3, 4, 2, 3), Vec2{0, 0});
  CHECK(r5.case_id == 5);
  CHECK(!r5.unconditionally_eight);
  // k = 0 row: predicate is lattice membership in im(I - F)
  Mat2 f(1, -2, 1, -1);
  CHECK(r5.predicts_eight(f, Vec2{0, 0}));
  CHECK(!r5.predicts_eight(f, Vec2{1, 0}));

  auto r5e1 = parity_classification(Mat2(3, 4, 2, 3), Vec2{1, 0});
  CHECK(r5e1.case_id == 5);
  CHECK(r5e1.k_class == Vec2{1, 0});
  // e1 table rows on parity patterns
  CHECK(r5e1.predicts_eight(Mat2(-1, 0, 0, 1), Vec2{1, 1}));   // [[-o,e],[e,o]]
  CHECK(r5e1.predicts_eight(Mat2(-1, 1, 0, 1), Vec2{1, 0}));   // y even
  CHECK(!r5e1.predicts_eight(Mat2(-1, 1, 0, 1), Vec2{0, 1}));  // y odd
  CHECK(!r5e1.predicts_eight(Mat2(-1, 0, 1, 1), Vec2{0, 0}));  // v odd row absent

  auto r2 = parity_classification(Mat2(2, 1, 3, 2), Vec2{1, 0});
  CHECK(r2.case_id == 2);
  auto r3 = parity_classification(Mat2(1, 2, 1, 3), Vec2{0, 0});
  CHECK(r3.case_id == 3);
  auto r4 = parity_classification(Mat2(1, 1, 2, 3), Vec2{0, 1});
  CHECK(r4.case_id == 4);
}

TEST_CASE("parity classification agrees with pi1_decision") {
  // case 1 fixture: every gate automorphism gets the value 8
  for (const Mat2& a : {Mat2(2, 1, 1, 1), Mat2(1, 1, 1, 2)}) {
    auto p = pi1(a);
    auto rep = parity_classification(a, p.param("k"));
    CHECK(rep.unconditionally_eight);
    int gates = 0;
    for (const auto& aut : enumerate_automorphisms(p, 3, 3)) {
      if (aut.type_tag != AutType::II || aut.det_f() != 1) continue;
      ++gates;
      CHECK(*pi1_decision(p, aut).value == 8);
    }
    CHECK(gates > 0);
  }
  // case 5 fixture: table predicate matches the decision on every gate aut
  auto p5 = pi1(Mat2(3, 4, 2, 3));
  auto rep5 = parity_classification(p5.a, p5.param("k"));
  int both[2] = {0, 0};
  for (const auto& aut : enumerate_automorphisms(p5, 3, 3)) {
    if (aut.type_tag != AutType::II || aut.det_f() != 1) continue;
    auto v = pi1_decision(p5, aut);
    bool eight = *v.value == 8;
    both[eight ? 1 : 0]++;
    CHECK(rep5.predicts_eight(aut.lattice_part.f, aut.images.at("beta").x) ==
          eight);
  }
  CHECK(both[0] > 0);
  CHECK(both[1] > 0);
}

TEST_CASE("r_infinity_report: sweeps stay infinite") {
  for (const auto& s : {pi2_minus(), pi3(), pi4()}) {
    CAPTURE(family_name(s.family));
    auto rep = r_infinity_report(s, 2, 2);
    CHECK(rep.all_infinite);
    CHECK(!rep.entries.empty());
    for (const auto& e : rep.entries) CHECK(e.verdict.certificate.has_value());
  }
  CHECK_THROWS_AS(r_infinity_report(gamma_a(), 2, 2), Error);
}
