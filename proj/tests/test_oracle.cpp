#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solcrys/oracle.hpp"

#include "fixtures.hpp"

using namespace solcrys;
using namespace fixtures;

namespace {

AutomorphismSpec make_aut(const GroupSpec& s,
                          std::map<std::string, GroupElement> images) {
  return validate_automorphism(s, images);
}

AutomorphismSpec gamma_aut(const GroupSpec& g, const Mat2& f, int eps) {
  std::map<std::string, GroupElement> images;
  images["a1"] = make_element(g, f.column(0), 0, 0, 0);
  images["a2"] = make_element(g, f.column(1), 0, 0, 0);
  images["t"] = make_element(g, Vec2{0, 0}, eps, 0, 0);
  return make_aut(g, images);
}

AutomorphismSpec identity_aut(const GroupSpec& s) {
  std::map<std::string, GroupElement> images;
  for (const auto& n : generator_names(s.family))
    images[n] = generator_element(s, n);
  return make_aut(s, images);
}

}  // namespace

TEST_CASE("finite quotient: order and the mod-2 count of the flip") {
  auto g = gamma_a();
  // the order of A mod 2 is 3, doubled to 6 to keep the T-direction
  // separable under direction-reversing twists: quotient order 2^2 * 6
  CHECK(finite_quotient_order(g, 2) == 24);

  auto flip = gamma_aut(g, Mat2(0, 1, -1, 0), -1);
  CHECK(finite_quotient_count(g, flip, 2) == 4);
  CHECK(finite_quotient_count(g, flip, 4) == 4);
}

TEST_CASE("finite quotient: identity equals the conjugacy class count") {
  auto g = gamma_a();
  auto id = identity_aut(g);
  for (long n : {2, 3, 4}) {
    CHECK(finite_quotient_count(g, id, n) ==
          finite_quotient_conjugacy_classes(g, n));
  }
  auto p = pi1();
  auto idp = identity_aut(p);
  CHECK(finite_quotient_count(p, idp, 2) ==
        finite_quotient_conjugacy_classes(p, 2));
}

TEST_CASE("finite quotient: Pi1 value-8 fixture counts 8 at n=2") {
  auto p = pi1();
  std::map<std::string, GroupElement> images;
  Mat2 f(0, 1, -1, 0);
  images["a1"] = make_element(p, f.column(0), 0, 0, 0);
  images["a2"] = make_element(p, f.column(1), 0, 0, 0);
  images["t"] = make_element(p, Vec2{0, 0}, -1, 0, 0);
  images["beta"] = make_element(p, Vec2{0, 0}, 0, 0, 1);
  auto aut = make_aut(p, images);
  CHECK(finite_quotient_count(p, aut, 2) == 8);
}

TEST_CASE("window oracle: the flip stabilizes at four classes") {
  auto g = gamma_a();
  auto flip = gamma_aut(g, Mat2(0, 1, -1, 0), -1);
  auto rep = window_class_count(g, flip, 6, 3);
  CHECK(rep.stabilized);
  CHECK(rep.final_count == 4);
  // monotone non-increasing history
  for (size_t i = 1; i < rep.history.size(); ++i)
    CHECK(rep.history[i] <= rep.history[i - 1]);
}

TEST_CASE("window oracle: type I keeps the base direction apart") {
  auto g = gamma_a();
  auto id = identity_aut(g);
  auto rep = window_class_count(g, id, 4, 4);
  CHECK(rep.final_count >= 2 * 4 + 1);
}

TEST_CASE("window oracle: verdict representatives are pairwise distinct") {
  auto g = gamma_a();
  auto flip = gamma_aut(g, Mat2(0, 1, -1, 0), -1);
  auto verdict = reidemeister_lattice(flip.lattice_part.f, flip.lattice_part.p,
                                      flip.lattice_part.epsilon, g.a);
  auto rep = window_class_count(g, flip, 6, 3);
  std::vector<GroupElement> roots;
  for (const auto& r : verdict.class_reps) {
    auto cls = rep.class_of(r);
    REQUIRE(cls.has_value());
    for (const auto& seen : roots) CHECK(!(seen == *cls));
    roots.push_back(*cls);
  }
  // every window element merges into one of the four classes
  for (const auto& [e, cls] : rep.representative_map) {
    bool hit = false;
    for (const auto& seen : roots)
      if (seen == cls) hit = true;
    CHECK(hit);
  }
}

TEST_CASE("certificates: accepted for honest verdicts, rejected when corrupted") {
  auto g = gamma_a();
  auto id = identity_aut(g);
  auto v1 = reidemeister(g, id);
  REQUIRE(v1.certificate.has_value());
  CHECK(check_infinity_certificate(*v1.certificate, g, id).accepted);

  auto sing = gamma_aut(g, Mat2(1, 0, -1, -1), -1);
  auto v2 = reidemeister(g, sing);
  REQUIRE(v2.certificate.has_value());
  CHECK(check_infinity_certificate(*v2.certificate, g, sing).accepted);

  // corrupt: singularity claim against the finite flip
  auto flip = gamma_aut(g, Mat2(0, 1, -1, 0), -1);
  SingularCert bogus{identity_element(), Int(0), flip.lattice_part.f, g.a};
  auto chk = check_infinity_certificate(bogus, g, flip);
  CHECK(!chk.accepted);

  // corrupt: type-I-twist claim with the wrong coset
  auto p3 = pi3();
  auto auts = enumerate_automorphisms(p3, 2, 2);
  for (const auto& aut : auts) {
    if (aut.type_tag != AutType::II) continue;
    auto v = reidemeister(p3, aut);
    REQUIRE(v.certificate.has_value());
    CHECK(check_infinity_certificate(*v.certificate, p3, aut).accepted);
    TypeITwistCert wrong{identity_element()};
    CHECK(!check_infinity_certificate(wrong, p3, aut).accepted);
    break;
  }
}

TEST_CASE("all r-infinity certificates are accepted across the fixture zoo") {
  for (const auto& s : {pi2_minus(), pi3(), pi4(), pi7()}) {
    CAPTURE(family_name(s.family));
    for (const auto& aut : enumerate_automorphisms(s, 2, 1)) {
      auto v = reidemeister(s, aut);
      REQUIRE(!v.finite());
      REQUIRE(v.certificate.has_value());
      auto chk = check_infinity_certificate(*v.certificate, s, aut);
      CAPTURE(chk.reason);
      CHECK(chk.accepted);
    }
  }
}

TEST_CASE("window oracle confirms the averaging value on Pi2+") {
  auto s = pi2_plus();
  std::map<std::string, GroupElement> images;
  Mat2 f(0, 1, -1, 0);
  images["a1"] = make_element(s, f.column(0), 0, 0, 0);
  images["a2"] = make_element(s, f.column(1), 0, 0, 0);
  images["beta"] = make_element(s, Vec2{0, 0}, -1, 0, 0);
  auto aut = make_aut(s, images);
  auto v = reidemeister(s, aut);
  REQUIRE(v.finite());
  CHECK(*v.value == 4);
  auto w = window_class_count(s, aut, 6, 3);
  CHECK(w.stabilized);
  CHECK(w.final_count == *v.value);
}

TEST_CASE("merge relation is symmetric: inverse letters reverse every edge") {
  auto p = pi1();
  std::map<std::string, GroupElement> images;
  Mat2 f(0, 1, -1, 0);
  images["a1"] = make_element(p, f.column(0), 0, 0, 0);
  images["a2"] = make_element(p, f.column(1), 0, 0, 0);
  images["t"] = make_element(p, Vec2{0, 0}, -1, 0, 0);
  images["beta"] = make_element(p, Vec2{0, 0}, 0, 0, 1);
  auto aut = make_aut(p, images);
  std::mt19937_64 rng(77);
  for (int i = 0; i < 50; ++i) {
    GroupElement e = random_element(rng, p, 3);
    for (const auto& name : generator_names(p.family)) {
      GroupElement c = generator_element(p, name);
      GroupElement t = multiply(multiply(c, e, p),
                                invert(apply_automorphism(p, aut, c), p), p);
      GroupElement ci = invert(c, p);
      GroupElement back = multiply(
          multiply(ci, t, p), invert(apply_automorphism(p, aut, ci), p), p);
      CHECK(back == e);
    }
  }
}

TEST_CASE("degenerate sweep bounds still cover the identity") {
  auto rep = r_infinity_report(pi3(), 0, 0);
  CHECK(!rep.entries.empty());
  bool has_identity = false;
  for (const auto& e : rep.entries) {
    CHECK(!e.verdict.finite());
    if (e.aut.lattice_part.f == Mat2::identity() &&
        e.aut.lattice_part.epsilon == 1)
      has_identity = true;
  }
  CHECK(has_identity);
}

TEST_CASE("soundness sandwich on the finite fixtures") {
  auto g = gamma_a();
  auto flip = gamma_aut(g, Mat2(0, 1, -1, 0), -1);
  auto v = reidemeister(g, flip);
  REQUIRE(v.finite());
  CHECK(finite_quotient_count(g, flip, 2) <= *v.value);
  auto w = window_class_count(g, flip, 6, 3);
  CHECK(w.stabilized);
  CHECK(w.final_count == *v.value);
}
