#pragma once

// Automorphisms of a validated GroupSpec: validation with a constructive
// bijectivity certificate, type classification, conjugation twists,
// composition, bounded-complete enumeration, and the characteristic
// subgroup data used by the averaging formula.

#include "solcrys/groups.hpp"

namespace solcrys {

// Affine lattice expression: cst + sum coef[i] * u_i over unknown vectors
// u_i in Z^2. Lets the collection engine evaluate relators symbolically in
// the unknown translation parts of candidate images.
struct AffineVec {
  Vec2 cst;
  std::vector<Mat2> coef;

  AffineVec() = default;
  AffineVec(const Vec2& c) : cst(c) {}

  static AffineVec unknown(size_t idx, size_t arity) {
    AffineVec v;
    v.coef.assign(arity, Mat2::zero());
    v.coef[idx] = Mat2::identity();
    return v;
  }

  AffineVec& operator+=(const AffineVec& o) {
    cst += o.cst;
    if (o.coef.size() > coef.size()) coef.resize(o.coef.size(), Mat2::zero());
    for (size_t i = 0; i < o.coef.size(); ++i) coef[i] = coef[i] + o.coef[i];
    return *this;
  }
  AffineVec operator-() const {
    AffineVec r;
    r.cst = -cst;
    for (const auto& m : coef) r.coef.push_back(-m);
    return r;
  }
};

inline AffineVec lv_apply(const Mat2& m, const AffineVec& v) {
  AffineVec r;
  r.cst = m * v.cst;
  for (const auto& c : v.coef) r.coef.push_back(m * c);
  return r;
}

enum class AutType { I, II, III };
std::string to_string(AutType t);

struct LatticePart {
  Mat2 f;       // action on the translation lattice <a1,a2>
  Vec2 p;       // translation part of the image of the designated s
  Int epsilon;  // s-exponent of the image of s
};

struct AutomorphismSpec {
  std::map<std::string, GroupElement> images;
  std::map<std::string, GroupElement> inverse_images;  // bijectivity witness
  LatticePart lattice_part;
  AutType type_tag = AutType::I;

  Int det_f() const { return lattice_part.f.det(); }
  // group-level determinant: det of the induced map on the lattice times
  // the sign of the induced map on the base direction
  Int det_phi() const { return lattice_part.epsilon * det_f(); }
};

bool images_equal(const AutomorphismSpec& a, const AutomorphismSpec& b);

// Evaluate the automorphism on an arbitrary normal-form element.
GroupElement apply_automorphism(const GroupSpec& spec,
                                const std::map<std::string, GroupElement>& images,
                                const GroupElement& g);
GroupElement apply_automorphism(const GroupSpec& spec, const AutomorphismSpec& aut,
                                const GroupElement& g);

AutomorphismSpec validate_automorphism(
    const GroupSpec& spec, const std::map<std::string, GroupElement>& images);

AutType classify_type(const AutomorphismSpec& aut);
AutType classify_epsilon(const Int& epsilon);

AutomorphismSpec conjugate_twist(const AutomorphismSpec& aut,
                                 const GroupElement& alpha, const GroupSpec& spec);

// outer after inner
AutomorphismSpec compose(const GroupSpec& spec, const AutomorphismSpec& outer,
                         const AutomorphismSpec& inner);

// Complete list of automorphisms whose lattice matrix entries are bounded by
// entry_bound and whose translation vectors and auxiliary exponents are
// bounded by translation_bound, deduplicated and canonically ordered.
std::vector<AutomorphismSpec> enumerate_automorphisms(const GroupSpec& spec,
                                                      const Int& entry_bound,
                                                      const Int& translation_bound);

struct CharacteristicSubgroupInfo {
  Family subgroup_family = Family::GammaA;  // GammaA, or Pi1 for the Pi7 case
  std::vector<GroupElement> generators;
  Int index{1};
  bool is_fully_invariant = false;
  int t_step = 1;   // the subgroup's s equals T^{t_step}
  Mat2 a_sub;       // hyperbolic matrix of the subgroup's lattice
  Vec2 pi1_k;       // Pi7: the Pi1 parameter of the intermediate subgroup
  std::vector<GroupElement> coset_reps;
};

CharacteristicSubgroupInfo characteristic_subgroup(const GroupSpec& spec);

// Restriction of tau_c . phi to the designated subgroup: the lattice action,
// the image datum of s, and (for the Pi7 intermediate) the image of the
// torsion generator alpha^2.
struct LatticeRestriction {
  Mat2 f;
  Vec2 p;
  Int epsilon;
  std::optional<Vec2> beta_x;  // Pi1 subgroup only
};

LatticeRestriction restrict_twisted(const GroupSpec& spec,
                                    const AutomorphismSpec& aut,
                                    const CharacteristicSubgroupInfo& sub,
                                    const GroupElement& coset);

}  // namespace solcrys
