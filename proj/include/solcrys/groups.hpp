#pragma once

// Exact models of the lattice Gamma_A and the eight crystallographic-group
// families Pi1..Pi8 of Sol as finitely presented groups with canonical
// normal forms a^x T^z alpha^v beta^w. T is the family's infinite-order
// generator (t, beta or alpha depending on the family); alpha and beta are
// the torsion generators where present.

#include "solcrys/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace solcrys {

enum class Family {
  GammaA,
  Pi1,
  Pi2Plus,
  Pi2Minus,
  Pi3,
  Pi4,
  Pi5,
  Pi6,
  Pi7,
  Pi8,
};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

struct HyperbolicMatrix {
  Mat2 a;
  // det 1, trace > 2, both off-diagonal entries nonzero
  static HyperbolicMatrix checked(const Mat2& m);
};

// Per-family composition data, derived from the presentation.
struct FamilyOps {
  Family family = Family::GammaA;
  Mat2 theta = Mat2::identity();  // lattice action of T
  int alpha_ord = 0;              // 0 when the family has no torsion alpha
  bool has_beta = false;          // torsion beta present (exponent mod 2)
  Mat2 c_alpha, c_beta;           // lattice actions of the torsion generators
  Vec2 d_alpha;                   // alpha T alpha^{-1} = a^{d_alpha} T^{eps_alpha}
  int eps_alpha = 1;
  Vec2 d_beta;                    // beta T beta^{-1} = a^{d_beta} T^{eps_beta}
  int eps_beta = 1;
  Vec2 q_beta;                    // beta^2 = a^{q_beta}
  Vec2 comm_n;                    // Pi5: alpha beta alpha^{-1} beta^{-1} = a^{comm_n}
  bool dihedral = false;          // Pi8: alpha and beta generate a D4 holonomy
  std::array<Vec2, 4> bc{}, bci{};  // Pi8: alpha^v beta^{+-1} collection constants
};

// Normal-form element, generic in the lattice-value type so the same
// collection engine can run on symbolic (affine) lattice expressions.
template <class LV>
struct ElemT {
  LV x{};
  Int z{0};
  int v = 0;  // alpha exponent, mod alpha_ord
  int w = 0;  // beta exponent, mod 2
};

using GroupElement = ElemT<Vec2>;

inline bool operator==(const GroupElement& a, const GroupElement& b) {
  return a.x == b.x && a.z == b.z && a.v == b.v && a.w == b.w;
}
inline bool elem_less(const GroupElement& a, const GroupElement& b) {
  if (a.w != b.w) return a.w < b.w;
  if (a.v != b.v) return a.v < b.v;
  if (int c = cmp(a.z, b.z)) return c < 0;
  return cmp(a.x, b.x) < 0;
}
std::string to_string(const GroupElement& g);

struct EtaResult {
  int eta = 0;  // 1 or 2; 0 = unknown
  Int bound_used{0};
  std::optional<Mat2> conjugator;  // present when eta = 2 was certified
};

struct GroupSpec {
  Family family = Family::GammaA;
  Mat2 a;
  std::optional<Mat2> n_matrix;
  std::optional<Mat2> m_matrix;
  std::map<std::string, Vec2> params;  // "k", "kprime", "m", "n" as applicable
  std::optional<int> eta;              // Pi5 only

  // filled in by validate_spec
  bool validated = false;
  FamilyOps ops;
  std::map<std::string, AbelianQuotient> param_spaces;
  std::optional<Mat2> m_normalized;  // Pi3/Pi6/Pi5: [[-1,m],[0,1]] class form
  std::optional<Mat2> m_conjugator;
  int reflection_m = -1;  // the 0/1 tag of the normalized reverser class
  std::optional<EtaResult> eta_result;

  Vec2 param(const std::string& name) const;
};

// --- collection engine -----------------------------------------------------

// lv_apply is found by argument-dependent lookup so that symbolic lattice
// values (affine expressions over unknown translation vectors) can reuse
// the same engine.
inline Vec2 lv_apply(const Mat2& m, const Vec2& v) { return m * v; }

namespace engine {

template <class LV>
LV torsion_conj(const FamilyOps& F, int v, int w, const LV& y) {
  LV t = y;
  if (F.has_beta && w) t = lv_apply(F.c_beta, t);
  for (int i = 0; i < v; ++i) t = lv_apply(F.c_alpha, t);
  return t;
}

template <class LV>
void append_lattice(const FamilyOps& F, ElemT<LV>& g, const LV& y) {
  g.x += lv_apply(F.theta.pow(g.z), torsion_conj(F, g.v, g.w, y));
}

// Append one T^{+-1} letter.
template <class LV>
void append_t(const FamilyOps& F, ElemT<LV>& g, int e) {
  if (F.dihedral) {
    const Vec2& c = e > 0 ? F.bc[g.v] : F.bci[g.v];
    g.x += lv_apply(F.theta.pow(g.z), LV(c));
    int step = (g.v % 2 == 0) ? 1 : -1;
    g.z += e > 0 ? step : -step;
    g.v = (4 - g.v) % 4;
    return;
  }
  // conjugate the letter through beta^w, then through alpha^v
  LV d{};
  int cur = e;
  auto step = [&](const Mat2& c, const Vec2& dv, int eps) {
    d = lv_apply(c, d);
    if (cur > 0)
      d += LV(dv);
    else
      d += LV(Vec2(-(F.theta.pow(-eps) * dv)));
    cur *= eps;
  };
  if (F.has_beta && g.w) step(F.c_beta, F.d_beta, F.eps_beta);
  for (int i = 0; i < g.v; ++i) step(F.c_alpha, F.d_alpha, F.eps_alpha);
  g.x += lv_apply(F.theta.pow(g.z), d);
  g.z += cur;
}

template <class LV>
void append_alpha(const FamilyOps& F, ElemT<LV>& g) {
  if (F.family == Family::Pi5 && g.w) {
    Vec2 shift = -F.comm_n;
    for (int i = 0; i < g.v; ++i) shift = F.c_alpha * shift;
    g.x += lv_apply(F.theta.pow(g.z), LV(shift));
  }
  g.v = (g.v + 1) % F.alpha_ord;
}

template <class LV>
void append_beta(const FamilyOps& F, ElemT<LV>& g) {
  if (g.w) {
    Vec2 shift = F.q_beta;
    for (int i = 0; i < g.v; ++i) shift = F.c_alpha * shift;
    g.x += lv_apply(F.theta.pow(g.z), LV(shift));
    g.w = 0;
  } else {
    g.w = 1;
  }
}

template <class LV>
void append_beta_inv(const FamilyOps& F, ElemT<LV>& g) {
  // beta^{-1} = a^{-q_beta} beta, valid because q_beta is c_beta-fixed
  append_lattice(F, g, LV(Vec2(-F.q_beta)));
  append_beta(F, g);
}

template <class LV>
void append_alpha_inv(const FamilyOps& F, ElemT<LV>& g) {
  for (int i = 1; i < F.alpha_ord; ++i) append_alpha(F, g);
}

template <class LV, class LV2>
ElemT<LV> mul(const FamilyOps& F, ElemT<LV> g, const ElemT<LV2>& h) {
  append_lattice(F, g, LV(h.x));
  int e = h.z > 0 ? 1 : -1;
  for (Int i = 0; i < abs(h.z); ++i) append_t(F, g, e);
  for (int i = 0; i < h.v; ++i) append_alpha(F, g);
  for (int i = 0; i < h.w; ++i) append_beta(F, g);
  return g;
}

template <class LV>
ElemT<LV> inv(const FamilyOps& F, const ElemT<LV>& g) {
  ElemT<LV> r;
  if (g.w) append_beta_inv(F, r);
  for (int i = 0; i < g.v; ++i) append_alpha_inv(F, r);
  int e = g.z > 0 ? -1 : 1;
  for (Int i = 0; i < abs(g.z); ++i) append_t(F, r, e);
  append_lattice(F, r, LV(-g.x));
  return r;
}

}  // namespace engine

// --- public group operations ----------------------------------------------

GroupElement identity_element();
GroupElement multiply(const GroupElement& g, const GroupElement& h,
                      const GroupSpec& spec);
GroupElement invert(const GroupElement& g, const GroupSpec& spec);
GroupElement power(const GroupElement& g, const Int& k, const GroupSpec& spec);

// Builds the normal form of a^x T^z alpha^v beta^w for arbitrary integer
// exponents (torsion exponents outside their canonical range are collected).
GroupElement make_element(const GroupSpec& spec, const Vec2& x, const Int& z,
                          const Int& v, const Int& w);

// Generator bookkeeping. Names follow the presentations: "a1", "a2" plus
// "t" / "alpha" / "beta" as the family requires.
std::vector<std::string> generator_names(Family f);
std::string infinite_generator(Family f);  // the T generator's name
GroupElement generator_element(const GroupSpec& spec, const std::string& name);

// One defining relator, spelled as a word that must collect to the identity.
struct RelLetter {
  bool is_lattice = false;
  std::string gen;  // generator name, exponent +-1
  int e = 1;
  Vec2 vec;  // lattice letter a^vec
};
struct Relator {
  std::string name;
  std::vector<RelLetter> word;
};
std::vector<Relator> relators(const GroupSpec& spec);

GroupSpec validate_spec(GroupSpec raw);

std::map<std::string, AbelianQuotient> parameter_space(
    Family family, const Mat2& a, const std::optional<Mat2>& n_matrix,
    const std::optional<Mat2>& m_matrix, int eta = 1);

struct BieberbachVerdict {
  bool value = false;
  std::string rule;
};
BieberbachVerdict is_bieberbach(const GroupSpec& spec);

// Decides whether (A, M) can be conjugated so that M becomes [[-1,1],[0,1]]
// with the evenness condition on the conjugated A holding; eta = 2 in that
// case. Returns eta = 1 when the search is provably exhaustive, unknown
// otherwise.
EtaResult eta_test(const Mat2& a, const Mat2& m, const Int& conjugator_bound);

// Classification 0/1 of a traceless det -1 involution up to GL(2,Z)
// conjugacy: 0 when diagonalizable over Z, 1 for the glide class.
int reflection_class(const Mat2& m);

}  // namespace solcrys
