#include "solcrys/reidemeister.hpp"

#include <algorithm>

namespace solcrys {

namespace {

const std::vector<Vec2>& rep_scan_order() {
  static const std::vector<Vec2> order = {Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1},
                                          Vec2{1, 1}};
  return order;
}

// Lexicographically least candidate outside the image lattice of m.
Vec2 coset_witness(const Mat2& m) {
  std::vector<Vec2> gens = {m.column(0), m.column(1)};
  for (const Vec2& c : rep_scan_order())
    if (!lattice_membership(c, gens)) return c;
  throw Error(Errc::BadInput,
              "no coset witness: " + to_string(m) + " has unit covolume");
}

bool in_image(const Mat2& m, const Vec2& x) {
  std::vector<Vec2> gens = {m.column(0), m.column(1)};
  return lattice_membership(x, gens);
}

}  // namespace

ReidemeisterVerdict reidemeister_lattice(const Mat2& f, const Vec2& p,
                                         const Int& epsilon, const Mat2& a) {
  if (f * a != a.pow(epsilon) * f)
    throw Error(Errc::InvalidDatum,
                "lattice datum does not intertwine: F*A != A^eps*F");
  ReidemeisterVerdict v;
  v.det_f = f.det();
  v.det_phi = epsilon * v.det_f;
  (void)p;  // the class count never depends on the translation part

  if (epsilon == 1) {
    v.certificate = SurjectionToZCert{identity_element()};
    v.rule = "lattice: translation direction preserved";
    return v;
  }
  if (epsilon == -1) {
    if (v.det_f == -1) {
      v.certificate = SingularCert{identity_element(), Int(0), f, a};
      v.rule = "lattice: I - F singular";
      return v;
    }
    const Mat2 I = Mat2::identity();
    Vec2 x0 = coset_witness(I - f);
    Vec2 x1 = coset_witness(I - a * f);
    v.value = 4;
    GroupElement e;
    GroupElement tau = e;
    tau.z = 1;
    GroupElement ax0 = e, ax1tau = tau;
    ax0.x = x0;
    ax1tau.x = x1;
    v.class_reps = {e, tau, ax0, ax1tau};
    v.rule = "lattice: direction-reversing, det F = 1";
    return v;
  }
  // endomorphism mode: the intertwining condition over a hyperbolic matrix
  // forces F = 0, and the count is carried by the base direction alone
  if (f != Mat2::zero())
    throw Error(Errc::InvalidDatum, "nonzero lattice matrix with |epsilon| != 1");
  v.value = abs(1 - epsilon);
  for (Int j = 0; j < *v.value; ++j) {
    GroupElement g;
    g.z = j;
    v.class_reps.push_back(g);
  }
  v.rule = "lattice: base map z -> eps*z with trivial fibre action";
  return v;
}

namespace {

// Shared Pi1 decision on a restriction datum: lattice matrix f, direction
// sign epsilon and beta translation x, over the lattice of a with parameter k.
ReidemeisterVerdict pi1_datum(const Mat2& a, const Vec2& k, const Mat2& f,
                              const Int& epsilon, const Vec2& x,
                              bool with_reps) {
  ReidemeisterVerdict v;
  v.det_f = f.det();
  v.det_phi = epsilon * v.det_f;
  (void)k;
  if (epsilon == 1) {
    v.certificate = SurjectionToZCert{identity_element()};
    v.rule = "pi1: restriction has type I";
    return v;
  }
  if (epsilon != -1) throw Error(Errc::InvalidDatum, "pi1 expects an automorphism");
  if (v.det_f == -1) {
    v.certificate = SingularCert{identity_element(), Int(0), f, a};
    v.rule = "pi1: I - F singular on the lattice";
    return v;
  }
  const Mat2 I = Mat2::identity();
  Vec2 minus = (I - f) * x, plus = (I + f) * x;
  bool eight_minus = even(minus), eight_plus = even(plus);
  if (eight_minus != eight_plus)
    throw Error(Errc::InvalidDatum,
                "parity tests (I-F)x and (I+F)x disagree; datum corrupt");
  if (!eight_minus) {
    v.value = 4;
    if (with_reps) {
      GroupElement e, t, b, tb;
      t.z = 1;
      b.w = 1;
      tb.z = 1;
      tb.w = 1;
      v.class_reps = {e, t, b, tb};
    }
    v.rule = "pi1: four classes, beta translation off the image lattice";
    return v;
  }
  v.value = 8;
  if (with_reps) {
    const Mat2 sector[4] = {I - f, I - a * f, I + f, I + a * f};
    const Int zpart[4] = {0, 1, 0, 1};
    const int wpart[4] = {0, 0, 1, 1};
    for (int s = 0; s < 4; ++s) {
      Vec2 c = coset_witness(sector[s]);
      for (const Vec2& q : {Vec2{0, 0}, c}) {
        GroupElement g;
        g.x = q;
        g.z = zpart[s];
        g.w = wpart[s];
        v.class_reps.push_back(g);
      }
    }
  }
  v.rule = "pi1: eight classes, two per sector";
  return v;
}

bool is_identity(const GroupElement& g) { return g == GroupElement{}; }

}  // namespace

ReidemeisterVerdict pi1_decision(const GroupSpec& spec,
                                 const AutomorphismSpec& aut) {
  if (spec.family != Family::Pi1)
    throw Error(Errc::BadInput, "pi1_decision expects a Pi1 spec");
  Vec2 x = aut.images.at("beta").x;
  return pi1_datum(spec.a, spec.param("k"), aut.lattice_part.f,
                   aut.lattice_part.epsilon, x, true);
}

ReidemeisterVerdict averaging(const GroupSpec& spec, const AutomorphismSpec& aut) {
  CharacteristicSubgroupInfo sub = characteristic_subgroup(spec);
  ReidemeisterVerdict out;
  out.det_f = aut.det_f();
  out.det_phi = aut.det_phi();

  std::optional<InfinityCertificate> cert;
  bool any_infinite = false;
  Int sum = 0;
  for (const GroupElement& c : sub.coset_reps) {
    LatticeRestriction r = restrict_twisted(spec, aut, sub, c);
    ReidemeisterVerdict rv;
    if (sub.subgroup_family == Family::Pi1)
      rv = pi1_datum(sub.a_sub, sub.pi1_k, r.f, r.epsilon, *r.beta_x, false);
    else
      rv = reidemeister_lattice(r.f, r.p, r.epsilon, sub.a_sub);
    CosetVerdict cv;
    cv.coset = c;
    cv.f = r.f;
    cv.p = r.p;
    cv.epsilon = r.epsilon;
    cv.value = rv.value;
    out.breakdown.push_back(cv);
    if (!rv.finite()) {
      any_infinite = true;
      if (!cert) {
        if (r.epsilon == 1 && !is_identity(c))
          cert = TypeITwistCert{c};
        else if (r.epsilon == 1)
          cert = SurjectionToZCert{c};
        else
          cert = SingularCert{c, Int(0), r.f, sub.a_sub};
      }
    } else {
      sum += *rv.value;
    }
  }
  if (any_infinite) {
    out.certificate = cert;
    out.rule = "averaging: an infinite coset restriction propagates";
    return out;
  }
  if (is_bieberbach(spec).value) {
    if (sum % sub.index != 0)
      throw Error(Errc::InvalidDatum,
                  "averaging sum not divisible by the index on a torsion free "
                  "spec");
    out.value = sum / sub.index;
    out.rule = "averaging: exact mean over the characteristic subgroup";
    return out;
  }
  out.value = (sum + sub.index - 1) / sub.index;
  out.lower_bound_only = true;
  out.rule = "averaging: lower bound only (spec has torsion)";
  return out;
}

ReidemeisterVerdict reidemeister(const GroupSpec& spec,
                                 const AutomorphismSpec& aut) {
  switch (spec.family) {
    case Family::GammaA: {
      ReidemeisterVerdict v =
          reidemeister_lattice(aut.lattice_part.f, aut.lattice_part.p,
                               aut.lattice_part.epsilon, spec.a);
      return v;
    }
    case Family::Pi1:
      return pi1_decision(spec, aut);
    default:
      return averaging(spec, aut);
  }
}

// --- parity classification -----------------------------------------------

namespace {

int par(const Int& n) { return odd(n) ? 1 : 0; }

}  // namespace

bool ParityReport::predicts_eight(const Mat2& f, const Vec2& x) const {
  if (case_id != 5) return unconditionally_eight;
  // f = [[-u, v'],[v, u]]
  if (f.d != -f.a)
    throw Error(Errc::InvalidDatum, "case-5 predicate expects a traceless matrix");
  Int u = f.d, vp = f.b, vv = f.c;
  Vec2 kr = k_class;
  if (kr == Vec2{0, 0}) return in_image(Mat2::identity() - f, x);
  if (kr == Vec2{1, 0}) {
    if (par(u) && !par(vp) && !par(vv)) return true;
    if (par(u) && par(vp) && !par(vv)) return even(x.y);
    return false;
  }
  if (kr == Vec2{0, 1}) {
    if (par(u) && !par(vp) && !par(vv)) return true;
    if (par(u) && !par(vp) && par(vv)) return even(x.x);
    return false;
  }
  // k = e1 + e2
  if (par(u) && !par(vp) && !par(vv)) return true;
  if (!par(u) && par(vp) && par(vv)) return (par(x.x) == par(x.y));
  return false;
}

ParityReport parity_classification(const Mat2& a, const Vec2& k) {
  ParityReport r;
  r.a = a;
  int p11 = par(a.a), p12 = par(a.b), p21 = par(a.c), p22 = par(a.d);
  if (p11 != p22) {
    r.case_id = 1;
    r.admissible = {Vec2{0, 0}};
  } else if (p11 == 0 && p22 == 0) {
    r.case_id = 2;
    r.admissible = {Vec2{0, 0}, Vec2{1, 0}};
  } else if (p11 && p21 && p22 && !p12) {
    r.case_id = 3;
    r.admissible = {Vec2{0, 0}, Vec2{1, 0}};
  } else if (p11 && p12 && p22 && !p21) {
    r.case_id = 4;
    r.admissible = {Vec2{0, 0}, Vec2{0, 1}};
  } else {
    r.case_id = 5;
    r.admissible = {Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}, Vec2{1, 1}};
  }
  r.unconditionally_eight = r.case_id <= 4;

  auto spaces = parameter_space(Family::Pi1, a, std::nullopt, std::nullopt);
  const AbelianQuotient& q = spaces.at("k");
  // k must arrive canonical: either one of the table representatives or the
  // quotient's own canonical form of one of them
  bool literal = false;
  for (const Vec2& cand : r.admissible) literal = literal || cand == k;
  if (!literal && !(q.reduce(k) == k))
    throw Error(Errc::CaseMismatch,
                "k = " + to_string(k) +
                    " is not canonical for this parity pattern");
  Vec2 kr = q.reduce(k);
  bool admissible = false;
  for (const Vec2& cand : r.admissible)
    if (q.reduce(cand) == kr) {
      admissible = true;
      r.k_class = cand;  // normalize to the table's representative
    }
  if (!admissible)
    throw Error(Errc::CaseMismatch,
                "k = " + to_string(k) + " is not an admissible class for this "
                                        "parity pattern");
  return r;
}

RInfinityReport r_infinity_report(const GroupSpec& spec, const Int& entry_bound,
                                  const Int& translation_bound) {
  switch (spec.family) {
    case Family::Pi2Minus:
    case Family::Pi3:
    case Family::Pi4:
    case Family::Pi5:
    case Family::Pi6:
    case Family::Pi7:
    case Family::Pi8:
      break;
    default:
      throw Error(Errc::BadInput,
                  family_name(spec.family) +
                      " admits automorphisms with finitely many classes");
  }
  RInfinityReport rep;
  for (const AutomorphismSpec& aut :
       enumerate_automorphisms(spec, entry_bound, translation_bound)) {
    ReidemeisterVerdict v = reidemeister(spec, aut);
    if (v.finite()) {
      std::string repro = "finite verdict " + v.value->get_str() + " for images:";
      for (const auto& [n, e] : aut.images) repro += " " + n + "->" + to_string(e);
      throw Error(Errc::CounterexampleFound, repro);
    }
    rep.entries.push_back({aut, v});
  }
  return rep;
}

}  // namespace solcrys
