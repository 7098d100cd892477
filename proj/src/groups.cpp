#include "solcrys/groups.hpp"

#include <algorithm>
#include <sstream>

namespace solcrys {

std::string family_name(Family f) {
  switch (f) {
    case Family::GammaA: return "GammaA";
    case Family::Pi1: return "Pi1";
    case Family::Pi2Plus: return "Pi2Plus";
    case Family::Pi2Minus: return "Pi2Minus";
    case Family::Pi3: return "Pi3";
    case Family::Pi4: return "Pi4";
    case Family::Pi5: return "Pi5";
    case Family::Pi6: return "Pi6";
    case Family::Pi7: return "Pi7";
    case Family::Pi8: return "Pi8";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
  for (Family f : {Family::GammaA, Family::Pi1, Family::Pi2Plus, Family::Pi2Minus,
                   Family::Pi3, Family::Pi4, Family::Pi5, Family::Pi6, Family::Pi7,
                   Family::Pi8})
    if (family_name(f) == s) return f;
  return std::nullopt;
}

HyperbolicMatrix HyperbolicMatrix::checked(const Mat2& m) {
  if (m.det() != 1)
    throw Error(Errc::InvalidHyperbolic,
                "determinant must be 1, got " + m.det().get_str());
  if (m.trace() <= 2)
    throw Error(Errc::InvalidHyperbolic,
                "trace must exceed 2, got " + m.trace().get_str());
  if (m.b == 0 || m.c == 0)
    throw Error(Errc::InvalidHyperbolic, "off-diagonal entries must be nonzero");
  return HyperbolicMatrix{m};
}

std::string to_string(const GroupElement& g) {
  std::ostringstream os;
  os << "a^" << g.x << " T^" << g.z;
  if (g.v) os << " alpha^" << g.v;
  if (g.w) os << " beta^" << g.w;
  return os.str();
}

Vec2 GroupSpec::param(const std::string& name) const {
  auto it = params.find(name);
  return it == params.end() ? Vec2{0, 0} : it->second;
}

// --- generator bookkeeping --------------------------------------------------

std::vector<std::string> generator_names(Family f) {
  switch (f) {
    case Family::GammaA: return {"a1", "a2", "t"};
    case Family::Pi1: return {"a1", "a2", "t", "beta"};
    case Family::Pi2Plus:
    case Family::Pi2Minus: return {"a1", "a2", "beta"};
    case Family::Pi3: return {"a1", "a2", "t", "beta"};
    case Family::Pi4: return {"a1", "a2", "alpha", "beta"};
    case Family::Pi5: return {"a1", "a2", "t", "alpha", "beta"};
    case Family::Pi6: return {"a1", "a2", "alpha", "beta"};
    case Family::Pi7: return {"a1", "a2", "t", "alpha"};
    case Family::Pi8: return {"a1", "a2", "alpha", "beta"};
  }
  return {};
}

std::string infinite_generator(Family f) {
  switch (f) {
    case Family::GammaA:
    case Family::Pi1:
    case Family::Pi3:
    case Family::Pi5:
    case Family::Pi7: return "t";
    case Family::Pi6: return "alpha";
    default: return "beta";
  }
}

GroupElement generator_element(const GroupSpec& spec, const std::string& name) {
  GroupElement g;
  if (name == "a1") {
    g.x = Vec2{1, 0};
  } else if (name == "a2") {
    g.x = Vec2{0, 1};
  } else if (name == infinite_generator(spec.family)) {
    g.z = 1;
  } else if (name == "alpha" && spec.ops.alpha_ord) {
    g.v = 1;
  } else if (name == "beta" && spec.ops.has_beta) {
    g.w = 1;
  } else {
    throw Error(Errc::BadInput,
                "unknown generator '" + name + "' for " + family_name(spec.family));
  }
  return g;
}

// --- public arithmetic ------------------------------------------------------

GroupElement identity_element() { return GroupElement{}; }

GroupElement multiply(const GroupElement& g, const GroupElement& h,
                      const GroupSpec& spec) {
  return engine::mul(spec.ops, g, h);
}

GroupElement invert(const GroupElement& g, const GroupSpec& spec) {
  return engine::inv(spec.ops, g);
}

GroupElement power(const GroupElement& g, const Int& k, const GroupSpec& spec) {
  if (k < 0) return power(invert(g, spec), -k, spec);
  GroupElement r;
  for (Int i = 0; i < k; ++i) r = engine::mul(spec.ops, r, g);
  return r;
}

GroupElement make_element(const GroupSpec& spec, const Vec2& x, const Int& z,
                          const Int& v, const Int& w) {
  const FamilyOps& F = spec.ops;
  if (F.alpha_ord == 0 && v != 0)
    throw Error(Errc::BadInput, family_name(spec.family) + " has no alpha generator");
  if (!F.has_beta && w != 0)
    throw Error(Errc::BadInput, family_name(spec.family) + " has no torsion beta");
  GroupElement g;
  engine::append_lattice(F, g, x);
  int e = z > 0 ? 1 : -1;
  for (Int i = 0; i < abs(z); ++i) engine::append_t(F, g, e);
  if (F.alpha_ord) {
    Int vm = ((v % F.alpha_ord) + F.alpha_ord) % F.alpha_ord;
    for (Int i = 0; i < vm; ++i) engine::append_alpha(F, g);
  }
  if (F.has_beta) {
    Int wm = ((w % 2) + 2) % 2;
    for (Int i = 0; i < wm; ++i) engine::append_beta(F, g);
  }
  return g;
}

// --- relators ---------------------------------------------------------------

namespace {

RelLetter gen(const std::string& n, int e = 1) {
  RelLetter l;
  l.gen = n;
  l.e = e;
  return l;
}
RelLetter lat(const Vec2& v) {
  RelLetter l;
  l.is_lattice = true;
  l.vec = v;
  return l;
}

// g a_i g^{-1} = a^{action e_i} for i = 1,2
void conj_relators(std::vector<Relator>& out, const std::string& g,
                   const Mat2& action) {
  out.push_back({g + "-a1", {gen(g), gen("a1"), gen(g, -1), lat(-action.column(0))}});
  out.push_back({g + "-a2", {gen(g), gen("a2"), gen(g, -1), lat(-action.column(1))}});
}

}  // namespace

std::vector<Relator> relators(const GroupSpec& spec) {
  std::vector<Relator> out;
  out.push_back({"a1-a2", {gen("a1"), gen("a2"), gen("a1", -1), gen("a2", -1)}});
  const Mat2 I = Mat2::identity();
  Vec2 k = spec.param("k"), kp = spec.param("kprime"), m = spec.param("m"),
       n = spec.param("n");
  switch (spec.family) {
    case Family::GammaA:
      conj_relators(out, "t", spec.a);
      break;
    case Family::Pi1:
      conj_relators(out, "t", spec.a);
      conj_relators(out, "beta", -I);
      out.push_back({"beta^2", {gen("beta"), gen("beta")}});
      out.push_back({"beta-t",
                     {gen("beta"), gen("t"), gen("beta", -1), gen("t", -1), lat(-k)}});
      break;
    case Family::Pi2Plus:
    case Family::Pi2Minus:
      conj_relators(out, "beta", *spec.n_matrix);
      break;
    case Family::Pi3:
      conj_relators(out, "t", spec.a);
      conj_relators(out, "beta", *spec.m_matrix);
      out.push_back({"beta^2", {gen("beta"), gen("beta"), lat(-k)}});
      out.push_back({"beta-t",
                     {gen("beta"), gen("t"), gen("beta", -1), gen("t"), lat(-kp)}});
      break;
    case Family::Pi4:
      conj_relators(out, "alpha", -I);
      conj_relators(out, "beta", *spec.n_matrix);
      out.push_back({"alpha^2", {gen("alpha"), gen("alpha")}});
      out.push_back({"alpha-beta",
                     {gen("alpha"), gen("beta"), gen("alpha", -1), gen("beta", -1),
                      lat(-k)}});
      break;
    case Family::Pi5:
      conj_relators(out, "t", spec.a);
      conj_relators(out, "alpha", -I);
      conj_relators(out, "beta", *spec.m_matrix);
      out.push_back({"alpha^2", {gen("alpha"), gen("alpha")}});
      out.push_back({"beta^2", {gen("beta"), gen("beta"), lat(-k)}});
      out.push_back({"alpha-beta-comm",
                     {gen("alpha"), gen("beta"), gen("alpha", -1), gen("beta", -1),
                      lat(-n)}});
      out.push_back({"alpha-t",
                     {gen("alpha"), gen("t"), gen("alpha", -1), gen("t", -1), lat(-m)}});
      out.push_back({"beta-t",
                     {gen("beta"), gen("t"), gen("beta", -1), gen("t"), lat(-kp)}});
      break;
    case Family::Pi6:
      conj_relators(out, "alpha", *spec.n_matrix);
      conj_relators(out, "beta", *spec.m_matrix);
      out.push_back({"beta^2", {gen("beta"), gen("beta"), lat(-k)}});
      out.push_back({"beta-alpha",
                     {gen("beta"), gen("alpha"), gen("beta", -1), gen("alpha"),
                      lat(-kp)}});
      break;
    case Family::Pi7:
      conj_relators(out, "t", spec.a);
      conj_relators(out, "alpha", *spec.m_matrix);
      out.push_back({"alpha^4",
                     {gen("alpha"), gen("alpha"), gen("alpha"), gen("alpha")}});
      out.push_back({"alpha-t",
                     {gen("alpha"), gen("t"), gen("alpha", -1), gen("t"), lat(-k)}});
      break;
    case Family::Pi8:
      conj_relators(out, "beta", *spec.n_matrix);
      conj_relators(out, "alpha", *spec.m_matrix);
      out.push_back({"alpha^4",
                     {gen("alpha"), gen("alpha"), gen("alpha"), gen("alpha")}});
      out.push_back({"alpha-beta^2",
                     {gen("alpha"), gen("beta"), gen("beta"), gen("alpha", -1),
                      gen("beta"), gen("beta"), lat(-k)}});
      out.push_back({"alpha-beta-flip",
                     {gen("alpha"), gen("beta", -1), gen("alpha"), gen("beta", -1),
                      lat(-m)}});
      break;
  }
  return out;
}

// --- parameter spaces -------------------------------------------------------

namespace {

AbelianQuotient kernel_quotient(const Mat2& kernel_of, const Mat2& image_of,
                                const Int& scale = 1) {
  auto ker = kernel_vectors(kernel_of);
  Mat2 amb = Mat2::zero();
  if (ker.size() >= 1) {
    amb.a = ker[0].x;
    amb.c = ker[0].y;
  }
  if (ker.size() >= 2) {
    amb.b = ker[1].x;
    amb.d = ker[1].y;
  }
  std::vector<Vec2> img;
  for (int j = 0; j < 2; ++j) {
    Vec2 c = scale * image_of.column(j);
    if (!c.is_zero()) img.push_back(c);
  }
  if (img.empty()) img.push_back(Vec2{0, 0});
  return lattice_quotient(img, amb);
}

}  // namespace

std::map<std::string, AbelianQuotient> parameter_space(
    Family family, const Mat2& a, const std::optional<Mat2>& n_matrix,
    const std::optional<Mat2>& m_matrix, int eta) {
  const Mat2 I = Mat2::identity();
  std::map<std::string, AbelianQuotient> out;
  switch (family) {
    case Family::GammaA:
    case Family::Pi2Plus:
    case Family::Pi2Minus:
      break;
    case Family::Pi1: {
      Mat2 ima = I - a;
      out.emplace("k", lattice_quotient(std::vector<Vec2>{
                           Vec2{2, 0}, Vec2{0, 2}, ima.column(0), ima.column(1)}));
      break;
    }
    case Family::Pi3: {
      const Mat2& m = *m_matrix;
      out.emplace("k", kernel_quotient(I - m, I + m));
      out.emplace("k'-k", kernel_quotient(a - m, a.inverse() + m));
      break;
    }
    case Family::Pi4: {
      Mat2 imn = I - *n_matrix;
      out.emplace("k", lattice_quotient(std::vector<Vec2>{
                           Vec2{2, 0}, Vec2{0, 2}, imn.column(0), imn.column(1)}));
      break;
    }
    case Family::Pi5: {
      const Mat2& m = *m_matrix;
      out.emplace("k", kernel_quotient(I - m, I + m));
      out.emplace("n+k", kernel_quotient(I + m, I - m));
      out.emplace("k'-k", kernel_quotient(I - a.inverse() * m, I + m * a, eta));
      out.emplace("m-n+M(k'-k)", kernel_quotient(a.inverse() + m, a - m));
      break;
    }
    case Family::Pi6: {
      const Mat2& m = *m_matrix;
      const Mat2& n = *n_matrix;
      out.emplace("k", kernel_quotient(I - m, I + m));
      out.emplace("k'-k", kernel_quotient(n - m, n.inverse() + m));
      break;
    }
    case Family::Pi7: {
      Mat2 g1 = *m_matrix + a.inverse(), g2 = I - a.inverse();
      out.emplace("k", lattice_quotient(std::vector<Vec2>{
                           g1.column(0), g1.column(1), g2.column(0), g2.column(1)}));
      break;
    }
    case Family::Pi8: {
      const Mat2& m = *m_matrix;
      const Mat2& n = *n_matrix;
      Mat2 g1 = I - a.inverse(), g2 = (m + a.inverse()) * (I + n);
      out.emplace("k", lattice_quotient(std::vector<Vec2>{
                           g1.column(0), g1.column(1), g2.column(0), g2.column(1)}));
      out.emplace("m", kernel_quotient(m + n.inverse(), m + n));
      break;
    }
  }
  return out;
}

// --- reverser normalization and eta -----------------------------------------

int reflection_class(const Mat2& m) {
  if (m.trace() != 0 || m.det() != -1)
    throw Error(Errc::BadInput, "reflection_class expects a traceless det -1 matrix");
  auto kp = kernel_vectors(Mat2::identity() - m);
  auto km = kernel_vectors(Mat2::identity() + m);
  if (kp.size() != 1 || km.size() != 1)
    throw Error(Errc::BadInput, "unexpected kernel ranks for an involution");
  Int idx = abs(Mat2::from_columns(km[0], kp[0]).det());
  if (idx == 1) return 0;
  if (idx == 2) return 1;
  throw Error(Errc::BadInput, "involution eigenlattice index out of range");
}

namespace {

// All unimodular P with P*m*P^{-1} = target, entries within bound.
std::vector<Mat2> conjugators_to(const Mat2& m, const Mat2& target, const Int& bound) {
  linsys::IMat sys(4, linsys::IVec(4));
  const Mat2 basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (int j = 0; j < 4; ++j) {
    Mat2 img = basis[j] * m - target * basis[j];
    sys[0][j] = img.a;
    sys[1][j] = img.b;
    sys[2][j] = img.c;
    sys[3][j] = img.d;
  }
  std::vector<Mat2> out;
  for (const auto& p : linsys::solve_in_box(sys, {0, 0, 0, 0}, bound)) {
    Mat2 x(p[0], p[1], p[2], p[3]);
    if (x.is_unimodular()) out.push_back(x);
  }
  std::sort(out.begin(), out.end(),
            [](const Mat2& l, const Mat2& r) { return lex_less(l, r); });
  return out;
}

}  // namespace

EtaResult eta_test(const Mat2& a, const Mat2& m, const Int& conjugator_bound) {
  const Mat2 target(-1, 1, 0, 1);
  EtaResult res;
  res.bound_used = conjugator_bound;
  auto ps = conjugators_to(m, target, conjugator_bound);
  if (ps.empty()) {
    if (reflection_class(m) == 0) {
      res.eta = 1;  // split class, provably never conjugate to the target
      return res;
    }
    res.eta = 0;
    return res;
  }
  // The full solution set is Centralizer(target) * P0 and that centralizer
  // is finite, so the normalization orbit is exhausted below.
  const Mat2 cent[4] = {Mat2::identity(), -Mat2::identity(), Mat2(1, -1, 0, -1),
                        Mat2(-1, 1, 0, 1)};
  for (const Mat2& x : cent) {
    Mat2 q = x * ps.front();
    Mat2 ap = q * a * q.inverse();
    Int g1 = gcd(ap.d - 1, ap.c), g2 = gcd(ap.d + 1, ap.c);
    if (g1 == 0 || g2 == 0) continue;
    Int q1 = ap.c / g1, q2 = ap.c / g2;
    if (even(q1) && even(q2)) {
      res.eta = 2;
      res.conjugator = q;
      return res;
    }
  }
  res.eta = 1;
  return res;
}

// --- spec validation ----------------------------------------------------------

namespace {

Mat2 checked_root(const GroupSpec& s, int want_det) {
  auto roots = integral_square_roots(s.a);
  std::vector<Mat2> with_det;
  for (const auto& r : roots)
    if (r.det_n == want_det) with_det.push_back(r.n);
  std::string sign = want_det > 0 ? "+1" : "-1";
  if (!s.n_matrix) {
    if (with_det.empty())
      throw Error(Errc::MissingRoot,
                  family_name(s.family) + " needs a det " + sign +
                      " integral square root of A and none exists");
    std::string list;
    for (const auto& n : with_det) list += " " + to_string(n);
    throw Error(Errc::MissingRoot,
                family_name(s.family) +
                    " needs an explicit choice of N; candidates:" + list);
  }
  const Mat2& n = *s.n_matrix;
  if (n * n != s.a || n.det() != want_det)
    throw Error(Errc::MissingRoot,
                "supplied N is not a det " + sign + " integral square root of A");
  return n;
}

Mat2 checked_reverser(const GroupSpec& s, int want_det) {
  std::string sign = want_det > 0 ? "+1" : "-1";
  if (!s.m_matrix) {
    auto cands = reversing_matrices(s.a, want_det, 10);
    if (cands.empty())
      throw Error(Errc::MissingReverser,
                  family_name(s.family) + " needs a traceless det " + sign +
                      " matrix reversing A; none exists within entry bound 10");
    std::string list;
    for (size_t i = 0; i < cands.size() && i < 4; ++i)
      list += " " + to_string(cands[i]);
    throw Error(Errc::MissingReverser,
                family_name(s.family) +
                    " needs an explicit choice of M; candidates:" + list);
  }
  const Mat2& m = *s.m_matrix;
  if (m.trace() != 0 || m.det() != want_det ||
      m * s.a * m.inverse() != s.a.inverse())
    throw Error(Errc::MissingReverser,
                "supplied M is not a traceless det " + sign + " reverser of A");
  return m;
}

void require_member(const AbelianQuotient& space, const Vec2& v,
                    const std::string& what) {
  if (!space.in_ambient(v))
    throw Error(Errc::ParamOutOfSpace,
                what + " = " + to_string(v) + " lies outside its kernel sublattice");
}

FamilyOps build_ops(const GroupSpec& s) {
  FamilyOps F;
  F.family = s.family;
  const Mat2 I = Mat2::identity();
  switch (s.family) {
    case Family::GammaA:
      F.theta = s.a;
      break;
    case Family::Pi1:
      F.theta = s.a;
      F.has_beta = true;
      F.c_beta = -I;
      F.d_beta = s.param("k");
      F.eps_beta = 1;
      break;
    case Family::Pi2Plus:
    case Family::Pi2Minus:
      F.theta = *s.n_matrix;
      break;
    case Family::Pi3:
      F.theta = s.a;
      F.has_beta = true;
      F.c_beta = *s.m_matrix;
      F.d_beta = s.param("kprime");
      F.eps_beta = -1;
      F.q_beta = s.param("k");
      break;
    case Family::Pi4:
      F.theta = *s.n_matrix;
      F.alpha_ord = 2;
      F.c_alpha = -I;
      F.d_alpha = s.param("k");
      F.eps_alpha = 1;
      break;
    case Family::Pi5:
      F.theta = s.a;
      F.alpha_ord = 2;
      F.c_alpha = -I;
      F.d_alpha = s.param("m");
      F.eps_alpha = 1;
      F.has_beta = true;
      F.c_beta = *s.m_matrix;
      F.d_beta = s.param("kprime");
      F.eps_beta = -1;
      F.q_beta = s.param("k");
      F.comm_n = s.param("n");
      break;
    case Family::Pi6:
      F.theta = *s.n_matrix;
      F.has_beta = true;
      F.c_beta = *s.m_matrix;
      F.d_beta = s.param("kprime");
      F.eps_beta = -1;
      F.q_beta = s.param("k");
      break;
    case Family::Pi7:
      F.theta = s.a;
      F.alpha_ord = 4;
      F.c_alpha = *s.m_matrix;
      F.d_alpha = s.param("k");
      F.eps_alpha = -1;
      break;
    case Family::Pi8: {
      const Mat2& n = *s.n_matrix;
      const Mat2& m = *s.m_matrix;
      F.theta = n;
      F.alpha_ord = 4;
      F.c_alpha = m;
      F.dihedral = true;
      Vec2 kv = s.param("k"), mv = s.param("m");
      // collection constants for alpha^v beta and alpha^v beta^{-1}
      F.bc[0] = Vec2{0, 0};
      F.bc[1] = mv - n.inverse() * (m * kv);
      F.bc[2] = m * F.bc[1] + mv;
      F.bc[3] = m * F.bc[2] + F.bc[1];
      F.bci[0] = Vec2{0, 0};
      F.bci[1] = mv;
      F.bci[2] = m * mv + F.bc[1];
      F.bci[3] = m * F.bci[2] + mv;
      break;
    }
  }
  return F;
}

void check_model_relators(const GroupSpec& s) {
  for (const Relator& r : relators(s)) {
    GroupElement acc;
    for (const RelLetter& l : r.word) {
      GroupElement g;
      if (l.is_lattice) {
        g.x = l.vec;
      } else {
        g = generator_element(s, l.gen);
        if (l.e < 0) g = invert(g, s);
      }
      acc = multiply(acc, g, s);
    }
    if (!(acc == GroupElement{}))
      throw Error(Errc::RelationViolated,
                  "defining relator '" + r.name + "' fails in the model for " +
                      family_name(s.family) + " (inconsistent parameters)");
  }
}

}  // namespace

GroupSpec validate_spec(GroupSpec s) {
  HyperbolicMatrix::checked(s.a);
  const Mat2 I = Mat2::identity();

  static const std::map<Family, std::vector<std::string>> allowed = {
      {Family::GammaA, {}},
      {Family::Pi1, {"k"}},
      {Family::Pi2Plus, {}},
      {Family::Pi2Minus, {}},
      {Family::Pi3, {"k", "kprime"}},
      {Family::Pi4, {"k"}},
      {Family::Pi5, {"k", "kprime", "m", "n"}},
      {Family::Pi6, {"k", "kprime"}},
      {Family::Pi7, {"k"}},
      {Family::Pi8, {"k", "m"}},
  };
  for (const auto& [name, v] : s.params) {
    const auto& ok = allowed.at(s.family);
    if (std::find(ok.begin(), ok.end(), name) == ok.end())
      throw Error(Errc::BadInput, "parameter '" + name + "' is not used by " +
                                      family_name(s.family));
  }

  int eta_val = 1;
  switch (s.family) {
    case Family::GammaA:
    case Family::Pi1:
      s.n_matrix.reset();
      s.m_matrix.reset();
      break;
    case Family::Pi2Plus:
      s.n_matrix = checked_root(s, +1);
      break;
    case Family::Pi2Minus:
      s.n_matrix = checked_root(s, -1);
      break;
    case Family::Pi3:
      s.m_matrix = checked_reverser(s, -1);
      break;
    case Family::Pi4:
      s.n_matrix = checked_root(s, -1);
      break;
    case Family::Pi5: {
      s.m_matrix = checked_reverser(s, -1);
      EtaResult er = eta_test(s.a, *s.m_matrix, 8);
      if (er.eta != 0) {
        if (s.eta && *s.eta != er.eta)
          throw Error(Errc::InconsistentAux,
                      "supplied eta contradicts the decided value " +
                          std::to_string(er.eta));
        eta_val = er.eta;
      } else {
        if (!s.eta)
          throw Error(Errc::SearchExhausted,
                      "eta undecided within the conjugator bound; supply \"eta\"");
        eta_val = *s.eta;
      }
      s.eta = eta_val;
      s.eta_result = er;
      break;
    }
    case Family::Pi6:
      s.n_matrix = checked_root(s, +1);
      s.m_matrix = checked_reverser(s, -1);
      if (*s.m_matrix * *s.n_matrix * s.m_matrix->inverse() != s.n_matrix->inverse())
        throw Error(Errc::InconsistentAux, "M does not reverse the chosen N");
      break;
    case Family::Pi7:
      s.m_matrix = checked_reverser(s, +1);
      break;
    case Family::Pi8: {
      s.n_matrix = checked_root(s, -1);
      s.m_matrix = checked_reverser(s, +1);
      Mat2 mnm = *s.m_matrix * *s.n_matrix * s.m_matrix->inverse();
      if (mnm != -(s.n_matrix->inverse()))
        throw Error(Errc::InconsistentAux, "M N M^{-1} = -N^{-1} fails");
      break;
    }
  }

  s.param_spaces = parameter_space(s.family, s.a, s.n_matrix, s.m_matrix, eta_val);

  switch (s.family) {
    case Family::GammaA:
    case Family::Pi2Plus:
    case Family::Pi2Minus:
      break;
    case Family::Pi1:
    case Family::Pi4:
    case Family::Pi7:
      s.params["k"] = s.param_spaces.at("k").reduce(s.param("k"));
      break;
    case Family::Pi3:
    case Family::Pi6: {
      Vec2 k = s.param("k"), kp = s.param("kprime");
      require_member(s.param_spaces.at("k"), k, "k");
      require_member(s.param_spaces.at("k'-k"), kp - k, "k'-k");
      Vec2 r1 = s.param_spaces.at("k").reduce(k);
      Vec2 r2 = s.param_spaces.at("k'-k").reduce(kp - k);
      s.params["k"] = r1;
      s.params["kprime"] = r1 + r2;
      break;
    }
    case Family::Pi5: {
      Vec2 k = s.param("k"), kp = s.param("kprime"), mv = s.param("m"),
           nv = s.param("n");
      require_member(s.param_spaces.at("k"), k, "k");
      require_member(s.param_spaces.at("n+k"), nv + k, "n+k");
      require_member(s.param_spaces.at("k'-k"), kp - k, "k'-k");
      require_member(s.param_spaces.at("m-n+M(k'-k)"),
                     mv - nv + *s.m_matrix * (kp - k), "m-n+M(k'-k)");
      Vec2 r1 = s.param_spaces.at("k").reduce(k);
      Vec2 r2 = s.param_spaces.at("n+k").reduce(nv + k);
      Vec2 r3 = s.param_spaces.at("k'-k").reduce(kp - k);
      Vec2 r4 = s.param_spaces.at("m-n+M(k'-k)")
                    .reduce(mv - nv + *s.m_matrix * (kp - k));
      s.params["k"] = r1;
      s.params["n"] = r2 - r1;
      s.params["kprime"] = r3 + r1;
      s.params["m"] = r4 + s.params["n"] - *s.m_matrix * r3;
      break;
    }
    case Family::Pi8: {
      Vec2 k = s.param("k"), mv = s.param("m");
      require_member(s.param_spaces.at("m"), mv, "m");
      Mat2 npm = *s.n_matrix + *s.m_matrix;
      if (!(npm * (k - mv)).is_zero())
        throw Error(Errc::ParamOutOfSpace,
                    "(N+M)(k-m) must vanish for the presentation to be consistent");
      Vec2 mc = s.param_spaces.at("m").reduce(mv);
      Vec2 want = npm * mc;
      Vec2 kc = s.param_spaces.at("k").reduce(k);
      std::optional<Vec2> best;
      for (const Vec2& cand : {kc, k})
        if ((npm * cand) == want && (!best || lex_less(cand, *best))) best = cand;
      if (!best) {
        // search k's class for a representative compatible with canonical m
        Mat2 g1 = I - s.a.inverse(),
             g2 = (*s.m_matrix + s.a.inverse()) * (I + *s.n_matrix);
        std::vector<Vec2> lat = {g1.column(0), g1.column(1), g2.column(0),
                                 g2.column(1)};
        linsys::IMat sys(2, linsys::IVec(lat.size()));
        for (size_t j = 0; j < lat.size(); ++j) {
          Vec2 col = npm * lat[j];
          sys[0][j] = col.x;
          sys[1][j] = col.y;
        }
        Vec2 rhs = want - npm * k;
        for (const auto& c : linsys::solve_in_box(sys, {rhs.x, rhs.y}, 8)) {
          Vec2 cand = k;
          for (size_t j = 0; j < lat.size(); ++j) cand += c[j] * lat[j];
          if (!best || lex_less(cand, *best)) best = cand;
        }
      }
      if (best) {
        s.params["m"] = mc;
        s.params["k"] = *best;
      }  // otherwise keep the raw, already validated pair
      break;
    }
  }

  if (s.m_matrix && s.m_matrix->det() == -1) {
    s.reflection_m = reflection_class(*s.m_matrix);
    Mat2 target(-1, s.reflection_m, 0, 1);
    auto ps = conjugators_to(*s.m_matrix, target, 8);
    if (!ps.empty()) {
      s.m_conjugator = ps.front();
      s.m_normalized = target;
    }
  }

  s.ops = build_ops(s);
  s.validated = true;
  check_model_relators(s);
  return s;
}

// --- Bieberbach test ---------------------------------------------------------

BieberbachVerdict is_bieberbach(const GroupSpec& spec) {
  switch (spec.family) {
    case Family::GammaA:
      return {true, "lattices of Sol are torsion free"};
    case Family::Pi2Plus:
    case Family::Pi2Minus:
      return {true, "Pi2+ and Pi2- are torsion free"};
    case Family::Pi3:
    case Family::Pi6: {
      bool m0 = spec.reflection_m == 0;
      bool k_nontrivial =
          m0 && !spec.param_spaces.at("k").contains(spec.param("k"));
      bool kp_nontrivial = !spec.param_spaces.at("k'-k").contains(
          spec.param("kprime") - spec.param("k"));
      if (m0 && k_nontrivial && kp_nontrivial)
        return {true,
                "reverser in the split class, k the nontrivial class, k' != k"};
      return {false,
              "torsion free only when the reverser is in the split class, k is "
              "the nontrivial class and k'-k is nonzero"};
    }
    default:
      return {false, family_name(spec.family) + " contains torsion"};
  }
}

}  // namespace solcrys
