#include "solcrys/oracle.hpp"

#include <algorithm>
#include <map>

namespace solcrys {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = int(i);
  }
  int find(int i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(int i, int j) { parent[find(i)] = find(j); }
};

struct ElemLess {
  bool operator()(const GroupElement& a, const GroupElement& b) const {
    return elem_less(a, b);
  }
};

Int max_norm(const Vec2& v) { return std::max(abs(v.x), abs(v.y)); }

}  // namespace

std::optional<GroupElement> WindowReport::class_of(const GroupElement& g) const {
  for (const auto& [e, rep] : representative_map)
    if (e == g) return rep;
  return std::nullopt;
}

WindowReport window_class_count(const GroupSpec& spec, const AutomorphismSpec& aut,
                                long x_bound, long z_bound) {
  if (x_bound < 1 || z_bound < 1)
    throw Error(Errc::BadInput, "window bounds must be at least 1");
  WindowReport rep;
  rep.x_bound = x_bound;
  rep.z_bound = z_bound;

  // conjugator letters: generators and inverses, with their phi-images
  std::vector<std::pair<GroupElement, GroupElement>> letters;
  for (const std::string& name : generator_names(spec.family)) {
    GroupElement g = generator_element(spec, name);
    GroupElement gi = invert(g, spec);
    letters.push_back({g, invert(apply_automorphism(spec, aut, g), spec)});
    letters.push_back({gi, invert(apply_automorphism(spec, aut, gi), spec)});
  }

  const int vord = std::max(spec.ops.alpha_ord, 1);
  const int word = spec.ops.has_beta ? 2 : 1;
  const long core = 1;  // the measured elements; merges route through the
                        // whole radius-r window, so counts only decrease

  auto run_radius = [&](long r, bool want_reps) {
    std::map<GroupElement, int, ElemLess> index;
    std::vector<GroupElement> elems;
    for (long x1 = -r; x1 <= r; ++x1)
      for (long x2 = -r; x2 <= r; ++x2)
        for (long z = -z_bound; z <= z_bound; ++z)
          for (int v = 0; v < vord; ++v)
            for (int w = 0; w < word; ++w) {
              GroupElement e = make_element(spec, Vec2{x1, x2}, z, v, w);
              // collection can move the lattice part; keep honest windows
              if (max_norm(e.x) > r || abs(e.z) > z_bound) continue;
              if (!index.count(e)) {
                index.emplace(e, int(elems.size()));
                elems.push_back(e);
              }
            }
    Dsu dsu(elems.size());
    for (size_t i = 0; i < elems.size(); ++i)
      for (const auto& [c, phic_inv] : letters) {
        GroupElement t =
            multiply(multiply(c, elems[i], spec), phic_inv, spec);
        if (max_norm(t.x) > r || abs(t.z) > z_bound) continue;
        auto it = index.find(t);
        if (it != index.end()) dsu.unite(int(i), it->second);
      }
    std::map<int, GroupElement> least;
    for (size_t i = 0; i < elems.size(); ++i) {
      if (max_norm(elems[i].x) > core) continue;
      int root = dsu.find(int(i));
      auto it = least.find(root);
      if (it == least.end())
        least.emplace(root, elems[i]);
      else if (elem_less(elems[i], it->second))
        it->second = elems[i];
    }
    if (want_reps)
      for (size_t i = 0; i < elems.size(); ++i) {
        if (max_norm(elems[i].x) > core) continue;
        rep.representative_map.push_back(
            {elems[i], least.at(dsu.find(int(i)))});
      }
    return Int(least.size());
  };

  for (long r = 1; r <= x_bound; ++r)
    rep.history.push_back(run_radius(r, r == x_bound));
  rep.final_count = rep.history.back();
  rep.stabilized = rep.history.size() >= 2 &&
                   rep.history.back() == rep.history[rep.history.size() - 2];
  return rep;
}

// --- finite quotient oracle ---------------------------------------------

namespace {

struct QuotientCtx {
  const GroupSpec* spec = nullptr;
  long order_t = 1;  // multiplicative order of the lattice action mod n
  AbelianQuotient lat;
  std::vector<GroupElement> elems;
  std::map<GroupElement, int, ElemLess> index;

  GroupElement reduce(const GroupElement& g) const {
    GroupElement r = g;
    r.x = lat.reduce(r.x);
    Int z = r.z % order_t;
    if (z < 0) z += order_t;
    r.z = z;
    return r;
  }
  int id_of(const GroupElement& g) const { return index.at(reduce(g)); }
};

long lattice_order_mod(const Mat2& a, long n) {
  auto modm = [&](const Mat2& m) {
    auto mm = [&](const Int& v) {
      Int r = v % n;
      if (r < 0) r += n;
      return r;
    };
    return Mat2(mm(m.a), mm(m.b), mm(m.c), mm(m.d));
  };
  Mat2 acc = modm(a);
  const Mat2 I = Mat2::identity();
  for (long j = 1; j <= 1 << 20; ++j) {
    if (acc == I) return j;
    acc = modm(acc * a);
  }
  throw Error(Errc::BadInput, "lattice action order mod n not found");
}

QuotientCtx build_quotient(const GroupSpec& spec, const AutomorphismSpec* aut,
                           long n) {
  if (spec.family != Family::GammaA && spec.family != Family::Pi1)
    throw Error(Errc::BadInput,
                "finite quotient oracle supports GammaA and Pi1 only");
  if (n < 2) throw Error(Errc::BadInput, "modulus must be at least 2");
  QuotientCtx q;
  q.spec = &spec;
  // Direction-reversing twists move the T-exponent in steps of two, so the
  // quotient's T-order must be even for the class structure to descend
  // separably; double an odd multiplicative order.
  q.order_t = lattice_order_mod(spec.a, n);
  if (q.order_t % 2) q.order_t *= 2;

  // normal sublattice: n Z^2 plus whatever makes T^order central and the
  // automorphism descend, closed under the lattice actions
  std::vector<Vec2> gens = {Vec2{n, 0}, Vec2{0, n}};
  Mat2 series = Mat2::zero();
  for (long j = 0; j < q.order_t; ++j) series = series + spec.a.pow(j);
  if (spec.family == Family::Pi1) gens.push_back(series * spec.param("k"));
  std::vector<Mat2> actions = {spec.a, -Mat2::identity()};
  if (aut) {
    gens.push_back(power(aut->images.at("t"), q.order_t, spec).x);
    actions.push_back(aut->lattice_part.f);
  }
  for (bool grew = true; grew;) {
    grew = false;
    auto quot = lattice_quotient(gens);
    for (const Mat2& act : actions)
      for (size_t i = 0; i < gens.size(); ++i) {
        Vec2 w = act * gens[i];
        if (!quot.contains(w)) {
          gens.push_back(w);
          grew = true;
        }
      }
  }
  q.lat = lattice_quotient(gens);
  if (!q.lat.finite())
    throw Error(Errc::BadInput, "quotient lattice unexpectedly infinite");

  const int word = spec.ops.has_beta ? 2 : 1;
  for (const Vec2& x : q.lat.coset_reps)
    for (long z = 0; z < q.order_t; ++z)
      for (int w = 0; w < word; ++w) {
        GroupElement e = q.reduce(make_element(spec, x, z, 0, w));
        if (!q.index.count(e)) {
          q.index.emplace(e, int(q.elems.size()));
          q.elems.push_back(e);
        }
      }
  return q;
}

Int count_classes(const QuotientCtx& q,
                  const std::function<GroupElement(const GroupElement&)>& twist) {
  const GroupSpec& spec = *q.spec;
  Dsu dsu(q.elems.size());
  for (size_t i = 0; i < q.elems.size(); ++i) {
    for (const GroupElement& c : q.elems) {
      GroupElement t = multiply(multiply(c, q.elems[i], spec),
                                invert(twist(c), spec), spec);
      dsu.unite(int(i), q.id_of(t));
    }
  }
  std::vector<bool> seen(q.elems.size(), false);
  Int count = 0;
  for (size_t i = 0; i < q.elems.size(); ++i) {
    int r = dsu.find(int(i));
    if (!seen[r]) {
      seen[r] = true;
      count += 1;
    }
  }
  return count;
}

}  // namespace

Int finite_quotient_order(const GroupSpec& spec, long n) {
  QuotientCtx q = build_quotient(spec, nullptr, n);
  return Int(q.elems.size());
}

Int finite_quotient_count(const GroupSpec& spec, const AutomorphismSpec& aut,
                          long n) {
  QuotientCtx q = build_quotient(spec, &aut, n);
  return count_classes(q, [&](const GroupElement& c) {
    return q.reduce(apply_automorphism(spec, aut, c));
  });
}

Int finite_quotient_conjugacy_classes(const GroupSpec& spec, long n) {
  QuotientCtx q = build_quotient(spec, nullptr, n);
  return count_classes(q, [](const GroupElement& c) { return c; });
}

// --- certificate checking -------------------------------------------------

CertificateCheck check_infinity_certificate(const InfinityCertificate& cert,
                                            const GroupSpec& spec,
                                            const AutomorphismSpec& aut) {
  CharacteristicSubgroupInfo sub = characteristic_subgroup(spec);
  auto restriction = [&](const GroupElement& coset) {
    return restrict_twisted(spec, aut, sub, coset);
  };
  if (std::holds_alternative<SurjectionToZCert>(cert)) {
    const auto& c = std::get<SurjectionToZCert>(cert);
    // the projection onto the s-exponent kills a1, a2 by construction;
    // the certificate holds when the twisted restriction fixes it pointwise
    LatticeRestriction r = restriction(c.coset);
    if (r.epsilon == 1)
      return {true, "twisted restriction induces the identity on the base"};
    return {false, "base map has sign " + r.epsilon.get_str()};
  }
  if (std::holds_alternative<SingularCert>(cert)) {
    const auto& c = std::get<SingularCert>(cert);
    LatticeRestriction r = restriction(c.coset);
    if (r.f != c.f)
      return {false, "certificate lattice matrix differs from the restriction"};
    if (c.a_sub != sub.a_sub)
      return {false, "certificate sublattice matrix differs"};
    Mat2 m = Mat2::identity() - sub.a_sub.pow(c.witness_j) * c.f;
    if (m.det() == 0) return {true, "det(I - A^j F) = 0 verified"};
    return {false, "det(I - A^j F) = " + m.det().get_str() + ", not singular"};
  }
  const auto& c = std::get<TypeITwistCert>(cert);
  if (c.coset == identity_element())
    return {false, "type-I twist certificate needs a nontrivial coset"};
  LatticeRestriction r = restriction(c.coset);
  if (r.epsilon == 1) return {true, "coset twist restricts to type I"};
  return {false, "coset twist has base sign " + r.epsilon.get_str()};
}

}  // namespace solcrys
