#include "solcrys/json_io.hpp"

namespace solcrys {

namespace {

long long to_i64(const Int& v) {
  if (!v.fits_slong_p())
    throw Error(Errc::BadInput, "integer too large for JSON output: " + v.get_str());
  return v.get_si();
}

Int int_from_json(const json& j) {
  if (!j.is_number_integer())
    throw Error(Errc::BadInput, "expected an integer, got " + j.dump());
  return Int(static_cast<long>(j.get<long long>()));
}

}  // namespace

json to_json(const Vec2& v) { return json::array({to_i64(v.x), to_i64(v.y)}); }

json to_json(const Mat2& m) {
  return json::array({to_i64(m.a), to_i64(m.b), to_i64(m.c), to_i64(m.d)});
}

Vec2 vec2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw Error(Errc::BadInput, "expected a 2-element integer array");
  return Vec2{int_from_json(j[0]), int_from_json(j[1])};
}

Mat2 mat2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw Error(Errc::BadInput, "expected a row-major 4-element integer array");
  return Mat2(int_from_json(j[0]), int_from_json(j[1]), int_from_json(j[2]),
              int_from_json(j[3]));
}

json to_json(const GroupElement& g, const GroupSpec&) {
  json j;
  j["x"] = to_json(g.x);
  j["z"] = to_i64(g.z);
  j["v"] = g.v;
  j["w"] = g.w;
  return j;
}

GroupElement element_from_json(const json& j, const GroupSpec& spec) {
  if (!j.is_object()) throw Error(Errc::BadInput, "element must be an object");
  Vec2 x = j.contains("x") ? vec2_from_json(j.at("x")) : Vec2{0, 0};
  Int z = j.contains("z") ? int_from_json(j.at("z")) : Int(0);
  Int v = j.contains("v") ? int_from_json(j.at("v")) : Int(0);
  Int w = j.contains("w") ? int_from_json(j.at("w")) : Int(0);
  return make_element(spec, x, z, v, w);
}

json to_json(const GroupSpec& spec) {
  json j;
  j["family"] = family_name(spec.family);
  j["A"] = to_json(spec.a);
  if (spec.n_matrix) j["N"] = to_json(*spec.n_matrix);
  if (spec.m_matrix) j["M"] = to_json(*spec.m_matrix);
  if (!spec.params.empty()) {
    json p = json::object();
    for (const auto& [name, v] : spec.params) p[name] = to_json(v);
    j["params"] = p;
  }
  if (spec.eta) j["eta"] = *spec.eta;
  return j;
}

GroupSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::BadInput, "spec must be a JSON object");
  GroupSpec s;
  if (!j.contains("family") || !j.at("family").is_string())
    throw Error(Errc::BadInput, "spec needs a \"family\" string");
  auto fam = family_from_name(j.at("family").get<std::string>());
  if (!fam)
    throw Error(Errc::BadInput,
                "unknown family '" + j.at("family").get<std::string>() + "'");
  s.family = *fam;
  if (!j.contains("A"))
    throw Error(Errc::BadInput, "spec needs the defining matrix \"A\"");
  s.a = mat2_from_json(j.at("A"));
  if (j.contains("N")) s.n_matrix = mat2_from_json(j.at("N"));
  if (j.contains("M")) s.m_matrix = mat2_from_json(j.at("M"));
  if (j.contains("params")) {
    if (!j.at("params").is_object())
      throw Error(Errc::BadInput, "\"params\" must be an object");
    for (const auto& [name, v] : j.at("params").items())
      s.params[name] = vec2_from_json(v);
  }
  if (j.contains("eta")) s.eta = j.at("eta").get<int>();
  return s;
}

json to_json(const AutomorphismSpec& aut, const GroupSpec& spec) {
  json images = json::object();
  for (const auto& [name, e] : aut.images) images[name] = to_json(e, spec);
  json j;
  j["images"] = images;
  j["type"] = to_string(aut.type_tag);
  j["det_F"] = to_i64(aut.det_f());
  j["det_phi"] = to_i64(aut.det_phi());
  j["lattice_part"]["F"] = to_json(aut.lattice_part.f);
  j["lattice_part"]["p"] = to_json(aut.lattice_part.p);
  j["lattice_part"]["epsilon"] = to_i64(aut.lattice_part.epsilon);
  return j;
}

std::map<std::string, GroupElement> images_from_json(const json& j,
                                                     const GroupSpec& spec) {
  const json& im = j.contains("images") ? j.at("images") : j;
  if (!im.is_object())
    throw Error(Errc::BadInput, "automorphism needs an \"images\" object");
  std::map<std::string, GroupElement> out;
  for (const auto& [name, e] : im.items())
    out[name] = element_from_json(e, spec);
  return out;
}

namespace {

json certificate_to_json(const InfinityCertificate& cert, const GroupSpec& spec) {
  json j;
  if (std::holds_alternative<SurjectionToZCert>(cert)) {
    const auto& c = std::get<SurjectionToZCert>(cert);
    j["kind"] = "surjection_to_Z";
    j["coset"] = to_json(c.coset, spec);
  } else if (std::holds_alternative<SingularCert>(cert)) {
    const auto& c = std::get<SingularCert>(cert);
    j["kind"] = "singular_matrix";
    j["coset"] = to_json(c.coset, spec);
    j["witness_j"] = to_i64(c.witness_j);
    j["F"] = to_json(c.f);
    j["A_sub"] = to_json(c.a_sub);
  } else {
    const auto& c = std::get<TypeITwistCert>(cert);
    j["kind"] = "type_I_twist";
    j["coset"] = to_json(c.coset, spec);
  }
  return j;
}

}  // namespace

json to_json(const ReidemeisterVerdict& v, const GroupSpec& spec) {
  json j;
  if (v.finite())
    j["R"] = to_i64(*v.value);
  else
    j["R"] = "infinity";
  if (v.lower_bound_only) j["lower_bound_only"] = true;
  if (!v.class_reps.empty()) {
    json reps = json::array();
    for (const auto& r : v.class_reps) reps.push_back(to_json(r, spec));
    j["class_reps"] = reps;
  }
  if (v.certificate) j["certificate"] = certificate_to_json(*v.certificate, spec);
  if (!v.breakdown.empty()) {
    json b = json::array();
    for (const auto& cv : v.breakdown) {
      json e;
      e["coset"] = to_json(cv.coset, spec);
      e["F"] = to_json(cv.f);
      e["p"] = to_json(cv.p);
      e["epsilon"] = to_i64(cv.epsilon);
      e["R"] = cv.value ? json(to_i64(*cv.value)) : json("infinity");
      b.push_back(e);
    }
    j["breakdown"] = b;
  }
  j["theorem"] = v.rule;
  j["det_F"] = to_i64(v.det_f);
  j["det_phi"] = to_i64(v.det_phi);
  return j;
}

json to_json(const WindowReport& w) {
  json j;
  j["x_bound"] = w.x_bound;
  j["z_bound"] = w.z_bound;
  json h = json::array();
  for (const auto& c : w.history) h.push_back(to_i64(c));
  j["history"] = h;
  j["stabilized"] = w.stabilized;
  j["count"] = to_i64(w.final_count);
  return j;
}

json quotient_to_json(const AbelianQuotient& q) {
  json j;
  json f = json::array();
  for (const auto& d : q.invariant_factors) f.push_back(to_i64(d));
  j["invariant_factors"] = f;
  j["rank_deficiency"] = q.rank_deficiency;
  if (q.finite()) {
    j["order"] = to_i64(q.order());
    json reps = json::array();
    for (const auto& r : q.coset_reps) reps.push_back(to_json(r));
    j["coset_reps"] = reps;
  } else {
    j["order"] = "infinite";
  }
  return j;
}

}  // namespace solcrys
