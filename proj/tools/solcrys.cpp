// Command-line surface: validate specs, discover auxiliary matrices,
// compute twisted-conjugacy verdicts, run oracle cross-checks and
// enumeration surveys. One canonical JSON document on stdout; a short
// human summary on stderr (suppressed by --quiet).

#include "solcrys/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace solcrys;

namespace {

constexpr const char* kVersion = "1.0.0";

int exit_code_for(const Error& e) {
  switch (e.code) {
    case Errc::CounterexampleFound:
    case Errc::CertificateRejected:
      return 3;
    case Errc::SearchExhausted:
      return 4;
    default:
      return 2;
  }
}

json read_json_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(Errc::BadInput, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::BadInput, "invalid JSON in " + path);
  return j;
}

json run_report(const std::string& command, const json& input, json results) {
  json j;
  j["tool"] = {{"name", "solcrys"}, {"version", kVersion}};
  j["command"] = command;
  j["input"] = input;
  j["results"] = std::move(results);
  return j;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

json describe_spaces(const GroupSpec& spec) {
  json spaces = json::object();
  for (const auto& [name, q] : spec.param_spaces)
    spaces[name] = quotient_to_json(q);
  return spaces;
}

int cmd_validate(const std::string& file, bool quiet) {
  Timer timer;
  json input = read_json_input(file);
  GroupSpec spec = validate_spec(spec_from_json(input));
  auto bb = is_bieberbach(spec);

  json results;
  results["spec"] = to_json(spec);
  results["parameter_spaces"] = describe_spaces(spec);
  results["bieberbach"] = {{"value", bb.value}, {"rule", bb.rule}};
  if (spec.m_normalized) {
    results["reverser_normal_form"] = to_json(*spec.m_normalized);
    results["reverser_conjugator"] = to_json(*spec.m_conjugator);
  }
  if (spec.reflection_m >= 0) results["reverser_class"] = spec.reflection_m;
  if (spec.eta_result && spec.eta_result->eta != 0)
    results["eta"] = spec.eta_result->eta;

  std::cout << run_report("validate", input, results).dump(2) << "\n";
  if (!quiet)
    std::cerr << "valid " << family_name(spec.family)
              << (bb.value ? ", torsion free" : ", has torsion") << "  ["
              << timer.ms() << " ms]\n";
  return 0;
}

int cmd_discover(const std::string& file, long bound, bool quiet) {
  Timer timer;
  json input = read_json_input(file);
  Mat2 a =
      input.is_array() ? mat2_from_json(input) : mat2_from_json(input.at("A"));
  HyperbolicMatrix::checked(a);

  json results;
  results["A"] = to_json(a);
  json roots = json::array();
  bool root_plus = false, root_minus = false;
  for (const auto& r : integral_square_roots(a)) {
    roots.push_back({{"N", to_json(r.n)}, {"det", r.det_n}});
    (r.det_n == 1 ? root_plus : root_minus) = true;
  }
  results["square_roots"] = roots;

  auto rev_plus = reversing_matrices(a, +1, bound);
  auto rev_minus = reversing_matrices(a, -1, bound);
  json rp = json::array(), rm = json::array();
  for (const auto& m : rev_plus) rp.push_back(to_json(m));
  for (const auto& m : rev_minus)
    rm.push_back({{"M", to_json(m)}, {"class", reflection_class(m)}});
  results["reversers_det_plus"] = rp;
  results["reversers_det_minus"] = rm;
  results["reverser_bound"] = bound;

  json fams = json::array();
  fams.push_back("GammaA");
  fams.push_back("Pi1");
  if (root_plus) fams.push_back("Pi2Plus");
  if (root_minus) fams.push_back("Pi2Minus");
  if (!rev_minus.empty()) fams.push_back("Pi3");
  if (root_minus) fams.push_back("Pi4");
  if (!rev_minus.empty()) fams.push_back("Pi5");
  if (root_plus && !rev_minus.empty()) fams.push_back("Pi6");
  if (!rev_plus.empty()) fams.push_back("Pi7");
  if (root_minus && !rev_plus.empty()) fams.push_back("Pi8");
  results["constructible_families"] = fams;

  std::cout << run_report("discover", input, results).dump(2) << "\n";
  if (!quiet)
    std::cerr << fams.size() << " constructible families  [" << timer.ms()
              << " ms]\n";
  return 0;
}

int cmd_reidemeister(const std::string& spec_file, const std::string& aut_file,
                     bool oracle, long n, const std::string& window,
                     bool quiet) {
  Timer timer;
  json spec_j = read_json_input(spec_file);
  json aut_j = read_json_input(aut_file);
  GroupSpec spec = validate_spec(spec_from_json(spec_j));
  AutomorphismSpec aut =
      validate_automorphism(spec, images_from_json(aut_j, spec));
  ReidemeisterVerdict verdict = reidemeister(spec, aut);

  json results;
  results["automorphism"] = to_json(aut, spec);
  results["verdict"] = to_json(verdict, spec);

  bool consistent = true;
  if (oracle) {
    json orep;
    long xb = 6, zb = 3;
    if (auto comma = window.find(','); comma != std::string::npos) {
      xb = std::stol(window.substr(0, comma));
      zb = std::stol(window.substr(comma + 1));
    }
    if (spec.family == Family::GammaA || spec.family == Family::Pi1) {
      Int qc = finite_quotient_count(spec, aut, n);
      orep["quotient_count"] = qc.get_si();
      orep["quotient_modulus"] = n;
      orep["quotient_order"] = finite_quotient_order(spec, n).get_si();
      if (verdict.finite() && qc > *verdict.value) consistent = false;
    }
    WindowReport w = window_class_count(spec, aut, xb, zb);
    orep["window"] = to_json(w);
    if (verdict.finite()) {
      if (w.stabilized && w.final_count != *verdict.value) consistent = false;
    } else if (verdict.certificate) {
      auto chk = check_infinity_certificate(*verdict.certificate, spec, aut);
      orep["certificate_check"] = {{"accepted", chk.accepted},
                                   {"reason", chk.reason}};
      if (!chk.accepted) consistent = false;
    }
    orep["consistent"] = consistent;
    results["oracle"] = orep;
  }

  std::cout << run_report("reidemeister", json{{"spec", spec_j}, {"aut", aut_j}},
                          results)
                   .dump(2)
            << "\n";
  if (!quiet)
    std::cerr << "R = "
              << (verdict.finite() ? verdict.value->get_str()
                                   : std::string("infinity"))
              << (oracle ? (consistent ? ", oracle consistent"
                                       : ", ORACLE CONTRADICTION")
                         : "")
              << "  [" << timer.ms() << " ms]\n";
  if (!consistent) {
    std::cerr << "oracle contradicts the closed-form verdict\n";
    return 3;
  }
  return 0;
}

int cmd_survey(const std::string& spec_file, long entry_bound,
               long translation_bound, bool quiet) {
  Timer timer;
  json spec_j = read_json_input(spec_file);
  GroupSpec spec = validate_spec(spec_from_json(spec_j));

  json rows = json::array();
  long finite_count = 0, infinite_count = 0;
  auto auts = enumerate_automorphisms(spec, entry_bound, translation_bound);
  for (const auto& aut : auts) {
    ReidemeisterVerdict v = reidemeister(spec, aut);
    json row;
    row["images"] = to_json(aut, spec)["images"];
    row["type"] = to_string(aut.type_tag);
    row["det_F"] = aut.det_f().get_si();
    row["det_phi"] = aut.det_phi().get_si();
    row["R"] = v.finite() ? json(v.value->get_si()) : json("infinity");
    rows.push_back(row);
    (v.finite() ? finite_count : infinite_count)++;
  }

  bool rinf_family = false;
  switch (spec.family) {
    case Family::Pi2Minus:
    case Family::Pi3:
    case Family::Pi4:
    case Family::Pi5:
    case Family::Pi6:
    case Family::Pi7:
    case Family::Pi8:
      rinf_family = true;
      break;
    default:
      break;
  }
  if (rinf_family && finite_count > 0)
    throw Error(Errc::CounterexampleFound,
                "a finite verdict appeared in a family with no finite classes");

  json results;
  results["automorphisms"] = rows;
  results["count"] = rows.size();
  results["finite"] = finite_count;
  results["infinite"] = infinite_count;
  if (rinf_family) results["all_infinite"] = true;

  std::cout << run_report("survey", spec_j, results).dump(2) << "\n";
  if (!quiet)
    std::cerr << rows.size() << " automorphisms, " << finite_count
              << " finite / " << infinite_count << " infinite  [" << timer.ms()
              << " ms]\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact twisted-conjugacy counts for the crystallographic groups of Sol"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress the human summary on stderr");

  std::string spec_file, aut_file;
  long entry_bound = 3, translation_bound = 3, modulus = 2;
  std::string window = "6,3";
  bool oracle = false;

  auto* validate =
      app.add_subcommand("validate", "validate and canonicalize a group spec");
  validate->fallthrough();
  validate->add_option("spec", spec_file, "spec JSON file or -")->required();

  auto* discover = app.add_subcommand(
      "discover", "square roots, reversers and constructible families of A");
  discover->fallthrough();
  discover->add_option("A", spec_file, "JSON file holding A or {\"A\": ...}")
      ->required();
  discover->add_option("--entry-bound", entry_bound, "reverser entry bound");

  auto* reid = app.add_subcommand(
      "reidemeister", "twisted-conjugacy verdict for one automorphism");
  reid->fallthrough();
  reid->add_option("spec", spec_file, "spec JSON file or -")->required();
  reid->add_option("aut", aut_file, "automorphism JSON file")->required();
  reid->add_flag("--oracle", oracle, "cross-check with the brute-force oracles");
  reid->add_option("--n", modulus, "finite quotient modulus");
  reid->add_option("--window", window, "window bounds as X,Z");

  auto* survey = app.add_subcommand(
      "survey", "enumerate automorphisms and compute all verdicts");
  survey->fallthrough();
  survey->add_option("spec", spec_file, "spec JSON file or -")->required();
  survey->add_option("--entry-bound", entry_bound, "lattice matrix entry bound");
  survey->add_option("--translation-bound", translation_bound,
                     "translation vector bound");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate)) return cmd_validate(spec_file, quiet);
    if (app.got_subcommand(discover))
      return cmd_discover(spec_file, entry_bound, quiet);
    if (app.got_subcommand(reid))
      return cmd_reidemeister(spec_file, aut_file, oracle, modulus, window,
                              quiet);
    if (app.got_subcommand(survey))
      return cmd_survey(spec_file, entry_bound, translation_bound, quiet);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
