// conglab: exact tools for N-congruences of elliptic curves and the
// z^2 = F_r(u,v) moduli surfaces (N = 2, 3, 4, 12).
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "conglab/congruence.hpp"
#include "conglab/curves.hpp"
#include "conglab/families.hpp"
#include "conglab/moduli.hpp"
#include "conglab/verifykit.hpp"
#include "httplib.h"
#include "json.hpp"

namespace {

using namespace conglab;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::filesystem::path cache_dir() {
  if (const char* env = std::getenv("CONGRUENCE_LAB_CACHE")) return env;
  return std::filesystem::temp_directory_path() / "conglab-cache";
}

struct RunRecord {
  std::string command;
  json arguments;
  uint64_t seed = 0;
  json payload;

  void append_to(const std::string& path) const {
    json j;
    j["command"] = command;
    j["arguments"] = arguments;
    j["seed"] = seed;
    j["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
    j["payload"] = payload;
    j["version"] = kVersion;
    std::ofstream out(path, std::ios::app);
    out << j.dump() << "\n";
  }
};

json verdict_json(const CongruenceVerdict& v) {
  json j;
  switch (v.status) {
    case CongruenceVerdict::Status::Congruent: j["congruent"] = true; break;
    case CongruenceVerdict::Status::NotCongruent: j["congruent"] = false; break;
    case CongruenceVerdict::Status::Inconclusive: j["congruent"] = nullptr; break;
  }
  if (v.witness) {
    json w;
    w["alpha"] = rat_str(v.witness->alpha);
    w["beta"] = rat_str(v.witness->beta);
    if (v.witness->gamma) w["gamma"] = rat_str(*v.witness->gamma);
    if (v.witness->delta) w["delta"] = rat_str(*v.witness->delta);
    w["tau_square_class_checked"] = v.witness->tau_square_class_checked;
    j["witness"] = w;
  }
  if (v.obstruction) j["obstruction"] = *v.obstruction;
  return j;
}

json invariants_json(const WeierstrassCurve& e) {
  auto v = invariants(e);
  json j;
  j["b2"] = rat_str(v.b2);
  j["b4"] = rat_str(v.b4);
  j["b6"] = rat_str(v.b6);
  j["b8"] = rat_str(v.b8);
  j["c4"] = rat_str(v.c4);
  j["c6"] = rat_str(v.c6);
  j["disc"] = rat_str(v.disc);
  j["j"] = rat_str(v.j);
  j["J"] = rat_str(v.J);
  return j;
}

CongruenceVerdict run_test(const WeierstrassCurve& a, const WeierstrassCurve& b,
                           int n, int r) {
  if (n == 2) return test_2_1(a, b);
  if (n == 3 && r % 3 == 1) return test_3_1(a, b);
  if (n == 3) return test_3_2(a, b);
  if (n == 4) return test_4_r(a, b, r % 4);
  if (n == 12) return test_12_r(a, b, r);
  throw CLI::ValidationError("--n must be one of 2, 3, 4, 12");
}

int cmd_resolve_label(const std::string& label, bool offline, RunRecord& rec) {
  auto dir = cache_dir();
  std::filesystem::create_directories(dir);
  auto file = dir / ("lmfdb-" + label + ".json");
  json data;
  if (std::filesystem::exists(file)) {
    std::ifstream in(file);
    in >> data;
  } else if (offline) {
    std::cerr << "cache miss for label " << label << " in offline mode\n";
    return 3;
  } else {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    httplib::SSLClient cli("www.lmfdb.org");
    cli.set_follow_location(true);
    auto res = cli.Get("/api/ec_curvedata/?lmfdb_label=" + label +
                       "&_format=json&_fields=ainvs,lmfdb_label,conductor");
    if (!res || res->status != 200) {
      std::cerr << "LMFDB request failed\n";
      return 4;
    }
    data = json::parse(res->body);
    std::ofstream out(file);
    out << data.dump(2);
#else
    std::cerr << "built without TLS support; use --offline with a cache\n";
    return 4;
#endif
  }
  json hits = data.contains("data") ? data["data"] : data;
  if (hits.is_array() && !hits.empty()) {
    const auto& ai = hits[0]["ainvs"];
    json curve = json::array();
    for (const auto& a : ai) {
      if (a.is_number_integer()) curve.push_back(std::to_string(a.get<long long>()));
      else curve.push_back(a.get<std::string>());
    }
    json out;
    out["label"] = label;
    out["curve"] = curve;
    rec.payload = out;
    std::cout << out.dump() << "\n";
    return 0;
  }
  std::cerr << "label not found: " << label << "\n";
  return 3;
}

json trial_report_json(const TrialReport& r) {
  json j;
  j["check"] = r.check;
  j["status"] = r.ok ? "pass" : "fail";
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact tools for N-congruences of elliptic curves"};
  app.require_subcommand(1);
  std::string record_path;
  app.add_option("--record", record_path, "append a replayable run record (JSONL)");

  // invariants
  auto* inv = app.add_subcommand("invariants", "print curve invariants");
  std::string inv_curve;
  inv->add_option("curve", inv_curve, "curve JSON, [a1..a6] or [A,B]")->required();

  // test
  auto* tst = app.add_subcommand("test", "run an (N, r)-congruence tester");
  int tst_n = 12, tst_r = 1;
  std::string tst_a, tst_b;
  tst->add_option("--n", tst_n, "modulus N in {2,3,4,12}")->required();
  tst->add_option("--r", tst_r, "power r");
  tst->add_option("curveA", tst_a)->required();
  tst->add_option("curveB", tst_b)->required();

  // apscan
  auto* scan = app.add_subcommand("apscan", "trace-of-Frobenius congruence scan");
  int scan_n = 12;
  long scan_bound = 500;
  std::string scan_a, scan_b;
  scan->add_option("--n", scan_n)->required();
  scan->add_option("--bound", scan_bound)->required();
  scan->add_option("curveA", scan_a)->required();
  scan->add_option("curveB", scan_b)->required();

  // search
  auto* srch = app.add_subcommand("search", "bounded-height point search on z^2 = F_r");
  int srch_r = 11, srch_workers = 1;
  long srch_height = 10;
  bool skip_hecke = false;
  std::string srch_out;
  srch->add_option("--r", srch_r)->required();
  srch->add_option("--height", srch_height)->required();
  srch->add_option("--workers", srch_workers);
  srch->add_flag("--skip-hecke", skip_hecke);
  srch->add_option("--out", srch_out, "write JSONL here instead of stdout");

  // family
  auto* fam = app.add_subcommand("family", "specialise a congruent family");
  std::string fam_name, fam_t = "2";
  fam->add_option("--name", fam_name, "ex121 | ex127 | ex1211 | intro1211")->required();
  fam->add_option("--t", fam_t, "parameter value (ignored by intro1211)");

  // verify
  auto* ver = app.add_subcommand("verify", "run the identity suites");
  std::string suite = "all";
  int ver_trials = 100;
  uint64_t ver_seed = 12;
  ver->add_option("--suite", suite,
                  "klein | jmap | surfaces | biinvariance | squareclass | xi | blowdown | all");
  ver->add_option("--trials", ver_trials);
  ver->add_option("--seed", ver_seed);

  // resolve
  auto* res = app.add_subcommand("resolve", "fetch curve a-invariants for an LMFDB label");
  std::string res_label;
  bool res_offline = false;
  res->add_option("--label", res_label)->required();
  res->add_flag("--offline", res_offline, "serve only the local cache");

  CLI11_PARSE(app, argc, argv);

  RunRecord rec;
  rec.seed = ver_seed;
  for (int i = 1; i < argc; ++i) rec.arguments.push_back(argv[i]);
  int exit_code = 0;

  try {
    if (inv->parsed()) {
      rec.command = "invariants";
      rec.payload = invariants_json(curve_from_json(inv_curve));
      std::cout << rec.payload.dump(2) << "\n";
    } else if (tst->parsed()) {
      rec.command = "test";
      try {
        auto v = run_test(curve_from_json(tst_a), curve_from_json(tst_b), tst_n, tst_r);
        rec.payload = verdict_json(v);
        std::cout << rec.payload.dump(2) << "\n";
        exit_code = v.congruent() ? 0 : 1;
        if (v.status == CongruenceVerdict::Status::Inconclusive) exit_code = 2;
      } catch (const Unsupported& ex) {
        rec.payload = {{"unsupported", ex.what()}};
        std::cout << rec.payload.dump(2) << "\n";
        exit_code = 2;
      }
    } else if (scan->parsed()) {
      rec.command = "apscan";
      auto r = ap_scan(curve_from_json(scan_a), curve_from_json(scan_b), scan_n, scan_bound);
      rec.payload = {{"pass", r.pass}, {"primes_checked", r.primes_checked}};
      if (!r.pass) rec.payload["first_failure"] = r.first_failure;
      std::cout << rec.payload.dump(2) << "\n";
      exit_code = r.pass ? 0 : 1;
    } else if (srch->parsed()) {
      rec.command = "search";
      SearchOptions opt;
      opt.workers = srch_workers;
      opt.hecke = !skip_hecke;
      auto hits = search(srch_r, srch_height, opt);
      std::ostream* os = &std::cout;
      std::ofstream file;
      if (!srch_out.empty()) {
        file.open(srch_out);
        os = &file;
      }
      for (const auto& h : hits) *os << search_hit_jsonl(srch_r, h) << "\n";
      rec.payload = {{"hits", hits.size()}};
    } else if (fam->parsed()) {
      rec.command = "family";
      std::pair<WeierstrassCurve, WeierstrassCurve> pr =
          fam_name == "intro1211" ? intro_pair() : family_pair(fam_name, parse_rat(fam_t));
      int n = 12, r = fam_name == "intro1211" ? 11 : family_spec(fam_name).r;
      json out;
      out["curveA"] = json::parse(curve_to_json(pr.first));
      out["curveB"] = json::parse(curve_to_json(pr.second));
      out["n"] = n;
      out["r"] = r;
      out["verdict"] = verdict_json(test_12_r(pr.first, pr.second, r));
      auto scanrep = ap_scan(pr.first, pr.second, 12, 500);
      out["apscan_pass"] = scanrep.pass;
      rec.payload = out;
      std::cout << out.dump(2) << "\n";
    } else if (ver->parsed()) {
      rec.command = "verify";
      json out = json::array();
      bool all_ok = true;
      auto add = [&](const std::string& name, bool ok, json detail = {}) {
        json j = {{"check", name}, {"status", ok ? "pass" : "fail"}};
        if (!detail.is_null() && !detail.empty()) j["detail"] = detail;
        out.push_back(j);
        all_ok = all_ok && ok;
      };
      if (suite == "klein" || suite == "all")
        for (int n : {2, 3, 4})
          add("klein N=" + std::to_string(n), verify_klein_relation(n));
      if (suite == "jmap" || suite == "all")
        add("jmap-compatibility", verify_jmap_compatibility());
      if (suite == "surfaces" || suite == "all") {
        auto r = verify_surface_relations();
        add("surface-relations", r.ok, r.ok ? json{} : json{{"first_failure", r.first_failure}});
      }
      if (suite == "biinvariance" || suite == "all")
        for (auto [n, r] : {std::pair{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 3}}) {
          auto rep = verify_biinvariance(n, r);
          add("biinvariance (" + std::to_string(n) + "," + std::to_string(r) + ")",
              rep.ok, {{"group_size", rep.group_size}});
        }
      if (suite == "squareclass" || suite == "all")
        for (int r : {1, 5, 7, 11}) {
          auto rep = verify_square_class_claims(r, ver_trials, ver_seed);
          add(rep.check, rep.ok, trial_report_json(rep));
        }
      if (suite == "xi" || suite == "all") {
        auto rep = verify_xi_equivalence(ver_trials, ver_seed);
        add(rep.check, rep.ok, trial_report_json(rep));
      }
      if (suite == "blowdown" || suite == "all") {
        for (int r : {5, 7})
          for (int sg : {1, -1}) {
            bool ok = true;
            try {
              blowdown_coefficient(r, sg);
            } catch (const std::exception&) {
              ok = false;
            }
            add("blowdown r=" + std::to_string(r) + (sg > 0 ? " +" : " -"), ok);
          }
      }
      rec.payload = out;
      std::cout << out.dump(2) << "\n";
      exit_code = all_ok ? 0 : 1;
    } else if (res->parsed()) {
      rec.command = "resolve";
      exit_code = cmd_resolve_label(res_label, res_offline, rec);
    }
  } catch (const Unsupported& ex) {
    std::cerr << "unsupported: " << ex.what() << "\n";
    exit_code = 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    exit_code = 5;
  }

  if (!record_path.empty()) rec.append_to(record_path);
  return exit_code;
}
