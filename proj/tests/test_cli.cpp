#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "bogo/cli/workflows.hpp"
#include "bogo/json_io.hpp"
#include "fixtures.hpp"

using namespace bogo;
using namespace bogo::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("bogo_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path write_config(const fs::path& dir, const json& j, const std::string& name = "config.json") {
  const auto p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

json one_pair_config(int N = 2, double lambda = 1.0) {
  return json{{"model", to_json(fixtures::one_pair(N, lambda))}};
}

struct Outcome {
  int code;
  std::string log, err;
};

Outcome invoke(Workflow verb, const fs::path& config, const fs::path& out, std::optional<std::string> cache = {}) {
  Invocation inv;
  inv.verb = verb;
  inv.config = config;
  inv.out = out.string();
  inv.cache = std::move(cache);
  std::ostringstream log, err;
  const int code = run(inv, log, err);
  return {code, log.str(), err.str()};
}

}  // namespace

TEST_CASE("config parsing") {
  auto j = one_pair_config();
  j["ed"] = {{"tol", 1e-10}, {"k", 3}};
  j["sweep"] = {{"N_values", {4, 8}}, {"coupling", 1.0}, {"fit", "1/N+1/N^2"}};
  j["workflow"] = "study";
  const auto c = parse_config(j);
  CHECK(c.workflow == Workflow::study);
  CHECK(c.ed.tol == 1e-10);
  CHECK(c.ed.k == 3);
  REQUIRE(c.sweep);
  CHECK(c.sweep->fit == FitModel::inverse_n_quadratic);
  CHECK(parse_config(to_json(c)) == c);

  auto missing = one_pair_config();
  missing["model"].erase("N");
  try {
    parse_config(missing);
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("missing key 'N'") != std::string::npos);
  }
  auto unknown = one_pair_config();
  unknown["ed"] = {{"tolerance", 1e-9}};
  CHECK_THROWS_WITH_AS(parse_config(unknown), doctest::Contains("unknown key 'ed.tolerance'"), ConfigError);
  auto bad_type = one_pair_config();
  bad_type["model"]["N"] = "two";
  CHECK_THROWS_AS(parse_config(bad_type), ConfigError);
  auto odd = one_pair_config();
  odd["model"]["potential"]["entries"] = {{1, 1.0}};
  CHECK_THROWS_WITH_AS(parse_config(odd), doctest::Contains("evenness"), ConfigError);
  auto bad_sweep = one_pair_config();
  bad_sweep["sweep"] = {{"N_values", {8, 4}}};
  CHECK_THROWS_AS(parse_config(bad_sweep), ConfigError);
  auto no_sweep = one_pair_config();
  no_sweep["workflow"] = "study";
  CHECK_THROWS_WITH_AS(parse_config(no_sweep), doctest::Contains("sweep"), ConfigError);
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
}

TEST_CASE("digests") {
  const auto d = digest_hex("abc");
  CHECK(d == "ba7816bf8f01cfea414140de5dae2223");
  const auto m = fixtures::one_pair(3, 1.0 / 3);
  auto m2 = m;
  m2.lambda = m.lambda * (1.0 + 1e-12);
  const EdSettings ed;
  const auto k1 = make_cache_key("ed", ed_cache_inputs(m, ed));
  const auto k2 = make_cache_key("ed", ed_cache_inputs(m2, ed));
  CHECK(k1.digest.size() == 32);
  CHECK(k1.digest != k2.digest);
  CHECK(k1.digest == make_cache_key("ed", ed_cache_inputs(m, ed)).digest);
  CHECK(k1.canonical.find(tool_version) != std::string::npos);
  auto ed2 = ed;
  ed2.tol = 1e-10;
  CHECK(make_cache_key("ed", ed_cache_inputs(m, ed2)).digest != k1.digest);
  CHECK(make_cache_key("study_point", ed_cache_inputs(m, ed)).digest != k1.digest);
}

TEST_CASE("result cache store, load and integrity") {
  TempDir tmp;
  ResultCache cache(tmp.path / "c");
  const auto key = make_cache_key("test", json{{"x", 1}});
  CacheStatus status{};
  CHECK(!cache.load(key, &status));
  CHECK(status == CacheStatus::miss);

  const json payload{{"energy", -0.1}, {"v", {1.0, 2.0}}};
  CHECK(!cache.store(key, payload, 1e-6, 1e-9));
  CHECK(!fs::exists(cache.entry_path(key)));
  CHECK(cache.store(key, payload, 1e-12, 1e-9));
  const auto back = cache.load(key, &status);
  CHECK(status == CacheStatus::hit);
  REQUIRE(back);
  CHECK(*back == payload);
  for (const auto& e : fs::directory_iterator(tmp.path / "c"))
    CHECK(e.path().extension() == ".json");

  // Tampered payload: checksum mismatch.
  auto entry = json::parse(slurp(cache.entry_path(key)));
  entry["payload"]["energy"] = -0.2;
  std::ofstream(cache.entry_path(key)) << entry.dump();
  CHECK(!cache.load(key, &status));
  CHECK(status == CacheStatus::discarded);
  CHECK(!fs::exists(cache.entry_path(key)));

  // Residual above tolerance.
  CHECK(cache.store(key, payload, 1e-12, 1e-9));
  entry = json::parse(slurp(cache.entry_path(key)));
  entry["residual_norm"] = 1.0;
  std::ofstream(cache.entry_path(key)) << entry.dump();
  CHECK(!cache.load(key, &status));
  CHECK(status == CacheStatus::discarded);

  // Not JSON at all.
  std::ofstream(cache.entry_path(key)) << "{ truncated";
  CHECK(!cache.load(key, &status));
  CHECK(status == CacheStatus::discarded);
}

TEST_CASE("cache directory precedence") {
  const fs::path out = "/tmp/out";
  ::unsetenv("CACHE_DIR");
  CHECK(resolve_cache_dir({}, {}, out) == out / "cache");
  CHECK(resolve_cache_dir({}, std::string("/cfg"), out) == "/cfg");
  ::setenv("CACHE_DIR", "/env", 1);
  CHECK(resolve_cache_dir({}, std::string("/cfg"), out) == "/env");
  CHECK(resolve_cache_dir(std::string("/flag"), std::string("/cfg"), out) == "/flag");
  ::unsetenv("CACHE_DIR");
}

TEST_CASE("ed workflow: golden value, cache hit and recovery") {
  TempDir tmp;
  ::unsetenv("CACHE_DIR");
  const auto cfg = write_config(tmp.path, one_pair_config(2, 1.0));
  const auto cache_dir = (tmp.path / "cache").string();

  const auto first = invoke(Workflow::ed, cfg, tmp.path / "a", cache_dir);
  REQUIRE(first.code == 0);
  CHECK(first.log.find("cache miss") != std::string::npos);
  const auto report = ed_report_from_json(json::parse(slurp(tmp.path / "a" / "report.json")));
  CHECK(fixtures::rel_close(report.ground.eigenvalues.front(), -0.02532217485889982, 1e-13));
  REQUIRE(report.binding);
  CHECK(report.binding->E_Nm1 == 0.0);

  const auto second = invoke(Workflow::ed, cfg, tmp.path / "b", cache_dir);
  REQUIRE(second.code == 0);
  CHECK(second.log.find("cache hit") != std::string::npos);
  CHECK(slurp(tmp.path / "a" / "report.json") == slurp(tmp.path / "b" / "report.json"));

  // Hand-corrupt the stored payload.
  fs::path entry;
  for (const auto& e : fs::directory_iterator(cache_dir)) entry = e.path();
  auto j = json::parse(slurp(entry));
  j["payload"]["ground"]["eigenvalues"][0] = 5.0;
  std::ofstream(entry) << j.dump();
  const auto third = invoke(Workflow::ed, cfg, tmp.path / "c", cache_dir);
  REQUIRE(third.code == 0);
  CHECK(third.log.find("cache discarded") != std::string::npos);
  CHECK(slurp(tmp.path / "a" / "report.json") == slurp(tmp.path / "c" / "report.json"));
  const auto fourth = invoke(Workflow::ed, cfg, tmp.path / "d", cache_dir);
  CHECK(fourth.log.find("cache hit") != std::string::npos);

  // Coupling changed in the 12th digit: miss.
  auto changed = one_pair_config(2, 1.0 + 1e-11);
  const auto cfg2 = write_config(tmp.path, changed, "changed.json");
  const auto fifth = invoke(Workflow::ed, cfg2, tmp.path / "e", cache_dir);
  CHECK(fifth.log.find("cache miss") != std::string::npos);
}

TEST_CASE("exit statuses") {
  TempDir tmp;
  auto missing = one_pair_config();
  missing["model"].erase("N");
  const auto r = invoke(Workflow::ed, write_config(tmp.path, missing), tmp.path / "o");
  CHECK(r.code == exit_code::invalid_config);
  CHECK(r.err.find("'N'") != std::string::npos);

  CHECK(invoke(Workflow::ed, tmp.path / "absent.json", tmp.path / "o").code == exit_code::invalid_config);
  std::ofstream(tmp.path / "garbage.json") << "{";
  CHECK(invoke(Workflow::eval, tmp.path / "garbage.json", tmp.path / "o").code == exit_code::invalid_config);

  auto mismatch = one_pair_config();
  mismatch["workflow"] = "eval";
  CHECK(invoke(Workflow::ed, write_config(tmp.path, mismatch, "m.json"), tmp.path / "o").code ==
        exit_code::invalid_config);

  // A tolerance no solver can meet within one operator application.
  auto hard = json{{"model", to_json(fixtures::band(6, 1.0 / 6))},
                   {"ed", {{"tol", 1e-30}, {"max_iter", 1}, {"dense_threshold", 0}}}};
  const auto nc = invoke(Workflow::ed, write_config(tmp.path, hard, "hard.json"), tmp.path / "nc",
                         (tmp.path / "nc_cache").string());
  CHECK(nc.code == exit_code::not_converged);
  CHECK(fs::is_empty(tmp.path / "nc_cache"));

  auto sc = one_pair_config(3, 1.0 / 3);
  CHECK(invoke(Workflow::selfcheck, write_config(tmp.path, sc, "sc.json"), tmp.path / "sc").code == exit_code::ok);
}

TEST_CASE("eval workflow") {
  TempDir tmp;
  auto free = one_pair_config();
  free["model"]["potential"]["entries"] = json::array();
  REQUIRE(invoke(Workflow::eval, write_config(tmp.path, free), tmp.path / "f").code == 0);
  const auto rf = eval_report_from_json(json::parse(slurp(tmp.path / "f" / "report.json")));
  CHECK(rf.e_B == 0.0);
  CHECK(rf.D == 0.0);
  for (const auto& q : rf.modes) {
    CHECK(q.alpha_p == 0.0);
    CHECK(q.eB_summand == 0.0);
  }

  REQUIRE(invoke(Workflow::eval, write_config(tmp.path, one_pair_config(), "p.json"), tmp.path / "p").code == 0);
  const auto csv = slurp(tmp.path / "p" / "modes.csv");
  CHECK(csv.rfind("p_coords,w_hat,e_p,alpha_p,n_p,eB_summand\n", 0) == 0);
  CHECK(csv.find("\n-1,1.0,40.4660634575783") != std::string::npos);
  CHECK(csv.find("\n1,1.0,") != std::string::npos);
}

TEST_CASE("study workflow artifacts") {
  TempDir tmp;
  auto cfg = one_pair_config(8, 0.125);
  cfg["sweep"] = {{"N_values", {4, 8, 12}}};
  const auto path = write_config(tmp.path, cfg);
  const auto cache_dir = (tmp.path / "cache").string();
  const auto first = invoke(Workflow::study, path, tmp.path / "a", cache_dir);
  REQUIRE(first.code == 0);
  const auto csv = slurp(tmp.path / "a" / "study.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "N,lambda,E_N,E_Nm1,deltaE,leading_term,residual_r,prediction,abs_err,converged");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
    CHECK(line.substr(line.size() - 4) == "true");
    ++rows;
  }
  CHECK(rows == 3);

  const auto second = invoke(Workflow::study, path, tmp.path / "b", cache_dir);
  REQUIRE(second.code == 0);
  CHECK(second.log.find("cache miss") == std::string::npos);
  CHECK(slurp(tmp.path / "a" / "report.json") == slurp(tmp.path / "b" / "report.json"));
  CHECK(slurp(tmp.path / "a" / "study.csv") == slurp(tmp.path / "b" / "study.csv"));
}

TEST_CASE("artifact JSON round trips") {
  TempDir tmp;
  auto cfg = one_pair_config(4, 0.25);
  cfg["sweep"] = {{"N_values", {4, 6, 8}}};
  const auto path = write_config(tmp.path, cfg);
  for (Workflow w : {Workflow::eval, Workflow::ed, Workflow::study, Workflow::selfcheck}) {
    const auto out = tmp.path / to_string(w);
    REQUIRE(invoke(w, path, out).code == 0);
    const auto text = slurp(out / "report.json");
    const auto j = json::parse(text);
    switch (w) {
      case Workflow::eval: CHECK(dump_pretty(to_json(eval_report_from_json(j))) == text); break;
      case Workflow::ed: CHECK(dump_pretty(to_json(ed_report_from_json(j))) == text); break;
      case Workflow::study: CHECK(dump_pretty(to_json(study_report_from_json(j))) == text); break;
      case Workflow::selfcheck: CHECK(dump_pretty(to_json(selfcheck_report_from_json(j))) == text); break;
    }
  }
  const auto study = study_report_from_json(json::parse(slurp(tmp.path / "study" / "report.json")));
  CHECK(study_report_from_json(to_json(study)) == study);

  SectorSummary s;
  s.gap = std::numeric_limits<double>::infinity();
  s.eigenvalues = {-1.0};
  CHECK(sector_summary_from_json(json::parse(dump_canonical(to_json(s)))) == s);
}
