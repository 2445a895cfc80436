#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "jsqd/config.hpp"
#include "jsqd/io.hpp"
#include "jsqd/stats.hpp"

using namespace jsqd;

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("ks statistic examples") {
  const std::vector<double> a{1, 2, 3};
  CHECK(ks_two_sample(a, a) == 0.0);
  CHECK(ks_two_sample(std::vector<double>{0, 1}, std::vector<double>{2, 3, 4}) == 1.0);
  CHECK(ks_two_sample(std::vector<double>{1, 2}, std::vector<double>{1.5, 2.5}) == 0.5);
  CHECK(ks_two_sample(std::vector<double>{0, 0, 1}, std::vector<double>{0, 1, 1}) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS(ks_two_sample(std::vector<double>{}, a));
  CHECK(ks_pvalue(0.0, 100, 100) == 1.0);
  CHECK(ks_pvalue(1.0, 100, 100) < 1e-10);
  CHECK(kolmogorov_q(1.36) == doctest::Approx(0.0494).epsilon(0.01));
}

TEST_CASE("moments and quantiles") {
  const std::vector<double> x{4, 1, 3, 2};
  CHECK(mean(x) == 2.5);
  CHECK(variance(x) == doctest::Approx(5.0 / 3.0));
  CHECK(variance(std::vector<double>{7}) == 0.0);
  CHECK(quantile(x, 0.5) == 2.5);
  CHECK(quantile(x, 0.9) == doctest::Approx(3.7));
  CHECK(quantile(x, 0.0) == 1.0);
  CHECK(quantile(x, 1.0) == 4.0);
}

TEST_CASE("path csv") {
  SampledPath p(std::vector<double>{0.0, 0.5}, 2);
  p.values[0] = {0.1, 0.2};
  p.values[1] = {0.0, 1.0 / 3.0};
  std::ostringstream out;
  write_paths_csv(out, {{1, &p, 1}, {0, &p, 0}});
  CHECK(out.str() ==
        "replicate,time,coord,value\n"
        "0,0,0,0.1\n0,0,1,0\n0,0.5,0,0.2\n0,0.5,1,0.333333333333\n"
        "1,0,1,0.1\n1,0,2,0\n1,0.5,1,0.2\n1,0.5,2,0.333333333333\n");
}

TEST_CASE("report emission") {
  ComparisonReport empty;
  empty.kind = "fluctuation";
  const auto j = to_json(empty);
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["ks"].is_array());
  CHECK(j["ks"].empty());
  CHECK(j["notes"].is_array());
  CHECK(report_csv(empty) == "coord,time,D,nA,nB\n");

  ComparisonReport one = empty;
  KsCell c;
  c.coord = 1;
  c.time = 2.0;
  c.d = 0.5;
  c.n_a = 200;
  c.n_b = 1000;
  one.cells.push_back(c);
  CHECK(report_csv(one) == "coord,time,D,nA,nB\n1,2,0.5,200,1000\n");

  const std::string prefix = "jsqd_unit_report";
  emit_report(one, prefix);
  const auto first_json = slurp(prefix + ".json");
  const auto first_csv = slurp(prefix + ".csv");
  emit_report(one, prefix);
  CHECK(slurp(prefix + ".json") == first_json);
  CHECK(slurp(prefix + ".csv") == first_csv);
  CHECK(nlohmann::ordered_json::parse(first_json)["ks"][0]["D"] == 0.5);
  std::remove((prefix + ".json").c_str());
  std::remove((prefix + ".csv").c_str());
  CHECK_THROWS(emit_report(one, "/nonexistent-dir/x/report"));
}

TEST_CASE("compare config parsing") {
  const auto cfg = parse_compare_config(
      "[system]\nn = 400\nd = sqrt(n)\nlambda = 1 - log(sqrt(n))/sqrt(n)\nregime = critical\n"
      "[prelimit]\nreplicates = 30\nseed = 5\n[limit]\nreplicates = 60\ndt = 0.002\n"
      "[comparison]\ntimes = 0.5, 1\ncoords = 1\ntrend_factor = 4\n");
  CHECK(cfg.kind == "fluctuation");
  CHECK(cfg.fluctuation.n == 400);
  CHECK(cfg.fluctuation.expected == RegimeKind::Critical);
  CHECK(cfg.fluctuation.prelimit_replicates == 30);
  CHECK(cfg.fluctuation.limit_replicates == 60);
  CHECK(cfg.fluctuation.limit_dt == 0.002);
  CHECK(cfg.fluctuation.times == std::vector<double>{0.5, 1.0});
  CHECK(cfg.fluctuation.coords == std::vector<std::size_t>{1});
  CHECK(cfg.fluctuation.init.kind == InitSpec::Kind::NearMu);
  REQUIRE(cfg.trend_factor);
  CHECK(*cfg.trend_factor == 4);

  const auto lln = parse_compare_config("[system]\nn=100\nd=5\nlambda=0.8\n[comparison]\nkind=lln\n");
  CHECK(lln.kind == "lln");
  CHECK(lln.lln.params.d == 5);
  CHECK(lln.lln.init.kind == InitSpec::Kind::Empty);

  CHECK_THROWS(parse_compare_config("[system]\nn=100\nd=5\nlambda=0.8\nregime=sub\ncolour=red\n"));
  CHECK_THROWS(parse_compare_config("[systems]\nn=100\n"));
  CHECK_THROWS(parse_compare_config("[system]\nn=abc\nd=5\nlambda=0.8\nregime=sub\n"));
  CHECK_THROWS(parse_compare_config("[system]\nd=5\nlambda=0.8\nregime=sub\n"));
  CHECK_THROWS(parse_compare_config("[system]\nn=100\nd=5\nlambda=0.8\nregime=sub\n[comparison]\ntimes=1,x\n"));
}

TEST_CASE("shipped configs parse") {
  const std::string dir = JSQD_CONFIG_DIR;
  CHECK(load_compare_config(dir + "/critical.ini").fluctuation.expected == RegimeKind::Critical);
  CHECK(load_compare_config(dir + "/sub.ini").fluctuation.expected == RegimeKind::Sub);
  CHECK(load_compare_config(dir + "/super.ini").fluctuation.expected == RegimeKind::Super);
  CHECK(load_compare_config(dir + "/lln.ini").kind == "lln");
  CHECK_THROWS(load_compare_config(dir + "/missing.ini"));
}
