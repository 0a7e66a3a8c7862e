#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "wb/cli.hpp"
#include "wb/energy.hpp"
#include "wb/io.hpp"

using namespace wb;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("wbtest_" + std::to_string(std::rand()) + "_" +
            std::to_string(reinterpret_cast<uintptr_t>(this) & 0xffff));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("format17 round-trips doubles") {
  for (double x : {1.0 / 3.0, -2.0 * std::sqrt(2.0) / 3.0, 1e-17, 123456.789}) {
    CHECK(std::stod(format17(x)) == x);
  }
  CHECK(format17(kInf) == "+inf");
}

TEST_CASE("kernel config parse and round-trip") {
  std::istringstream toy_cfg(
      "kind = toy\n"
      "w = 0.5\n");
  KernelPtr toy = parse_kernel_config(toy_cfg);
  CHECK(toy->value(0.5) == -1.0);
  CHECK(std::isinf(toy->value(1.2)));
  CHECK(toy->value(3.0) == 0.0);

  std::istringstream power_cfg(
      "kind = power-law\n"
      "p = 2\n"
      "d = 1\n"
      "a = 2\n"
      "truncate = 7\n"
      "[barrier]\n"
      "height = 5\n"
      "width = 5\n"
      "[tail]\n"
      "profile = zero\n");
  KernelPtr power = parse_kernel_config(power_cfg);
  CHECK(power->value(1.0) == 0.0);
  CHECK(power->value(3.0) == 5.0);
  CHECK(power->value(8.0) == 0.0);
  CHECK(power->shape()->W == 5.0);

  std::istringstream wb_cfg(
      "kind = well-barrier\n"
      "d = 1\nw = 0.5\na = 1\n"
      "[well]\nprofile = linear\n"
      "[barrier]\nprofile = constant\nheight = 2\nwidth = 2\n"
      "[tail]\nprofile = inverse-power\nc = 0.1\nq = 2\n");
  KernelPtr wbk = parse_kernel_config(wb_cfg);
  CHECK(wbk->value(0.0) == -1.0);
  CHECK(wbk->value(2.0) == 2.0);
  CHECK(wbk->value(4.0) == doctest::Approx(0.1 / 16.0));

  // serialize -> parse -> same values on a sample of radii
  for (const KernelPtr& k : {toy, power, wbk}) {
    std::istringstream round(kernel_config_string(*k));
    KernelPtr k2 = parse_kernel_config(round);
    for (int i = 0; i <= 200; ++i) {
      double r = 9.0 * i / 200.0;
      double a = k->value(r), b = k2->value(r);
      if (std::isinf(a))
        CHECK(std::isinf(b));
      else
        CHECK(a == doctest::Approx(b).epsilon(1e-15));
    }
  }

  std::istringstream bad("kind = banana\n");
  CHECK_THROWS_AS(parse_kernel_config(bad), std::invalid_argument);
}

TEST_CASE("grid text and csv round-trip") {
  TempDir tmp;
  GridDensity g = GridDensity::zeros(2, {-1.0, -2.0}, 0.25, {8, 6});
  g.set_value(3, 1.0);
  g.set_value(17, 0.5);
  g.set_value(40, 1.0);
  save_grid_text(g, tmp.file("grid.txt"));
  GridDensity back = load_grid_text(tmp.file("grid.txt"));
  CHECK(back.dim() == 2);
  CHECK(back.origin() == g.origin());
  CHECK(back.h() == g.h());
  CHECK(back.counts() == g.counts());
  CHECK(back.values() == g.values());

  save_grid_csv(g, tmp.file("grid.csv"));
  std::string csv = slurp(tmp.file("grid.csv"));
  CHECK(csv.rfind("i,j,x,y,value", 0) == 0);
}

TEST_CASE("interval and droplet JSON round-trip") {
  IntervalConfig iv({{0.0, 1.0}, {2.5, 3.25}});
  IntervalConfig iv2 = interval_config_from_json(to_json(iv));
  CHECK(iv2.intervals() == iv.intervals());

  DropletConfig dc(2, {{{0.0, 1.0}, 0.5}, {{4.0, -1.0}, 0.25}});
  DropletConfig dc2 = droplet_config_from_json(to_json(dc));
  CHECK(dc2.dim == 2);
  REQUIRE(dc2.balls.size() == 2);
  CHECK(dc2.balls[1].radius == 0.25);
  CHECK(dc2.balls[1].center == std::array<double, 2>{4.0, -1.0});
}

TEST_CASE("dump17 stability and energy JSON") {
  EnergyResult r;
  r.value = -1.0 / 3.0;
  r.method = EnergyMethod::exact_interval;
  r.mass = 2.0;
  std::string a = dump17(to_json(r));
  std::string b = dump17(to_json(r));
  CHECK(a == b);
  CHECK(a.find("-0.33333333333333331") != std::string::npos);
  CHECK(a.find("exact-interval") != std::string::npos);

  r.forbidden_pairs.push_back({0, 1});
  r.value = kInf;
  std::string inf = dump17(to_json(r));
  CHECK(inf.find("\"+inf\"") != std::string::npos);
}

TEST_CASE("cli: energy on the unit interval") {
  TempDir tmp;
  spit(tmp.file("toy.cfg"), "kind = toy\nw = 0.5\n");
  spit(tmp.file("unit.json"), "[[0.0, 1.0]]");

  int rc = cli::run({"--out", tmp.file("out"), "energy", "--kernel",
                     tmp.file("toy.cfg"), "--intervals", tmp.file("unit.json")});
  CHECK(rc == 0);
  auto j = nlohmann::json::parse(slurp(tmp.file("out/result.json")));
  CHECK(j.at("value").get<double>() == -1.0);
  CHECK(j.at("method") == "exact-interval");

  // forbidden configuration: exit 2 and pairs listed
  spit(tmp.file("bad.json"), "[[0.0, 1.0], [1.5, 2.5]]");
  spit(tmp.file("toy75.cfg"), "kind = toy\nw = 0.75\n");
  rc = cli::run({"--out", tmp.file("out2"), "energy", "--kernel",
                 tmp.file("toy75.cfg"), "--intervals", tmp.file("bad.json")});
  CHECK(rc == 2);
  auto j2 = nlohmann::json::parse(slurp(tmp.file("out2/result.json")));
  CHECK(j2.at("value") == "+inf");
  CHECK_FALSE(j2.at("forbidden_pairs").empty());

  // missing file: exit 1
  rc = cli::run({"energy", "--kernel", tmp.file("nope.cfg"), "--intervals",
                 tmp.file("unit.json")});
  CHECK(rc == 1);
}

TEST_CASE("cli: toy and droplets") {
  TempDir tmp;
  int rc = cli::run({"--out", tmp.file("toy"), "toy", "--m", "3", "--w", "0.5"});
  CHECK(rc == 0);
  auto j = nlohmann::json::parse(slurp(tmp.file("toy/result.json")));
  CHECK(j.at("value").get<double>() == -3.0);
  CHECK(j.at("regime") == "narrow");
  CHECK_FALSE(j.at("conjecture_flag").get<bool>());

  rc = cli::run({"--out", tmp.file("drop"), "droplets", "--n", "1", "--p", "2",
                 "--d", "1", "--m", "4"});
  CHECK(rc == 0);
  auto dj = nlohmann::json::parse(slurp(tmp.file("drop/result.json")));
  CHECK(dj.at("k").get<int>() == 3);
  CHECK(dj.at("masses").size() == 3);
  CHECK(dj.at("masses")[0].get<double>() == doctest::Approx(4.0 / 3.0));
  CHECK(dj.at("m0").get<double>() == doctest::Approx(std::sqrt(3.0)));
  CHECK(dj.at("m1").get<double>() == doctest::Approx(2.0));

  // invalid mass: exit 1
  rc = cli::run({"--out", tmp.file("bad"), "droplets", "--m", "0"});
  CHECK(rc == 1);

  // sweep emits csv + svg
  rc = cli::run({"--out", tmp.file("sweep"), "droplets", "--m-min", "0.5",
                 "--m-max", "20", "--m-steps", "8"});
  CHECK(rc == 0);
  CHECK(slurp(tmp.file("sweep/trace.csv"))
            .rfind("m,k,total_energy,energy_per_mass", 0) == 0);
  CHECK(fs::exists(tmp.file("sweep/plot.svg")));
}

TEST_CASE("cli: anneal determinism and diagnose") {
  TempDir tmp;
  spit(tmp.file("k.cfg"),
       "kind = power-law\np = 2\nd = 1\na = 2\ntruncate = 7\n"
       "[barrier]\nheight = 5\nwidth = 5\n[tail]\nprofile = zero\n");

  std::vector<std::string> args{"--out", tmp.file("a1"), "anneal",
                                "--kernel", tmp.file("k.cfg"), "--m", "1",
                                "--h", "0.1", "--box", "8", "--epochs", "40",
                                "--seed", "42"};
  CHECK(cli::run(args) == 0);
  args[1] = tmp.file("a2");
  CHECK(cli::run(args) == 0);
  CHECK(slurp(tmp.file("a1/density.txt")) == slurp(tmp.file("a2/density.txt")));
  CHECK(slurp(tmp.file("a1/trace.csv")) == slurp(tmp.file("a2/trace.csv")));
  CHECK(slurp(tmp.file("a1/trace.csv")).rfind("epoch,T,best_energy", 0) == 0);
  CHECK(fs::exists(tmp.file("a1/plot.svg")));

  // diagnose the annealed density: finite energy, reports present
  int rc = cli::run({"--out", tmp.file("diag"), "diagnose", "--kernel",
                     tmp.file("k.cfg"), "--density", tmp.file("a1/density.txt"),
                     "--el-tol", "0.05"});
  CHECK(rc == 0);
  auto j = nlohmann::json::parse(slurp(tmp.file("diag/result.json")));
  CHECK(j.contains("el"));
  CHECK(j.at("separation").at("empty").get<bool>());

  // infeasible packing: exit 3
  spit(tmp.file("toy5.cfg"), "kind = toy\nw = 5\n");
  rc = cli::run({"--out", tmp.file("inf"), "anneal", "--kernel",
                 tmp.file("toy5.cfg"), "--m", "3", "--h", "0.5", "--box", "4"});
  CHECK(rc == 3);
}

TEST_CASE("cli: worker count via flag and environment") {
  TempDir tmp;
  spit(tmp.file("toy.cfg"), "kind = toy\nw = 0.5\n");
  spit(tmp.file("unit.json"), "[[0.0, 1.0]]");
  spit(tmp.file("k.cfg"),
       "kind = power-law\np = 2\nd = 1\na = 2\n"
       "[barrier]\nheight = 5\nwidth = 5\n[tail]\nprofile = zero\n");

  // rasterized interval energy with 1 and 3 workers agree
  CHECK(cli::run({"--out", tmp.file("w1"), "--workers", "1", "energy",
                  "--kernel", tmp.file("k.cfg"), "--intervals",
                  tmp.file("unit.json"), "--h", "0.05"}) == 0);
  CHECK(cli::run({"--out", tmp.file("w3"), "--workers", "3", "energy",
                  "--kernel", tmp.file("k.cfg"), "--intervals",
                  tmp.file("unit.json"), "--h", "0.05"}) == 0);
  auto j1 = nlohmann::json::parse(slurp(tmp.file("w1/result.json")));
  auto j3 = nlohmann::json::parse(slurp(tmp.file("w3/result.json")));
  CHECK(j1.at("value").get<double>() ==
        doctest::Approx(j3.at("value").get<double>()).epsilon(1e-13));

  setenv("WBLAB_WORKERS", "2", 1);
  CHECK(cli::run({"--out", tmp.file("we"), "energy", "--kernel",
                  tmp.file("k.cfg"), "--intervals", tmp.file("unit.json"),
                  "--h", "0.05"}) == 0);
  unsetenv("WBLAB_WORKERS");
  auto je = nlohmann::json::parse(slurp(tmp.file("we/result.json")));
  CHECK(je.at("value").get<double>() ==
        doctest::Approx(j1.at("value").get<double>()).epsilon(1e-13));
}

TEST_CASE("cli: sweep and help") {
  TempDir tmp;
  int rc = cli::run({"--out", tmp.file("s"), "sweep", "--w", "1.5", "--m-min",
                     "1", "--m-max", "2", "--m-steps", "3", "--h", "0.5",
                     "--length", "8"});
  CHECK(rc == 0);
  std::string csv = slurp(tmp.file("s/trace.csv"));
  CHECK(csv.rfind("m,w,theory,brute_force,gap", 0) == 0);

  CHECK(cli::run({"--help"}) == 0);
  CHECK(cli::run({"toy", "--help"}) == 0);
  CHECK(cli::run({"no-such-command"}) == 1);
}
