// End-to-end contract of the command line tool: exit codes and the
// documented output lines, run through a real subprocess.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "singlab/catalog.hpp"
#include "singlab/manifest.hpp"

using namespace singlab;

namespace {

std::string g_binary;
std::string g_source_dir;
std::filesystem::path g_work;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::filesystem::path out = g_work / "out.txt";
  const std::string cmd = g_binary + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("solve: linear manifest yields one point") {
  const auto path = (g_work / "linear.vf").string();
  save_manifest(path, VectorField(3, {MultivariatePolynomial::parse("z1 - 1", 3),
                                      MultivariatePolynomial::parse("z2 - 2", 3),
                                      MultivariatePolynomial::parse("z3", 3)}));
  const RunResult r = run("solve --field " + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "total multiplicity = 1"));
}

TEST_CASE("solve: exit 2 on parse failure, 3 on positive dimension, 4 on budget") {
  const auto bad = (g_work / "bad.vf").string();
  std::ofstream(bad) << "n = 2\nX1 = z1 +\nX2 = z2\n";
  CHECK(run("solve --field " + bad).exit_code == 2);
  CHECK(run("solve --field " + (g_work / "missing.vf").string()).exit_code == 2);

  const auto posdim = (g_work / "posdim.vf").string();
  std::ofstream(posdim) << "n = 2\nX1 = z1*z2\nX2 = z1*z2\n";
  CHECK(run("solve --field " + posdim).exit_code == 3);

  const auto inst = cubic_curve_family(7);
  const auto cubic = (g_work / "cubic.vf").string();
  save_manifest(cubic, inst.refined.at(Rational(1, 1000)));
  CHECK(run("solve --field " + cubic + " --budget 2").exit_code == 4);
}

TEST_CASE("solve: the 27-point system through the CLI") {
  const auto inst = cubic_curve_family(7);
  const auto cubic = (g_work / "cubic27.vf").string();
  save_manifest(cubic, inst.refined.at(Rational(1, 1000)));
  const auto json_out = (g_work / "solve27.json").string();
  const RunResult r = run("solve --field " + cubic + " --out " + json_out);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "total multiplicity = 27"));
  CHECK(std::filesystem::exists(json_out));
}

TEST_CASE("nu, bounds, balance command lines") {
  const RunResult nu = run("nu --preset p3-line --m 2");
  CHECK(nu.exit_code == 0);
  CHECK(contains(nu.output, "-12"));

  const RunResult nu_file =
      run("nu --preset " + g_source_dir + "/presets/p3-line.preset --m 3");
  CHECK(nu_file.exit_code == 0);
  CHECK(contains(nu_file.output, "-36"));

  CHECK(run("nu --preset nowhere-to-be-found --m 2").exit_code == 2);

  const RunResult b = run("bounds --k 2 --n 3");
  CHECK(b.exit_code == 0);
  CHECK(contains(b.output, "= 8"));
  const RunResult br = run("bounds --k 3 --n 3 --radial");
  CHECK(contains(br.output, "= 14"));

  const RunResult bal = run("balance --n 3 --k 2 --nu -12 --sum-isolated 3");
  CHECK(bal.exit_code == 0);
  CHECK(contains(bal.output, "N = 0"));
  CHECK(contains(bal.output, "mu_along_W = 12"));
}

TEST_CASE("deform: the built-in families") {
  const RunResult gen = run("deform --family example41 --m 2 --seed 7");
  CHECK(gen.exit_code == 0);
  CHECK(contains(gen.output, "mu_along_W = 4"));

  const RunResult planted = run("deform --family example41 --m 2 --beta 1");
  CHECK(planted.exit_code == 0);
  CHECK(contains(planted.output, "mu_along_W = 2"));

  const RunResult special = run("deform --family example43 --special");
  CHECK(special.exit_code == 0);
  CHECK(contains(special.output, "trajectories: 0"));
  CHECK(contains(special.output, "mu_along_W = 0"));
}

TEST_CASE("deform: ambiguous matching is exit 5") {
  const auto drift = (g_work / "drift.vf").string();
  std::ofstream(drift) << "n = 3\nX1 = z1 - 1\nX2 = z2\nX3 = z3\nW = z2; z3\n";
  const RunResult r = run("deform --field " + drift + " --region 1.0009");
  CHECK(r.exit_code == 5);
}

TEST_CASE("geometry inspection commands") {
  const auto field = (g_work / "profile.vf").string();
  std::ofstream(field) << "n = 3\nX1 = z1^2\nX2 = z1*z2\nX3 = z2^3\nW = z1; z2\n";
  const RunResult mw = run("mult-w --field " + field);
  CHECK(mw.exit_code == 0);
  CHECK(contains(mw.output, "m_W = 2"));

  const auto tangent = (g_work / "tangent.vf").string();
  std::ofstream(tangent) << "n = 3\nX1 = 0\nX2 = 0\nX3 = z1\nW = z1; z2\n";
  const RunResult el = run("ell --field " + tangent);
  CHECK(el.exit_code == 0);
  CHECK(contains(el.output, "m_E = 1"));
  CHECK(contains(el.output, "non-dicritical"));
  CHECK(contains(el.output, "ell = 1"));

  const auto simple = (g_work / "simple.vf").string();
  std::ofstream(simple) << "n = 3\nX1 = z1\nX2 = z2\nX3 = 0\nW = z1; z2\n";
  const RunResult ts = run("totally-simple --field " + simple);
  CHECK(ts.exit_code == 0);
  CHECK(contains(ts.output, "true"));
}

TEST_CASE("check: built-in example reproductions") {
  CHECK(run("check 41 --m 2").exit_code == 0);
  CHECK(run("check 42").exit_code == 0);
  CHECK(run("check 43").exit_code == 0);
  CHECK(run("check 99").exit_code == 2);
}

TEST_CASE("deterministic reports for a fixed seed") {
  const auto out1 = (g_work / "rep1.json").string();
  const auto out2 = (g_work / "rep2.json").string();
  CHECK(run("deform --family example41 --m 2 --seed 11 --out " + out1).exit_code == 0);
  CHECK(run("deform --family example41 --m 2 --seed 11 --out " + out2).exit_code == 0);
  std::ifstream a(out1), b(out2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(contains(sa.str(), "\"seed\": 11"));
  CHECK(contains(sa.str(), "\"version\""));
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: cli_contract <singlab-binary> <source-dir>\n");
    return 64;
  }
  g_binary = argv[1];
  g_source_dir = argv[2];
  g_work = std::filesystem::temp_directory_path() / "singlab-cli-test";
  std::filesystem::create_directories(g_work);

  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}

TEST_CASE("deform: family schedules keep their own thresholds") {
  // the m = 3 family ships a wider W-proximity threshold; the flag default
  // must not clobber it
  const RunResult r = run("deform --family example41 --m 3 --seed 11");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "mu_along_W = 9"));
}
