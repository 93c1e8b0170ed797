#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/generators.hpp"
#include "support/worked_example.hpp"

using namespace polydual;
using io::json;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir = POLYDUAL_TEST_DATA;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

struct CliResult {
  int code;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("polydual_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  CliResult run(const std::string& args) {
    const auto out = dir / "stdout", err = dir / "stderr";
    const std::string cmd = std::string("\"") + POLYDUAL_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  fs::path dir;
};

}  // namespace

TEST(Json, RationalEncoding) {
  EXPECT_EQ(io::encode(Rational(-7)), json(-7));
  EXPECT_EQ(io::encode(Rational(3, 4)), json("3/4"));
  const Rational big = pow(Integer(10), 30);
  EXPECT_EQ(io::encode(big), json("1000000000000000000000000000000"));
  EXPECT_EQ(io::decode(json("-5/10"), "x"), Rational(-1, 2));
  EXPECT_EQ(io::decode(io::encode(big), "x"), big);
  EXPECT_THROW(io::decode(json(0.5), "x"), ParseError);
  EXPECT_THROW(io::decode(json("1/0"), "x"), ParseError);
  EXPECT_THROW(io::decode(json("abc"), "x"), ParseError);
}

TEST(Json, DrawingRoundTrip) {
  const auto in = fixtures::truncated_tetrahedron();
  const auto doc = io::read_embedding2d(io::parse_json(io::dump(io::to_json(in.p, in.stress))));
  EXPECT_EQ(doc.embedding.p, in.p.p);
  EXPECT_EQ(doc.embedding.graph.ids(), in.p.graph.ids());
  EXPECT_EQ(doc.embedding.graph.faces(), in.p.graph.faces());
  EXPECT_EQ(doc.embedding.boundary_face, in.p.boundary_face);
  ASSERT_TRUE(doc.stress);
  EXPECT_EQ(doc.stress->w, in.stress.w);
}

TEST(Json, PolytopeRoundTripWithFractions) {
  auto u = gen::icosahedron();
  u.u[3] = Rational(7, 3) * u.u[3];
  const auto M = canonical_cdv(gen::icosahedron()).M;
  const auto doc = io::read_polytope(io::parse_json(io::dump(io::to_json(u, M))));
  EXPECT_EQ(doc.embedding.u, u.u);
  ASSERT_TRUE(doc.matrix);
  EXPECT_EQ(*doc.matrix, M);
}

TEST(Json, DualRoundTrip) {
  const Anchor anchor{{2, 3, 6}, worked::phi.front().second};
  const auto r = stacked_dual(fixtures::truncated_tetrahedron(), StackingMode::paper_example, anchor);
  const auto doc = io::read_dual(io::parse_json(io::dump(io::to_json(r.u, r.M, r.dual))));
  EXPECT_EQ(doc.dual.phi, r.dual.phi);
  EXPECT_EQ(doc.matrix, r.M);
  EXPECT_EQ(doc.dual.anchor_phi, anchor.phi);
  EXPECT_EQ(doc.dual_faces.size(), 8u);
}

TEST(Json, ReadErrors) {
  EXPECT_THROW(io::parse_json("{ not json"), ParseError);
  EXPECT_THROW(io::read_polytope(json::parse(R"({"schema":"polydual/1","kind":"embedding2d"})")), ParseError);
  EXPECT_THROW(io::read_polytope(json::parse(R"({"schema":"other","kind":"polytope"})")), ParseError);
  const auto good = io::to_json(gen::octahedron());
  auto extra = good;
  extra["colour"] = "red";
  EXPECT_THROW(io::read_polytope(extra), ParseError);
  EXPECT_NO_THROW(io::read_polytope(extra, {true}));
  auto missing = good;
  missing.erase("faces");
  EXPECT_THROW(io::read_polytope(missing), ParseError);
  auto flat = good;
  flat["vertices"][0]["coords"] = json::array({1, 0});
  EXPECT_THROW(io::read_polytope(flat), ParseError);
}

TEST(Off, IntegerRoundTrip) {
  const auto r = simplicial_dual(gen::octahedron());
  const auto off = io::off_of_dual(r.pipeline.u.graph, r.pipeline.dual);
  const auto back = io::read_off(io::write_off(off));
  EXPECT_EQ(back.points, off.points);
  EXPECT_EQ(back.faces, off.faces);
  EXPECT_EQ(io::write_off(off).substr(0, 10), "OFF\n8 6 0\n");
}

TEST(Off, FractionsStayExact) {
  io::OffData d{{{Rational(1, 4), Rational(-3, 5), 2}, {Rational(1, 3), 0, Rational(-2, 7)}, {0, 1, 0}}, {{0, 1, 2}}};
  const auto text = io::write_off(d);
  EXPECT_NE(text.find("# scale 420"), std::string::npos);
  EXPECT_EQ(io::read_off(text).points, d.points);
  io::OffData t{{{Rational(1, 4), Rational(-3, 5), 2}}, {}};
  EXPECT_NE(io::write_off(t).find("0.25 -0.6 2"), std::string::npos);
  EXPECT_EQ(io::read_off(io::write_off(t)).points, t.points);
  EXPECT_EQ(io::read_off("OFF\n1 0 0\n-0.075 010 0.5\n").points.front(), (Vec3{Rational(-3, 40), 10, Rational(1, 2)}));
}

TEST(Off, ReadErrors) {
  EXPECT_THROW(io::read_off("PLY\n"), ParseError);
  EXPECT_THROW(io::read_off("OFF\n2 0 0\n1 2 3\n"), ParseError);
  EXPECT_THROW(io::read_off("OFF\n1 1 0\n1 2 3\n3 0 1 2\n"), ParseError);
  EXPECT_THROW(io::read_off("OFF\n1 0 0\n1 2 x\n"), ParseError);
}

TEST(Golden, FileHoldsPublishedVectors) {
  const auto doc = io::read_dual(io::parse_json(slurp(data_dir / "truncated_tetrahedron_dual.json")));
  const auto& g = doc.primal.graph;
  for (const auto& [face, value] : worked::phi) EXPECT_EQ(doc.dual.phi[*g.find_face_by_ids(face)], value);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      EXPECT_EQ(doc.matrix.get(g, g.index(static_cast<VertexId>(r + 1)), g.index(static_cast<VertexId>(c + 1))),
                worked::M[r][c]);
}

TEST_F(Cli, ExampleMatchesBundledInput) {
  const auto r = run("example truncated-tetrahedron");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(data_dir / "truncated_tetrahedron_input.json"));
}

TEST_F(Cli, StackedDualGolden) {
  const auto r = run("stacked-dual \"" + (data_dir / "truncated_tetrahedron_input.json").string() +
                     "\" --apex 1 --mode paper-example --anchor-face 2,3,6 --anchor-phi 0,-18,27");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, slurp(data_dir / "truncated_tetrahedron_dual.json"));
}

TEST_F(Cli, CompactAnchorFace) {
  const auto a = run("stacked-dual \"" + (data_dir / "truncated_tetrahedron_input.json").string() +
                     "\" --apex 1 --mode paper-example --anchor-face 236 --anchor-phi 0,-18,27");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, slurp(data_dir / "truncated_tetrahedron_dual.json"));
}

TEST_F(Cli, OffAndReportOutputs) {
  const auto r = run("stacked-dual \"" + (data_dir / "truncated_tetrahedron_input.json").string() +
                     "\" --apex 1 --out \"" + (dir / "d.json").string() + "\" --off \"" + (dir / "d.off").string() +
                     "\" --report \"" + (dir / "r.json").string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto off = io::read_off(slurp(dir / "d.off"));
  EXPECT_EQ(off.points.size(), 12u);
  EXPECT_EQ(off.faces.size(), 8u);
  const auto report = json::parse(slurp(dir / "r.json"));
  for (const auto& c : report["checks"]) EXPECT_TRUE(c["holds"].get<bool>()) << c["name"];
  EXPECT_EQ(report["mode"], "theorem");
}

TEST_F(Cli, VerifyGolden) {
  const auto r = run("verify \"" + (data_dir / "truncated_tetrahedron_dual.json").string() + "\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS  dual_polytope"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, VerifyCorruptedMatrix) {
  auto doc = json::parse(slurp(data_dir / "truncated_tetrahedron_dual.json"));
  auto& e = doc["primal"]["matrix"]["entries"][0]["v"];
  e = e.get<long>() + 1;
  spit(dir / "bad.json", doc.dump());
  const auto r = run("verify --json \"" + (dir / "bad.json").string() + "\"");
  EXPECT_EQ(r.code, 3);
  const auto rows = json::parse(r.out);
  bool failed = false;
  for (const auto& row : rows) failed = failed || (row["check"] == "cdv_equilibrium" && row["status"] == "FAIL");
  EXPECT_TRUE(failed);
}

TEST_F(Cli, DualizeOctahedron) {
  spit(dir / "oct.json", io::dump(io::to_json(gen::octahedron())));
  const auto r = run("dualize \"" + (dir / "oct.json").string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = io::read_dual(io::parse_json(r.out));
  EXPECT_EQ(doc.dual.phi.size(), 8u);
  EXPECT_EQ(doc.dual_faces.size(), 6u);
  EXPECT_TRUE(verify_dual_polytope(doc.primal, doc.dual, &doc.matrix).ok());
}

TEST_F(Cli, ReverseLiftCap) {
  gen::Rng rng(8);
  const auto cap = gen::random_cap_retry(rng, 3, 5);
  spit(dir / "cap.json", io::dump(io::to_json(cap.u)));
  const auto r = run("reverse-lift \"" + (dir / "cap.json").string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = io::read_embedding2d(io::parse_json(r.out));
  ASSERT_TRUE(doc.stress);
  EXPECT_TRUE(is_integer(doc.stress->w));
  EXPECT_TRUE(check_equilibrium(doc.embedding, *doc.stress).ok);
}

TEST_F(Cli, ExitCodes) {
  spit(dir / "garbage.json", "{ nope");
  EXPECT_EQ(run("verify \"" + (dir / "garbage.json").string() + "\"").code, 2);
  EXPECT_EQ(run("dualize \"" + (dir / "missing.json").string() + "\"").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);

  spit(dir / "cube.json", io::dump(io::to_json(gen::cube())));
  const auto pre = run("dualize \"" + (dir / "cube.json").string() + "\"");
  EXPECT_EQ(pre.code, 3);
  EXPECT_EQ(json::parse(pre.err)["error"], "precondition");

  const auto off_center = run("stacked-dual \"" + (data_dir / "truncated_tetrahedron_input.json").string() +
                              "\" --apex 1 --anchor-face 2,3,4 --anchor-phi 0,0,0");
  EXPECT_EQ(off_center.code, 3);
  EXPECT_EQ(json::parse(off_center.err)["code"], "bad_anchor");
}
