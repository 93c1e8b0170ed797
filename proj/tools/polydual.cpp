// polydual: command line front end.
//
// Exit codes: 0 success, 2 malformed input, 3 violated precondition (or a
// failed verification), 4 internal consistency failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "polydual/polydual.hpp"

namespace {

using namespace polydual;
using io::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, "io");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("io", "cannot write " + path);
  out << text;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return 2;
    case ErrorKind::precondition: return 3;
    default: return 4;
  }
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::precondition: return "precondition";
    default: return "consistency";
  }
}

void diagnose(const char* kind, const std::string& code, const std::string& message) {
  std::cerr << json{{"error", kind}, {"code", code}, {"message", message}}.dump() << "\n";
}

// "2,3,6", "2-3-6" or, with single-digit ids only, "236".
std::vector<VertexId> parse_face(const std::string& s) {
  std::vector<VertexId> out;
  const bool separated = s.find_first_of(",-") != std::string::npos;
  if (!separated) {
    for (char c : s) {
      if (c < '0' || c > '9') throw ParseError("--anchor-face: bad face '" + s + "'", "bad_argument");
      out.push_back(c - '0');
    }
    return out;
  }
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, s.find(',') != std::string::npos ? ',' : '-')) {
    auto q = parse_rational(token);
    if (!q || !is_integer(*q)) throw ParseError("--anchor-face: bad vertex id '" + token + "'", "bad_argument");
    out.push_back(numerator(*q).convert_to<VertexId>());
  }
  return out;
}

Vec3 parse_vec3(const std::string& s) {
  std::vector<Rational> xs;
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, ',')) {
    auto q = parse_rational(token);
    if (!q) throw ParseError("--anchor-phi: bad number '" + token + "'", "bad_argument");
    xs.push_back(*q);
  }
  if (xs.size() != 3) throw ParseError("--anchor-phi: expected x,y,z", "bad_argument");
  return {xs[0], xs[1], xs[2]};
}

struct Outputs {
  std::string out, off, report;
};

void add_outputs(CLI::App* cmd, Outputs& o, bool with_off) {
  cmd->add_option("--out", o.out, "Output JSON file (default: stdout)");
  if (with_off) cmd->add_option("--off", o.off, "Also write the dual polytope as OFF");
  cmd->add_option("--report", o.report, "Write the check report as JSON");
}

void emit_dual(const PipelineReport& r, const Outputs& o, json report) {
  write_output(o.out, io::dump(io::to_json(r.u, r.M, r.dual, report)));
  if (!o.off.empty()) write_output(o.off, io::write_off(io::off_of_dual(r.u.graph, r.dual)));
  if (!o.report.empty()) write_output(o.report, io::dump(report));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact integer realizations of dual polytopes"};
  app.require_subcommand(1);
  bool lenient = false;
  app.add_flag("--lenient", lenient, "Accept unknown JSON fields");

  std::string input;
  Outputs outs;

  auto* dualize = app.add_subcommand("dualize", "Dual of an integer convex simplicial polytope");
  dualize->add_option("input", input, "Polytope JSON")->required();
  add_outputs(dualize, outs, true);

  auto* stacked = app.add_subcommand("stacked-dual", "Dual of a stacked graph from a drawing with a positive stress");
  VertexId apex = 0;
  std::string mode = "theorem", anchor_face, anchor_phi;
  stacked->add_option("input", input, "2d embedding JSON with stress")->required();
  stacked->add_option("--apex", apex, "Id of the vertex stacked onto the boundary face")->required();
  stacked->add_option("--mode", mode, "theorem or paper-example")->check(CLI::IsMember({"theorem", "paper-example"}));
  auto* af = stacked->add_option("--anchor-face", anchor_face, "Face whose vector is fixed, e.g. 2,3,6");
  auto* ap = stacked->add_option("--anchor-phi", anchor_phi, "Vector of the anchor face, e.g. 0,-18,27");
  af->needs(ap);
  ap->needs(af);
  add_outputs(stacked, outs, true);

  auto* reverse = app.add_subcommand("reverse-lift", "Integer stress on the vertical projection of an integer polytope");
  reverse->add_option("input", input, "Polytope JSON")->required();
  add_outputs(reverse, outs, false);

  auto* verify = app.add_subcommand("verify", "Check every invariant that applies to a document");
  bool verify_json = false;
  verify->add_option("input", input, "Any polydual JSON document")->required();
  verify->add_flag("--json", verify_json, "Print the table as JSON");

  auto* example = app.add_subcommand("example", "Write a bundled example input");
  std::string example_name;
  example->add_option("name", example_name, "Example name")->required()->check(CLI::IsMember({"truncated-tetrahedron"}));
  example->add_option("--out", outs.out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    diagnose("parse", "bad_arguments", e.what());
    return 2;
  }

  const io::ReadOptions opt{lenient};
  try {
    if (*dualize) {
      const auto doc = io::read_polytope(io::parse_json(read_file(input)), opt);
      const auto r = simplicial_dual(doc.embedding);
      json report = io::report_json(r.pipeline);
      report["normalization"] = {{"scale", io::encode(r.normalized.scale)}, {"changed", r.normalized.changed}};
      report["cdv"] = {{"C", io::encode(r.cdv.C)},
                       {"max_entry", io::encode(r.cdv.max_entry)},
                       {"diagonal_integer", r.cdv.diagonal_integer},
                       {"bound_L", r.cdv.bound_L},
                       {"bound_theorem", r.cdv.bound_theorem}};
      emit_dual(r.pipeline, outs, report);
    } else if (*stacked) {
      const auto doc = io::read_embedding2d(io::parse_json(read_file(input)), opt);
      if (!doc.stress) throw PreconditionError("no_stress", "input has no stress");
      StackedInput in{doc.embedding, *doc.stress, apex};
      std::optional<Anchor> anchor;
      if (!anchor_face.empty()) anchor = Anchor{parse_face(anchor_face), parse_vec3(anchor_phi)};
      const auto m = mode == "paper-example" ? StackingMode::paper_example : StackingMode::theorem;
      const auto r = stacked_dual(in, m, anchor);
      json report = io::report_json(r);
      report["mode"] = mode;
      emit_dual(r, outs, report);
    } else if (*reverse) {
      const auto doc = io::read_polytope(io::parse_json(read_file(input)), opt);
      const auto r = reverse_maxwell_cremona(doc.embedding);
      json out = io::to_json(r.p, r.stress);
      json report = {{"C", io::encode(r.C)},
                     {"max_stress", io::encode(r.max_stress)},
                     {"max_degree", r.max_degree},
                     {"bound_L", r.bound_L},
                     {"bound_theorem", r.bound_theorem},
                     {"canonical_stress", io::stress_json(r.p.graph, r.canonical)}};
      out["report"] = report;
      write_output(outs.out, io::dump(out));
      if (!outs.report.empty()) write_output(outs.report, io::dump(report));
    } else if (*verify) {
      const auto rows = verify_document(io::parse_json(read_file(input)), opt);
      if (verify_json) {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back({{"check", r.name}, {"status", to_string(r.status)}, {"detail", r.detail}});
        std::cout << io::dump(arr);
      } else {
        for (const auto& r : rows) {
          std::cout << to_string(r.status) << "  " << r.name;
          if (!r.detail.empty()) std::cout << "  " << r.detail;
          std::cout << "\n";
        }
      }
      return all_passed(rows) ? 0 : 3;
    } else if (*example) {
      const auto in = fixtures::truncated_tetrahedron();
      write_output(outs.out, io::dump(io::to_json(in.p, in.stress)));
    }
  } catch (const Error& e) {
    diagnose(kind_name(e.kind()), e.code(), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    diagnose("consistency", "internal", e.what());
    return 4;
  }
  return 0;
}
