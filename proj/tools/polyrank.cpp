// polyrank: CG closures, ranks, integer hulls and reverse-rank decisions on
// polyhedra stored as JSON documents.
//
// Exit codes: 0 success, 2 invalid input, 3 cap exceeded, 4 internal error.
// POLYRANK_CAP, when set, replaces the default of --cap, --max-norm and --max-k.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyrank/polyrank.hpp"

using namespace polyrank;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kCap = 3;
constexpr int kInternal = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded:
    case ErrorKind::SearchCapExceeded: return kCap;
    case ErrorKind::InvariantViolation: return kInternal;
    default: return kInvalid;
  }
}

std::size_t default_cap(std::size_t fallback) {
  const char* env = std::getenv("POLYRANK_CAP");
  if (!env || !*env) return fallback;
  try {
    const long v = std::stol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  fail(ErrorKind::InvalidArgument, std::string("POLYRANK_CAP must be a positive integer, got \"") + env + "\"");
}

void write_json(const Json& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path);
  out << doc.dump(2) << "\n";
}

IntVector parse_direction(const std::string& text) {
  IntVector v;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (!io::detail::is_integer_text(item)) fail(ErrorKind::ParseError, "direction entry \"" + item + "\" is not an integer");
    v.push_back(Integer(item[0] == '+' ? item.substr(1) : item));
  }
  return v;
}

std::string verdict_line(const RcgrVerdict& v) {
  std::string line = to_string(v.outcome);
  switch (v.outcome) {
    case Outcome::Infinite: return line + " witness=" + to_string(v.witness);
    case Outcome::Finite:
      line += " reason=" + to_string(v.reason);
      if (v.reason == FiniteReason::InteriorPoint) line += " point=" + to_string(v.interior_point);
      if (v.reason == FiniteReason::Covered) line += " k=" + std::to_string(v.covering_level);
      return line;
    case Outcome::CapExceeded:
      return line + " last_k=" + std::to_string(v.last_k) + " last_norm=" + std::to_string(v.last_norm);
  }
  return line;
}

struct Options {
  std::string input, output, verdict_file, csv, family, direction, which = "q";
  long oracle = 0, param = 1, from = 1, to = 1;
  std::size_t cap = 0, max_norm = 0, max_k = 0;
  bool relint = false, json = false, cuts = false;
};

int run_closure(const Options& o) {
  const Polyhedron q = io::read_polyhedron(o.input).polyhedron;
  if (o.cuts) {
    write_json(io::emit_cuts(closure_cuts(q)), o.output);
    return kOk;
  }
  const Polyhedron c = o.oracle > 0 ? closure_oracle(q, o.oracle) : elementary_closure(q);
  write_json(io::emit_polyhedron(c, "closure"), o.output);
  return kOk;
}

int run_rank(const Options& o) {
  const Polyhedron q = io::read_polyhedron(o.input).polyhedron;
  std::cout << cg_rank(q, o.cap) << "\n";
  return kOk;
}

int run_hull(const Options& o) {
  write_json(io::emit_polyhedron(integer_hull(io::read_polyhedron(o.input).polyhedron), "integer hull"), o.output);
  return kOk;
}

int run_points(const Options& o) {
  const Polyhedron p = io::read_polyhedron(o.input).polyhedron;
  const LatticePointReport r = o.relint ? relint_integer_points(p) : integer_points(p);
  for (const auto& z : r.points) std::cout << to_string(z) << "\n";
  return kOk;
}

int run_rcgr(const Options& o) {
  const Polyhedron p = io::read_polyhedron(o.input).polyhedron;
  RcgrCaps caps;
  caps.max_norm = o.max_norm;
  caps.max_k = o.max_k;
  const RcgrVerdict v = decide_rcgr(p, caps);
  const std::string problem = verify_verdict(p, v);
  if (!problem.empty()) fail(ErrorKind::InvariantViolation, "verdict failed re-verification: " + problem);
  if (o.json) std::cout << io::emit_verdict(v).dump(2) << "\n";
  else std::cout << verdict_line(v) << "\n";
  return v.outcome == Outcome::CapExceeded ? kCap : kOk;
}

int run_verify(const Options& o) {
  const Polyhedron p = io::read_polyhedron(o.input).polyhedron;
  std::ifstream in(o.verdict_file);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + o.verdict_file);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ParseError, std::string("malformed verdict JSON: ") + e.what());
  }
  const std::string problem = verify_verdict(p, io::parse_verdict(doc));
  if (!problem.empty()) {
    std::cout << "INVALID " << problem << "\n";
    return kInvalid;
  }
  std::cout << "VALID\n";
  return kOk;
}

int run_gen(const Options& o) {
  Json meta = {{"family", o.family}, {"param", o.param}};
  if (o.family == "qt") {
    write_json(io::emit_polyhedron(gen_qt(o.param), "qt_" + std::to_string(o.param), meta), o.output);
  } else if (o.family == "pkqk") {
    PkQk f = gen_pk_qk(o.param);
    if (o.which == "p") write_json(io::emit_polyhedron(f.p, "pk_" + std::to_string(o.param), meta), o.output);
    else write_json(io::emit_polyhedron(f.q, "qk_" + std::to_string(o.param), meta), o.output);
  } else if (o.family == "qalpha") {
    if (o.input.empty() || o.direction.empty())
      fail(ErrorKind::InvalidArgument, "qalpha needs -i FILE and --direction");
    const Polyhedron p = io::read_polyhedron(o.input).polyhedron;
    QAlpha q = gen_qalpha(p, parse_direction(o.direction), o.param);
    meta["centre"] = io::detail::rat_vector_json(q.centre);
    meta["apex"] = io::detail::rat_vector_json(q.apex);
    write_json(io::emit_polyhedron(q.q, "qalpha_" + std::to_string(o.param), meta), o.output);
  } else if (o.family == "simplex") {
    write_json(io::emit_polyhedron(gen_unit_simplex(o.param), "simplex_" + std::to_string(o.param), meta), o.output);
  } else if (o.family == "segment01") {
    write_json(io::emit_polyhedron(gen_01_segment(o.param), "segment01_" + std::to_string(o.param), meta), o.output);
  } else {
    fail(ErrorKind::InvalidArgument, "unknown family \"" + o.family + "\"");
  }
  return kOk;
}

int run_sweep(const Options& o) {
  if (o.family != "qt") fail(ErrorKind::InvalidArgument, "sweep supports the qt family only");
  if (o.from < 1 || o.to < o.from) fail(ErrorKind::InvalidArgument, "need 1 <= --from <= --to");
  std::ofstream out(o.csv);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + o.csv);
  out << "param,rank,cch_bound,closure_iters,wall_ms\n";
  for (long t = o.from; t <= o.to; ++t) {
    const auto start = std::chrono::steady_clock::now();
    const Polyhedron q = gen_qt(t);
    const RankResult r = cg_rank_sequence(q, o.cap);
    const Integer bound = cch_lower_bound(q, {Rational(t), Rational(1, 2)}, {1, 0});
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    out << t << "," << r.rank << "," << bound << "," << r.closures.size() - 1 << "," << ms.count() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  int (*handler)(const Options&) = nullptr;
  try {
    o.cap = default_cap(1000);
    o.max_norm = default_cap(20);
    o.max_k = default_cap(20);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }

  CLI::App app{"Exact CG closures, ranks and reverse-rank decisions for rational polyhedra"};
  app.require_subcommand(1);

  auto* closure = app.add_subcommand("closure", "elementary CG closure");
  closure->add_option("-i,--input", o.input, "polyhedron JSON")->required()->check(CLI::ExistingFile);
  closure->add_option("-o,--output", o.output, "write result here instead of stdout");
  closure->add_option("--oracle", o.oracle, "use all cuts with normals of infinity norm <= B")->check(CLI::PositiveNumber);
  closure->add_flag("--cuts", o.cuts, "print the generating cuts instead of the closure");
  closure->callback([&] { handler = run_closure; });

  auto* rank = app.add_subcommand("rank", "CG rank");
  rank->add_option("-i,--input", o.input, "polyhedron JSON")->required()->check(CLI::ExistingFile);
  rank->add_option("--cap", o.cap, "maximum number of closures");
  rank->callback([&] { handler = run_rank; });

  auto* hull = app.add_subcommand("hull", "integer hull");
  hull->add_option("-i,--input", o.input, "polyhedron JSON")->required()->check(CLI::ExistingFile);
  hull->add_option("-o,--output", o.output, "write result here instead of stdout");
  hull->callback([&] { handler = run_hull; });

  auto* points = app.add_subcommand("points", "integer points of a polytope");
  points->add_option("-i,--input", o.input, "polyhedron JSON")->required()->check(CLI::ExistingFile);
  points->add_flag("--relint", o.relint, "only points of the relative interior");
  points->callback([&] { handler = run_points; });

  auto* rcgr = app.add_subcommand("rcgr", "decide finiteness of the reverse CG rank");
  rcgr->add_option("-i,--input", o.input, "integral polyhedron JSON")->required()->check(CLI::ExistingFile);
  rcgr->add_option("--max-norm", o.max_norm, "largest direction norm tried");
  rcgr->add_option("--max-k", o.max_k, "largest blow-up level tried");
  rcgr->add_flag("--json", o.json, "print the full verdict as JSON");
  rcgr->callback([&] { handler = run_rcgr; });

  auto* verify = app.add_subcommand("verify", "re-check a JSON verdict against its polyhedron");
  verify->add_option("-i,--input", o.input, "polyhedron JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--verdict", o.verdict_file, "verdict JSON from rcgr --json")->required()->check(CLI::ExistingFile);
  verify->callback([&] { handler = run_verify; });

  auto* gen = app.add_subcommand("gen", "generate an instance family member");
  gen->add_option("family", o.family, "qt | pkqk | qalpha | simplex | segment01")
      ->required()
      ->check(CLI::IsMember({"qt", "pkqk", "qalpha", "simplex", "segment01"}));
  gen->add_option("--param", o.param, "t, k, alpha or the dimension")->check(CLI::PositiveNumber);
  gen->add_option("--which", o.which, "pkqk: emit the integral polytope (p) or the relaxation (q)")
      ->check(CLI::IsMember({"p", "q"}));
  gen->add_option("-i,--input", o.input, "qalpha: integral polyhedron JSON")->check(CLI::ExistingFile);
  gen->add_option("--direction", o.direction, "qalpha: comma-separated integer direction");
  gen->add_option("-o,--output", o.output, "write result here instead of stdout");
  gen->callback([&] { handler = run_gen; });

  auto* sweep = app.add_subcommand("sweep", "rank growth over a parameter range, as CSV");
  sweep->add_option("family", o.family, "qt")->required()->check(CLI::IsMember({"qt"}));
  sweep->add_option("--from", o.from, "first parameter")->required();
  sweep->add_option("--to", o.to, "last parameter")->required();
  sweep->add_option("--csv", o.csv, "output file")->required();
  sweep->add_option("--cap", o.cap, "maximum number of closures per instance");
  sweep->callback([&] { handler = run_sweep; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    return handler(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
