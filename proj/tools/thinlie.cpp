#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "thinlie/io.hpp"

using namespace thinlie;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPrime:
    case ErrorCode::ReduciblePolynomial:
    case ErrorCode::BadBound:
    case ErrorCode::Schema:
    case ErrorCode::Precondition:
    case ErrorCode::WindowTooLarge:
    case ErrorCode::WindowTooLargeForBruteForce:
    case ErrorCode::WindowTooSmall:
    case ErrorCode::OutOfWindow:
      return kUsage;
    default:
      return kFail;
  }
}

struct PairArgs {
  std::string file;
  std::string x = "1,0,0,0";
  std::string y = "0,0,1,0";
  int window = 0;
};

void add_pair_options(CLI::App* cmd, PairArgs& a) {
  cmd->add_option("file", a.file, "algebra JSON")->required();
  cmd->add_option("--X", a.x, "X as a0,a1,b0,b1");
  cmd->add_option("--Y", a.y, "Y as a0,a1,b0,b1");
  cmd->add_option("--window", a.window, "degree window (default: class)");
}

json pair_inputs(const PairArgs& a, int window) {
  json j;
  j["file"] = a.file;
  j["X"] = a.x;
  j["Y"] = a.y;
  j["window"] = window;
  return j;
}

int emit(const std::string& command, json inputs, json results, int code) {
  std::cout << io::dump(io::run_report(command, std::move(inputs), std::move(results), code));
  return code;
}

std::vector<std::uint32_t> parse_ints(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
    }
    if (used != tok.size() || v < 0) throw Error(ErrorCode::Schema, "bad integer list \"" + s + "\"");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

gf::ExtField field_from_args(std::uint32_t p, const std::string& ext) {
  gf::PrimeField base(p);
  auto vu = parse_ints(ext);
  if (vu.size() != 2 || vu[0] >= p || vu[1] >= p) throw Error(ErrorCode::Schema, "--ext must be v,u with 0 <= v,u < p");
  return gf::ExtField(p, vu[1], vu[0]);
}

void print_table(const subfield::SubalgebraAnalysis& a) {
  const auto& f = a.algebra->field();
  std::fprintf(stderr, "%6s %6s %4s  %s\n", "degree", "dim_F", "d", "centralizer");
  for (int i = 1; i <= a.window; ++i) {
    std::string c = "-";
    std::string d = "-";
    if (i >= 2 && i < a.window && a.verdict != subfield::Verdict::Degenerate) {
      c = maxclass::format(f, a.centralizers.at(i));
      d = std::to_string(a.d_at(i));
    }
    std::fprintf(stderr, "%6d %6d %4s  %s\n", i, a.dim(i), d.c_str(), c.c_str());
  }
  std::fprintf(stderr, "verdict: %s\n", std::string(subfield::to_string(a.verdict)).c_str());
}

struct Loaded {
  maxclass::Algebra alg;
  subfield::GeneratorPair gens;
  int window;
};

Loaded load_pair(const PairArgs& a) {
  maxclass::Algebra alg(io::load_algebra(a.file));
  const auto& f = alg.field();
  subfield::GeneratorPair g{io::parse_generator(f, a.x), io::parse_generator(f, a.y)};
  int w = a.window == 0 ? alg.class_n() : a.window;
  return {std::move(alg), g, w};
}

int cmd_build(const std::string& kind, std::uint32_t p, const std::string& ext, int cls, const std::string& out,
              std::size_t limit, bool force) {
  json inputs;
  inputs["kind"] = kind;
  inputs["p"] = p;
  inputs["ext"] = ext;
  inputs["class"] = cls;
  inputs["limit"] = limit;
  auto f = field_from_args(p, ext);
  std::vector<maxclass::Presentation> found;
  if (kind == "metabelian") {
    found.push_back(maxclass::make_metabelian(f, cls));
  } else {
    maxclass::SearchOptions opt;
    opt.force = force;
    found = maxclass::search_sequences(f, cls, limit, opt);
  }
  json files = json::array();
  bool all_valid = true;
  for (std::size_t i = 0; i < found.size(); ++i) {
    std::string path = out;
    if (kind == "search") {
      std::ostringstream name;
      name << out << "_" << std::setw(3) << std::setfill('0') << i << ".json";
      path = name.str();
    }
    all_valid = all_valid && maxclass::validate(found[i]).ok;
    io::save_algebra(path, found[i]);
    files.push_back(path);
  }
  json results;
  results["count"] = found.size();
  results["files"] = std::move(files);
  results["valid"] = all_valid;
  return emit("build", std::move(inputs), std::move(results), all_valid ? kOk : kFail);
}

int cmd_check(const std::string& file) {
  json inputs;
  inputs["file"] = file;
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::Schema, "cannot open " + file);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, e.what());
  }
  auto pres = io::presentation_from_json(j);
  auto rep = maxclass::validate(pres);
  json results;
  results["class"] = pres.class_n();
  results["ok"] = rep.ok;
  results["first_failure"] = rep.first_failure ? json(rep.first_failure->describe()) : json(nullptr);
  results["standard"] = maxclass::is_standard(pres);
  return emit("check", std::move(inputs), std::move(results), rep.ok ? kOk : kFail);
}

int cmd_analyze(const PairArgs& a) {
  auto l = load_pair(a);
  auto an = subfield::generate_subalgebra(l.alg, l.gens, l.window);
  print_table(an);
  json results;
  results["analysis"] = io::analysis_to_json(an);
  if (an.verdict == subfield::Verdict::Thin) {
    auto ring = endo::compute_grend0(endo::module_view(an, 3));
    results["endo"] = io::endo_to_json(ring, endo::identify_field(ring, &l.alg.field()));
  }
  int code = an.verdict == subfield::Verdict::Degenerate ? kFail : kOk;
  return emit("analyze", pair_inputs(a, l.window), std::move(results), code);
}

int cmd_endo(const PairArgs& a) {
  auto l = load_pair(a);
  auto an = subfield::generate_subalgebra(l.alg, l.gens, l.window);
  if (an.verdict == subfield::Verdict::Degenerate)
    throw Error(ErrorCode::DegenerateGenerators, "X and Y are E-dependent");
  auto ring = endo::compute_grend0(endo::module_view(an, 3));
  auto id = endo::identify_field(ring, &l.alg.field());
  auto results = io::endo_to_json(ring, id);
  std::fprintf(stderr, "verdict %s, dim %d, schur %s\n", std::string(subfield::to_string(an.verdict)).c_str(),
               ring.dim(), endo::schur_check(ring) ? "ok" : "FAILED");
  return emit("endo", pair_inputs(a, l.window), std::move(results), id.is_field ? kOk : kFail);
}

int cmd_roundtrip(const PairArgs& a) {
  auto l = load_pair(a);
  auto r = reconstruct::verify_roundtrip(l.alg, l.gens, l.window);
  std::fprintf(stderr, "branch %s, k %d, usable window %d, iso %s\n", std::string(reconstruct::to_string(r.branch)).c_str(),
               r.k, r.usable_window, r.iso ? "true" : "false");
  if (r.first_failure) std::fprintf(stderr, "first failure: %s\n", r.first_failure->c_str());
  return emit("roundtrip", pair_inputs(a, l.window), io::roundtrip_to_json(r), r.iso ? kOk : kFail);
}

int cmd_scan(const std::string& file, int window, bool raw, unsigned threads) {
  maxclass::Algebra alg(io::load_algebra(file));
  int w = window == 0 ? alg.class_n() : window;
  if (alg.field().order() > 25) throw Error(ErrorCode::Precondition, "scan needs |E| <= 25");
  subfield::ScanOptions opt;
  opt.raw = raw;
  opt.threads = threads;
  auto t = subfield::scan(alg, w, opt);
  std::fprintf(stderr, "pairs %zu: thin %zu (lines %zu), maximal %zu, degenerate %zu\n", t.pairs, t.thin,
               t.thin_by_lines, t.maximal, t.degenerate);
  for (const auto& [r, c] : t.rconstrained) std::fprintf(stderr, "  rconstrained r=%d: %zu\n", r, c);
  if (!t.counts_agree()) std::fprintf(stderr, "COUNT MISMATCH\n");
  json inputs;
  inputs["file"] = file;
  inputs["window"] = w;
  inputs["raw"] = raw;
  return emit("scan", std::move(inputs), io::scan_to_json(t), t.counts_agree() ? kOk : kFail);
}

int cmd_stats(const std::string& file) {
  maxclass::Algebra alg(io::load_algebra(file));
  auto rep = maxclass::centralizer_stats(alg);
  const auto& f = alg.field();
  json cs = json::array();
  for (const auto& s : rep.centralizers) {
    json e;
    e["centralizer"] = maxclass::format(f, s.centralizer);
    e["first_occurrence"] = s.first_occurrence;
    e["first_is_2p_power"] = s.first_is_2p_power;
    e["occurrences"] = s.occurrences;
    e["max_gap"] = s.max_gap ? json(*s.max_gap) : json(nullptr);
    e["gap_within_first"] = s.gap_within_first;
    cs.push_back(std::move(e));
  }
  json results;
  results["window"] = rep.window;
  results["standard"] = rep.standard;
  results["centralizers"] = std::move(cs);
  json inputs;
  inputs["file"] = file;
  return emit("stats", std::move(inputs), std::move(results), kOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thin Lie algebras inside Lie algebras of maximal class"};
  app.require_subcommand(1);

  std::string build_kind, ext = "2,0", out = "algebra.json";
  std::uint32_t p = 3;
  int cls = 12;
  std::size_t limit = 10;
  bool force = false;
  auto* build = app.add_subcommand("build", "write a presentation (metabelian or searched)");
  build->add_option("kind", build_kind, "metabelian | search")->required()->check(CLI::IsMember({"metabelian", "search"}));
  build->add_option("--p", p, "prime");
  build->add_option("--ext", ext, "v,u with mu^2 = u mu + v");
  build->add_option("--class", cls, "class n");
  build->add_option("-o,--out", out, "output file (search: file prefix)");
  build->add_option("--limit", limit, "maximum number of searched presentations");
  build->add_flag("--force", force, "search beyond the soft class limit");

  std::string file;
  auto* check = app.add_subcommand("check", "validate a presentation");
  check->add_option("file", file, "algebra JSON")->required();

  PairArgs pa;
  auto* analyze = app.add_subcommand("analyze", "classify the F-subalgebra generated by X, Y");
  add_pair_options(analyze, pa);
  auto* endo_cmd = app.add_subcommand("endo", "graded endomorphism field of L^3");
  add_pair_options(endo_cmd, pa);
  auto* roundtrip = app.add_subcommand("roundtrip", "rebuild M from a thin subalgebra");
  add_pair_options(roundtrip, pa);

  int window = 0;
  bool raw = false;
  unsigned threads = 0;
  auto* scan = app.add_subcommand("scan", "classify all normalized generator pairs");
  scan->add_option("file", file, "algebra JSON")->required();
  scan->add_option("--window", window, "degree window (default: class)");
  scan->add_flag("--raw", raw, "all |E|^4 pairs");
  scan->add_option("--threads", threads, "worker threads (0: automatic)");

  auto* stats = app.add_subcommand("stats", "two-step centralizer statistics");
  stats->add_option("file", file, "algebra JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const auto* cmd = app.get_subcommands().front();
  try {
    if (cmd == build) return cmd_build(build_kind, p, ext, cls, out, limit, force);
    if (cmd == check) return cmd_check(file);
    if (cmd == analyze) return cmd_analyze(pa);
    if (cmd == endo_cmd) return cmd_endo(pa);
    if (cmd == roundtrip) return cmd_roundtrip(pa);
    if (cmd == scan) return cmd_scan(file, window, raw, threads);
    if (cmd == stats) return cmd_stats(file);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    int code = exit_code_for(e.code());
    json results;
    results["error"] = to_string(e.code());
    results["message"] = e.what();
    json inputs;
    inputs["argv"] = std::vector<std::string>(argv + 1, argv + argc);
    return emit(cmd->get_name(), std::move(inputs), std::move(results), code);
  }
  return kUsage;
}
