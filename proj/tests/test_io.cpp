#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "thinlie/io.hpp"

using namespace thinlie;
using io::json;
using maxclass::make_metabelian;

namespace {

const gf::ExtField F9(3, 0, 2);

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Precondition;
}

std::vector<std::string> keys(const json& j) {
  std::vector<std::string> out;
  for (const auto& [k, v] : j.items()) out.push_back(k);
  return out;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("thinlie_io_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("field encoding") {
  auto j = io::field_to_json(F9);
  CHECK(io::dump(j) == "{\"p\":3,\"ext_min_poly\":[2,0]}\n");
  CHECK(io::field_from_json(j) == F9);
  gf::ExtField f4(2, 1, 1);
  CHECK(io::field_from_json(io::field_to_json(f4)) == f4);

  CHECK(code_of([] { io::field_from_json(json::parse(R"({"p":4,"ext_min_poly":[1,1]})")); }) == ErrorCode::NotPrime);
  CHECK(code_of([] { io::field_from_json(json::parse(R"({"p":3,"ext_min_poly":[1,0]})")); }) ==
        ErrorCode::ReduciblePolynomial);
  CHECK(code_of([] { io::field_from_json(json::parse(R"({"ext_min_poly":[2,0]})")); }) == ErrorCode::Schema);
  CHECK(code_of([] { io::field_from_json(json::parse(R"({"p":3,"ext_min_poly":[2]})")); }) == ErrorCode::Schema);
  CHECK(code_of([] { io::field_from_json(json::parse(R"({"p":3,"ext_min_poly":[3,0]})")); }) == ErrorCode::Schema);
  CHECK(code_of([] { io::field_from_json(json::parse(R"({"p":"3","ext_min_poly":[2,0]})")); }) == ErrorCode::Schema);
}

TEST_CASE("presentation round trip") {
  for (const auto& p : {make_metabelian(F9, 12), maxclass::search_sequences(F9, 12, 10)[1]}) {
    auto j = io::presentation_to_json(p);
    CHECK(keys(j) == std::vector<std::string>{"p", "ext_min_poly", "class", "adjoint"});
    CHECK(j["adjoint"].size() == 10);
    CHECK(io::presentation_from_json(j) == p);
    // Re-encoding the decoded value gives the same bytes.
    CHECK(io::dump(io::presentation_to_json(io::presentation_from_json(j))) == io::dump(j));
  }
  auto j = io::presentation_to_json(make_metabelian(F9, 5));
  CHECK(io::dump(j) == "{\"p\":3,\"ext_min_poly\":[2,0],\"class\":5,\"adjoint\":[[[1,0],[0,0]],[[1,0],[0,0]],[[1,0],[0,0]]]}\n");
}

TEST_CASE("presentation schema errors") {
  auto good = io::presentation_to_json(make_metabelian(F9, 6));
  auto mutate = [&](auto fn) {
    auto j = good;
    fn(j);
    return code_of([&] { io::presentation_from_json(j); });
  };
  CHECK(mutate([](json& j) { j["adjoint"].erase(0); }) == ErrorCode::Schema);
  CHECK(mutate([](json& j) { j["class"] = 7; }) == ErrorCode::Schema);
  CHECK(mutate([](json& j) { j["class"] = 3; }) == ErrorCode::Schema);
  CHECK(mutate([](json& j) { j.erase("adjoint"); }) == ErrorCode::Schema);
  CHECK(mutate([](json& j) { j["adjoint"][0][0] = json::array({5, 0}); }) == ErrorCode::Schema);
  CHECK(mutate([](json& j) { j["adjoint"][0] = json::array({json::array({1, 0})}); }) == ErrorCode::Schema);
  CHECK(mutate([](json& j) { j["adjoint"][1][1] = "mu"; }) == ErrorCode::Schema);
}

TEST_CASE("load and save") {
  TempDir dir;
  auto p = maxclass::search_sequences(F9, 14, 100).front();
  auto file = dir.path / "a.json";
  io::save_algebra(file, p);
  CHECK(io::load_algebra(file) == p);
  auto copy = dir.path / "b.json";
  io::save_algebra(copy, io::load_algebra(file));
  CHECK(slurp(file) == slurp(copy));

  // Well-formed but failing Jacobi.
  auto bad = p.adjoint();
  bad[3].b = F9.add(bad[3].b, F9.one());
  io::save_algebra(dir.path / "bad.json", maxclass::Presentation(F9, 14, bad));
  REQUIRE_FALSE(maxclass::validate(maxclass::Presentation(F9, 14, bad)).ok);
  CHECK(code_of([&] { io::load_algebra(dir.path / "bad.json"); }) == ErrorCode::InvalidPresentation);

  std::ofstream(dir.path / "junk.json") << "{not json";
  CHECK(code_of([&] { io::load_algebra(dir.path / "junk.json"); }) == ErrorCode::Schema);
  CHECK(code_of([&] { io::load_algebra(dir.path / "missing.json"); }) == ErrorCode::Schema);
}

TEST_CASE("generator parsing") {
  auto g = io::parse_generator(F9, "1,0,2,1");
  CHECK(g == maxclass::HomElem::gen(F9.make(1, 0), F9.make(2, 1)));
  CHECK(code_of([] { io::parse_generator(F9, "1,0,2"); }) == ErrorCode::Schema);
  CHECK(code_of([] { io::parse_generator(F9, "1,0,3,0"); }) == ErrorCode::Schema);
  CHECK(code_of([] { io::parse_generator(F9, "1,0,x,0"); }) == ErrorCode::Schema);
  CHECK(code_of([] { io::parse_generator(F9, "1,0,-1,0"); }) == ErrorCode::Schema);
  CHECK(code_of([] { io::parse_generator(F9, "1,0,1,0,0"); }) == ErrorCode::Schema);
}

TEST_CASE("report layouts") {
  maxclass::Algebra m(make_metabelian(F9, 12));
  auto g = subfield::GeneratorPair::make(F9.one(), F9.one(), F9.mu(), F9.add(F9.mu(), F9.one()));
  auto a = subfield::generate_subalgebra(m, g, 12);
  auto ja = io::analysis_to_json(a);
  CHECK(keys(ja) == std::vector<std::string>{"dims", "d", "verdict", "r_observed", "t1", "window"});
  CHECK(ja["verdict"] == "thin");
  CHECK(ja["dims"].size() == 12);
  CHECK(ja["d"].size() == 10);
  CHECK(ja["r_observed"].is_null());

  auto ring = endo::compute_grend0(endo::module_view(a, 3));
  auto je = io::endo_to_json(ring, endo::identify_field(ring, &F9));
  CHECK(keys(je) == std::vector<std::string>{"dim", "min_poly", "is_field", "embedding"});

  auto rt = reconstruct::verify_roundtrip(m, g, 12);
  auto jr = io::roundtrip_to_json(rt);
  CHECK(keys(jr) == std::vector<std::string>{"branch", "k", "usable_window", "iso", "first_failure"});
  CHECK(jr["branch"] == "rho_prime");

  auto js = io::scan_to_json(subfield::scan(m, 8));
  CHECK(keys(js) == std::vector<std::string>{"window", "pairs", "thin", "maximal", "degenerate", "rconstrained",
                                             "thin_by_lines", "counts_agree"});
  CHECK(js["counts_agree"] == true);

  auto rep = io::run_report("check", json::object(), json::object(), 0);
  CHECK(keys(rep) == std::vector<std::string>{"version", "command", "inputs", "results", "exit_code"});
  CHECK(rep["version"] == io::kVersion);
}
