#include "thinlie/io.hpp"

#include <fstream>
#include <sstream>

namespace thinlie::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::Schema, what); }

std::uint32_t residue(const json& j, std::uint32_t p, const char* what) {
  if (!j.is_number_integer()) schema(std::string(what) + " must be an integer");
  auto v = j.get<long long>();
  if (v < 0 || v >= static_cast<long long>(p))
    schema(std::string(what) + " out of range [0, " + std::to_string(p) + ")");
  return static_cast<std::uint32_t>(v);
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json field_to_json(const gf::ExtField& f) {
  json j;
  j["p"] = f.p();
  j["ext_min_poly"] = json::array({f.v(), f.u()});
  return j;
}

gf::ExtField field_from_json(const json& j) {
  const auto& pj = member(j, "p");
  if (!pj.is_number_integer() || pj.get<long long>() < 0 || pj.get<long long>() > 100000)
    schema("p must be a small non-negative integer");
  auto p = pj.get<std::uint32_t>();
  gf::PrimeField base(p);  // NotPrime
  const auto& mp = member(j, "ext_min_poly");
  if (!mp.is_array() || mp.size() != 2) schema("ext_min_poly must be [v, u]");
  return gf::ExtField(p, residue(mp[1], p, "u"), residue(mp[0], p, "v"));
}

json elem_to_json(const gf::ExtElem& e) { return json::array({e.c0, e.c1}); }

gf::ExtElem elem_from_json(const gf::ExtField& f, const json& j) {
  if (!j.is_array() || j.size() != 2) schema("field element must be [c0, c1]");
  return {residue(j[0], f.p(), "c0"), residue(j[1], f.p(), "c1")};
}

json presentation_to_json(const maxclass::Presentation& p) {
  json j = field_to_json(p.field());
  j["class"] = p.class_n();
  json adj = json::array();
  for (const auto& pr : p.adjoint()) adj.push_back(json::array({elem_to_json(pr.a), elem_to_json(pr.b)}));
  j["adjoint"] = std::move(adj);
  return j;
}

maxclass::Presentation presentation_from_json(const json& j) {
  auto f = field_from_json(j);
  const auto& cj = member(j, "class");
  if (!cj.is_number_integer()) schema("class must be an integer");
  auto n = cj.get<long long>();
  if (n < 4 || n > 100000) schema("class must be at least 4");
  const auto& adj = member(j, "adjoint");
  if (!adj.is_array()) schema("adjoint must be an array");
  if (static_cast<long long>(adj.size()) != n - 2)
    schema("adjoint has " + std::to_string(adj.size()) + " pairs, expected class - 2 = " + std::to_string(n - 2));
  std::vector<maxclass::AdjointPair> pairs;
  pairs.reserve(adj.size());
  for (const auto& pr : adj) {
    if (!pr.is_array() || pr.size() != 2) schema("adjoint entry must be [a_i, b_i]");
    pairs.push_back({elem_from_json(f, pr[0]), elem_from_json(f, pr[1])});
  }
  return maxclass::Presentation(f, static_cast<int>(n), std::move(pairs));
}

maxclass::Presentation load_algebra(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    schema(path.string() + ": " + e.what());
  }
  auto pres = presentation_from_json(j);
  auto rep = maxclass::validate(pres);
  if (!rep.ok) throw Error(ErrorCode::InvalidPresentation, rep.first_failure->describe());
  return pres;
}

void save_algebra(const std::filesystem::path& path, const maxclass::Presentation& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) schema("cannot write " + path.string());
  out << dump(presentation_to_json(p));
}

maxclass::HomElem parse_generator(const gf::ExtField& f, const std::string& text) {
  std::vector<long long> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long long x = 0;
    try {
      x = std::stoll(tok, &used);
    } catch (const std::exception&) {
      schema("bad generator component \"" + tok + "\"");
    }
    if (used != tok.size() || x < 0 || x >= static_cast<long long>(f.p()))
      schema("bad generator component \"" + tok + "\"");
    v.push_back(x);
  }
  if (v.size() != 4) schema("generator must be a0,a1,b0,b1");
  return maxclass::HomElem::gen(f.make(v[0], v[1]), f.make(v[2], v[3]));
}

json analysis_to_json(const subfield::SubalgebraAnalysis& a) {
  json j;
  json dims = json::array();
  for (int i = 1; i <= a.window; ++i) dims.push_back(a.dim(i));
  json d = json::array();
  if (a.verdict != subfield::Verdict::Degenerate)
    for (int i = 2; i < a.window; ++i) d.push_back(a.d_at(i));
  j["dims"] = std::move(dims);
  j["d"] = std::move(d);
  j["verdict"] = subfield::to_string(a.verdict);
  j["r_observed"] = optional_json(a.r_observed);
  j["t1"] = optional_json(a.t1);
  j["window"] = a.window;
  return j;
}

json endo_to_json(const endo::EndoRing& ring, const endo::FieldId& id) {
  json j;
  j["dim"] = ring.dim();
  j["min_poly"] = id.min_poly;
  j["is_field"] = id.is_field;
  j["embedding"] = id.embedding;
  return j;
}

json roundtrip_to_json(const reconstruct::RoundtripReport& r) {
  json j;
  j["branch"] = reconstruct::to_string(r.branch);
  j["k"] = r.k;
  j["usable_window"] = r.usable_window;
  j["iso"] = r.iso;
  j["first_failure"] = optional_json(r.first_failure);
  return j;
}

json scan_to_json(const subfield::ScanTable& t) {
  json j;
  j["window"] = t.window;
  j["pairs"] = t.pairs;
  j["thin"] = t.thin;
  j["maximal"] = t.maximal;
  j["degenerate"] = t.degenerate;
  json rc = json::array();
  for (const auto& [r, count] : t.rconstrained) {
    json e;
    e["r_observed"] = r < 0 ? json(nullptr) : json(r);
    e["count"] = count;
    rc.push_back(std::move(e));
  }
  j["rconstrained"] = std::move(rc);
  j["thin_by_lines"] = t.thin_by_lines;
  j["counts_agree"] = t.counts_agree();
  return j;
}

json line_criterion_to_json(const subfield::LineCriterion& c) {
  auto elems = [](const std::vector<gf::ExtElem>& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(elem_to_json(e));
    return a;
  };
  json j;
  j["script_l"] = elems(c.script_l);
  j["ey_occurs"] = c.ey_occurs;
  j["pencil"] = elems(c.pencil);
  j["ey_condition"] = c.ey_condition;
  j["affine_line_avoided"] = c.affine_line_avoided;
  j["avoided"] = c.avoided;
  return j;
}

json run_report(const std::string& command, json inputs, json results, int exit_code) {
  json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["results"] = std::move(results);
  j["exit_code"] = exit_code;
  return j;
}

std::string dump(const json& j) { return j.dump() + "\n"; }

}  // namespace thinlie::io
