#pragma once

// JSON encodings of fields, presentations and reports. Output uses a fixed
// key order and compact dumps so identical inputs give identical bytes.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "thinlie/reconstruct.hpp"

namespace thinlie::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "thinlie 0.1.0";

// Schema on malformed input; NotPrime / ReduciblePolynomial pass through.
json field_to_json(const gf::ExtField& f);
gf::ExtField field_from_json(const json& j);

json elem_to_json(const gf::ExtElem& e);
gf::ExtElem elem_from_json(const gf::ExtField& f, const json& j);

json presentation_to_json(const maxclass::Presentation& p);
// Schema on a wrong shape or adjoint length != class - 2.
maxclass::Presentation presentation_from_json(const json& j);

// Loads and validates; InvalidPresentation when validate() fails.
maxclass::Presentation load_algebra(const std::filesystem::path& path);
void save_algebra(const std::filesystem::path& path, const maxclass::Presentation& p);

// "a0,a1,b0,b1" -> (a0 + a1 mu) x + (b0 + b1 mu) y. Schema on bad input.
maxclass::HomElem parse_generator(const gf::ExtField& f, const std::string& text);

json analysis_to_json(const subfield::SubalgebraAnalysis& a);
json endo_to_json(const endo::EndoRing& ring, const endo::FieldId& id);
json roundtrip_to_json(const reconstruct::RoundtripReport& r);
json scan_to_json(const subfield::ScanTable& t);
json line_criterion_to_json(const subfield::LineCriterion& c);

json run_report(const std::string& command, json inputs, json results, int exit_code);

std::string dump(const json& j);  // compact, newline-terminated

}  // namespace thinlie::io
