#pragma once

#include <json.hpp>

#include <string>
#include <variant>

#include "hyperstretch/hull_delaunay.hpp"
#include "hyperstretch/moebius.hpp"
#include "hyperstretch/scenarios.hpp"
#include "hyperstretch/types.hpp"
#include "hyperstretch/words.hpp"

namespace hyperstretch {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "hyperstretch/1";

// Matrices arrive as [[a,b],[c,d]] with entries numbers or {re, im} objects;
// a matrix with any strictly complex entry is a half-space isometry.
using AnyIsometry = std::variant<IsometryR, IsometryC>;
AnyIsometry parse_matrix(const Json& j);

// Points: {u, v} for the half-plane, {a_re, a_im, b} for the half-space.
HPoint parse_point(const Json& j);
Json point_to_json(const HPoint& p);

// Boundary points: {x} (or a bare number) or the string "inf".
BoundaryPoint parse_boundary(const Json& j);
Json boundary_to_json(const BoundaryPoint& p);

Json matrix_to_json(const IsometryR& g);
Json matrix_to_json(const IsometryC& g);

std::vector<IsometryR> parse_generators(const Json& j);

Json to_json(const RatioSupResult& r);
Json to_json(const DriftScanResult& r);
Json to_json(const Check& c);
Json checks_to_json(const std::vector<Check>& checks);
Json to_json(const Triangulation& t, const CertificateReport& certs);
Json to_json(const Ex97Report& r);
Json to_json(const Ex98Report& r);
Json to_json(const Ex91Report& r);
Json to_json(const Ex94Report& r);
Json to_json(const Ex81Report& r);

// Word records as CSV with the same columns as the JSON lines.
std::string ratio_csv(const RatioSupResult& r);
std::string drift_csv(const DriftScanResult& r);
std::string word_record_csv_header();

// JSON lines, one word record per line.
std::string ratio_jsonl(const RatioSupResult& r);
std::string drift_jsonl(const DriftScanResult& r);

}  // namespace hyperstretch
