#include "hyperstretch/json_io.hpp"

#include <sstream>

namespace hyperstretch {

namespace {

Complex parse_entry(const Json& e, bool& complex_seen) {
  if (e.is_number()) return Complex(e.get<double>(), 0.0);
  if (e.is_object() && e.contains("re")) {
    double im = e.value("im", 0.0);
    if (im != 0.0) complex_seen = true;
    return Complex(e["re"].get<double>(), im);
  }
  throw invalid_argument("matrix entry must be a number or a {re, im} object");
}

Json entry_to_json(Complex v) {
  if (v.imag() == 0.0) return Json(v.real());
  return Json{{"re", v.real()}, {"im", v.imag()}};
}

}  // namespace

AnyIsometry parse_matrix(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2)
    throw invalid_argument("matrix must be a 2x2 array [[a,b],[c,d]]");
  bool complex_seen = false;
  Complex a = parse_entry(j[0][0], complex_seen);
  Complex b = parse_entry(j[0][1], complex_seen);
  Complex c = parse_entry(j[1][0], complex_seen);
  Complex d = parse_entry(j[1][1], complex_seen);
  if (complex_seen) return IsometryC(a, b, c, d);
  return IsometryR(a.real(), b.real(), c.real(), d.real());
}

HPoint parse_point(const Json& j) {
  if (!j.is_object()) throw invalid_argument("point must be an object");
  if (j.contains("u") && j.contains("v")) return HPoint::plane(j["u"], j["v"]);
  if (j.contains("b"))
    return HPoint::space(Complex(j.value("a_re", 0.0), j.value("a_im", 0.0)), j["b"]);
  throw invalid_argument("point must be {u, v} or {a_re, a_im, b}");
}

Json point_to_json(const HPoint& p) {
  if (p.dim == 2) return Json{{"u", p.u()}, {"v", p.v()}};
  return Json{{"a_re", p.a.real()}, {"a_im", p.a.imag()}, {"b", p.b}};
}

BoundaryPoint parse_boundary(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return BoundaryPoint::infinity();
    throw invalid_argument("boundary point string must be \"inf\"");
  }
  if (j.is_number()) return BoundaryPoint::finite(j.get<double>());
  if (j.is_object() && j.contains("x")) {
    if (j["x"].is_string() && j["x"].get<std::string>() == "inf")
      return BoundaryPoint::infinity();
    return BoundaryPoint::finite(j["x"].get<double>());
  }
  throw invalid_argument("boundary point must be {x}, a number, or \"inf\"");
}

Json boundary_to_json(const BoundaryPoint& p) {
  if (p.infinite) return Json("inf");
  return Json{{"x", p.real()}};
}

Json matrix_to_json(const IsometryR& g) {
  return Json::array({Json::array({g.a(), g.b()}), Json::array({g.c(), g.d()})});
}

Json matrix_to_json(const IsometryC& g) {
  return Json::array({Json::array({entry_to_json(g.a()), entry_to_json(g.b())}),
                      Json::array({entry_to_json(g.c()), entry_to_json(g.d())})});
}

std::vector<IsometryR> parse_generators(const Json& j) {
  if (!j.is_array() || j.empty()) throw invalid_argument("generators must be a nonempty array");
  std::vector<IsometryR> gens;
  for (const auto& m : j) {
    AnyIsometry g = parse_matrix(m);
    if (!std::holds_alternative<IsometryR>(g))
      throw invalid_argument("generator matrices must be real");
    gens.push_back(std::get<IsometryR>(g));
  }
  return gens;
}

namespace {

Json word_record(const WordRecord& r) {
  return Json{{"word", r.word},   {"lambda_j", r.lambda_j}, {"lambda_rho", r.lambda_rho},
              {"ratio", r.ratio}, {"mu_j", r.mu_j},         {"mu_rho", r.mu_rho},
              {"drift", r.drift}, {"len", r.len}};
}

std::string csv_row(const WordRecord& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.word << ',' << r.lambda_j << ',' << r.lambda_rho << ',' << r.ratio << ','
     << r.mu_j << ',' << r.mu_rho << ',' << r.drift << ',' << r.len << '\n';
  return os.str();
}

}  // namespace

std::string word_record_csv_header() {
  return "word,lambda_j,lambda_rho,ratio,mu_j,mu_rho,drift,len\n";
}

Json to_json(const RatioSupResult& r) {
  Json top = Json::array();
  for (const auto& e : r.top) top.push_back(word_record(e));
  return Json{{"schema", kSchema},
              {"kind", "ratio-sup"},
              {"empty", r.empty},
              {"sup", r.sup},
              {"top", top}};
}

Json to_json(const DriftScanResult& r) {
  Json minima = Json::array();
  for (std::size_t s = 0; s < r.per_length_min.size(); ++s) {
    const auto& w = r.min_witnesses[s];
    minima.push_back(Json{{"len", s + 1},
                          {"min_drift", r.per_length_min[s]},
                          {"witness", word_record(w)}});
  }
  return Json{{"schema", kSchema},
              {"kind", "drift-scan"},
              {"min_drift", r.min_drift},
              {"nonpositive_count", r.nonpositive_count},
              {"per_length", minima},
              {"fit_C", r.fit_C},
              {"fit_D", r.fit_D},
              {"fit_contracting", r.fit_contracting},
              {"verdict", r.verdict},
              {"caveat", drift_caveat()}};
}

Json to_json(const Check& c) {
  return Json{{"name", c.name},           {"kind", c.kind},   {"value", c.value},
              {"reference", c.reference}, {"tolerance", c.tolerance}, {"pass", c.pass}};
}

Json checks_to_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back(to_json(c));
  return arr;
}

Json to_json(const Triangulation& t, const CertificateReport& certs) {
  Json vertices = Json::array();
  for (const auto& p : t.vertices) vertices.push_back(point_to_json(p));
  Json triangles = Json::array();
  for (const auto& tr : t.triangles) triangles.push_back(Json::array({tr[0], tr[1], tr[2]}));
  Json boundary = Json::array();
  for (const auto& e : t.boundary_edges) boundary.push_back(Json::array({e[0], e[1]}));
  Json certificates = Json::array();
  for (const auto& c : certs.entries)
    certificates.push_back(Json{{"triangle", Json::array({c.triangle[0], c.triangle[1], c.triangle[2]})},
                                {"kind", to_string(c.kind)},
                                {"margin", c.margin}});
  return Json{{"schema", kSchema},   {"kind", "delaunay"},
              {"vertices", vertices}, {"triangles", triangles},
              {"boundary_edges", boundary}, {"certificates", certificates},
              {"min_margin", certs.min_margin}, {"all_empty", certs.all_empty}};
}

namespace {

template <typename Report>
Json scenario_shell(const char* id, const Report& r) {
  return Json{{"schema", kSchema},
              {"kind", "scenario"},
              {"scenario", id},
              {"checks", checks_to_json(r.checks)},
              {"all_pass", all_pass(r.checks)}};
}

}  // namespace

Json to_json(const Ex97Report& r) {
  Json out = scenario_shell("ex97", r);
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"k", row.k},
                        {"exponent", row.exponent},
                        {"trace_exact", row.trace_exact},
                        {"trace_closed_form", row.trace_closed_form},
                        {"trace_match", row.trace_exact == row.trace_closed_form},
                        {"lambda_j", row.lambda_j},
                        {"lambda_j_reference", row.lambda_j_reference},
                        {"lambda_rho", row.lambda_rho},
                        {"lambda_rho_reference", row.lambda_rho_reference},
                        {"ratio", row.ratio},
                        {"ratio_bound", row.ratio_bound}});
  out["rows"] = rows;
  return out;
}

Json to_json(const Ex98Report& r) {
  Json out = scenario_shell("ex98", r);
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"k", row.k},
                        {"center_distance", row.center_distance},
                        {"lambda", row.lambda},
                        {"reference", row.reference}});
  out["rows"] = rows;
  return out;
}

Json to_json(const Ex91Report& r) {
  Json out = scenario_shell("ex91", r);
  out["first_index"] = r.first_index;
  out["generator_count"] = r.generator_count;
  out["ball_radius"] = r.ball_radius;
  out["lambda_alpha"] = r.lambda_alpha;
  out["lambda_beta"] = r.lambda_beta;
  out["drift"] = to_json(r.drift);
  return out;
}

Json to_json(const Ex94Report& r) {
  Json out = scenario_shell("ex94", r);
  out["c0"] = r.c0;
  out["coarse_sides"] = Json{{"a", r.coarse.a}, {"b", r.coarse.b}, {"c", r.coarse.c}};
  out["fine_sides"] = Json{{"a", r.fine.a}, {"b", r.fine.b}, {"c", r.fine.c}};
  out["ratio_sup"] = to_json(r.ratio);
  out["margin"] = r.margin;
  return out;
}

Json to_json(const Ex81Report& r) {
  Json out = scenario_shell("ex81", r);
  out["t"] = r.t;
  out["T"] = r.T;
  out["lip_phi"] = r.lip_phi;
  out["extension_c"] = r.extension_c;
  out["extension_point"] = point_to_json(r.extension_point);
  return out;
}

std::string ratio_csv(const RatioSupResult& r) {
  std::string out = word_record_csv_header();
  for (const auto& e : r.top) out += csv_row(e);
  return out;
}

std::string drift_csv(const DriftScanResult& r) {
  std::string out = word_record_csv_header();
  for (const auto& w : r.min_witnesses) out += csv_row(w);
  return out;
}

std::string ratio_jsonl(const RatioSupResult& r) {
  std::string out;
  for (const auto& e : r.top) out += word_record(e).dump() + "\n";
  return out;
}

std::string drift_jsonl(const DriftScanResult& r) {
  std::string out;
  for (const auto& w : r.min_witnesses) out += word_record(w).dump() + "\n";
  return out;
}

}  // namespace hyperstretch
