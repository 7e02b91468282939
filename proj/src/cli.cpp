#include "hyperstretch/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hyperstretch/frechet.hpp"
#include "hyperstretch/json_io.hpp"

namespace hyperstretch {

namespace {

Json parse_json_arg(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw invalid_argument(std::string("malformed JSON for ") + what + ": " + text);
  return j;
}

struct Output {
  bool json = false;
  bool csv = false;
  std::string path;

  void emit(const std::string& text, std::ostream& out) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw invalid_argument("cannot open output file: " + path);
    f << text;
  }
};

std::string render_checks(const std::vector<Check>& checks) {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  (value " << c.value << ", "
       << c.kind << " " << c.reference;
    if (c.tolerance != 0.0) os << " tol " << c.tolerance;
    os << ")\n";
  }
  return os.str();
}

GroupMode parse_mode(const std::string& mode) {
  if (mode == "free") return GroupMode::Free;
  if (mode == "reflection") return GroupMode::Reflection;
  throw invalid_argument("mode must be 'free' or 'reflection'");
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hyperbolic isometries, length ratios, drift scans, barycenters, "
               "stretch maps, and Delaunay triangulations"};
  app.name("hyperstretch");
  app.fallthrough();  // global flags may follow the subcommand
  Output output;
  std::uint64_t seed = 1;
  app.add_flag("--json", output.json, "emit JSON");
  app.add_flag("--csv", output.csv, "emit CSV where available");
  app.add_option("--seed", seed, "seed for sampling-based estimates");
  app.add_option("--out", output.path, "write output to a file instead of stdout");

  std::string matrix_text, p_text, q_text, gens_j_text, gens_rho_text, points_text,
      weights_text, images_text, at_text, mode_text = "free", scenario_id;
  int ball = 8, kmax = -1, N = 40, gens_count = 4, grid = 15;
  double t_param = 2.0, T_param = 1.0, lip = -1.0;
  bool parallel = false, off_format = false;

  auto* c_classify = app.add_subcommand("classify", "classify an isometry");
  c_classify->add_option("--matrix", matrix_text, "2x2 matrix JSON")->required();
  auto* c_length = app.add_subcommand("length", "translation length");
  c_length->add_option("--matrix", matrix_text, "2x2 matrix JSON")->required();
  auto* c_mu = app.add_subcommand("mu", "basepoint displacement (Cartan projection)");
  c_mu->add_option("--matrix", matrix_text, "2x2 matrix JSON")->required();
  auto* c_dist = app.add_subcommand("dist", "distance between two points");
  c_dist->add_option("--p", p_text, "point JSON")->required();
  c_dist->add_option("--q", q_text, "point JSON")->required();

  auto* c_ratio = app.add_subcommand("ratio-sup", "supremum of length ratios over a word ball");
  auto* c_drift = app.add_subcommand("drift", "Cartan drift scan over a word ball");
  for (auto* cmd : {c_ratio, c_drift}) {
    cmd->add_option("--gens-j", gens_j_text, "generator matrices for j")->required();
    cmd->add_option("--gens-rho", gens_rho_text, "generator matrices for rho")->required();
    cmd->add_option("-L,--ball", ball, "word ball radius");
    cmd->add_option("--mode", mode_text, "free | reflection");
    cmd->add_flag("--parallel", parallel, "enumerate prefixes in parallel");
  }

  auto* c_bary = app.add_subcommand("barycenter", "weighted barycenter of points");
  c_bary->add_option("--points", points_text, "point array JSON")->required();
  c_bary->add_option("--weights", weights_text, "weight array JSON (default: uniform)");

  auto* c_delaunay = app.add_subcommand("delaunay", "hyperbolic Delaunay triangulation");
  c_delaunay->add_option("--points", points_text, "point array JSON")->required();
  c_delaunay->add_flag("--off", off_format, "emit an OFF mesh dump");

  auto* c_extend = app.add_subcommand("extend", "one-point Lipschitz extension");
  c_extend->add_option("--points", points_text, "source point array JSON")->required();
  c_extend->add_option("--images", images_text, "image point array JSON")->required();
  c_extend->add_option("--at", at_text, "point to extend to")->required();
  c_extend->add_option("--lip", lip, "declared Lipschitz constant (default: realized)");

  auto* c_scenario = app.add_subcommand("scenario", "run a worked example end to end");
  c_scenario->add_option("id", scenario_id, "ex81 | ex91 | ex94 | ex97 | ex98")->required();
  c_scenario->add_option("--kmax", kmax, "largest k (ex97/ex98)");
  c_scenario->add_option("--N", N, "first generator index (ex91)");
  c_scenario->add_option("--gens", gens_count, "generator count (ex91)");
  auto* scenario_ball =
      c_scenario->add_option("-L,--ball", ball, "word ball radius (ex91: 4, ex94: 10)");
  c_scenario->add_option("--grid", grid, "grid density (ex94)");
  c_scenario->add_option("--t", t_param, "source radius (ex81)");
  c_scenario->add_option("--T", T_param, "image radius (ex81)");

  app.require_subcommand(1);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    std::ostringstream text;
    text.precision(15);

    if (*c_classify || *c_length || *c_mu) {
      AnyIsometry g = parse_matrix(parse_json_arg(matrix_text, "--matrix"));
      auto run = [&](const auto& iso) {
        if (*c_classify) {
          const char* cls = to_string(classify(iso));
          if (output.json)
            text << Json{{"schema", kSchema}, {"class", cls}}.dump() << "\n";
          else
            text << cls << "\n";
        } else {
          double value = *c_length ? translation_length(iso) : cartan_mu(iso);
          if (output.json)
            text << Json{{"schema", kSchema}, {*c_length ? "length" : "mu", value}}.dump()
                 << "\n";
          else
            text << value << "\n";
        }
      };
      std::visit(run, g);
    } else if (*c_dist) {
      double d = dist(parse_point(parse_json_arg(p_text, "--p")),
                      parse_point(parse_json_arg(q_text, "--q")));
      if (output.json)
        text << Json{{"schema", kSchema}, {"dist", d}}.dump() << "\n";
      else
        text << d << "\n";
    } else if (*c_ratio || *c_drift) {
      GroupMode mode = parse_mode(mode_text);
      Representation<double> j(parse_generators(parse_json_arg(gens_j_text, "--gens-j")), mode);
      Representation<double> rho(parse_generators(parse_json_arg(gens_rho_text, "--gens-rho")),
                                 mode);
      if (*c_ratio) {
        RatioSupResult r = ratio_sup(j, rho, ball, parallel);
        if (output.csv)
          text << ratio_csv(r);
        else if (output.json)
          text << to_json(r).dump() << "\n";
        else if (r.empty)
          text << "empty: no hyperbolic j(gamma) in the ball\n";
        else {
          text << "C'_" << ball << " = " << r.sup << "\n";
          text << ratio_jsonl(r);
        }
      } else {
        DriftScanResult r = drift_scan(j, rho, ball, parallel);
        if (output.csv)
          text << drift_csv(r);
        else if (output.json)
          text << to_json(r).dump() << "\n";
        else {
          text << "min drift = " << r.min_drift << ", verdict: " << r.verdict << "\n";
          text << "note: " << drift_caveat() << "\n";
          text << drift_jsonl(r);
        }
      }
    } else if (*c_bary) {
      Json pts_json = parse_json_arg(points_text, "--points");
      if (!pts_json.is_array() || pts_json.empty())
        throw invalid_argument("--points must be a nonempty array");
      std::vector<HPoint> pts;
      for (const auto& pj : pts_json) pts.push_back(parse_point(pj));
      std::vector<double> weights;
      if (weights_text.empty())
        weights.assign(pts.size(), 1.0 / static_cast<double>(pts.size()));
      else
        for (const auto& wj : parse_json_arg(weights_text, "--weights"))
          weights.push_back(wj.get<double>());
      HPoint b = barycenter(WeightedPointSet(pts, weights));
      if (output.json)
        text << Json{{"schema", kSchema}, {"barycenter", point_to_json(b)}}.dump() << "\n";
      else
        text << point_to_json(b).dump() << "\n";
    } else if (*c_delaunay) {
      Json pts_json = parse_json_arg(points_text, "--points");
      std::vector<HPoint> pts;
      for (const auto& pj : pts_json) pts.push_back(parse_point(pj));
      PointSet2 sites(pts);
      Triangulation tri = delaunay(sites);
      CertificateReport certs = empty_ball_certificate(tri, sites);
      if (off_format)
        text << to_off(tri);
      else
        text << to_json(tri, certs).dump() << "\n";
    } else if (*c_extend) {
      Json pts_json = parse_json_arg(points_text, "--points");
      Json img_json = parse_json_arg(images_text, "--images");
      std::vector<HPoint> pts, imgs;
      for (const auto& pj : pts_json) pts.push_back(parse_point(pj));
      for (const auto& pj : img_json) imgs.push_back(parse_point(pj));
      if (lip < 0.0) {
        lip = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
          for (std::size_t k = i + 1; k < pts.size(); ++k)
            lip = std::max(lip, dist(imgs[i], imgs[k]) / dist(pts[i], pts[k]));
      }
      FiniteMapData data(pts, imgs, lip);
      ExtensionResult res = one_point_extension(data, parse_point(parse_json_arg(at_text, "--at")));
      if (output.json)
        text << Json{{"schema", kSchema},
                     {"point", point_to_json(res.point)},
                     {"constant", res.constant}}
                    .dump()
             << "\n";
      else
        text << "C = " << res.constant << " at " << point_to_json(res.point).dump() << "\n";
    } else if (*c_scenario) {
      Json j;
      std::string plain;
      if (scenario_id == "ex97") {
        Ex97Report r = run_ex97(kmax < 0 ? 6 : kmax);
        j = to_json(r);
        plain = render_checks(r.checks);
      } else if (scenario_id == "ex98") {
        Ex98Report r = run_ex98(kmax < 0 ? 4 : kmax);
        j = to_json(r);
        plain = render_checks(r.checks);
      } else if (scenario_id == "ex91") {
        Ex91Report r = run_ex91(N, gens_count, scenario_ball->count() ? ball : 4);
        j = to_json(r);
        plain = render_checks(r.checks) + "note: " + drift_caveat() + "\n";
      } else if (scenario_id == "ex94") {
        Ex94Report r = run_ex94(scenario_ball->count() ? ball : 10, grid, seed);
        j = to_json(r);
        plain = render_checks(r.checks);
      } else if (scenario_id == "ex81") {
        Ex81Report r = run_ex81(t_param, T_param);
        j = to_json(r);
        plain = render_checks(r.checks);
      } else {
        throw invalid_argument("unknown scenario id: " + scenario_id);
      }
      if (output.json)
        text << j.dump() << "\n";
      else
        text << plain << (j["all_pass"].get<bool>() ? "all checks passed\n"
                                                    : "SOME CHECKS FAILED\n");
    }

    output.emit(text.str(), out);
    return 0;
  } catch (const invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hyperstretch
