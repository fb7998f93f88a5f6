#include "eval_commands.hpp"

#include "experiments.hpp"
#include "finsler/curvature.hpp"
#include "finsler/geodesics.hpp"

#include <fstream>
#include <functional>

namespace finsler::cli {

namespace {

using json = nlohmann::ordered_json;

json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json mat_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i).transpose()));
  return rows;
}

struct Ctx {
  const ParamMap& p;
  MetricSpec spec;
  NumericConfig nc;

  double num(const std::string& k, double fallback) const {
    const auto it = p.find(k);
    return it == p.end() ? fallback : parse_double(it->second);
  }
  Vec vec(const std::string& k, const Vec& fallback) const {
    const auto it = p.find(k);
    if (it == p.end()) return fallback;
    Vec v = parse_vec(it->second);
    if (v.size() != fallback.size())
      fail(ErrorCode::InvalidArgument, "--" + k + " needs " + std::to_string(fallback.size()) + " components");
    return v;
  }
  Point x() const { return vec("x", origin(spec)); }
  Vec y() const { return vec("y", Vec::Unit(spec.dim(), 0)); }
  Point x0() const { return vec("x0", origin(spec)); }
};

using Command = std::function<json(const Ctx&)>;

const std::vector<std::pair<std::string, Command>>& commands() {
  static const std::vector<std::pair<std::string, Command>> c = {
      {"metric", [](const Ctx& c) { return json{{"F", c.spec(c.x(), c.y())}}; }},
      {"dual",
       [](const Ctx& c) {
         const Vec eta = c.vec("eta", Vec::Unit(c.spec.dim(), 0));
         return json{{"dual", eval_dual(c.spec, c.x(), eta, c.nc)},
                     {"dual_numeric", eval_dual_numeric(c.spec, c.x(), eta, c.nc)}};
       }},
      {"tensor",
       [](const Ctx& c) {
         const Mat g = fundamental_tensor(c.spec, c.x(), c.y(), c.nc);
         return json{{"g", mat_json(g)}, {"det", g.determinant()}, {"legendre", vec_json(legendre(c.spec, c.x(), c.y(), c.nc))}};
       }},
      {"geodesic",
       [](const Ctx& c) {
         const GeodesicPath path = integrate_geodesic(c.spec, c.x(), c.y(), c.num("T", 1.0), c.nc);
         const auto& last = path.states.back();
         json j{{"t", last.t},
                {"x", vec_json(last.x)},
                {"v", vec_json(last.v)},
                {"speed", path.speed},
                {"max_speed_drift", path.max_speed_drift},
                {"step", path.step},
                {"exited_domain", path.exited_domain}};
         if (const auto it = c.p.find("csv"); it != c.p.end()) {
           std::ofstream(it->second) << to_csv(path);
           j["csv"] = it->second;
         }
         return j;
       }},
      {"distance",
       [](const Ctx& c) {
         const Point x0 = c.x0(), x = c.x();
         return json{{"rho", distance_field(c.spec, x0)(x)}, {"reverse", reverse_distance_field(c.spec, x0)(x)}};
       }},
      {"reversibility",
       [](const Ctx& c) {
         return json{{"lambda", reversibility(c.spec, c.x(), c.nc)},
                     {"lambda_dual", dual_reversibility(c.spec, c.x(), c.nc)}};
       }},
      {"curvature",
       [](const Ctx& c) {
         const Vec y = c.y();
         const Vec v = c.vec("v", Vec::Unit(c.spec.dim(), 1 % c.spec.dim()));
         const CurvatureSample s = curvature_sample(c.spec, c.x(), y, {v}, c.nc);
         return json{{"K", s.K[0]}, {"ricci", s.ricci}, {"R", mat_json(s.R)}};
       }},
      {"scurvature",
       [](const Ctx& c) {
         const MeasureSpec m = build_measure(c.p);
         const SCurvatureSample s = s_curvature_sample(c.spec, m, c.x(), c.y(), c.nc);
         return json{{"S", s.S}, {"S_chain", s_curvature_chain(c.spec, m, c.x(), c.y(), c.nc)}, {"tau", s.tau},
                     {"measure", s.measure}};
       }},
      {"density",
       [](const Ctx& c) {
         const MeasureSpec m = build_measure(c.p);
         return json{{"sigma", density(m, c.spec, c.x(), c.nc)}, {"sigma_numeric", density_numeric(m, c.spec, c.x(), c.nc)}};
       }},
      {"ldistortion",
       [](const Ctx& c) {
         const MeasureSpec m = build_measure(c.p);
         return json{{"L", integral_of_distortion(c.spec, m, c.x(), c.nc)},
                     {"L_volume", integral_of_distortion_volume(c.spec, m, c.x(), c.nc)}};
       }},
      {"ball",
       [](const Ctx& c) {
         const MeasureSpec m = build_measure(c.p);
         const double r = c.num("r", 1.0);
         const BallVolumeCurve curve = volume_ratio_curve(c.spec, m, c.x0(), {r}, c.nc);
         return json{{"r", r}, {"volume", curve.volumes[0]}, {"ratio", curve.ratios[0]},
                     {"distortion_integral", curve.distortion_integral}};
       }},
      {"functional",
       [](const Ctx& c) {
         const double p = c.num("p", 2.0), q = c.num("q", 0.0);
         const auto tag = parse_functional_tag(c.p.count("tag")          ? c.p.at("tag")
                                              : c.p.count("functional") ? c.p.at("functional")
                                                                        : "J");
         const auto scheme = parse_scheme(c.p.count("scheme") ? c.p.at("scheme") : "auto");
         const TestFunction u = build_test_function(c.p, p, q, c.spec.dim());
         return functional_json(evaluate_functional(tag, c.spec, build_measure(c.p), c.x0(), u, p, q, scheme, c.nc));
       }},
      {"navigate",
       [](const Ctx& c) {
         const NavigationData d = build_navigation(c.p);
         const Point x = c.vec("x", origin(d.base));
         const Vec y = c.vec("y", Vec::Unit(d.base.dim(), 0));
         const double F = navigate(d, x, y, c.nc);
         return json{{"F", F}, {"residual", navigation_residual(d, x, y, F)}, {"wind", vec_json(d.wind(x))},
                     {"convention", d.convention()}};
       }},
  };
  return c;
}

}  // namespace

const std::vector<std::string>& eval_command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : commands()) v.push_back(k);
    return v;
  }();
  return names;
}

void run_eval(const std::string& command, const ParamMap& params, std::ostream& out) {
  for (const auto& [name, fn] : commands()) {
    if (name != command) continue;
    ParamMap p = params;
    if (command == "navigate" && !p.count("family")) p["family"] = "fish-tank";
    const Ctx ctx{p, build_metric(p), numeric_from(p)};
    out << fn(ctx).dump() << "\n";
    return;
  }
  std::string list;
  for (const auto& n : eval_command_names()) list += (list.empty() ? "" : ", ") + n;
  fail(ErrorCode::InvalidArgument, "unknown eval command '" + command + "'; valid: " + list);
}

}  // namespace finsler::cli
