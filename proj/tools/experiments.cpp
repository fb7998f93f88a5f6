#include "experiments.hpp"

#include "finsler/curvature.hpp"
#include "finsler/functionals.hpp"
#include "finsler/geodesics.hpp"
#include "finsler/navigation.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace finsler::cli {

namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Vec random_vec(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = U(rng);
  } while (v.norm() < 0.1);
  return v;
}

Point random_in_ball(std::mt19937_64& rng, int n, double radius) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Point x(n);
  do {
    for (int i = 0; i < n; ++i) x(i) = radius * U(rng);
  } while (x.norm() >= radius);
  return x;
}

// Random vector not too close to the line of y.
Vec random_transverse(std::mt19937_64& rng, const Vec& y) {
  for (;;) {
    const Vec v = random_vec(rng, static_cast<int>(y.size()));
    if (std::abs(v.normalized().dot(y.normalized())) < 0.9) return v;
  }
}

}  // namespace

nlohmann::ordered_json functional_json(const FunctionalReport& r) {
  json j;
  j["functional"] = std::string(to_string(r.tag));
  j["scheme"] = std::string(to_string(r.scheme));
  j["metric"] = r.metric;
  j["measure"] = r.measure;
  j["test_function"] = r.test_function;
  j["p"] = r.p;
  j["q"] = r.q;
  j["n"] = r.n;
  j["integrals"] = {{"grad", r.grad.value},
                    {"weight", r.weight.value},
                    {"mixed", r.mixed.value},
                    {"errors", {r.grad.error, r.weight.error, r.mixed.error}}};
  j["quotient"] = r.quotient;
  j["sharp"] = r.sharp;
  j["ratio_to_sharp"] = r.ratio_to_sharp;
  j["refinement_delta"] = r.refinement_delta;
  for (const auto& [k, v] : r.extras) j[k] = v;
  return j;
}

namespace {

Report minkowski_hpw(const ExperimentConfig& cfg) {
  Report rep("minkowski-hpw");
  const auto& nc = cfg.numeric;
  const double C = cfg.get("C", 1.0);
  const auto bh = MeasureSpec::busemann_hausdorff();
  const auto ht = MeasureSpec::holmes_thompson();
  const Point o = Point::Zero(2);
  rep.curves().header = {"t", "J", "J_closed", "Jmax", "Jmin", "ScriptJ", "lambda", "L_bh", "L_ht"};
  auto& runs = rep.data()["runs"] = json::array();
  for (double t : cfg.get_list("t", {0.0, 0.3, 0.6})) {
    const MetricSpec mr = MetricSpec::minkowski_randers(t);
    const TestFunction u = TestFunction::gaussian(C);
    const std::string tag = "t=" + num(t);
    auto eval = [&](FunctionalTag f, QuadratureScheme s = QuadratureScheme::Auto) {
      return evaluate_functional(f, mr, bh, o, u, 2.0, 0.0, s, nc);
    };
    const FunctionalReport J = eval(FunctionalTag::J);
    const FunctionalReport Jmax = eval(FunctionalTag::Jmax);
    const FunctionalReport Jmin = eval(FunctionalTag::Jmin);
    const FunctionalReport SJ = eval(FunctionalTag::ScriptJ);
    const FunctionalReport Jgrid = eval(FunctionalTag::J, QuadratureScheme::CartesianGrid);
    const double s = std::sqrt(1.0 - t * t);
    const double closed = (4.0 - 3.0 * s) / s;
    rep.near_rel("J " + tag + " vs closed form", J.quotient, closed, 1e-3);
    rep.near_rel("J " + tag + " grid cross-check", Jgrid.quotient, J.quotient, 1e-3);
    if (t == 0.0) rep.near("J " + tag + " equals sharp constant", J.quotient, 1.0, 1e-4);
    else rep.greater("J " + tag + " exceeds sharp constant", J.quotient, 1.0);
    const double lam = reversibility(mr, o, nc);
    rep.near("lambda " + tag, lam, (1.0 + t) / (1.0 - t), 1e-6);
    rep.greater("Jmax " + tag + " lower bound", Jmax.quotient, 1.0 - 5.0 * nc.quad_tol);
    rep.greater("J " + tag + " reversibility bound", J.quotient, 1.0 / (lam * lam) - 5.0 * nc.quad_tol);
    rep.holds("sandwich " + tag, Jmin.quotient <= J.quotient && J.quotient <= Jmax.quotient &&
                                     Jmin.quotient <= SJ.quotient && SJ.quotient <= Jmax.quotient);
    const double Lbh = integral_of_distortion(mr, bh, o, nc);
    const double Lht = integral_of_distortion(mr, ht, o, nc);
    if (C == 1.0) {
      rep.near_rel("int u^2 = L/2 " + tag, J.mixed.value, Lbh / 2.0, 1e-5);
      rep.near_rel("int rho^2 u^2 = L/4 " + tag, J.weight.value, Lbh / 4.0, 1e-5);
    }
    json run;
    run["t"] = t;
    run["J_closed_form"] = closed;
    run["lambda"] = lam;
    run["lambda_dual"] = dual_reversibility(mr, o, nc);
    run["L_bh"] = Lbh;
    run["L_ht"] = Lht;
    run["J"] = functional_json(J);
    run["J_grid"] = functional_json(Jgrid);
    run["Jmax"] = functional_json(Jmax);
    run["Jmin"] = functional_json(Jmin);
    run["ScriptJ"] = functional_json(SJ);
    runs.push_back(run);
    rep.curves().add({t, J.quotient, closed, Jmax.quotient, Jmin.quotient, SJ.quotient, lam, Lbh, Lht});
  }
  auto& dist = rep.data()["distortion"] = json::array();
  for (double t : cfg.get_list("L_t", {0.3, 0.5})) {
    const MetricSpec mr = MetricSpec::minkowski_randers(t);
    const std::string tag = "t=" + num(t);
    const double ht_exact = kPi / std::pow(1.0 - t * t, 1.5);
    const double Lbh = integral_of_distortion(mr, bh, o, nc);
    const double Lbh2 = integral_of_distortion_volume(mr, bh, o, nc);
    const double Lht = integral_of_distortion(mr, ht, o, nc);
    const double Lht2 = integral_of_distortion_volume(mr, ht, o, nc);
    rep.near("L_BH " + tag + " indicatrix route", Lbh, kPi, 1e-5);
    rep.near("L_BH " + tag + " volume route", Lbh2, kPi, 1e-5);
    rep.near("L_HT " + tag + " indicatrix route", Lht, ht_exact, 1e-5);
    rep.near("L_HT " + tag + " volume route", Lht2, ht_exact, 1e-5);
    rep.near("L_BH " + tag + " routes agree", Lbh, Lbh2, 1e-5);
    rep.near("L_HT " + tag + " routes agree", Lht, Lht2, 1e-5);
    dist.push_back({{"t", t}, {"L_bh", {Lbh, Lbh2}}, {"L_ht", {Lht, Lht2}}, {"L_ht_exact", ht_exact}});
  }
  return rep;
}

Report funk_hardy_collapse(const ExperimentConfig& cfg) {
  Report rep("funk-hardy-collapse");
  const auto& nc = cfg.numeric;
  const int n = cfg.get_int("n", 3);
  const auto alphas = cfg.get_list("alpha", {1.0, 0.3, 0.1});
  const MetricSpec funk = MetricSpec::funk(n);
  const auto bh = MeasureSpec::busemann_hausdorff();
  const Point o = Point::Zero(n);
  rep.curves().header = {"alpha", "bound", "oracle", "quotient"};
  auto& runs = rep.data()["runs"] = json::array();
  std::vector<double> bounds, quotients;
  for (double a : alphas) {
    const double bound = funk_hardy_bound(n, a);
    const double top = integrate_1d([&](double s) { return std::pow(1.0 - s, 2 * a) * std::pow(s, n - 1); }, 0, 1, 1e-13).value;
    const double bot = integrate_1d([&](double s) { return std::pow(1.0 - s, 2 * a + 2) * std::pow(s, n - 1); }, 0, 1, 1e-13).value;
    const double oracle = a * a * top / bot;
    const std::string tag = "alpha=" + num(a);
    rep.near_rel("bound " + tag + " vs radial oracle", bound, oracle, 1e-4);
    if (a == 1.0 && n == 3) rep.near("bound " + tag + " Beta identity", bound, 3.5, 1e-10);
    const TestFunction u = TestFunction::funk_power(a);
    const FunctionalReport H =
        evaluate_functional(FunctionalTag::HardyQuotient, funk, bh, o, u, 2.0, 2.0, QuadratureScheme::Radial, nc);
    rep.less("quotient " + tag + " below bound", H.quotient, bound + 2e-3);
    double worst = 0.0;
    for (double s : {0.1, 0.4, 0.8}) {
      Point x = Point::Zero(n);
      x(0) = s;
      worst = std::max(worst, std::abs(gradient_norms(funk, o, u, x, nc).fplus - a * std::pow(1.0 - s, a)));
    }
    rep.near("F*(du) " + tag + " closed form", worst, 0.0, 1e-10);
    bounds.push_back(bound);
    quotients.push_back(H.quotient);
    json run;
    run["alpha"] = a;
    run["bound"] = bound;
    run["oracle"] = oracle;
    run["quotient"] = functional_json(H);
    runs.push_back(run);
    rep.curves().add({a, bound, oracle, H.quotient});
  }
  bool dec = true;
  for (std::size_t k = 1; k < bounds.size(); ++k)
    dec = dec && bounds[k] < bounds[k - 1] && quotients[k] < quotients[k - 1];
  rep.holds("bounds and quotients decrease with alpha", dec);
  rep.less("last bound", bounds.back(), 0.1);
  return rep;
}

Report funk_curvature(const ExperimentConfig& cfg) {
  Report rep("funk-curvature");
  const auto& nc = cfg.numeric;
  const std::uint64_t seed = cfg.get_seed("seed", 20240611);
  const int samples = cfg.get_int("samples", 5);
  std::mt19937_64 rng(seed);
  rep.data()["seed"] = seed;
  rep.curves().header = {"n", "sample", "K", "S_bh", "S_expected", "ricci", "ricci_expected"};
  auto& rows = rep.data()["samples"] = json::array();
  const auto bh = MeasureSpec::busemann_hausdorff();
  for (int n : {2, 3}) {
    const MetricSpec funk = MetricSpec::funk(n);
    double kerr = 0.0, serr = 0.0, schain = 0.0, derr = 0.0, dsup = 0.0, gerr = 0.0, rerr = 0.0;
    for (int k = 0; k < samples; ++k) {
      const Point x = random_in_ball(rng, n, 0.7);
      const Vec y = random_vec(rng, n);
      const Vec v = random_transverse(rng, y);
      const Vec eta = random_vec(rng, n);
      const double F = funk(x, y);
      const CurvatureSample cs = curvature_sample(funk, x, y, {v}, nc);
      const double S = s_curvature(funk, bh, x, y, nc);
      const double Sc = s_curvature_chain(funk, bh, x, y, nc);
      const double Sx = 0.5 * (n + 1) * F;
      const double Rx = -0.25 * (n - 1) * F * F;
      kerr = std::max(kerr, std::abs(cs.K[0] + 0.25));
      serr = std::max(serr, std::abs(S - Sx) / Sx);
      schain = std::max(schain, std::abs(Sc - Sx) / Sx);
      rerr = std::max(rerr, std::abs(cs.ricci - Rx) / std::abs(Rx));
      const double closed = eta.norm() - x.dot(eta);
      derr = std::max(derr, std::abs(eval_dual(funk, x, eta, nc) - closed));
      dsup = std::max(dsup, std::abs(eval_dual_numeric(funk, x, eta, nc) - closed));
      gerr = std::max(gerr, (spray_coefficients(funk, x, y, nc) - 0.5 * F * y).norm());
      rows.push_back({{"n", n}, {"x", vec_json(x)}, {"y", vec_json(y)}, {"flag", vec_json(v)}, {"K", cs.K[0]},
                      {"S_bh", S}, {"S_chain", Sc}, {"S_expected", Sx}, {"ricci", cs.ricci}});
      rep.curves().add({double(n), double(k), cs.K[0], S, Sx, cs.ricci, Rx});
    }
    const std::string tag = "n=" + std::to_string(n);
    rep.near("flag curvature " + tag, kerr, 0.0, 2e-3);
    rep.near("S_BH geodesic route " + tag, serr, 0.0, 1e-3);
    rep.near("S_BH chain-rule route " + tag, schain, 0.0, 1e-3);
    rep.near("Ricci " + tag, rerr, 0.0, 2e-3);
    rep.near("dual closed form " + tag, derr, 0.0, 1e-12);
    rep.near("dual sup oracle " + tag, dsup, 0.0, 1e-6);
    rep.near("spray G = F y / 2 " + tag, gerr, 0.0, 1e-10);
  }
  return rep;
}

Report ckn_euclidean(const ExperimentConfig& cfg) {
  Report rep("ckn-euclidean");
  const auto& nc = cfg.numeric;
  const int n = cfg.get_int("n", 3);
  const double p = cfg.get("p", 3.0), q = cfg.get("q", 1.0);
  const MetricSpec e = MetricSpec::euclidean(n);
  const auto leb = MeasureSpec::lebesgue();
  const Point o = Point::Zero(n);
  const double sharp = sharp_constant(p, q, n);
  const double a0 = 2.0 - q, b0 = 1.0 / (2.0 - p);
  auto J = [&](const TestFunction& u, QuadratureScheme s = QuadratureScheme::Auto, FunctionalTag t = FunctionalTag::J) {
    return evaluate_functional(t, e, leb, o, u, p, q, s, nc);
  };
  const TestFunction ext = TestFunction::ckn_power(1.0, p, q);
  const FunctionalReport r = J(ext, QuadratureScheme::Radial);
  const FunctionalReport rp = J(ext, QuadratureScheme::MinkowskiPolar);
  rep.near("extremal quotient", r.quotient, sharp, 1e-3);
  rep.near("extremal quotient polar route", rp.quotient, sharp, 1e-3);
  rep.near_rel("reversible collapse Jmax = Jmin",
               J(ext, QuadratureScheme::Radial, FunctionalTag::Jmax).quotient,
               J(ext, QuadratureScheme::Radial, FunctionalTag::Jmin).quotient, 1e-6);
  rep.data()["sharp_constant"] = sharp;
  rep.data()["extremal"] = functional_json(r);
  rep.curves().header = {"C", "a", "b", "quotient"};
  rep.curves().add({1.0, a0, b0, r.quotient});
  auto& pert = rep.data()["perturbed"] = json::array();
  const double d = cfg.get("delta", 0.1);
  for (auto [a, b] : std::vector<std::pair<double, double>>{{a0 * (1 - d), b0}, {a0 * (1 + d), b0},
                                                             {a0, b0 * (1 - d)}, {a0, b0 * (1 + d)}}) {
    const FunctionalReport pr = J(TestFunction::ckn_shape(1.0, a, b));
    rep.greater("perturbed a=" + num(a) + " b=" + num(b), pr.quotient, r.quotient);
    pert.push_back(functional_json(pr));
    rep.curves().add({1.0, a, b, pr.quotient});
  }
  // Changing C alone rescales the extremal and leaves the quotient unchanged.
  const FunctionalReport rc = J(TestFunction::ckn_power(2.0, p, q));
  rep.near("scaled extremal C=2", rc.quotient, sharp, 1e-3);
  rep.curves().add({2.0, a0, b0, rc.quotient});
  return rep;
}

Report hardy_sharpness(const ExperimentConfig& cfg) {
  Report rep("hardy-sharpness");
  const auto& nc = cfg.numeric;
  const int n = cfg.get_int("n", 3);
  const double r = cfg.get("rin", 0.5), R = cfg.get("rout", 1.0);
  const auto eps = cfg.get_list("eps", {0.1, 0.03, 0.01});
  const MetricSpec e = MetricSpec::euclidean(n);
  const auto leb = MeasureSpec::lebesgue();
  const Point o = Point::Zero(n);
  const double sharp = sharp_constant(2.0, 2.0, n);
  const auto scan = infimum_scan(
      FunctionalTag::HardyQuotient, e, leb, o,
      [&](double ep) { return TestFunction::hardy_cutoff(ep, r, R, 0.5 * (n - 2)); }, 2.0, 2.0, eps,
      QuadratureScheme::Radial, nc);
  rep.curves().header = {"eps", "quotient", "gap", "log_ratio"};
  for (std::size_t k = 0; k < eps.size(); ++k) {
    rep.greater("quotient eps=" + num(eps[k]) + " above sharp", scan.values[k], sharp);
    rep.curves().add({eps[k], scan.values[k], scan.values[k] - sharp, std::log(r / eps[k])});
  }
  rep.holds("strictly decreasing in eps", scan.decreasing);
  auto& rates = rep.data()["rates"] = json::array();
  for (std::size_t k = 1; k < eps.size(); ++k) {
    const double observed = (scan.values[k] - sharp) / (scan.values[k - 1] - sharp);
    const double predicted = std::log(r / eps[k - 1]) / std::log(r / eps[k]);
    const double ratio = observed / predicted;
    rep.holds("gap rate eps=" + num(eps[k]) + " within factor 2 of 1/ln(r/eps)", ratio >= 0.5 && ratio <= 2.0);
    rates.push_back({{"eps", eps[k]}, {"observed", observed}, {"predicted", predicted}});
  }
  rep.data()["sharp_constant"] = sharp;
  rep.data()["values"] = scan.values;
  return rep;
}

Report fish_tank_experiment(const ExperimentConfig& cfg) {
  Report rep("fish-tank");
  const auto& nc = cfg.numeric;
  const int n = cfg.get_int("n", 3);
  const std::uint64_t seed = cfg.get_seed("seed", 20240612);
  const int count = cfg.get_int("samples", 20);
  const double rho2 = cfg.get("radius_sq", 0.9);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const NavigationData ft = fish_tank(n);
  const MetricSpec nav = ft.derived();
  rep.data()["seed"] = seed;
  rep.data()["convention"] = ft.convention();

  std::vector<Point> pts;
  std::vector<Vec> ys, flags;
  double e_closed = 0.0, e_shen = 0.0, resid = 0.0, homog = 0.0;
  for (int k = 0; k < count; ++k) {
    Point x(n);
    do {
      for (int i = 0; i < n; ++i) x(i) = U(rng);
    } while (x(0) * x(0) + x(1) * x(1) >= rho2);
    const Vec y = random_vec(rng, n);
    const double F = navigate(ft, x, y, nc);
    e_closed = std::max(e_closed, std::abs(F - zermelo_euclidean(ft.wind(x), y)));
    e_shen = std::max(e_shen, std::abs(F - fish_tank_closed_form(x, y)));
    resid = std::max(resid, navigation_residual(ft, x, y, F));
    for (double l : {0.5, 2.0}) homog = std::max(homog, std::abs(navigate(ft, x, l * y, nc) - l * F));
    pts.push_back(x);
    ys.push_back(y);
    flags.push_back(random_transverse(rng, y));
  }
  rep.near("root vs Randers closed form", e_closed, 0.0, 1e-8);
  rep.near("root vs cylinder formula", e_shen, 0.0, 1e-8);
  rep.less("re-substitution residual", resid, 1e-11);
  rep.less("homogeneity defect", homog, 1e-9);
  {
    double d = 0.0;
    for (int k = 0; k < std::min(count, 5); ++k) {
      const Vec eta = random_vec(rng, n);
      d = std::max(d, std::abs(eval_dual(nav, pts[k], eta, nc) - eval_dual_numeric(nav, pts[k], eta, nc)));
    }
    rep.near("dual: shifted support function vs sup", d, 0.0, 1e-8);
  }
  {
    Point x = Point::Zero(n);
    x(0) = 0.5;
    rep.near("F~ at x=(0.5,0,0), y=e1", navigate(ft, x, Vec::Unit(n, 0), nc), std::sqrt(0.75) / 0.75, 1e-12);
  }

  const int m = std::min<int>(5, count);
  const std::vector<Point> P(pts.begin(), pts.begin() + m);
  const std::vector<Vec> Y(ys.begin(), ys.begin() + m), Fl(flags.begin(), flags.begin() + m);
  const TransferReport tr = transfer_check(ft, P, Y, Fl, nc);
  rep.near("transfer: flag curvature", tr.max_K_defect, 0.0, 3e-3);
  rep.near("transfer: S_BH", tr.max_S_defect, 0.0, 1e-3);
  double kmax = 0.0, smax = 0.0;
  for (const auto& s : tr.samples) {
    kmax = std::max(kmax, std::abs(s.K_nav));
    smax = std::max(smax, std::abs(s.S_nav));
  }
  rep.near("K~ = 0", kmax, 0.0, 3e-3);
  rep.near("S~_BH = 0", smax, 0.0, 1e-3);
  rep.near("BH densities coincide", bh_equality_defect(ft, P, nc), 0.0, 1e-6);
  const BerwaldWitness w = non_berwald_witness(ft, P, Y, nc);
  rep.greater("spray is not quadratic in y", std::max(w.reflection_defect, w.parallelogram_defect), 1e-4);
  rep.data()["berwald_witness"] = {{"reflection", w.reflection_defect}, {"parallelogram", w.parallelogram_defect}};

  const KillingCheckReport kr = killing_check(ft, {0.1, 0.5, 1.0}, P, Y);
  rep.less("Killing defect, rotation wind", kr.max_defect, 1e-10);
  std::vector<Point> small;
  for (const auto& x : P) small.push_back(0.3 * x);
  const NavigationData homothetic{MetricSpec::euclidean(n), WindField::radial(n)};
  const KillingCheckReport kh = killing_check(homothetic, {0.1}, small, Y);
  rep.greater("homothetic wind V(x)=x flagged non-Killing", kh.max_defect, 1e-2);
  const NavigationData translated{MetricSpec::minkowski_randers(0.5), WindField::translation(Vec::Constant(2, 0.2))};
  const KillingCheckReport kt =
      killing_check(translated, {0.1, 1.0}, {Point::Zero(2), Point::Ones(2)}, {Vec::Unit(2, 0), Vec::Ones(2)});
  rep.less("Killing defect, translation on Minkowski-Randers", kt.max_defect, 1e-10);

  {
    const NavigationData still{MetricSpec::euclidean(n), WindField::zero(n)};
    double d = 0.0;
    for (int k = 0; k < m; ++k) d = std::max(d, std::abs(navigate(still, pts[k], ys[k], nc) - ys[k].norm()));
    rep.near("zero wind leaves F unchanged", d, 0.0, nc.root_tol);
  }

  // Funk ball with a rotation wind: constant curvature and S_BH proportional to F
  // make the choice of shifted vector visible.
  {
    Mat Q = Mat::Zero(n, n);
    Q(0, 1) = 0.4;
    Q(1, 0) = -0.4;
    const NavigationData fr{MetricSpec::funk(n), WindField::rotation(Q)};
    std::vector<Point> fp;
    for (const auto& x : small) fp.push_back(x);
    const TransferReport t2 = transfer_check(fr, fp, Y, Fl, nc);
    rep.near("Funk + rotation: flag curvature transfer", t2.max_K_defect, 0.0, 3e-3);
    rep.near("Funk + rotation: S_BH at y + F~ V", t2.max_S_defect_alt, 0.0, 1e-3);
    rep.data()["funk_rotation"] = {{"max_S_defect_y_minus_FV", t2.max_S_defect},
                                   {"max_S_defect_y_plus_FtildeV", t2.max_S_defect_alt},
                                   {"max_K_defect", t2.max_K_defect}};
  }

  rep.curves().header = {"x1", "x2", "x3", "y1", "y2", "y3", "F_root", "F_closed"};
  for (int k = 0; k < count && n == 3; ++k) {
    const double F = navigate(ft, pts[k], ys[k], nc);
    rep.curves().add({pts[k](0), pts[k](1), pts[k](2), ys[k](0), ys[k](1), ys[k](2), F,
                      fish_tank_closed_form(pts[k], ys[k])});
  }
  rep.data()["killing"] = {{"rotation", kr.max_defect}, {"homothetic", kh.max_defect}, {"translation", kt.max_defect}};
  rep.data()["transfer"] = {{"max_K_defect", tr.max_K_defect}, {"max_S_defect", tr.max_S_defect}};
  return rep;
}

Report volume_comparison(const ExperimentConfig& cfg) {
  Report rep("volume-comparison");
  const auto& nc = cfg.numeric;
  const double t = cfg.get("t", 0.5);
  const MetricSpec mr = MetricSpec::minkowski_randers(t);
  const auto bh = MeasureSpec::busemann_hausdorff();
  const Point o = Point::Zero(2);
  const auto radii = cfg.get_list("r", {0.5, 1.0, 2.0});
  const BallVolumeCurve curve = volume_ratio_curve(mr, bh, o, radii, nc);
  rep.curves().header = {"r", "volume", "volume_grid", "pi_r2", "ratio"};
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double r = radii[k];
    const double exact = kPi * r * r;
    const GridEstimate g = forward_ball_volume_grid(mr, bh, o, r, cfg.get_int("cells", 512), nc);
    rep.near_rel("volume r=" + num(r), curve.volumes[k], exact, 2e-3);
    rep.near_rel("grid volume r=" + num(r), g.value, exact, 2e-3);
    rep.near("ratio f(r) r=" + num(r), curve.ratios[k], 1.0, 2e-3);
    rep.curves().add({r, curve.volumes[k], g.value, exact, curve.ratios[k]});
  }
  rep.data()["distortion_integral"] = curve.distortion_integral;
  rep.data()["radii"] = curve.radii;
  rep.data()["volumes"] = curve.volumes;
  rep.data()["ratios"] = curve.ratios;
  return rep;
}

Report reversibility_sweep(const ExperimentConfig& cfg) {
  Report rep("reversibility-sweep");
  const auto& nc = cfg.numeric;
  rep.curves().header = {"family", "param", "lambda", "lambda_dual", "closed"};
  for (double t : cfg.get_list("t", {0.0, 0.3, 0.5})) {
    const MetricSpec mr = MetricSpec::minkowski_randers(t);
    const Point o = Point::Zero(2);
    const double lam = reversibility(mr, o, nc);
    const double lamd = dual_reversibility(mr, o, nc);
    const double closed = (1.0 + t) / (1.0 - t);
    rep.near("lambda t=" + num(t), lam, closed, 1e-6);
    rep.near("dual lambda t=" + num(t), lamd, lam, 1e-4);
    rep.curves().add({0.0, t, lam, lamd, closed});
  }
  for (int n : {2, 3}) {
    const MetricSpec funk = MetricSpec::funk(n);
    for (double s : cfg.get_list("funk_radius", {0.2, 0.5})) {
      Point x = Point::Zero(n);
      x(n - 1) = s;
      const double lam = reversibility(funk, x, nc);
      const double lamd = dual_reversibility(funk, x, nc);
      const double closed = (1.0 + s) / (1.0 - s);
      const std::string tag = "Funk n=" + std::to_string(n) + " |x|=" + num(s);
      rep.near_rel("lambda " + tag, lam, closed, 1e-6);
      rep.near_rel("dual lambda " + tag, lamd, lam, 1e-4);
      rep.curves().add({double(n), s, lam, lamd, closed});
    }
  }
  return rep;
}

Report lemma_suite(const ExperimentConfig& cfg) {
  Report rep("lemma-suite");
  const auto& nc = cfg.numeric;
  const std::uint64_t seed = cfg.get_seed("seed", 20240613);
  const int count = cfg.get_int("samples", 50);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U01(0.0, 1.0);
  rep.data()["seed"] = seed;
  rep.data()["samples"] = count;

  double homog = 0.0, euler = 0.0, eik = 0.0, leg = 0.0, fen_gap = 1e300, fen_eq = 0.0;
  for (int k = 0; k < count; ++k) {
    MetricSpec spec = MetricSpec::euclidean(2);
    Point x;
    switch (k % 3) {
      case 0:
        spec = MetricSpec::minkowski_randers(0.8 * U01(rng));
        x = random_in_ball(rng, 2, 2.0);
        break;
      case 1:
        spec = MetricSpec::funk(3);
        x = random_in_ball(rng, 3, 0.8);
        break;
      default:
        spec = fish_tank(3).derived();
        do x = random_in_ball(rng, 3, 0.95);
        while (x(0) * x(0) + x(1) * x(1) >= 0.9);
    }
    const int n = spec.dim();
    const Vec y = random_vec(rng, n);
    const Vec eta = random_vec(rng, n);
    const double F = spec(x, y);
    const double l = 0.1 + 3.0 * U01(rng);
    homog = std::max(homog, std::abs(spec(x, l * y) - l * F) / (l * F));
    const Mat g = fundamental_tensor(spec, x, y, nc);
    euler = std::max(euler, std::abs(y.dot(g * y) - F * F) / (F * F));
    const Covector L = legendre(spec, x, y, nc);
    leg = std::max(leg, (legendre_inverse(spec, x, L, nc) - y).norm() / y.norm());
    fen_eq = std::max(fen_eq, std::abs(L.dot(y) - F * F) / (F * F) + std::abs(eval_dual(spec, x, L, nc) - F) / F);
    fen_gap = std::min(fen_gap, eval_dual(spec, x, eta, nc) * F - eta.dot(y));
    if (spec.has_closed_distance()) {
      const Point base = spec.family() == Family::Funk ? Point::Zero(n) : random_in_ball(rng, n, 1.0);
      const DistanceField rho = distance_field(spec, base);
      if ((x - base).norm() > 1e-3) eik = std::max(eik, std::abs(eval_dual(spec, x, rho.differential(x), nc) - 1.0));
    }
  }
  rep.less("homogeneity", homog, 1e-12);
  rep.less("Euler identity g_y(y,y) = F^2", euler, 1e-9);
  rep.less("eikonal F*(d rho) = 1", eik, 1e-9);
  rep.less("Legendre round trip", leg, 1e-8);
  rep.less("Fenchel equality at the Legendre image", fen_eq, 1e-9);
  rep.greater("Fenchel inequality eta(y) <= F*(eta) F(y)", fen_gap, -1e-12);

  bool sandwich = true;
  double lower = 1e300, lower_rev = 1e300;
  const auto bh = MeasureSpec::busemann_hausdorff();
  for (int k = 0; k < count; ++k) {
    const double t = 0.7 * U01(rng);
    const MetricSpec mr = MetricSpec::minkowski_randers(t);
    const TestFunction u = TestFunction::gaussian(0.2 + 2.0 * U01(rng));
    const Point x0 = random_in_ball(rng, 2, 1.0);
    auto q = [&](FunctionalTag tag) { return evaluate_functional(tag, mr, bh, x0, u, 2.0, 0.0, QuadratureScheme::Auto, nc).quotient; };
    const double jmax = q(FunctionalTag::Jmax), j = q(FunctionalTag::J), jmin = q(FunctionalTag::Jmin),
                 sj = q(FunctionalTag::ScriptJ);
    sandwich = sandwich && jmin <= j && j <= jmax && jmin <= sj && sj <= jmax;
    const double lam = (1.0 + t) / (1.0 - t);
    lower = std::min(lower, jmax - 1.0);
    lower_rev = std::min(lower_rev, j - 1.0 / (lam * lam));
  }
  rep.holds("Jmin <= J, ScriptJ <= Jmax", sandwich);
  rep.greater("Jmax >= sharp constant", lower, -5.0 * nc.quad_tol);
  rep.greater("J >= sharp / lambda^2", lower_rev, -5.0 * nc.quad_tol);
  rep.curves().header = {"check", "worst"};
  rep.curves().add({0, homog});
  rep.curves().add({1, euler});
  rep.curves().add({2, eik});
  rep.curves().add({3, leg});
  rep.curves().add({4, fen_eq});
  return rep;
}

using Runner = std::function<Report(const ExperimentConfig&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> r = {
      {"minkowski-hpw", minkowski_hpw},
      {"funk-hardy-collapse", funk_hardy_collapse},
      {"funk-curvature", funk_curvature},
      {"ckn-euclidean", ckn_euclidean},
      {"hardy-sharpness", hardy_sharpness},
      {"fish-tank", fish_tank_experiment},
      {"volume-comparison", volume_comparison},
      {"reversibility-sweep", reversibility_sweep},
      {"lemma-suite", lemma_suite},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

Report run_experiment(const ExperimentConfig& cfg) {
  for (const auto& [name, run] : registry())
    if (name == cfg.name) return run(cfg);
  std::string list;
  for (const auto& n : experiment_names()) list += (list.empty() ? "" : ", ") + n;
  fail(ErrorCode::InvalidArgument, "unknown experiment '" + cfg.name + "'; valid: " + list);
}

}  // namespace finsler::cli
