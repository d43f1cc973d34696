// shrinker-lab: batch CLI over the shrinker core library.
//
// One process, one command.  Results go to stdout in text, json, or csv;
// errors go to stderr as a JSON object {code, message, context}.
// Exit codes: 0 success, 2 usage error, 3 computation failure.

#include "shrinker/geometry.hpp"
#include "shrinker/hermite.hpp"
#include "shrinker/profiles.hpp"
#include "shrinker/radial_jacobi.hpp"
#include "shrinker/spectrum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace shrinker;

struct CliOptions {
  std::string format = "text";
  QuadratureConfig quad;
};

// Round half away from zero at 3 decimals, printed with trailing zeros.
std::string round3(double x) {
  double r = std::floor(std::abs(x) * 1000.0 + 0.5) / 1000.0;
  if (x < 0) r = -r;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", r);
  return buf;
}

std::string fmt(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

ordered_json provenance(const std::string& command, ordered_json parameters,
                        const CliOptions& opt) {
  return {{"command", command},
          {"parameters", std::move(parameters)},
          {"tolerances",
           {{"abs_tol", opt.quad.abs_tol},
            {"singular_band", opt.quad.singular_band},
            {"ode_dt", opt.quad.ode_dt},
            {"grid_size", opt.quad.grid_size}}},
          {"version", version()}};
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

int run_spectrum(const CliOptions& opt, int n, int k, const std::string& ceiling) {
  ShrinkerSpec spec{n, k};
  spec.validate();
  auto records = enumerate_spectrum(spec, parse_rational(ceiling));
  if (opt.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& r : records)
      rows.push_back({{"value", to_string(r.value)},
                      {"value_real", static_cast<double>(r.value)},
                      {"multiplicity", r.multiplicity},
                      {"generators", r.generators.size()}});
    auto doc = provenance("spectrum", {{"n", n}, {"k", k}, {"ceiling", ceiling}}, opt);
    doc["result"] = {{"eigenvalues", rows}};
    emit(doc);
  } else if (opt.format == "csv") {
    std::cout << "value,multiplicity,generators\n";
    for (const auto& r : records)
      std::cout << to_string(r.value) << "," << r.multiplicity << ","
                << r.generators.size() << "\n";
  } else {
    std::cout << "spectrum of L on S^" << k << " x R^" << (n - k)
              << " up to " << ceiling << ":\n";
    for (const auto& r : records)
      std::cout << "  " << to_string(r.value) << "  (multiplicity "
                << r.multiplicity << ", " << r.generators.size()
                << " generators)\n";
  }
  return 0;
}

int run_index(const CliOptions& opt, int n, int k) {
  long long idx = stability_index({n, k});
  if (opt.format == "json") {
    auto doc = provenance("index", {{"n", n}, {"k", k}}, opt);
    doc["result"] = {{"index", idx}};
    emit(doc);
  } else if (opt.format == "csv") {
    std::cout << "n,k,index\n" << n << "," << k << "," << idx << "\n";
  } else {
    std::cout << idx << "\n";
  }
  return 0;
}

int run_jacobi_eval(const CliOptions& opt, const std::string& family, int lam,
                    int n, const std::vector<double>& xs) {
  PiecewiseRadialSolution sol = family == "g2"   ? build_g2(opt.quad)
                                : family == "f2" ? build_f2(lam, opt.quad)
                                                 : build_f1_series(n);
  std::vector<std::array<double, 3>> rows;
  for (double x : xs) rows.push_back({x, sol(x), sol.derivative(x)});
  if (opt.format == "json") {
    ordered_json pts = ordered_json::array();
    for (auto& r : rows)
      pts.push_back({{"x", r[0]}, {"value", r[1]}, {"derivative", r[2]}});
    ordered_json params{{"family", family}};
    if (family == "f2") params["lambda"] = lam;
    if (family == "f1") params["n"] = n;
    auto doc = provenance("jacobi-eval", params, opt);
    doc["result"] = {{"points", pts}};
    emit(doc);
  } else if (opt.format == "csv") {
    std::cout << "x,value,derivative\n";
    for (auto& r : rows)
      std::cout << fmt(r[0]) << "," << fmt(r[1]) << "," << fmt(r[2]) << "\n";
  } else {
    for (auto& r : rows)
      std::cout << family << "(" << fmt(r[0]) << ") = " << fmt(r[1])
                << "   d/dx = " << fmt(r[2]) << "\n";
  }
  return 0;
}

int run_r1_table(const CliOptions& opt, int n_max) {
  if (n_max < 2 || n_max > 16)
    throw std::invalid_argument("r1-table: need 2 <= n-max <= 16");
  struct Row {
    int n;
    std::string second, fourth, full;
  };
  std::vector<Row> rows;
  for (int n = 2; n <= n_max; ++n) {
    auto approx = r1_approximations(n);
    rows.push_back({n, round3(approx.second_order), round3(approx.fourth_order),
                    round3(find_r1(n))});
  }
  if (opt.format == "json") {
    ordered_json out = ordered_json::array();
    for (auto& r : rows)
      out.push_back({{"n", r.n},
                     {"second_order", r.second},
                     {"fourth_order", r.fourth},
                     {"full", r.full}});
    auto doc = provenance("r1-table", {{"n_max", n_max}}, opt);
    doc["result"] = {{"rows", out}};
    emit(doc);
  } else if (opt.format == "csv") {
    std::cout << "n,second_order,fourth_order,full\n";
    for (auto& r : rows)
      std::cout << r.n << "," << r.second << "," << r.fourth << "," << r.full
                << "\n";
  } else {
    std::cout << "  n   2nd order   4th order   full series\n";
    for (auto& r : rows)
      std::printf("%3d   %9s   %9s   %11s\n", r.n, r.second.c_str(),
                  r.fourth.c_str(), r.full.c_str());
  }
  return 0;
}

int run_r0(const CliOptions& opt) {
  auto g2 = build_g2(opt.quad);
  double r0 = find_r0(g2);
  if (opt.format == "json") {
    auto doc = provenance("r0", ordered_json::object(), opt);
    doc["result"] = {{"r0", r0}, {"g2_at_r0", g2(r0)}};
    emit(doc);
  } else if (opt.format == "csv") {
    std::cout << "r0,g2_at_r0\n" << fmt(r0) << "," << fmt(g2(r0)) << "\n";
  } else {
    std::cout << "r0 = " << fmt(r0, 7) << "   (g2(r0) = " << fmt(g2(r0), 3)
              << ")\n";
  }
  return 0;
}

int run_region(const CliOptions& opt, int n, int k, const std::string& family,
               double a, double b) {
  static const std::map<std::string, RegionFamily> kFamilies{
      {"half-space-above", RegionFamily::half_space_above},
      {"half-space-below", RegionFamily::half_space_below},
      {"slab", RegionFamily::slab},
      {"ball", RegionFamily::ball},
      {"annulus", RegionFamily::annulus},
      {"exterior", RegionFamily::exterior}};
  auto it = kFamilies.find(family);
  if (it == kFamilies.end())
    throw descriptor_error("region: unknown family " + family);
  Stability verdict = classify_region({n, k}, {it->second, a, b}, opt.quad);
  const char* word = verdict == Stability::stable ? "stable" : "unstable";
  if (opt.format == "json") {
    auto doc = provenance(
        "region", {{"n", n}, {"k", k}, {"family", family}, {"a", a}, {"b", b}},
        opt);
    doc["result"] = {{"stability", word}};
    emit(doc);
  } else if (opt.format == "csv") {
    std::cout << "n,k,family,a,b,stability\n"
              << n << "," << k << "," << family << "," << fmt(a) << ","
              << fmt(b) << "," << word << "\n";
  } else {
    std::cout << word << "\n";
  }
  return 0;
}

int run_flow_sphere(const CliOptions& opt, int dim, double r_init,
                    double t_init, double t_end) {
  FlowState flow = flow_sphere(dim, r_init, t_init, opt.quad.ode_dt, t_end);
  auto [t_last, r_last] = flow.history.back();
  if (opt.format == "json") {
    auto doc = provenance("flow-sphere",
                          {{"dim", dim},
                           {"r_init", r_init},
                           {"t_init", t_init},
                           {"t_end", t_end}},
                          opt);
    doc["result"] = {{"steps", flow.history.size() - 1},
                     {"t_final", t_last},
                     {"r_final", r_last},
                     {"extinction_estimate", flow.extinction_estimate},
                     {"clipped", flow.clipped}};
    emit(doc);
  } else if (opt.format == "csv") {
    std::cout << "t,radius,closed_form\n";
    for (auto& [t, r] : flow.history)
      std::cout << fmt(t) << "," << fmt(r) << ","
                << fmt(flow_sphere_closed_form(dim, r_init, t_init, t)) << "\n";
  } else {
    std::cout << "flow from r = " << fmt(r_init, 6) << " at t = "
              << fmt(t_init, 6) << ": " << flow.history.size() - 1
              << " steps, final r = " << fmt(r_last, 6)
              << ", extinction estimate t = " << fmt(flow.extinction_estimate, 6)
              << (flow.clipped ? " (clipped at radius floor)" : "") << "\n";
  }
  return 0;
}

int run_entropy(const CliOptions& opt, const std::string& surface, int dim,
                double radius, double t0) {
  if (dim != 2)
    throw std::invalid_argument("entropy: only dim 2 surfaces in R^3 are built");
  ParametricHypersurface surf =
      surface == "sphere"     ? ParametricHypersurface::sphere(radius)
      : surface == "cylinder" ? ParametricHypersurface::cylinder()
                              : ParametricHypersurface::plane();
  if (surface != "sphere" && surface != "cylinder" && surface != "plane")
    throw std::invalid_argument("entropy: unknown surface " + surface);
  FValue f = f_functional(surf, {0, 0, 0}, t0, opt.quad);
  if (opt.format == "json") {
    auto doc = provenance(
        "entropy",
        {{"surface", surface}, {"dim", dim}, {"radius", radius}, {"t0", t0}},
        opt);
    doc["result"] = {{"F", f.value}, {"tail_bound", f.tail_bound}};
    emit(doc);
  } else if (opt.format == "csv") {
    std::cout << "surface,F,tail_bound\n"
              << surface << "," << fmt(f.value) << "," << fmt(f.tail_bound)
              << "\n";
  } else {
    std::cout << fmt(f.value, 7) << "\n";
  }
  return 0;
}

int run_profile(const CliOptions& opt, double sigma, double u0, double z_max) {
  ProfileTrajectory traj = sigma > 0
                               ? shoot_for_sigma(sigma, 1e-3, z_max, opt.quad.ode_dt)
                               : integrate_profile(u0, z_max, opt.quad.ode_dt);
  bool crashed = traj.outcome == ProfileTrajectory::Outcome::crash;
  double min_h = crashed ? 0.0 : profile_mean_curvature(traj);
  if (opt.format == "json") {
    auto doc = provenance(
        "profile", {{"sigma", sigma}, {"u0", u0}, {"z_max", z_max}}, opt);
    doc["result"] = {{"u0", traj.u0},
                     {"sigma_estimate", traj.sigma_estimate},
                     {"outcome", crashed ? "crash" : "ok"},
                     {"min_mean_curvature", min_h},
                     {"samples", traj.samples.size()}};
    emit(doc);
  } else if (opt.format == "csv") {
    std::cout << "z,u,du\n";
    for (size_t i = 0; i < traj.samples.size(); i += 100)
      std::cout << fmt(traj.samples[i].z) << "," << fmt(traj.samples[i].u)
                << "," << fmt(traj.samples[i].du) << "\n";
  } else if (crashed) {
    std::cout << "profile from u(0) = " << fmt(traj.u0, 6)
              << " crashed into the axis\n";
  } else {
    std::cout << "u(0) = " << fmt(traj.u0, 6)
              << ", asymptotic slope = " << fmt(traj.sigma_estimate, 6)
              << ", min H = " << fmt(min_h, 6) << "\n";
  }
  return 0;
}

int run_growth_ratio(const CliOptions& opt, int n, int m) {
  Rational q = growth_ratio(n, m);
  if (opt.format == "json") {
    auto doc = provenance("growth-ratio", {{"n", n}, {"m", m}}, opt);
    doc["result"] = {{"ratio", to_string(q)},
                     {"ratio_real", static_cast<double>(q)}};
    emit(doc);
  } else if (opt.format == "csv") {
    std::cout << "n,m,ratio\n" << n << "," << m << "," << to_string(q) << "\n";
  } else {
    std::cout << to_string(q) << "\n";
  }
  return 0;
}

int fail(int code, const std::string& kind, const std::string& message,
         const std::string& context) {
  nlohmann::ordered_json err{{"code", kind}, {"message", message},
                             {"context", context}};
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for self-shrinker stability analysis"};
  app.require_subcommand(1);
  CliOptions opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--abs-tol", opt.quad.abs_tol, "quadrature tolerance");
  app.add_option("--grid", opt.quad.grid_size, "discretization grid size");
  app.add_option("--dt", opt.quad.ode_dt, "ODE step size");

  int n = 2, k = 1, n_max = 7, lam = 2, dim = 2, m = 1;
  std::string ceiling = "0", family = "g2", region_family, surface = "sphere";
  std::vector<double> xs;
  double a = 0, b = 0, r_init = 2, t_init = -1, t_end = 0, radius = 2, t0 = 1;
  double sigma = 0, u0 = 1, z_max = 40;

  auto* c_spec = app.add_subcommand("spectrum", "eigenvalues of L up to a ceiling");
  c_spec->add_option("--n", n)->required();
  c_spec->add_option("--k", k)->required();
  c_spec->add_option("--ceiling", ceiling, "rational, e.g. 3/2")->required();

  auto* c_index = app.add_subcommand("index", "stability index");
  c_index->add_option("--n", n)->required();
  c_index->add_option("--k", k)->required();

  auto* c_jac = app.add_subcommand("jacobi-eval", "evaluate a radial solution");
  c_jac->add_option("--family", family)->check(CLI::IsMember({"g2", "f2", "f1"}));
  c_jac->add_option("--lambda", lam, "n-k for f2");
  c_jac->add_option("--n", n, "dimension for f1");
  c_jac->add_option("--x", xs, "evaluation points")->required();

  auto* c_table = app.add_subcommand("r1-table", "closed-form and series r1 values");
  c_table->add_option("--n-max", n_max)->required();

  app.add_subcommand("r0", "smallest positive root of g2");

  auto* c_region = app.add_subcommand("region", "classify a region as stable/unstable");
  c_region->add_option("--n", n)->required();
  c_region->add_option("--k", k)->required();
  c_region->add_option("--family", region_family)->required();
  c_region->add_option("--a", a);
  c_region->add_option("--b", b);

  auto* c_flow = app.add_subcommand("flow-sphere", "shrinking round sphere flow");
  c_flow->add_option("--dim", dim)->required();
  c_flow->add_option("--r-init", r_init)->required();
  c_flow->add_option("--t-init", t_init)->required();
  c_flow->add_option("--t-end", t_end);

  auto* c_entropy = app.add_subcommand("entropy", "Gaussian area functional");
  c_entropy->add_option("--surface", surface)
      ->check(CLI::IsMember({"sphere", "cylinder", "plane"}))
      ->required();
  c_entropy->add_option("--dim", dim)->required();
  c_entropy->add_option("--radius", radius);
  c_entropy->add_option("--t0", t0);

  auto* c_profile = app.add_subcommand("profile", "rotationally symmetric profile");
  auto* sig_opt = c_profile->add_option("--sigma", sigma, "target asymptotic slope");
  c_profile->add_option("--u0", u0, "initial height")->excludes(sig_opt);
  c_profile->add_option("--z-max", z_max);

  auto* c_growth = app.add_subcommand("growth-ratio", "series coefficient ratio");
  c_growth->add_option("--n", n)->required();
  c_growth->add_option("--m", m)->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
    opt.quad.validate();
    if (c_spec->parsed()) return run_spectrum(opt, n, k, ceiling);
    if (c_index->parsed()) return run_index(opt, n, k);
    if (c_jac->parsed()) return run_jacobi_eval(opt, family, lam, n, xs);
    if (c_table->parsed()) return run_r1_table(opt, n_max);
    if (c_region->parsed()) return run_region(opt, n, k, region_family, a, b);
    if (c_flow->parsed()) return run_flow_sphere(opt, dim, r_init, t_init, t_end);
    if (c_entropy->parsed()) return run_entropy(opt, surface, dim, radius, t0);
    if (c_profile->parsed()) return run_profile(opt, sigma, u0, z_max);
    if (c_growth->parsed()) return run_growth_ratio(opt, n, m);
    return run_r0(opt);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    return fail(2, "usage", e.what(), "argument parsing");
  } catch (const tolerance_error& e) {
    return fail(3, "computation", e.what(),
                "achieved bound " + fmt(e.achieved()));
  } catch (const descriptor_error& e) {
    return fail(2, "usage", e.what(), "region descriptor");
  } catch (const std::invalid_argument& e) {
    return fail(2, "usage", e.what(), "parameter validation");
  } catch (const std::exception& e) {
    return fail(3, "computation", e.what(), "runtime");
  }
}
