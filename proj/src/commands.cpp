#include "fowler6/commands.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>

#include "fowler6/energy.hpp"
#include "fowler6/io.hpp"
#include "fowler6/profiles.hpp"
#include "fowler6/shooting.hpp"

namespace fowler6 {

namespace {

using json = nlohmann::ordered_json;

std::string text(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

json exact_list(const std::vector<Rational>& v) {
  json a = json::array();
  for (const Rational& q : v) a.push_back(text(q));
  return a;
}

json vec(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    return boost::lexical_cast<double>(boost::algorithm::trim_copy(s));
  } catch (const boost::bad_lexical_cast&) {
    throw std::invalid_argument("invalid " + what + " '" + s + "'");
  }
}

std::string tag(double a0) { return format_number(a0); }

// runs a command body, mapping exceptions onto the exit-code contract
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ShootingError& e) {
    err << "error: non-convergence: " << e.what() << "\n";
    return exit_nonconvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_nonconvergence;
  }
}

json solution_summary(const RunConfig& config, const Constants& k, const PeriodicSolution& sol) {
  json j;
  j["n"] = config.n;
  j["c_mode"] = to_string(config.c_mode);
  j["c"] = k.params.c;
  j["a_star"] = equilibrium_amplitude(k.params, k.spec);
  j["a0"] = sol.a0;
  j["a2"] = sol.a2;
  j["a4"] = sol.a4;
  j["period"] = number(sol.period);
  j["max"] = sol.max_value;
  j["H"] = sol.energy;
  j["newton_residual"] = sol.newton_residual;
  j["symmetry_residual"] = sol.symmetry_residual;
  j["newton_iterations"] = sol.newton_iterations;
  j["segments"] = sol.segments;
  j["method"] = sol.method;
  return j;
}

void check_domain(const Constants& k, double a0) {
  const double a_star = equilibrium_amplitude(k.params, k.spec);
  if (!(a0 > 0 && a0 < a_star))
    throw std::invalid_argument("a0 = " + format_number(a0) + " outside (0, a*) with a* = " + format_number(a_star));
}

}  // namespace

std::vector<double> parse_grid(const std::string& grid) {
  std::vector<double> out;
  const std::string g = boost::algorithm::trim_copy(grid);
  if (g.empty()) return out;
  if (g.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, g, boost::is_any_of(":"));
    if (parts.size() != 3) throw std::invalid_argument("grid must be start:stop:step");
    const double a = parse_number(parts[0], "grid start"), b = parse_number(parts[1], "grid stop"),
                 h = parse_number(parts[2], "grid step");
    if (!(h > 0)) throw std::invalid_argument("grid step must be positive");
    if (b < a) return out;
    const long count = static_cast<long>(std::floor((b - a) / h + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) out.push_back(std::round((a + i * h) * 1e12) / 1e12);
    return out;
  }
  std::vector<std::string> parts;
  boost::algorithm::split(parts, g, boost::is_any_of(","));
  for (const std::string& p : parts)
    if (!boost::algorithm::trim_copy(p).empty()) out.push_back(parse_number(p, "grid value"));
  return out;
}

int cmd_audit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const Constants k = derive_constants(config.n, config.m, config.c_mode);
    const OperatorSpec& spec = k.spec;
    const CouplingAudit audit = audit_coupling_constant(config.n, config.m);
    const IndicialPolynomial ip = indicial_polynomial(spec);
    const Eigen::VectorXcd roots = ip.poly.roots();

    double root_error = 0;
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < spec.m; ++j)
        best = std::min(best, std::abs(std::abs(roots(i).real()) - spec.mu(j)) + std::abs(roots(i).imag()));
      root_error = std::max(root_error, best);
    }
    const bool disc_positive = ip.discriminant > 0;

    json j;
    j["n"] = config.n;
    j["m"] = config.m;
    j["p"] = text(k.params.p);
    j["gamma"] = text(k.params.gamma);
    j["mu"] = exact_list(spec.mu_exact);
    j["lam"] = exact_list(spec.lam_exact);
    j["K"] = exact_list(spec.K_exact);
    j["K_decimal"] = vec(spec.K);
    j["signed_coefficients"] = vec(spec.signed_coefficients());
    json r = json::array();
    for (Eigen::Index i = 0; i < roots.size(); ++i) r.push_back(number(roots(i).real()));
    j["indicial_roots"] = r;
    j["indicial_root_error"] = root_error;
    j["discriminant_positive"] = disc_positive;
    json c;
    c["paper_section1"] = audit.paper_c ? json(*audit.paper_c) : json(nullptr);
    c["gamma_formula"] = audit.gamma_c;
    c["audited"] = audit.audited_c;
    c["radii"] = audit.radii;
    c["samples"] = audit.samples;
    c["spread"] = audit.spread;
    c["consistent"] = audit.consistent;
    c["discrepancies"] = audit.discrepancies;
    j["coupling"] = c;
    j["c_mode"] = to_string(config.c_mode);
    j["c"] = k.params.c;
    const double a_star = equilibrium_amplitude(k.params, spec);
    j["a_star"] = a_star;
    j["a_star_printed"] = printed_equilibrium_amplitude(spec);
    j["equilibrium_defect"] = equilibrium_defect(k.params, spec, a_star);
    if (spec.m == 3) {
      j["linear_frequency"] = linear_frequency(k.params, spec);
      j["linear_period"] = 2.0 * M_PI / linear_frequency(k.params, spec);
    }
    const bool ok = audit.consistent && disc_positive && root_error < 1e-12;
    j["status"] = ok ? "consistent" : "oracle disagreement";

    const std::string body = j.dump(2) + "\n";
    const std::string dir = config.output_dir();
    ensure_directory(dir);
    write_text(dir + "/audit_n" + std::to_string(config.n) + "_m" + std::to_string(config.m) + ".json", body);
    out << body;
    return ok ? exit_ok : exit_usage;
  });
}

int cmd_periodic(const RunConfig& config, const std::string& a0_text, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (config.m != 3) throw std::invalid_argument("periodic orbits are implemented for m = 3");
    const Constants k = derive_constants(config.n, config.m, config.c_mode);
    const double a0 = parse_number(a0_text, "a0");
    check_domain(k, a0);
    const PeriodicSolution sol = solve_periodic(k.params, k.spec, a0, config.shoot_options());
    const EnergyCoefficients ec(k.params, k.spec);

    const std::string dir = config.output_dir();
    ensure_directory(dir);
    const std::string stem = dir + "/periodic_a0_" + tag(a0);
    if (config.format == "csv") {
      write_states_csv(stem + ".csv", sol.samples, ec);
    } else {
      json rows = json::array();
      for (const State& s : sol.samples) {
        json row = json::array({s.t});
        for (Eigen::Index i = 0; i < s.y.size(); ++i) row.push_back(s.y(i));
        row.push_back(hamiltonian_value(ec, s.y));
        rows.push_back(row);
      }
      json doc;
      doc["columns"] = {"t", "v", "v1", "v2", "v3", "v4", "v5", "H"};
      doc["rows"] = rows;
      write_text(stem + ".json", doc.dump() + "\n");
    }
    const std::string summary = solution_summary(config, k, sol).dump(2) + "\n";
    write_text(stem + "_summary.json", summary);
    out << summary;
    return exit_ok;
  });
}

int cmd_sweep(const RunConfig& config, const std::string& grid_text, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (config.m != 3) throw std::invalid_argument("periodic orbits are implemented for m = 3");
    const std::vector<double> grid = parse_grid(grid_text);
    if (grid.empty()) throw std::invalid_argument("empty grid");
    const Constants k = derive_constants(config.n, config.m, config.c_mode);
    for (double a0 : grid) check_domain(k, a0);

    const std::string dir = config.output_dir();
    ensure_directory(dir);
    const std::string path = dir + "/sweep.csv";
    const std::map<std::string, std::string> done = read_sweep_csv(path);

    std::vector<double> todo;
    for (double a0 : grid)
      if (!done.count(tag(a0))) todo.push_back(a0);
    const std::vector<SweepRow> solved = sweep(k.params, k.spec, todo, config.shoot_options(), config.jobs);

    std::map<std::string, std::string> lines = done;
    int failed = 0;
    for (const SweepRow& r : solved) {
      if (r.ok) {
        lines[tag(r.a0)] = sweep_line(r.solution);
      } else {
        ++failed;
        err << "a0 = " << tag(r.a0) << ": " << r.error << "\n";
      }
    }
    // rows in grid order, then any earlier rows outside this grid
    std::ofstream f(path);
    f << sweep_header() << "\n";
    std::vector<std::string> order;
    for (double a0 : grid)
      if (lines.count(tag(a0))) order.push_back(tag(a0));
    for (const auto& [key, line] : lines)
      if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
    std::vector<double> H;
    for (const std::string& key : order) {
      f << lines[key] << "\n";
      std::vector<std::string> cols;
      boost::algorithm::split(cols, lines[key], boost::is_any_of(","));
      if (std::find(grid.begin(), grid.end(), parse_number(key, "a0")) != grid.end())
        H.push_back(parse_number(cols[5], "H"));
    }
    f.close();

    bool monotone = true;
    for (std::size_t i = 1; i < H.size(); ++i) monotone = monotone && H[i] < H[i - 1];
    json j;
    j["rows"] = grid.size();
    j["solved"] = solved.size() - failed;
    j["skipped"] = grid.size() - todo.size();
    j["failed"] = failed;
    j["monotone_H"] = monotone;
    j["table"] = path;
    out << j.dump(2) << "\n";
    return failed ? exit_nonconvergence : exit_ok;
  });
}

int cmd_reconstruct(const RunConfig& config, const ReconstructArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (config.m != 3) throw std::invalid_argument("reconstruction is implemented for m = 3");
    if (args.r_min && !(*args.r_min > 0)) throw std::invalid_argument("r-min must be positive (the origin is singular)");
    if (args.count < 2) throw std::invalid_argument("need at least two radii");
    const Constants k = derive_constants(config.n, config.m, config.c_mode);
    const double a_star = equilibrium_amplitude(k.params, k.spec);
    PeriodicSolution sol;
    if (boost::algorithm::iequals(args.a0, "astar")) {
      sol = equilibrium_solution(k.params, k.spec);
    } else {
      const double a0 = parse_number(args.a0, "a0");
      if (std::abs(a0 - a_star) <= 1e-12 * a_star) sol = equilibrium_solution(k.params, k.spec);
      else {
        check_domain(k, a0);
        sol = solve_periodic(k.params, k.spec, a0, config.shoot_options());
      }
    }
    // equilibrium: span the same log-range as the linear period
    const double P = sol.equilibrium ? 2.0 * M_PI / linear_frequency(k.params, k.spec) : sol.period;
    const double span = args.periods * P;
    const double lo = args.r_min ? std::log(*args.r_min) : -0.5 * span;
    std::vector<double> radii;
    for (int i = 0; i < args.count; ++i) radii.push_back(std::exp(lo + span * i / (args.count - 1)));

    const RadialProfile u = reconstruct(k.params, sol, args.T);
    const std::vector<ProfileRow> rows = profile_table(k.params, u, radii);
    double worst = 0, slope = -std::numeric_limits<double>::infinity();
    for (const ProfileRow& r : rows) {
      worst = std::max(worst, r.residual);
      slope = std::max(slope, r.du);
    }
    const std::string dir = config.output_dir();
    ensure_directory(dir);
    const std::string stem =
        dir + "/profile_a0_" + (sol.equilibrium ? std::string("astar") : tag(sol.a0)) + "_T" + tag(args.T);
    write_profile_csv(stem + ".csv", rows);

    json j;
    j["a0"] = sol.a0;
    j["equilibrium"] = sol.equilibrium;
    j["T"] = args.T;
    j["period"] = number(P);
    j["radii"] = rows.size();
    j["max_residual"] = worst;
    j["max_du"] = slope;
    j["monotone"] = slope < 0;
    j["profile"] = stem + ".csv";
    out << j.dump(2) << "\n";
    return (worst < 1e-6 && slope < 0) ? exit_ok : exit_violation;
  });
}

int cmd_verify(const RunConfig& config, const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const VerifyReport report = run_verification(config, options);
    const std::string body = report.to_json(config);
    const std::string dir = config.output_dir();
    ensure_directory(dir);
    write_text(dir + "/verify_seed" + std::to_string(config.seed) + ".json", body);
    out << body;
    for (const std::string& name : report.failed) err << "violated invariant: " << name << "\n";
    return report.pass() ? exit_ok : exit_violation;
  });
}

}  // namespace fowler6
