#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "symflow/checks.hpp"
#include "symflow/counting.hpp"
#include "symflow/csv.hpp"
#include "symflow/error.hpp"
#include "symflow/model.hpp"

namespace {

using namespace symflow;

struct Global {
  std::string model_path;
  std::string builtin;
  int budget = kDefaultPeriodCap;
  unsigned threads = 0;
  bool all_orbits = false;
};

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw Error(ErrorCode::InvalidArgument, "empty entry in '" + text + "'");
    out.push_back(parse_real(std::string_view(item).substr(b, e - b + 1)));
  }
  return out;
}

Vec parse_vec_arg(const std::string& text, int d, const char* what) {
  const auto v = parse_reals(text);
  if (static_cast<int>(v.size()) != d)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " needs " + std::to_string(d) + " entries");
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

IntVector parse_alpha(const std::string& text, int d) {
  if (text.empty()) return IntVector(static_cast<std::size_t>(d), 0);
  const Vec a = parse_vec_arg(text, d, "--alpha");
  IntVector out;
  for (const double x : a) {
    if (x != std::round(x)) throw Error(ErrorCode::InvalidArgument, "--alpha must be integral");
    out.push_back(static_cast<std::int64_t>(x));
  }
  return out;
}

ModelSpec load(const Global& g) {
  if (!g.builtin.empty()) return builtin_model(g.builtin);
  if (g.model_path.empty()) throw Error(ErrorCode::InvalidArgument, "pass --model <file> or --builtin <name>");
  std::ifstream in(g.model_path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + g.model_path);
  std::stringstream ss;
  ss << in.rdbuf();
  ModelSpec m = parse_model(ss.str());
  for (const auto& w : m.warnings) std::cerr << "warning: " << w << '\n';
  return m;
}

CountOptions count_options(const Global& g) { return CountOptions{g.budget, g.threads}; }

std::vector<PrimeCycle> removed_of(const ModelSpec& m, const Global& g) {
  return g.all_orbits ? std::vector<PrimeCycle>{} : m.removed;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonConvergence: return 3;
    case ErrorCode::SyntaxError:
    case ErrorCode::ValidationError:
    case ErrorCode::UnknownModel:
    case ErrorCode::InvalidGraph:
    case ErrorCode::NotPrimitive:
    case ErrorCode::MissingEdge:
    case ErrorCode::InvalidTree:
    case ErrorCode::MissingChordValue:
    case ErrorCode::MissingEdgeWeight:
    case ErrorCode::MissingEdgeValue:
    case ErrorCode::DimensionMismatch:
      return 2;
    default: return 1;
  }
}

std::string opt_str(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : ""; }
std::string opt_str(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic-orbit statistics for suspension flows over subshifts of finite type"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--model", g.model_path, "Model file");
  app.add_option("--builtin", g.builtin, "Builtin model: full2, goldenmean, bench3");
  app.add_option("--budget", g.budget, "Largest period enumerated for exact counts")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Enumeration threads (0 = all cores)");
  app.add_flag("--all-orbits", g.all_orbits, "Do not exclude the model's removed cycles");

  std::vector<std::function<int()>> actions;
  auto command = [&](const char* name, const char* help, std::function<int()> run) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&actions, run] { actions.push_back(run); });
    return sub;
  };

  command("validate", "Parse and validate the model, then print a summary", [&] {
    const ModelSpec m = load(g);
    const auto gen = generation_check(m.graph, m.weights, 6);
    const auto grid = default_eps_grid();
    const auto flags = lattice_length_heuristic(m.graph, m.weights, 6, grid);
    std::cout << "name: " << m.name << "\nvertices: " << m.graph.vertex_count() << "\nedges: " << m.graph.edge_count()
              << "\nb: " << m.b << "\nN: " << m.N << "\nremoved: " << m.removed.size()
              << "\ngenerates: " << (gen.generates ? "yes" : "no") << "\nlength lattice flags: " << flags.size() << '\n';
    return 0;
  });

  std::string u_text;
  command("pressure", "Flow pressure and gradient at u", [&] {
    const ModelSpec m = load(g);
    const Vec u = parse_vec_arg(u_text, m.weights.dim(), "--u");
    CsvWriter csv(std::cout, {"u", "pressure", "gradient"});
    csv.row({format_vec(u), format_real(flow_pressure(m.graph, m.weights, u)),
             format_vec(pressure_gradient(m.graph, m.weights, u))});
    return 0;
  })->add_option("--u", u_text, "Comma-separated vector")->required();

  std::vector<std::string> rho_list;
  command("entropy", "Entropy, dual parameter and entropy Hessian determinant at each rho", [&] {
    const ModelSpec m = load(g);
    const int d = m.weights.dim();
    std::vector<std::string> header;
    for (int j = 1; j <= d; ++j) header.push_back("rho_" + std::to_string(j));
    for (int j = 1; j <= d; ++j) header.push_back("u_" + std::to_string(j));
    header.insert(header.end(), {"entropy", "det_hessian"});
    CsvWriter csv(std::cout, header);
    for (const auto& text : rho_list) {
      const DirectionData dd = solve_u(m.graph, m.weights, parse_vec_arg(text, d, "--rho"));
      std::vector<std::string> row;
      for (int j = 0; j < d; ++j) row.push_back(format_real(dd.rho(j)));
      for (int j = 0; j < d; ++j) row.push_back(format_real(dd.u(j)));
      row.push_back(format_real(dd.entropy));
      row.push_back(format_real(dd.hessian_h.determinant()));
      csv.row(row);
    }
    return 0;
  })->add_option("--rho", rho_list, "Comma-separated vector (repeatable)")->required();

  int hull_n = 8;
  command("hull", "Vertices of the hull of normalized cycle classes up to period n", [&] {
    const ModelSpec m = load(g);
    const auto h = direction_hull(m.graph, m.weights, hull_n);
    std::cerr << "affine dimension: " << h.affine_dim() << '\n';
    CsvWriter csv(std::cout, {"vertex"});
    for (const auto& v : h.hull.vertices()) csv.row({format_vec(v)});
    return 0;
  })->add_option("--n", hull_n, "Largest period")->check(CLI::PositiveNumber);

  double T = 0.0, delta = 1.0;
  std::string rho_text, alpha_text;
  auto window_options = [&](CLI::App* sub) {
    sub->add_option("--T", T, "Window end")->required();
    sub->add_option("--delta", delta, "Window width");
    sub->add_option("--rho", rho_text, "Direction")->required();
    sub->add_option("--alpha", alpha_text, "Class offset");
  };
  auto query = [&](const ModelSpec& m) {
    return CountQuery{T, delta, parse_vec_arg(rho_text, m.weights.dim(), "--rho"), parse_alpha(alpha_text, m.weights.dim()),
                      removed_of(m, g)};
  };

  window_options(command("count", "Exact count of cycles in the window and target class", [&] {
    const ModelSpec m = load(g);
    const CountQuery q = query(m);
    CsvWriter csv(std::cout, {"T", "delta", "target_class", "exact"});
    const auto target = floor_class(q.rho, q.T);
    IntVector cls(target.size());
    for (std::size_t j = 0; j < cls.size(); ++j) cls[j] = target[j] + q.alpha[j];
    csv.row({format_real(T), format_real(delta), format_vec(cls),
             std::to_string(exact_window_count(m.graph, m.weights, q, count_options(g)))});
    return 0;
  }));

  window_options(command("predict", "Asymptotic prediction for the window count", [&] {
    const ModelSpec m = load(g);
    const CountQuery q = query(m);
    const DirectionData dd = solve_u(m.graph, m.weights, q.rho);
    const auto target = floor_class(q.rho, q.T);
    IntVector cls(target.size());
    for (std::size_t j = 0; j < cls.size(); ++j) cls[j] = target[j] + q.alpha[j];
    CsvWriter csv(std::cout, {"T", "delta", "target_class", "predicted"});
    csv.row({format_real(T), format_real(delta), format_vec(cls), format_real(predict_count(m.graph, m.weights, dd, q))});
    return 0;
  }));

  double t_min = 0.0, t_max = 0.0, t_step = 1.0;
  auto* sweep_cmd = command("sweep", "Exact and predicted counts over a range of T", [&] {
    const ModelSpec m = load(g);
    if (!(t_step > 0.0) || t_max < t_min) throw Error(ErrorCode::InvalidArgument, "need Tmin <= Tmax and step > 0");
    std::vector<double> ts;
    for (int i = 0;; ++i) {
      const double t = t_min + i * t_step;
      if (t > t_max + 1e-9 * t_step) break;
      ts.push_back(t);
    }
    const int d = m.weights.dim();
    const auto rows = sweep(m.graph, m.weights, parse_vec_arg(rho_text, d, "--rho"), parse_alpha(alpha_text, d), delta, ts,
                            removed_of(m, g), count_options(g));
    CsvWriter csv(std::cout, {"T", "delta", "target_class", "exact", "predicted", "ratio"});
    for (const auto& r : rows)
      csv.row({format_real(r.T), format_real(r.delta), format_vec(r.target_class), opt_str(r.exact),
               format_real(r.predicted), opt_str(r.ratio)});
    return 0;
  });
  sweep_cmd->add_option("--Tmin", t_min)->required();
  sweep_cmd->add_option("--Tmax", t_max)->required();
  sweep_cmd->add_option("--step", t_step);
  sweep_cmd->add_option("--delta", delta);
  sweep_cmd->add_option("--rho", rho_text)->required();
  sweep_cmd->add_option("--alpha", alpha_text);

  std::vector<double> margulis_T;
  command("margulis", "Total prime-cycle counts against e^{hT}/(hT)", [&] {
    const ModelSpec m = load(g);
    const auto rows = margulis_totals(m.graph, m.weights, removed_of(m, g), margulis_T, count_options(g));
    CsvWriter csv(std::cout, {"T", "exact", "reference", "ratio", "entropy"});
    for (const auto& r : rows)
      csv.row({format_real(r.T), std::to_string(r.exact), format_real(r.reference),
               format_real(static_cast<double>(r.exact) / r.reference), format_real(r.entropy)});
    return 0;
  })->add_option("--T", margulis_T, "Length bound (repeatable)")->required();

  std::int64_t cheb_mod = 0;
  std::string cheb_quotient;
  int cheb_n = 12;
  auto* cheb = command("chebotarev", "Class frequencies in a finite quotient", [&] {
    if (cheb_mod == 0 && cheb_quotient.empty()) throw Error(ErrorCode::InvalidArgument, "pass --mod or --quotient");
    const ModelSpec m = load(g);
    FiniteQuotient q = cheb_mod > 0 ? FiniteQuotient::modulus(m.weights.dim(), cheb_mod) : m.quotient(cheb_quotient);
    const auto res = chebotarev_distribution(m.graph, m.weights, removed_of(m, g), q, cheb_n, count_options(g));
    if (res.warning) std::cerr << "warning: " << *res.warning << '\n';
    CsvWriter csv(std::cout, {"class", "count", "frequency", "reference"});
    for (const auto& r : res.rows)
      csv.row({r.label, std::to_string(r.count), format_real(r.frequency), format_real(r.reference)});
    return 0;
  });
  auto* mod_opt = cheb->add_option("--mod", cheb_mod, "Reduce classes modulo m")->check(CLI::PositiveNumber);
  auto* q_opt = cheb->add_option("--quotient", cheb_quotient, "Named quotient from the model file");
  mod_opt->excludes(q_opt);
  cheb->add_option("--n", cheb_n, "Largest period")->check(CLI::PositiveNumber);

  std::string obs_text;
  auto* eq = command("equidist", "Cycle averages of an edge observable against the equilibrium state", [&] {
    const ModelSpec m = load(g);
    const CountQuery q = query(m);
    const auto phi = parse_reals(obs_text);
    const DirectionData dd = solve_u(m.graph, m.weights, q.rho);
    const auto r = equidistribution_test(m.graph, m.weights, dd, q, phi, count_options(g));
    CsvWriter csv(std::cout, {"empirical", "expected", "difference"});
    csv.row({format_real(r.empirical), format_real(r.expected), format_real(r.empirical - r.expected)});
    return 0;
  });
  window_options(eq);
  eq->add_option("--obs", obs_text, "One value per edge, comma-separated")->required();

  command("check", "Run the built-in self-checks", [&] {
    bool ok = true;
    for (const auto& r : run_checks()) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << ' ' << r.name << ": " << r.detail << '\n';
      ok = ok && r.passed;
    }
    return ok ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    int rc = 0;
    for (const auto& a : actions) rc = std::max(rc, a());
    return rc;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
}
