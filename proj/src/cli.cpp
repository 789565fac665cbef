#include "dbn/cli.hpp"

#include "dbn/casebook.hpp"
#include "dbn/estimator.hpp"
#include "dbn/flow.hpp"
#include "dbn/kernels.hpp"
#include "dbn/leeyang.hpp"
#include "dbn/numerics.hpp"
#include "dbn/schema.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace dbn::cli {

void RunConfig::validate() const {
  if (digits < 15) throw Error(ErrorCode::InvalidArgument, "--digits must be >= 15");
  if (workers < 1) throw Error(ErrorCode::InvalidArgument, "--workers must be >= 1");
  context().validate();
  if (window) window->validate();
}

PrecisionContext RunConfig::context() const {
  const double tol = target_tol ? *target_tol : std::pow(10.0, -std::ceil(0.6 * digits));
  return PrecisionContext{digits, tol};
}

namespace {

std::vector<double> split_numbers(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (item.empty() || used != item.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, std::string("cannot parse ") + what + " \"" + s + "\"");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::complex<double> parse_complex(const std::string& s) {
  const auto v = split_numbers(s, "complex value");
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw Error(ErrorCode::InvalidArgument, "complex value must be RE or RE,IM: \"" + s + "\"");
}

Rectangle parse_rect(const std::string& s) {
  const auto v = split_numbers(s, "rectangle");
  if (v.size() != 4) throw Error(ErrorCode::InvalidArgument, "rectangle must be A,B,C,D: \"" + s + "\"");
  Rectangle r{v[0], v[1], v[2], v[3]};
  r.validate();
  return r;
}

namespace {

bool usage_code(ErrorCode c) {
  return c == ErrorCode::Schema || c == ErrorCode::ParseError || c == ErrorCode::UnknownKind ||
         c == ErrorCode::InvalidArgument || c == ErrorCode::NonAscending || c == ErrorCode::SizeLimit;
}

json real_json(const Real& x, unsigned digits) {
  return {{"value", to_double(x)}, {"decimal", to_string(x, static_cast<int>(std::min(digits, 40u)))}};
}

json complex_json(const Complex& z) { return to_json(z.to_std()); }

double nominal_error(const Real& v, const PrecisionContext& ctx) {
  return std::max(ctx.target_abs_tol, std::abs(to_double(v)) * std::pow(10.0, -(ctx.working_digits - 5.0)));
}

struct Session {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;

  PrecisionContext ctx() const { return cfg.context(); }
  void emit(const json& j) const { out << j.dump() << "\n"; }
  Rectangle window_or(const std::optional<std::string>& s, const Rectangle& dflt) const {
    if (s && !s->empty()) return parse_rect(*s);
    return cfg.window ? *cfg.window : dflt;
  }
};

EvenMeasure load_measure(const std::string& file) { return parse_measure(load_json_file(file), "$"); }

std::vector<double> lambda_grid(double lmin, double lmax, int steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "--steps must be >= 1");
  if (!(lmax >= lmin)) throw Error(ErrorCode::InvalidArgument, "--lmax must be >= --lmin");
  std::vector<double> g;
  for (int i = 0; i <= steps; ++i) g.push_back(lmin + (lmax - lmin) * i / steps);
  return g;
}

json verdict_record(const LambdaVerdict& v, const PrecisionContext& ctx) {
  json j;
  j["lambda"] = v.lambda;
  j["entire"] = v.entire;
  j["real_zeros"] = v.real_zeros();
  if (v.entire) {
    j["verdict"] = to_json(v.verdict);
    j["error_estimate"] = real_axis_tolerance({v.verdict.window.re_max, 0.0}, ctx);
  } else {
    j["verdict"] = nullptr;
    j["error_estimate"] = 0.0;
  }
  return j;
}

json case_json(const CaseReport& r) {
  json j;
  j["record"] = "case";
  j["case"] = r.case_id;
  j["claimed_tail"] = to_json(r.claimed_tail);
  j["claimed_P"] = r.claimed_P;
  j["report_only"] = r.report_only;
  if (!r.statement.empty()) j["statement"] = r.statement;
  if (r.measure) j["measure"] = measure_to_json(*r.measure);
  j["checks"] = json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  json values = json::object();
  json timing = json::object();
  for (const auto& [k, v] : r.values) {
    const bool is_time = k.size() > 8 && k.compare(k.size() - 8, 8, "_seconds") == 0;
    (is_time ? timing : values)[k] = v;
  }
  j["values"] = values;
  j["timing"] = timing;
  if (r.values.count("threshold")) j["threshold"] = r.values.at("threshold");
  j["error_estimate"] = r.values.count("threshold_error") ? r.values.at("threshold_error") : 0.0;
  j["passed"] = r.passed();
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"dbnlab: reality of zeros of Fourier transforms under Gaussian multipliers", "dbnlab"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig cfg;
  double target_tol = 0.0;
  std::string window_str, format_str = "auto";
  app.add_option("--digits", cfg.digits, "working precision in decimal digits (>= 15)");
  app.add_option("--target-tol", target_tol, "per-evaluation absolute error budget");
  app.add_option("--workers", cfg.workers, "worker threads for parallel kernels");
  app.add_option("--window", window_str, "default search window A,B,C,D");
  app.add_option("--format", format_str, "auto | json | csv")->check(CLI::IsMember({"auto", "json", "csv"}));

  double x = 0, lambda = 0, lmin = 0, lmax = 0, lo = 0, hi = 0, tol = 1e-7, t_end = 1, h = 1e-3;
  double radius = kDefaultTruncationRadius;
  int steps = 10, k_from = 1, k_to = 1, checkpoints = 10;
  std::string z_str = "0", measure_file, rect_str, zeros_file, init_file, system_file, case_str = "all";

  auto* phi = app.add_subcommand("phi", "Phi(u)");
  phi->add_option("--u", x, "argument")->required();
  auto* theta = app.add_subcommand("theta", "theta(x) and its inversion residual");
  theta->add_option("--x", x, "argument > 0")->required();
  auto* xi = app.add_subcommand("xi", "reference xi(z) via zeta and Gamma");
  xi->add_option("--z", z_str, "RE[,IM]")->required();

  auto* eval = app.add_subcommand("eval", "H_{m,lambda}(z)");
  eval->add_option("--measure", measure_file, "measure spec JSON")->required();
  eval->add_option("--lambda", lambda, "Gaussian multiplier exponent");
  eval->add_option("--z", z_str, "RE[,IM]")->required();

  auto* zeros = app.add_subcommand("zeros", "locate zeros in a rectangle");
  zeros->add_option("--measure", measure_file)->required();
  zeros->add_option("--lambda", lambda);
  zeros->add_option("--rect", rect_str, "A,B,C,D")->required();

  auto* scan = app.add_subcommand("scan", "reality verdicts on a lambda grid");
  scan->add_option("--measure", measure_file)->required();
  scan->add_option("--lmin", lmin)->required();
  scan->add_option("--lmax", lmax)->required();
  scan->add_option("--steps", steps);
  scan->add_option("--rect", rect_str, "A,B,C,D");

  auto* bisect = app.add_subcommand("bisect", "verdict flip point in a window");
  bisect->add_option("--measure", measure_file)->required();
  bisect->add_option("--lo", lo)->required();
  bisect->add_option("--hi", hi)->required();
  bisect->add_option("--tol", tol, "bracket width");
  bisect->add_option("--rect", rect_str, "A,B,C,D");

  auto* lehmer = app.add_subcommand("lehmer", "Lehmer-pair lower bounds from a zero table");
  lehmer->add_option("--zeros-file", zeros_file)->required();
  lehmer->add_option("--k-from", k_from);
  lehmer->add_option("--k-to", k_to);
  lehmer->add_option("--radius", radius);

  auto* flow = app.add_subcommand("flow", "repulsive zero dynamics");
  flow->add_option("--init", init_file, "{\"t\", \"positions\"}")->required();
  flow->add_option("--t-end", t_end)->required();
  flow->add_option("--checkpoints", checkpoints);

  auto* heat = app.add_subcommand("heat-residual", "backward heat equation residual");
  heat->set_help_flag("--help", "print this help message and exit");
  heat->add_option("--measure", measure_file)->required();
  heat->add_option("--lambda", lambda);
  heat->add_option("--z", z_str, "RE[,IM]")->required();
  heat->add_option("--h", h, "finite-difference step");

  auto* leeyang = app.add_subcommand("leeyang", "Lee-Yang check for a spin system");
  leeyang->add_option("--system", system_file)->required();

  auto* casebook = app.add_subcommand("casebook", "worked examples");
  casebook->add_option("--case", case_str, "1..9 or all");

  std::vector<std::string> args(args_in.rbegin(), args_in.rend());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (app.get_subcommands().empty() && !args_in.empty() && args_in.front().rfind("-", 0) != 0 &&
        app.get_subcommand_no_throw(args_in.front()) == nullptr) {
      err << "dbnlab: unknown subcommand \"" << args_in.front() << "\"\n";
      return 2;
    }
    err << "dbnlab: " << e.what() << "\n";
    return 2;
  }

  Session s{cfg, out, err};
  try {
    if (target_tol > 0) s.cfg.target_tol = target_tol;
    if (!window_str.empty()) s.cfg.window = parse_rect(window_str);
    s.cfg.format = format_str == "json" ? Format::JsonLines : format_str == "csv" ? Format::Csv : Format::Auto;
    s.cfg.validate();
    kernels::set_workers(s.cfg.workers);
    kernels::set_default_exec(s.cfg.workers > 1 ? kernels::Exec::Parallel : kernels::Exec::Serial);
    const PrecisionContext ctx = s.ctx();
    PrecisionGuard guard(ctx);

    if (*phi) {
      const Real v = eval_phi(Real(x), ctx);
      json j{{"record", "phi"}, {"u", x}};
      j.update(real_json(v, ctx.working_digits));
      j["error_estimate"] = nominal_error(v, ctx);
      s.emit(j);
      return 0;
    }
    if (*theta) {
      if (!(x > 0)) throw Error(ErrorCode::InvalidArgument, "--x must be positive");
      const Real v = eval_theta(Real(x), ctx);
      const Real r = theta_identity_residual(Real(x), ctx);
      json j{{"record", "theta"}, {"x", x}};
      j.update(real_json(v, ctx.working_digits));
      j["identity_residual"] = std::abs(to_double(r));
      j["error_estimate"] = nominal_error(v, ctx);
      s.emit(j);
      return 0;
    }
    if (*xi) {
      const auto z = parse_complex(z_str);
      const Complex v = eval_xi_reference(from_std(z), ctx);
      s.emit({{"record", "xi"},
              {"z", to_json(z)},
              {"value", complex_json(v)},
              {"error_estimate", nominal_error(abs(v), ctx)}});
      return 0;
    }
    if (*eval) {
      const EvenMeasure m = load_measure(measure_file);
      const auto z = parse_complex(z_str);
      const TransformEval e = eval_H(m, lambda, from_std(z), ctx);
      s.emit({{"record", "eval"},
              {"lambda", lambda},
              {"z", to_json(z)},
              {"value", complex_json(e.value)},
              {"derivative", complex_json(e.derivative)},
              {"closed_form", e.closed_form},
              {"digits", e.digits},
              {"error_estimate", e.abs_error_estimate}});
      return 0;
    }
    if (*zeros) {
      const EvenMeasure m = load_measure(measure_file);
      const Rectangle rect = parse_rect(rect_str);
      const AnalyticFunction f = AnalyticFunction::from_measure(m, lambda, ctx);
      const ZeroSet zs = locate_zeros(f, rect, ctx);
      json list = json::array();
      for (const auto& z : zs.zeros) {
        const FunctionValue fv = f(z.location);
        const double d = std::abs(fv.derivative.to_std());
        json e = d > 0 ? json(z.multiplicity * std::abs(fv.value.to_std()) / d) : json(nullptr);
        list.push_back({{"z", to_json(z.z())},
                        {"multiplicity", z.multiplicity},
                        {"residual", z.residual},
                        {"cluster", z.cluster},
                        {"error_estimate", e}});
      }
      s.emit({{"record", "zeros"},
              {"lambda", lambda},
              {"rect", to_json(rect)},
              {"count", zs.count},
              {"zeros", list},
              {"evaluations", f.evaluations()}});
      return 0;
    }
    if (*scan) {
      const EvenMeasure m = load_measure(measure_file);
      const Rectangle w = s.window_or(rect_str, Rectangle{-10, 10, -2, 2});
      const ScanResult r = scan_lambda(m, lambda_grid(lmin, lmax, steps), w, ctx);
      for (const auto& v : r.verdicts) {
        json j = verdict_record(v, ctx);
        j["record"] = "scan";
        s.emit(j);
      }
      s.emit({{"record", "scan_summary"}, {"monotone", r.monotone}, {"warnings", r.warnings}, {"window", to_json(w)}});
      return 0;
    }
    if (*bisect) {
      const EvenMeasure m = load_measure(measure_file);
      const Rectangle w = s.window_or(rect_str, Rectangle{-10, 10, -2, 2});
      try {
        const BisectResult b = bisect_lambda(m, lo, hi, w, tol, ctx);
        s.emit({{"record", "bisect"},
                {"lambda_star", b.lambda_star},
                {"lo", b.lo},
                {"hi", b.hi},
                {"iterations", b.iterations},
                {"window", to_json(b.window)},
                {"window_relative", true},
                {"error_estimate", (b.hi - b.lo) / 2}});
        return 0;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BracketInvalid) throw;
        s.emit({{"record", "bisect"}, {"error", to_string(e.code())}, {"message", e.what()}, {"error_estimate", nullptr}});
        return 1;
      }
    }
    if (*lehmer) {
      const ZeroTable t = load_zero_table(zeros_file);
      double worst = -INFINITY;
      int defined = 0;
      for (const auto& e : lehmer_batch(t, k_from, k_to, radius)) {
        json j{{"record", "lehmer"}, {"k", e.k}};
        if (e.record) {
          const auto& r = *e.record;
          j.update({{"gap", r.gap},
                    {"g_k", r.g_k},
                    {"bracket", r.bracket},
                    {"lambda_k", r.lambda_k},
                    {"truncation_radius", r.truncation_radius},
                    {"tail_bound", r.tail_bound},
                    {"coverage_complete", r.coverage_complete},
                    {"error_estimate", r.tail_bound}});
          worst = std::max(worst, r.lambda_k);
          ++defined;
        } else {
          j["skipped"] = e.skipped_reason;
          j["error_estimate"] = nullptr;
        }
        s.emit(j);
      }
      s.emit({{"record", "lehmer_summary"},
              {"source", t.source_label},
              {"defined", defined},
              {"max_lambda_k", defined ? json(worst) : json(nullptr)}});
      return 0;
    }
    if (*flow) {
      const FlowState init = parse_flow_init(load_json_file(init_file), "$");
      FlowOptions opt;
      if (checkpoints < 1) throw Error(ErrorCode::InvalidArgument, "--checkpoints must be >= 1");
      opt.checkpoints = checkpoints;
      const FlowRun run = integrate_flow(init, t_end, opt);
      if (s.cfg.format == Format::JsonLines) {
        for (const auto& st : run.states) {
          s.emit({{"record", "flow"},
                  {"t", st.t},
                  {"positions", st.positions},
                  {"hamiltonian", st.hamiltonian},
                  {"energy", st.energy},
                  {"error_estimate", opt.atol + opt.rtol * std::abs(st.hamiltonian)}});
        }
        s.emit({{"record", "flow_summary"}, {"accepted", run.accepted}, {"rejected", run.rejected}});
      } else {
        out << "t";
        for (std::size_t i = 1; i <= init.positions.size(); ++i) out << ",x" << i;
        out << ",hamiltonian,energy\n";
        out.precision(17);
        for (const auto& st : run.states) {
          out << st.t;
          for (double p : st.positions) out << "," << p;
          out << "," << st.hamiltonian << "," << st.energy << "\n";
        }
      }
      return 0;
    }
    if (*heat) {
      const EvenMeasure m = load_measure(measure_file);
      const auto z = parse_complex(z_str);
      const HeatResidual r = backward_heat_residual(m, lambda, from_std(z), h, ctx);
      s.emit({{"record", "heat_residual"},
              {"lambda", lambda},
              {"z", to_json(z)},
              {"h", h},
              {"residual", r.residual},
              {"scale", r.scale},
              {"d_lambda", r.d_lambda},
              {"d_zz", r.d_zz},
              {"rounding_bound", r.rounding_bound},
              {"error_estimate", r.rounding_bound}});
      return 0;
    }
    if (*leeyang) {
      const json spec = load_json_file(system_file);
      const SpinSystem sys = parse_system(spec, "$");
      LeeYangOptions opt;
      if (auto w = parse_window(spec, "$")) opt.window = *w;
      else if (s.cfg.window) opt.window = *s.cfg.window;
      const LeeYangVerdict v = verify_leeyang(sys, ctx, opt);
      json j{{"record", "leeyang"}, {"n", sys.n}, {"route", to_string(v.route)}, {"lee_yang", v.lee_yang}};
      if (v.route == LeeYangRoute::Polynomial) {
        j["max_deviation"] = v.max_deviation;
        j["roots"] = json::array();
        for (const auto& y : v.roots) j["roots"].push_back(to_json(y));
        j["error_estimate"] = opt.tolerance;
      } else {
        j["verdict"] = to_json(v.window_verdict);
        j["error_estimate"] = real_axis_tolerance({opt.window.re_max, 0.0}, ctx);
      }
      s.emit(j);
      return 0;
    }
    if (*casebook) {
      std::vector<CaseReport> reports;
      if (case_str == "all") {
        reports = run_all_cases(ctx);
      } else {
        const auto v = split_numbers(case_str, "case id");
        const int id = static_cast<int>(v.at(0));
        if (v.size() != 1 || id != v[0] || id < 1 || id > 9) {
          throw Error(ErrorCode::InvalidArgument, "--case must be 1..9 or all");
        }
        reports.push_back(run_case(id, ctx));
      }
      bool ok = true;
      for (const auto& r : reports) {
        s.emit(case_json(r));
        ok = ok && r.passed();
      }
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "dbnlab: " << to_string(e.code()) << ": " << e.what() << "\n";
    return usage_code(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "dbnlab: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace dbn::cli
