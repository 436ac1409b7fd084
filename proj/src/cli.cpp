#include "dualcalc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <optional>

#include "dualcalc/differentiation.hpp"
#include "dualcalc/dual.hpp"
#include "dualcalc/errors.hpp"
#include "dualcalc/function.hpp"
#include "dualcalc/integration.hpp"
#include "dualcalc/order.hpp"

namespace dualcalc {

namespace {

using Json = nlohmann::ordered_json;

struct Flags {
  std::string expression;
  std::string second;  // compare: right-hand literal
  std::string at;
  std::string from;
  std::string to;
  std::string derivative;
  int type = 0;  // 0 = not given
  double tol = 0.0;
  double h = kDefaultStep;
  double eps = 1e-3;
  double delta = 1e-4;
  std::size_t depth = kDefaultMaxDepth;
  std::size_t grid = kDefaultGrid;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  int part = 2;
  std::size_t probe = 0;
  bool json = false;
};

Json dual_json(DualReal x) { return Json{{"text", to_string(x)}, {"re", x.re()}, {"ze", x.ze()}}; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax:
    case ErrorCode::invalid_argument:
    case ErrorCode::invalid_interval:
    case ErrorCode::invalid_epsilon:
      return kExitUsage;
    default:
      return kExitNumeric;
  }
}

// Output of one subcommand: json object pieces plus the text rendering.
struct Outcome {
  Json inputs = Json::object();
  Json result = Json::object();
  Json provenance = Json::object();
  std::string text;
  int exit = kExitOk;
};

OrderKind theta_or(const Flags& f, OrderKind fallback) {
  return f.type == 0 ? fallback : order_kind_from_int(f.type);
}

Outcome run_eval(const Flags& f) {
  Outcome o;
  o.inputs = {{"expression", f.expression}, {"at", f.at}};
  const DualReal value = DualFunction::parse(f.expression)(parse_dual(f.at));
  o.result = {{"value", dual_json(value)}};
  o.text = to_string(value);
  return o;
}

Outcome run_diff(const Flags& f) {
  Outcome o;
  const DualFunction fn = DualFunction::parse(f.expression);
  const DualReal c = parse_dual(f.at);
  const double tol = f.tol > 0.0 ? f.tol : default_cr_tolerance(fn, c);
  o.inputs = {{"expression", f.expression}, {"at", f.at}, {"tol", tol}, {"h", f.h}};
  DerivativeReport r;
  if (f.type != 0) {
    LimitSampling sampling;
    sampling.eps = f.eps;
    sampling.delta = f.delta;
    sampling.samples = f.samples;
    sampling.seed = f.seed;
    r = type_theta_derivative_at(fn, c, order_kind_from_int(f.type), tol, f.h, sampling);
    o.inputs["type"] = f.type;
  } else {
    r = derivative_at(fn, c, tol, f.h);
  }
  o.result["differentiable"] = r.differentiable;
  o.result["derivative"] = r.derivative ? dual_json(*r.derivative) : Json(nullptr);
  o.result["method"] = r.method == DerivativeMethod::ExactLifted ? "exact_lifted" : "finite_difference";
  o.result["residuals"] = {{"u_x2", r.cr_residuals.u_x2}, {"u_x1_minus_v_x2", r.cr_residuals.u_x1_minus_v_x2}};
  o.text = r.derivative ? to_string(*r.derivative) : "not differentiable";
  o.exit = r.differentiable ? kExitOk : kExitVerificationFailed;
  return o;
}

Outcome run_check_cr(const Flags& f) {
  Outcome o;
  const DualFunction fn = DualFunction::parse(f.expression);
  const DualReal c = parse_dual(f.at);
  const double tol = f.tol > 0.0 ? f.tol : default_cr_tolerance(fn, c);
  o.inputs = {{"expression", f.expression}, {"at", f.at}, {"tol", tol}, {"h", f.h}};
  // Treat the expression as a plain component pair so the check is numerical.
  const DerivativeReport r = derivative_at(DualFunction(components_of(fn)), c, tol, f.h);
  const Partials& p = *r.partials;
  o.result["pass"] = r.differentiable;
  o.result["partials"] = {{"u_x1", p.u_x1}, {"u_x2", p.u_x2}, {"v_x1", p.v_x1}, {"v_x2", p.v_x2}};
  o.result["residuals"] = {{"u_x2", r.cr_residuals.u_x2}, {"u_x1_minus_v_x2", r.cr_residuals.u_x1_minus_v_x2}};
  o.result["derivative"] = r.derivative ? dual_json(*r.derivative) : Json(nullptr);
  o.text = std::string(r.differentiable ? "pass" : "fail") + ": |u_x2| = " + format_real(r.cr_residuals.u_x2) +
           ", |u_x1 - v_x2| = " + format_real(r.cr_residuals.u_x1_minus_v_x2);
  o.exit = r.differentiable ? kExitOk : kExitVerificationFailed;
  return o;
}

Outcome run_limit_check(const Flags& f) {
  Outcome o;
  const DualFunction fn = DualFunction::parse(f.expression);
  const DualReal c = parse_dual(f.at);
  const DualReal L = f.derivative.empty() ? *derivative_at(fn, c, 1.0, f.h).derivative
                                          : parse_dual(f.derivative);
  std::optional<OrderKind> theta;
  if (f.type != 0) theta = order_kind_from_int(f.type);
  o.inputs = {{"expression", f.expression}, {"at", f.at}, {"derivative", dual_json(L)},
              {"eps", f.eps}, {"delta", f.delta}, {"samples", f.samples}};
  o.inputs["type"] = theta ? Json(f.type) : Json(nullptr);
  const LimitCheck r = verify_limit_definition(fn, c, L, f.eps, f.delta, f.samples, theta, f.seed);
  o.result = {{"pass", r.pass}, {"worst_ratio", r.worst_ratio}};
  o.provenance = {{"samples", r.samples}, {"seed", f.seed}};
  o.text = std::string(r.pass ? "pass" : "fail") + ": worst ratio " + format_real(r.worst_ratio) +
           " over " + std::to_string(r.samples) + " samples";
  o.exit = r.pass ? kExitOk : kExitVerificationFailed;
  return o;
}

Outcome run_compare(const Flags& f) {
  Outcome o;
  o.inputs = {{"x", f.expression}, {"y", f.second}};
  const Relation r = classify_pair(parse_dual(f.expression), parse_dual(f.second));
  o.text = describe(r);
  o.result = {{"relation", o.text},
              {"greater_1", r.has(Relation::Greater1)},
              {"less_1", r.has(Relation::Less1)},
              {"greater_2", r.has(Relation::Greater2)},
              {"less_2", r.has(Relation::Less2)},
              {"equal", r.has(Relation::Equal)}};
  return o;
}

Json estimate_json(const IntegralEstimate& est) {
  return Json{{"value", dual_json(est.midpoint())},
              {"gap", est.gap_norm},
              {"converged", est.converged()},
              {"lower", dual_json(est.lower_integral)},
              {"upper", dual_json(est.upper_integral)},
              {"chain_verified", est.chain_verified}};
}

Json estimate_provenance(const IntegralEstimate& est, const Flags& f) {
  return Json{{"depth", est.depth},
              {"cells_sampled", est.cells_sampled},
              {"evaluations", est.evaluations},
              {"grid", f.grid},
              {"seed", f.seed}};
}

Outcome run_integrate(const Flags& f) {
  Outcome o;
  const OrderKind theta = theta_or(f, OrderKind::Type1);
  const double tol = f.tol > 0.0 ? f.tol : 1e-3;
  o.inputs = {{"expression", f.expression}, {"from", f.from}, {"to", f.to}, {"type", to_int(theta)},
              {"tol", tol}, {"max_depth", f.depth}};
  const DualFunction fn = DualFunction::parse(f.expression);
  const TypedInterval iv = make_interval(parse_dual(f.from), parse_dual(f.to), theta);
  IntegrationOptions options;
  options.tol = tol;
  options.max_depth = f.depth;
  options.grid = f.grid;
  const IntegralEstimate est = integrate(fn, iv, theta, options);
  o.result = estimate_json(est);
  o.provenance = estimate_provenance(est, f);

  o.text = to_string(est.midpoint()) + " \xC2\xB1 " + format_real(est.gap_norm) + "\n" +
           "lower " + to_string(est.lower_integral) + ", upper " + to_string(est.upper_integral) +
           ", depth " + std::to_string(est.depth) + ", converged " + yes_no(est.converged());
  if (f.probe > 0) {
    ChainProbeOptions probe;
    probe.chains = f.probe;
    probe.grid = f.grid;
    probe.seed = f.seed;
    probe.tol = tol;
    const ChainProbeReport pr = probe_random_chains(fn, iv, est, probe);
    o.result["probe"] = {{"chains", pr.chains},
                         {"lower_beaten", pr.lower_beaten},
                         {"upper_beaten", pr.upper_beaten},
                         {"max_lower_excess", pr.max_lower_excess},
                         {"max_upper_excess", pr.max_upper_excess}};
    o.text += "\nprobe: " + std::to_string(pr.chains) + " chains, " + std::to_string(pr.lower_beaten) +
              " beat the lower sum, " + std::to_string(pr.upper_beaten) + " beat the upper sum";
  }
  o.exit = est.converged() ? kExitOk : kExitVerificationFailed;
  return o;
}

Outcome run_ftc_check(const Flags& f) {
  Outcome o;
  const OrderKind theta = theta_or(f, OrderKind::Type1);
  const double tol = f.tol > 0.0 ? f.tol : 1e-3;
  const TypedInterval iv = make_interval(parse_dual(f.from), parse_dual(f.to), theta);
  o.inputs = {{"expression", f.expression}, {"from", f.from}, {"to", f.to}, {"type", to_int(theta)},
              {"part", f.part}, {"tol", tol}};
  if (f.part == 2) {
    IntegrationOptions options;
    options.max_depth = f.depth;
    options.grid = f.grid;
    const FtcPart2Report r = verify_ftc_part2(parse_expr(f.expression), iv, theta, tol, options);
    o.inputs["max_depth"] = f.depth;
    o.result = {{"pass", r.pass}, {"residual", r.residual}, {"expected", dual_json(r.expected)},
                {"integral", estimate_json(r.estimate)}};
    o.provenance = estimate_provenance(r.estimate, f);
    o.text = std::string(r.pass ? "pass" : "fail") + ": integral of derivative " +
             to_string(r.estimate.midpoint()) + ", f(b) - f(a) = " + to_string(r.expected) +
             ", residual " + format_real(r.residual);
    o.exit = r.pass ? kExitOk : kExitVerificationFailed;
    return o;
  }
  if (f.at.empty()) throw InvalidArgument("ftc-check --part 1 needs --at");
  FtcPart1Options options;
  options.samples = f.samples;
  options.seed = f.seed;
  options.depth = std::min<std::size_t>(f.depth, 10);
  options.grid = f.grid;
  const double h = f.h;
  o.inputs["at"] = f.at;
  o.inputs["h"] = h;
  const FtcPart1Report r = verify_ftc_part1(DualFunction::parse(f.expression), iv, theta,
                                            parse_dual(f.at), h, tol, options);
  o.result = {{"pass", r.pass},
              {"worst_error", r.worst_error},
              {"f_at_c", dual_json(r.f_at_c)},
              {"quotients", r.quotients},
              {"skipped_zero_divisor", r.skipped_zero_divisor},
              {"skipped_outside", r.skipped_outside}};
  o.provenance = {{"depth", options.depth}, {"grid", f.grid}, {"samples", f.samples}, {"seed", f.seed}};
  o.text = std::string(r.pass ? "pass" : "fail") + ": worst quotient error " + format_real(r.worst_error) +
           " over " + std::to_string(r.quotients) + " quotients";
  o.exit = r.pass ? kExitOk : kExitVerificationFailed;
  return o;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Calculus over the dual real numbers", "dualcalc"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Flags f;

  auto add_json = [&](CLI::App* s) { s->add_flag("--json", f.json, "Machine-readable output"); };
  auto add_expr = [&](CLI::App* s) { s->add_option("expression", f.expression, "Expression in x")->required(); };
  auto add_at = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--at", f.at, "Dual literal, e.g. 1+2eps");
    if (required) opt->required();
  };
  auto add_interval = [&](CLI::App* s) {
    s->add_option("--from", f.from, "Lower endpoint")->required();
    s->add_option("--to", f.to, "Upper endpoint")->required();
  };
  auto add_type = [&](CLI::App* s) { s->add_option("--type", f.type, "Order type")->check(CLI::IsMember({1, 2})); };

  auto* eval = app.add_subcommand("eval", "Evaluate an expression at a dual point");
  add_expr(eval);
  add_at(eval, true);
  add_json(eval);

  auto* diff = app.add_subcommand("diff", "Derivative at a point");
  add_expr(diff);
  add_at(diff, true);
  add_type(diff);
  diff->add_option("--tol", f.tol, "Cauchy-Riemann tolerance");
  diff->add_option("--h", f.h, "Finite-difference step");
  diff->add_option("--eps", f.eps, "Limit sampler eps");
  diff->add_option("--delta", f.delta, "Limit sampler radius");
  diff->add_option("--samples", f.samples, "Limit sampler draws");
  diff->add_option("--seed", f.seed, "Sampler seed");
  add_json(diff);

  auto* cr = app.add_subcommand("check-cr", "Finite-difference Cauchy-Riemann check");
  add_expr(cr);
  add_at(cr, true);
  cr->add_option("--tol", f.tol, "Residual tolerance");
  cr->add_option("--h", f.h, "Finite-difference step");
  add_json(cr);

  auto* limit = app.add_subcommand("limit-check", "Sample the limit definition of the derivative");
  add_expr(limit);
  add_at(limit, true);
  add_type(limit);
  limit->add_option("--derivative", f.derivative, "Candidate derivative (default: exact)");
  limit->add_option("--eps", f.eps, "Allowed remainder ratio");
  limit->add_option("--delta", f.delta, "Neighborhood radius");
  limit->add_option("--samples", f.samples, "Number of draws");
  limit->add_option("--seed", f.seed, "Sampler seed");
  limit->add_option("--h", f.h, "Finite-difference step");
  add_json(limit);

  auto* compare = app.add_subcommand("compare", "Order relations between two dual literals");
  compare->add_option("x", f.expression, "Left literal")->required();
  compare->add_option("y", f.second, "Right literal")->required();
  add_json(compare);

  auto* integ = app.add_subcommand("integrate", "Type-theta Darboux integral");
  add_expr(integ);
  add_interval(integ);
  add_type(integ);
  integ->add_option("--tol", f.tol, "Gap tolerance (default 1e-3)");
  integ->add_option("--depth", f.depth, "Maximum refinement depth");
  integ->add_option("--grid", f.grid, "Lattice points per cell axis");
  integ->add_option("--probe", f.probe, "Random chains to probe");
  integ->add_option("--seed", f.seed, "Probe seed");
  add_json(integ);

  auto* ftc = app.add_subcommand("ftc-check", "Check the fundamental theorem numerically");
  add_expr(ftc);
  add_interval(ftc);
  add_type(ftc);
  add_at(ftc, false);
  ftc->add_option("--part", f.part, "1 or 2")->check(CLI::IsMember({1, 2}));
  ftc->add_option("--tol", f.tol, "Tolerance (default 1e-3)");
  ftc->add_option("--h", f.h, "Neighborhood radius for part 1");
  ftc->add_option("--depth", f.depth, "Refinement depth");
  ftc->add_option("--grid", f.grid, "Lattice points per cell axis");
  ftc->add_option("--samples", f.samples, "Quotients sampled for part 1");
  ftc->add_option("--seed", f.seed, "Sampler seed");
  add_json(ftc);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  Json doc;
  doc["command"] = command;
  try {
    Outcome o;
    if (command == "eval") o = run_eval(f);
    else if (command == "diff") o = run_diff(f);
    else if (command == "check-cr") o = run_check_cr(f);
    else if (command == "limit-check") o = run_limit_check(f);
    else if (command == "compare") o = run_compare(f);
    else if (command == "integrate") o = run_integrate(f);
    else o = run_ftc_check(f);

    if (f.json) {
      doc["inputs"] = o.inputs;
      doc["result"] = o.result;
      doc["provenance"] = o.provenance;
      out << doc.dump(2) << '\n';
    } else {
      out << o.text << '\n';
    }
    return o.exit;
  } catch (const Error& e) {
    if (f.json) {
      doc["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
      out << doc.dump(2) << '\n';
    }
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace dualcalc
