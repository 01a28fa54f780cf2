#include "phi4/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "phi4/banach.hpp"
#include "phi4/combinatorics.hpp"
#include "phi4/dynamics.hpp"
#include "phi4/errors.hpp"

namespace phi4 {

namespace {

bool abs_at_least(const ExtScalar& x, const ExtScalar& lo) {
  return x.logmag() >= lo.logmag() + std::log1p(-kEnvelopeRelTol);
}

bool abs_at_most(const ExtScalar& x, const ExtScalar& hi) {
  return x.logmag() <= hi.logmag() + std::log1p(kEnvelopeRelTol);
}

bool within_band(double x, double lo, double hi) {
  return x >= lo * (1.0 - kEnvelopeRelTol) && x <= hi * (1.0 + kEnvelopeRelTol);
}

double rel_error(const ExtScalar& predicted, const ExtScalar& actual) {
  if (actual.is_zero()) return predicted.is_zero() ? 0.0 : 1.0;
  return ((predicted - actual).abs() / actual.abs()).to_double();
}

}  // namespace

MembershipReport check_membership(const GreenSequence& h,
                                  const EnvelopeSet& env, int n_max,
                                  double k0) {
  if (!(h.coupling() == env.lambda))
    throw ConsistencyError("sequence and envelopes have different lambda");
  int top = std::min(h.truncation(), env.truncation);
  if (n_max >= 0) top = std::min(top, n_max);
  const double lambda = h.lambda();
  const auto table = PartitionTable::shared(h.truncation() + 2);

  MembershipReport rep;
  for (int n = 1; n <= top; n += 2) {
    MembershipRecord r;
    r.n = n;
    const ExtScalar& x = h[n];
    r.sign_ok = x.sign() == good_sign(n);
    r.envelope_ok = abs_at_least(x, env.h_min[n]) && abs_at_most(x, env.h_max[n]);
    r.bound_ok = x.logmag() <= log_factorial(n) + n * std::log(k0);
    if (n == 1) {
      r.delta = (x - ExtScalar::one()).to_double() / lambda;
      r.delta_in_band = r.envelope_ok;
    } else {
      try {
        r.delta = n == 3 ? -ratio(x, h[1].pow(3))
                         : splitting_scale(n, lambda) *
                               ratio(x, tree_c(h, n, *table));
        r.delta_in_band =
            within_band(r.delta, env.delta_min[n], env.delta_max[n]);
      } catch (const DegenerateInputError&) {
        r.delta = std::numeric_limits<double>::quiet_NaN();
        r.delta_in_band = false;
      }
      r.bound_ok = r.bound_ok && r.delta <= k0;
    }
    if (!r.ok() && rep.verdict) {
      rep.verdict = false;
      rep.first_n = n;
      rep.first_predicate = !r.sign_ok       ? "sign_ok"
                            : !r.envelope_ok ? "envelope_ok"
                            : !r.delta_in_band ? "delta_in_band"
                                               : "bound_ok";
    }
    rep.records.push_back(r);
  }
  return rep;
}

LimitsReport check_small_lambda_limits(int N, Coupling lambda_small,
                                       const SolveOptions& base) {
  const double lambda = lambda_small.value();
  if (lambda > 1e-3) throw DomainError("small-coupling limits need lambda <= 1e-3");
  SolveOptions o = base;
  o.truncation = N;
  const SolveResult r = solve(lambda_small, o);
  const auto d = extract_delta(r.fixed_point);
  const auto c = limit_constants(9);

  LimitsReport rep;
  rep.lambda = lambda;
  rep.truncation = N;
  rep.converged = r.report.converged;
  auto add = [&](std::string q, int n, double obs, double exp, double tol) {
    const double e = std::fabs(obs - exp) / std::fabs(exp);
    rep.rows.push_back({std::move(q), n, obs, exp, e, tol, e < tol});
  };
  for (int n = 3; n <= 9; n += 2) {
    const ExtScalar& x = r.fixed_point[n];
    const double lg = x.logmag() - slot(n) * std::log(lambda) -
                      log_factorial(n) - std::log(c[slot(n)]);
    add("H/((-lambda)^((n-1)/2) n! c_n)", n, x.sign() * good_sign(n) * std::exp(lg),
        1.0, 1e-2);
  }
  add("delta_3/lambda", 3, d[3] / lambda, 6.0, 1e-2);
  for (int n = 5; n <= 9; n += 2)
    add("delta_n/lambda", n, d[n] / lambda, 3.0 * n * (n - 1), 2e-2);
  add("H^2", 1, r.fixed_point[1].to_double(), 1.0 + 6.0 * lambda * lambda,
      1e-3);
  rep.ok = rep.converged &&
           std::all_of(rep.rows.begin(), rep.rows.end(),
                       [](const LimitRow& x) { return x.ok; });
  return rep;
}

MonotonicityReport check_appendix_monotonicity(const EnvelopeSet& env) {
  const double lambda = env.lambda.value();
  const int N = env.truncation;
  const auto table = PartitionTable::shared(N + 4);
  MonotonicityReport rep;
  rep.lambda = lambda;
  rep.applicable = lambda <= rep.threshold;
  rep.d0 = env.d0;

  auto ratios = [&](int n) {
    const double nn = static_cast<double>(n) * (n - 1);
    MonotonicityRow row;
    row.n = n;
    row.a_ratio = ratio(tree_a(env.h_max, n).abs(), env.h_max[n].abs()) / nn;
    row.b_ratio = ratio(tree_b(env.h_min, n, *table).abs(), env.h_min[n].abs()) / nn;
    row.d_ratio = (row.b_ratio - row.a_ratio) / (3.0 * lambda);
    return row;
  };
  if (N >= 5) rep.d5_ratio = ratios(5).d_ratio;

  for (int n = 7; n <= N - 4; n += 2) {
    const MonotonicityRow row = ratios(n);
    if (!rep.rows.empty()) {
      const MonotonicityRow& prev = rep.rows.back();
      if (!(row.a_ratio < prev.a_ratio) && rep.a_decreasing) {
        rep.a_decreasing = false;
        rep.a_violation = n;
      }
      if (!(row.b_ratio > prev.b_ratio) && rep.b_increasing) {
        rep.b_increasing = false;
        rep.b_violation = n;
      }
      if (!(row.d_ratio > prev.d_ratio) && rep.d_increasing) {
        rep.d_increasing = false;
        rep.d_violation = n;
      }
    }
    if (!(row.d_ratio > env.d0 && row.d_ratio <= 0.5) && rep.d_bracket) {
      rep.d_bracket = false;
      rep.bracket_violation = n;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

TreeBoundsReport check_tree_term_bounds(const EnvelopeSet& env) {
  const double lambda = env.lambda.value();
  TreeBoundsReport rep;
  rep.lambda = lambda;
  const auto table = PartitionTable::shared(env.truncation + 4);
  auto term = [&](const GreenSequence& h, int n, const TriplePartition& t) {
    return multinomial_weight(n, t) * h[t.i1] * h[t.i2] * h[t.i3] *
           (6.0 * lambda);
  };
  for (int n = 5; n <= env.truncation; n += 2) {
    const auto triples = enumerate_triples(n);
    const double count = static_cast<double>(triples.size());
    const TriplePartition& balanced = triples.back();
    const TriplePartition& spread = triples.front();
    TreeBoundRow row;
    row.n = n;
    row.count = static_cast<int>(triples.size());
    row.min_side = ratio(tree_c(env.h_min, n, *table).abs(),
                         term(env.h_min, n, balanced).abs()) / count;
    row.max_side = ratio(tree_c(env.h_max, n, *table).abs(),
                         term(env.h_max, n, spread).abs()) / count;
    row.ok = row.min_side >= 1.0 - kEnvelopeRelTol &&
             row.max_side <= 1.0 + kEnvelopeRelTol;
    rep.ok = rep.ok && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

SplittingIdentityReport check_splitting_identities(const GreenSequence& h,
                                                   double tol) {
  const auto d = extract_delta(h);
  const auto y = sweeping_factors(h);
  SplittingIdentityReport rep;
  const ExtScalar h2 = h[1];
  ExtScalar prod = ExtScalar::one();
  for (int n = 3; n <= h.truncation(); n += 2) {
    const ExtScalar local = h[n - 2] * h2.pow(2) *
                            (-static_cast<double>(n) * (n - 1) * d[n] * y[n]);
    rep.local_max_error = std::max(rep.local_max_error, rel_error(local, h[n]));
    prod *= ExtScalar::from_double(y[n] * d[n]);
    const ExtScalar full = ExtScalar::from_log(good_sign(n), log_factorial(n)) *
                           h2.pow(n) * prod;
    rep.product_max_error = std::max(rep.product_max_error, rel_error(full, h[n]));
  }
  rep.ok = rep.local_max_error < tol && rep.product_max_error < tol;
  return rep;
}

double f_l(double n, double lambda, double d0) {
  const double q = (n + 1.0) * (n + 2.0);
  return q / (1.0 + 3.0 * lambda * q * d0) * (1.0 + 15.0 / n + 48.0 / (n * (n - 1.0)));
}

double f_b(double n, double lambda) {
  const double num = (n - 2.0) * (n + 5.0) * (n + 3.0) *
                     (1.0 + 3.0 * lambda * n * (n - 1.0)) *
                     ((n - 1.0) * (n - 1.0) + 64.0 * (n - 1.0) + 192.0);
  const double den = (n + 1.0) * (4.0 + 3.0 * lambda * (n + 5.0) * (n + 3.0)) *
                     n * (n - 1.0) *
                     ((n - 3.0) * (n - 3.0) + 16.0 * (n - 3.0) + 48.0);
  return num / den;
}

FigureTables appendix_inequality_functions(Coupling lambda, int n_lo,
                                           int n_hi) {
  require_odd_index(n_lo, 7);
  require_odd_index(n_hi, n_lo + 2);
  const double l = lambda.value();
  FigureTables t;
  t.lambda = l;
  for (int n = n_lo; n <= n_hi; n += 2)
    t.rows.push_back({n, f_l(n, l, l), f_b(n, l)});
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const FigureRow& r = t.rows[i];
    if (!(r.f_b > 1.0)) t.f_b_above_one = false;
    // Monotonicity on the half-open range: both ends of a step above n_lo.
    if (i < 2) continue;
    const FigureRow& p = t.rows[i - 1];
    if (!(r.f_l < p.f_l) && t.f_l_decreasing) {
      t.f_l_decreasing = false;
      t.f_l_first_increase = r.n;
    }
    if (!(r.f_b < p.f_b) && t.f_b_decreasing) {
      t.f_b_decreasing = false;
      t.f_b_first_increase = r.n;
    }
  }
  t.f_l_terminal = t.rows.back().f_l;
  t.f_l_limit = 1.0 / (3.0 * l * l);
  t.f_l_terminal_rel = t.f_l_terminal / t.f_l_limit - 1.0;
  t.f_b_terminal = t.rows.back().f_b;
  t.f_b_terminal_rel = t.f_b_terminal - 1.0;
  return t;
}

std::vector<double> default_constants_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 50; ++i) g.push_back(i * 0.001);
  return g;
}

namespace {

struct Basic {
  double m1, h0_sq, k1, k1_0, k3, k3_0, k5, k5_0;
};

Basic basic_constants(double l) {
  Basic b;
  b.m1 = std::pow(1.0 + 6.0 * l * l, 2);
  b.h0_sq = 1.0 + 6.0 * l * l / (1.0 + 9.0 * l);
  b.k1 = 12.0 * l * l * b.m1 * b.m1;
  b.k1_0 = 6.0 * l * l * b.m1 * b.m1;
  b.k3 = 9.0 * l * b.m1 * (1.0 + 4.0 * l);
  b.k3_0 = 9.0 * l * b.h0_sq * b.h0_sq * (1.0 + 2.0 * l) / (b.m1 * b.m1);
  b.k5 = (1.0 + b.k3 + 2.0 * b.k1) / 20.0;
  b.k5_0 = (1.0 + b.k3_0 + 2.0 * b.k1_0) / 20.0;
  return b;
}

double stated_limit(double k1) { return 1.0 / 11.0 + k1 / 6.0; }
double recursion_limit(double k1) { return 12.0 * (1.0 / 12.0 + k1 / 6.0) / 11.0; }

}  // namespace

ContractionConstants contraction_constants(Coupling lambda, int n_max,
                                           std::span<const double> grid) {
  require_odd_index(n_max, 7);
  const double l = lambda.value();
  const Basic b = basic_constants(l);
  ContractionConstants c;
  c.lambda = l;
  c.m1 = b.m1;
  c.h0_sq = b.h0_sq;
  c.k1 = b.k1;
  c.k1_0 = b.k1_0;
  c.k3 = b.k3;
  c.k3_0 = b.k3_0;
  c.k5 = b.k5;
  c.k5_0 = b.k5_0;
  c.n_max = n_max;

  const double a1 = 1.0 / 12.0 + b.k1 / 6.0;
  const double a1_0 = 1.0 / 12.0 + b.k1_0 / 6.0;
  double k = b.k5;
  double k0 = b.k5_0;
  for (int n = 7; n <= n_max; n += 2) {
    k = a1 + k / 12.0;
    k0 = a1_0 + k0 / 12.0;
    c.kn.push_back(k);
    c.kn_0.push_back(k0);
    const int m = (n - 5) / 2;
    double geo = 0.0;
    for (int j = 0; j < m; ++j) geo += std::pow(12.0, -j);
    const double closed = a1 * geo + std::pow(12.0, -m) * b.k5;
    const double closed0 = a1_0 * geo + std::pow(12.0, -m) * b.k5_0;
    c.closed_form_error = std::max({c.closed_form_error, std::fabs(closed - k),
                                    std::fabs(closed0 - k0)});
  }
  c.k_limit_stated = stated_limit(b.k1);
  c.k0_limit_stated = stated_limit(b.k1_0);
  c.k_limit_recursion = recursion_limit(b.k1);
  c.k0_limit_recursion = recursion_limit(b.k1_0);

  const std::vector<double> fallback = default_constants_grid();
  if (grid.empty()) grid = fallback;
  for (double g : grid) {
    const Basic bg = basic_constants(g);
    c.grid_max = std::max(c.grid_max, g);
    c.k_sup = std::max(c.k_sup, stated_limit(bg.k1));
    c.k0_sup = std::max(c.k0_sup, stated_limit(bg.k1_0));
    c.k_sup_recursion = std::max(c.k_sup_recursion, recursion_limit(bg.k1));
    c.k0_sup_recursion = std::max(c.k0_sup_recursion, recursion_limit(bg.k1_0));
  }
  c.applicable = l <= c.threshold;
  c.sum_below_one = c.k_sup + c.k0_sup < 1.0 &&
                    c.k_limit_stated + c.k0_limit_stated < 1.0 &&
                    c.k_limit_recursion + c.k0_limit_recursion < 1.0;
  return c;
}

namespace {

CheckResult make_check(std::string name, double threshold, double lambda,
                       bool pass, std::string detail) {
  CheckResult r{std::move(name), pass ? "pass" : "fail", threshold,
                std::move(detail)};
  if (threshold > 0.0 && lambda > threshold) {
    r.status = "skipped";
    r.detail = fmt::format("lambda {} above precondition {}", lambda, threshold);
  }
  return r;
}

bool applies(double threshold, double lambda) {
  return threshold <= 0.0 || lambda <= threshold;
}

CheckResult error_check(std::string name, double threshold, const std::exception& e) {
  return {std::move(name), "fail", threshold, e.what()};
}

}  // namespace

std::vector<CheckResult> run_verification(Coupling lambda,
                                          const SuiteOptions& opts) {
  const double l = lambda.value();
  const int N = opts.solve.truncation;
  const int top = N - opts.solve.buffer;
  constexpr double kStab = kCertifiedLambdaMax;
  constexpr double kContr = kContractionLambdaMax;
  std::vector<CheckResult> out;

  // Envelope ordering holds for any coupling.
  {
    bool ok = true;
    for (int n = 3; n <= N; n += 2)
      ok = ok && delta_min_at(n, l) < delta_max_at(n, l, opts.solve.d0);
    out.push_back(make_check("envelope_ordering", 0.0, l, ok,
                             fmt::format("delta_min < delta_max for odd n <= {}", N)));
  }

  std::optional<EnvelopeSet> env;
  try {
    env = build_envelopes(lambda, N, opts.solve.d0);
    const auto m = check_membership(env->h0, *env);
    out.push_back(make_check(
        "fundamental_membership", kStab, l, m.verdict,
        m.verdict ? "all levels pass"
                  : fmt::format("first violation n={} ({})", m.first_n,
                                m.first_predicate)));
  } catch (const std::exception& e) {
    out.push_back(applies(kStab, l) ? error_check("fundamental_membership", kStab, e)
                                    : make_check("fundamental_membership", kStab, l, false, ""));
  }

  if (applies(kStab, l) && env) {
    try {
      const SolveResult r = solve(lambda, opts.solve);
      const auto m = check_membership(r.fixed_point, *env, top);
      out.push_back(make_check(
          "fixed_point", kStab, l, r.report.converged && m.verdict,
          fmt::format("converged={} iterations={} membership(n<={})={}",
                      r.report.converged, r.report.iterations, top, m.verdict)));
      out.push_back(make_check(
          "map_equivalence", kStab, l,
          r.report.residual_max < 1e-9 && r.report.star_defect < 1e-9,
          fmt::format("M residual {:.3e}, M* defect {:.3e} (bound 1e-9)",
                      r.report.residual_max, r.report.star_defect)));
      const auto s0 = check_splitting_identities(env->h0);
      const auto s1 = check_splitting_identities(r.fixed_point);
      out.push_back(make_check(
          "splitting_identities", kStab, l, s0.ok && s1.ok,
          fmt::format("max relative error {:.3e}",
                      std::max({s0.local_max_error, s0.product_max_error,
                                s1.local_max_error, s1.product_max_error}))));
    } catch (const std::exception& e) {
      for (const char* name : {"fixed_point", "map_equivalence", "splitting_identities"})
        out.push_back(error_check(name, kStab, e));
    }
    const auto tb = check_tree_term_bounds(*env);
    out.push_back(make_check("tree_term_bounds", kStab, l, tb.ok,
                             fmt::format("odd n in [5, {}]", N)));
    const auto mono = check_appendix_monotonicity(*env);
    out.push_back(make_check(
        "a_ratio_decreasing", kStab, l, mono.a_decreasing,
        mono.a_decreasing ? "strict on [7, N-4]"
                          : fmt::format("first failure at n={}", mono.a_violation)));
    out.push_back(make_check(
        "b_ratio_increasing", kStab, l, mono.b_increasing,
        mono.b_increasing ? "strict on [7, N-4]"
                          : fmt::format("first failure at n={}", mono.b_violation)));
    out.push_back(make_check(
        "d_ratio_increasing", kStab, l, mono.d_increasing,
        mono.d_increasing ? "strict on [7, N-4]"
                          : fmt::format("first failure at n={}", mono.d_violation)));
    out.push_back(make_check(
        "d_ratio_bracket", kStab, l, mono.d_bracket,
        mono.d_bracket ? fmt::format("d0 < D/(3 lambda n(n-1)) <= 1/2")
                       : fmt::format("first failure at n={}", mono.bracket_violation)));
    out.push_back(make_check(
        "d5_bound", kStab, l, mono.d5_ratio > mono.d5_reference,
        fmt::format("D5/(60 lambda) = {:.4f} vs {}", mono.d5_ratio,
                    mono.d5_reference)));
  } else {
    for (const char* name :
         {"fixed_point", "map_equivalence", "splitting_identities",
          "tree_term_bounds", "a_ratio_decreasing", "b_ratio_increasing",
          "d_ratio_increasing", "d_ratio_bracket", "d5_bound"})
      out.push_back(make_check(name, kStab, l, false, ""));
  }

  try {
    const auto lim = check_small_lambda_limits(N, Coupling(1e-4), opts.solve);
    double worst = 0.0;
    for (const auto& row : lim.rows) worst = std::max(worst, row.rel_error / row.tolerance);
    out.push_back(make_check("small_lambda_limits", 0.0, l, lim.ok,
                             fmt::format("lambda=1e-4, worst error/tolerance {:.3f}", worst)));
  } catch (const std::exception& e) {
    out.push_back(error_check("small_lambda_limits", 0.0, e));
  }

  const auto fig = appendix_inequality_functions(Coupling(0.05));
  out.push_back(make_check(
      "f_l_decreasing", 0.0, l, fig.f_l_decreasing,
      fig.f_l_decreasing ? "odd n in (7, 4001]"
                         : fmt::format("increases at n={}", fig.f_l_first_increase)));
  out.push_back(make_check(
      "f_l_terminal", 0.0, l, std::fabs(fig.f_l_terminal_rel) < 5e-3,
      fmt::format("f_L(4001) = {:.4f}, limit {:.4f}, rel {:.2e}", fig.f_l_terminal,
                  fig.f_l_limit, fig.f_l_terminal_rel)));
  out.push_back(make_check("f_b_above_one", 0.0, l, fig.f_b_above_one && fig.f_b_decreasing,
                           fmt::format("decreasing={}", fig.f_b_decreasing)));
  out.push_back(make_check(
      "f_b_terminal", 0.0, l, std::fabs(fig.f_b_terminal_rel) < 5e-3,
      fmt::format("f_B(4001) = {:.5f}", fig.f_b_terminal)));

  const auto cc = contraction_constants(lambda);
  out.push_back(make_check(
      "constants_reproduce", 0.0, l,
      std::fabs(cc.k_sup - 0.096) < 5e-4 && std::fabs(cc.k0_sup - 0.094) < 5e-4,
      fmt::format("k = {:.5f}, k0 = {:.5f} over (0, {}]", cc.k_sup, cc.k0_sup,
                  cc.grid_max)));
  out.push_back(make_check("constants_closed_form", 0.0, l, cc.closed_form_error < 1e-14,
                           fmt::format("max gap {:.2e}", cc.closed_form_error)));
  {
    const double gap = std::fabs(cc.kn.back() - cc.k_limit_stated);
    out.push_back(make_check(
        "constants_stated_limit", 0.0, l, gap < 1e-10,
        fmt::format("k_{} = {:.6f} vs 1/11 + k1/6 = {:.6f}", cc.n_max,
                    cc.kn.back(), cc.k_limit_stated)));
  }
  out.push_back(make_check("constants_sum_below_one", kContr, l, cc.sum_below_one,
                           fmt::format("k + k0 = {:.4f}", cc.k_sup + cc.k0_sup)));

  if (applies(kContr, l)) {
    try {
      const auto st = empirical_contraction(lambda, N, opts.contraction_trials,
                                            opts.seed, opts.solve, opts.exec);
      out.push_back(make_check(
          "empirical_contraction", kContr, l, st.failures == 0 && st.max_ratio < 1.0,
          fmt::format("{} trials, max ratio {:.4f}, mean {:.4f}, failures {}",
                      st.trials, st.max_ratio, st.mean_ratio, st.failures)));
    } catch (const std::exception& e) {
      out.push_back(error_check("empirical_contraction", kContr, e));
    }
  } else {
    out.push_back(make_check("empirical_contraction", kContr, l, false, ""));
  }
  return out;
}

}  // namespace phi4
