#include "phi4/solver.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "phi4/banach.hpp"
#include "phi4/dynamics.hpp"
#include "phi4/errors.hpp"
#include "phi4/verify.hpp"

namespace phi4 {

std::string_view to_string(StartPolicy s) {
  switch (s) {
    case StartPolicy::fundamental:
      return "fundamental";
    case StartPolicy::delta_max:
      return "delta_max";
    case StartPolicy::delta_min:
      return "delta_min";
  }
  return "unknown";
}

StartPolicy parse_start(std::string_view s) {
  for (auto p : {StartPolicy::fundamental, StartPolicy::delta_max,
                 StartPolicy::delta_min})
    if (s == to_string(p)) return p;
  throw DomainError("unknown start '" + std::string(s) + "'");
}

Closure make_closure(const EnvelopeSet& env, ClosurePolicy policy) {
  if (policy == ClosurePolicy::bracket)
    throw DomainError("bracket closure needs two runs");
  if (policy == ClosurePolicy::strict) return {policy, {}};
  return {policy, closure_tail(env, policy)};
}

namespace {

void validate(const SolveOptions& o) {
  require_odd_index(o.truncation, 11);
  if (!(o.tol > 0.0)) throw DomainError("tol must be positive");
  if (!(o.residual_tol > 0.0)) throw DomainError("residual_tol must be positive");
  if (o.max_iter < 1) throw DomainError("max_iter must be positive");
  if (o.buffer < 0 || o.buffer % 2 != 0 || o.buffer > o.truncation - 3)
    throw DomainError("buffer must be even and leave levels to check");
}

GreenSequence start_sequence(const EnvelopeSet& env, StartPolicy s) {
  switch (s) {
    case StartPolicy::delta_max:
      return env.h_max.truncated(env.truncation);
    case StartPolicy::delta_min:
      return env.h_min.truncated(env.truncation);
    case StartPolicy::fundamental:
      break;
  }
  return env.h0;
}

SolveResult run(const SolveOptions& o, const EnvelopeSet& env,
                const NormWeights& w, ClosurePolicy closure) {
  const int top = o.truncation - o.buffer;
  GreenSequence h = start_sequence(env, o.start);
  h.set_closure(make_closure(env, closure));

  IterationReport rep;
  rep.lambda = env.lambda.value();
  rep.truncation = o.truncation;
  rep.closure = closure;
  rep.start = o.start;
  rep.certified = env.lambda.certified();

  bool residual_fresh = false;
  for (int it = 1; it <= o.max_iter; ++it) {
    GreenSequence next = h;
    try {
      next = apply_map_star(h, o.exec, o.check_membership ? top : 0);
    } catch (const StabilityError& e) {
      throw StabilityError(e.n(), it, "M* output lost the alternating sign");
    }
    if (o.check_membership) {
      const auto m = check_membership(next, env, top);
      if (!m.verdict)
        throw StabilityError(m.first_n, it,
                             "iterate left the admissible set (" +
                                 m.first_predicate + ")");
    } else if (!check_membership(next, env, top).verdict) {
      ++rep.excursions;
    }
    const double d = distance(next, h, w, top);
    if (!rep.distances.empty()) {
      const double prev = rep.distances.back();
      if (prev >= kPlateau && d >= kPlateau)
        rep.contraction_ratios.push_back(d / prev);
    }
    rep.distances.push_back(d);
    h = std::move(next);
    rep.iterations = it;
    residual_fresh = false;
    if (d < o.tol) {
      rep.residual_max = residual(h, o.exec).max_upto(top);
      residual_fresh = true;
      if (rep.residual_max < o.residual_tol) {
        rep.converged = true;
        break;
      }
    }
  }
  if (!residual_fresh) rep.residual_max = residual(h, o.exec).max_upto(top);
  rep.final_distance = rep.distances.empty() ? 0.0 : rep.distances.back();
  try {
    rep.star_defect =
        distance(apply_map_star(h, o.exec, o.check_membership ? top : 0), h, w,
                 top);
  } catch (const StabilityError&) {
    rep.star_defect = std::numeric_limits<double>::infinity();
  }
  if (rep.converged)
    rep.message = "converged";
  else
    rep.message = "not converged after " + std::to_string(rep.iterations) +
                  " iterations";
  if (!rep.certified) rep.message += "; lambda outside the certified range";
  return {std::move(h), std::move(rep)};
}

}  // namespace

SolveResult solve(Coupling lambda, const SolveOptions& opts) {
  validate(opts);
  const EnvelopeSet env = build_envelopes(lambda, opts.truncation, opts.d0);
  const NormWeights w(lambda, opts.truncation, opts.d0);
  if (opts.closure != ClosurePolicy::bracket)
    return run(opts, env, w, opts.closure);

  SolveResult lo = run(opts, env, w, ClosurePolicy::envelope_min);
  const SolveResult hi = run(opts, env, w, ClosurePolicy::envelope_max);
  const double gap = distance(lo.fixed_point, hi.fixed_point, w,
                              opts.truncation - opts.buffer);
  lo.report.closure = ClosurePolicy::bracket;
  lo.report.bracket_gap = gap;
  lo.report.bracket_partner_iterations = hi.report.iterations;
  const bool agree = gap <= opts.bracket_tol;
  lo.report.converged = lo.report.converged && hi.report.converged && agree;
  if (!agree) lo.report.message += "; closures disagree beyond bracket_tol";
  if (!hi.report.converged) lo.report.message += "; envelope_max run not converged";
  return lo;
}

std::vector<SweepEntry> sweep(std::span<const double> lambdas,
                              const SolveOptions& opts, Exec exec) {
  std::vector<SweepEntry> out(lambdas.size());
  SolveOptions inner = opts;
  inner.exec = Exec::serial;
  for_each_index(static_cast<int>(lambdas.size()), exec, [&](int i) {
    SweepEntry& e = out[i];
    e.lambda = lambdas[i];
    try {
      const Coupling c(lambdas[i]);
      const SolveResult r = solve(c, inner);
      const auto d = extract_delta(r.fixed_point);
      e.report = r.report;
      e.h2 = r.fixed_point[1].to_double();
      e.h4 = r.fixed_point[3].to_double();
      e.delta3 = d[3];
      e.delta5 = d[5];
      e.delta7 = d[7];
      if (!c.certified())
        e.status = "warned";
      else
        e.status = r.report.converged ? "converged" : "not_converged";
    } catch (const std::exception& ex) {
      e.status = "error";
      e.error = ex.what();
      e.report.lambda = lambdas[i];
      e.report.truncation = inner.truncation;
    }
  });
  return out;
}

namespace {

SplittingSequence draw_delta(const EnvelopeSet& env, std::mt19937_64& rng) {
  const int N = env.truncation;
  SplittingSequence d(N);
  for (int n = 1; n <= N; n += 2) {
    std::uniform_real_distribution<double> u(env.delta_min[n],
                                             env.delta_max[n]);
    d[n] = u(rng);
  }
  return d;
}

struct Trial {
  double ratio = std::numeric_limits<double>::quiet_NaN();
  int resampled = 0;
  bool failed = false;
  double start_offset = 0.0;
  double image_offset = 0.0;
};

}  // namespace

ContractionStats empirical_contraction(Coupling lambda, int N, int trials,
                                       std::uint64_t seed,
                                       const SolveOptions& opts, Exec exec) {
  if (trials < 1) throw DomainError("trials must be at least 1");
  SolveOptions o = opts;
  o.truncation = N;
  validate(o);
  const EnvelopeSet env = build_envelopes(lambda, N, o.d0);
  const NormWeights w(lambda, N, o.d0);
  const ClosurePolicy policy =
      (o.closure == ClosurePolicy::bracket || o.closure == ClosurePolicy::strict)
          ? ClosurePolicy::envelope_min
          : o.closure;
  const Closure closure = make_closure(env, policy);
  const int top = N - o.buffer;

  std::vector<Trial> res(trials);
  for_each_index(trials, exec, [&](int t) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed),
                     static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(ss);
    Trial& r = res[t];
    for (;;) {
      GreenSequence a = build_from_delta(lambda, draw_delta(env, rng));
      GreenSequence b = build_from_delta(lambda, draw_delta(env, rng));
      a.set_closure(closure);
      b.set_closure(closure);
      const double d = distance(a, b, w, top);
      if (d == 0.0) {
        ++r.resampled;
        continue;
      }
      r.start_offset = std::max(distance(a, env.h0, w, top),
                                distance(b, env.h0, w, top));
      // Untrapped images; a sign loss below the buffer marks the trial.
      try {
        const GreenSequence ia = apply_map_star(a, Exec::serial, 0);
        const GreenSequence ib = apply_map_star(b, Exec::serial, 0);
        r.ratio = distance(ia, ib, w, top) / d;
        r.image_offset = std::max(distance(ia, env.h0, w, top),
                                  distance(ib, env.h0, w, top));
        for (int n = 1; n <= top; n += 2)
          if (ia[n].sign() != good_sign(n) || ib[n].sign() != good_sign(n))
            r.failed = true;
      } catch (const StabilityError&) {
        r.failed = true;
        r.ratio = std::numeric_limits<double>::quiet_NaN();
      }
      break;
    }
  });

  ContractionStats s;
  s.lambda = lambda.value();
  s.truncation = N;
  s.trials = trials;
  s.seed = seed;
  s.rho = 1.0 - o.d0;
  double sum = 0.0;
  int counted = 0;
  for (const Trial& r : res) {
    s.ratios.push_back(r.ratio);
    s.resampled += r.resampled;
    s.max_start_offset = std::max(s.max_start_offset, r.start_offset);
    if (r.failed) ++s.failures;
    if (std::isnan(r.ratio)) continue;
    s.max_ratio = std::max(s.max_ratio, r.ratio);
    s.max_image_offset = std::max(s.max_image_offset, r.image_offset);
    sum += r.ratio;
    ++counted;
  }
  s.mean_ratio = counted > 0 ? sum / counted : 0.0;
  return s;
}

}  // namespace phi4
