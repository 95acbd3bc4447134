/*
Copyright 2026 The lagoc Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

     https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "lagoc/conjugate.hpp"
#include "lagoc/hamiltonian.hpp"
#include "lagoc/lagrangian.hpp"

#include <algorithm>
#include <cmath>

namespace lagoc {

std::string to_string(Formulation f) {
  return f == Formulation::hamiltonian ? "hamiltonian" : "lagrangian";
}

std::string to_string(OptimalityVerdict v) {
  switch (v) {
  case OptimalityVerdict::optimal:
    return "optimal-on-[0,T]";
  case OptimalityVerdict::not_optimal:
    return "not-optimal";
  case OptimalityVerdict::inconclusive:
    return "inconclusive";
  }
  return "unknown";
}

Mat JacobiBundle::state_columns(double t) const {
  const int n = 2 * nq;
  Mat cols(n, static_cast<Eigen::Index>(fields.size()));
  for (std::size_t i = 0; i < fields.size(); ++i)
    cols.col(static_cast<Eigen::Index>(i)) = fields[i](t).head(n);
  return cols;
}

SignedDeterminant JacobiBundle::signed_determinant(double t) const {
  return lu_determinant(state_columns(t));
}

JacobiBundle propagate_bundle(const SecondOrderOcp &p, const Extremal &ex,
                              Formulation formulation,
                              const BundleOptions &opts) {
  const LegendreReport leg = legendre_check(p, ex, opts.legendre_margin);
  if (leg.verdict != LegendreVerdict::strong)
    throw LegendreViolation(
        "propagate_bundle: strong Legendre condition fails (min eigenvalue " +
        sci(leg.overall_min) + ")");

  const int nq = p.dims().nq;
  const int n = 2 * nq;
  const double t0 = ex.trajectory.t0();
  const double t1 = ex.trajectory.t_end();

  VectorField rhs;
  if (formulation == Formulation::hamiltonian) {
    rhs = [&p, &ex](double t, const Vec &d) -> Vec {
      const PhaseSample s = phase_sample(p, ex, t);
      return reduced_variational_matrix(p, s.point, s.u) * d;
    };
  } else {
    rhs = [&p, &ex](double t, const Vec &d) -> Vec {
      return jacobi_matrix(p, ex, t) * d;
    };
  }

  const ExtremalSample start = sample_extremal(p, ex, t0);
  JacobiBundle bundle;
  bundle.formulation = formulation;
  bundle.nq = nq;
  for (int i = 0; i < n; ++i) {
    PhasePoint dh{Vec::Zero(nq), Vec::Zero(nq), Vec::Zero(nq), Vec::Zero(nq)};
    if (i < nq)
      dh.lambda_q(i) = opts.initial_scale;
    else
      dh.lambda_v(i - nq) = opts.initial_scale;
    Vec d0;
    if (formulation == Formulation::hamiltonian)
      d0 = dh.pack();
    else
      d0 = lagrangian_variation(p, start.state, start.u, dh).pack();
    bundle.fields.push_back(integrate(rhs, d0, t0, t1, opts.integrator));
    bundle.first_step =
        std::max(bundle.first_step, bundle.fields.back().first_step);
  }
  return bundle;
}

DetSeries det_series(const JacobiBundle &bundle, std::size_t n_intervals) {
  DetSeries s;
  const double T = bundle.horizon();
  const double t0 = bundle.fields.front().t0();
  s.t.reserve(n_intervals + 1);
  s.D.reserve(n_intervals + 1);
  for (std::size_t i = 0; i <= n_intervals; ++i) {
    const double t = i == n_intervals
                         ? T
                         : t0 + (T - t0) * static_cast<double>(i) /
                                    static_cast<double>(n_intervals);
    s.t.push_back(t);
    s.D.push_back(bundle.determinant(t));
  }
  return s;
}

namespace {

// |det| over the product of column norms, in [0, 1].
double hadamard_ratio(const Mat &cols, double det) {
  double bound = 1.0;
  for (Eigen::Index j = 0; j < cols.cols(); ++j)
    bound *= cols.col(j).norm();
  return bound > 0.0 ? std::abs(det) / bound : 0.0;
}

} // namespace

ConjugateSearch first_conjugate_time(const JacobiBundle &bundle,
                                     const ConjugateSearchOptions &opts) {
  const double t0 = bundle.fields.front().t0();
  const double T = bundle.horizon();
  ConjugateSearch out;
  out.tol_t = opts.tol_t;
  out.t_skip = opts.t_skip.value_or(
      std::max(1e-3 * (T - t0), 10.0 * bundle.first_step));
  const double a = t0 + out.t_skip;
  if (!(a < T))
    return out;

  auto g = [&bundle](double t) { return bundle.determinant(t); };
  const int n = std::max(opts.n_scan, 2);
  std::vector<double> ts(static_cast<std::size_t>(n)), ds(ts.size()),
      ratio(ts.size());
  double d_max = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    ts[k] = i == n - 1 ? T : a + (T - a) * static_cast<double>(i) / (n - 1);
    const Mat cols = bundle.state_columns(ts[k]);
    ds[k] = lu_determinant(cols).value();
    ratio[k] = hadamard_ratio(cols, ds[k]);
    d_max = std::max(d_max, std::abs(ds[k]));
  }

  // A sample is indistinguishable from zero when |D| is below 1e-12 max|D| or
  // below 1e-12 of the Hadamard bound. A sign change between two such samples
  // is rounding noise, not a crossing.
  const double floor = 1e-12 * d_max;
  auto negligible = [&](std::size_t k) {
    return std::abs(ds[k]) < floor || ratio[k] < 1e-12;
  };
  std::size_t stop = ts.size();
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (ds[i - 1] * ds[i] < 0.0 && !(negligible(i - 1) && negligible(i))) {
      out.bracket = Bracket{ts[i - 1], ts[i]};
      stop = i;
      break;
    }
  for (std::size_t i = 0; i < stop; ++i)
    if (negligible(i))
      out.near_zeros.push_back(ts[i]);

  if (out.bracket)
    out.t_c = bisect(g, out.bracket->a, out.bracket->b, opts.tol_t);
  return out;
}

ConjugateReport optimality_verdict(const SecondOrderOcp &p, const Extremal &ex,
                                   const VerdictOptions &opts) {
  ConjugateReport rep;
  rep.horizon = ex.horizon();
  rep.tol_t = opts.search.tol_t;
  rep.legendre = legendre_check(p, ex, opts.bundle.legendre_margin);
  if (rep.legendre.verdict != LegendreVerdict::strong) {
    rep.verdict = OptimalityVerdict::inconclusive;
    rep.flags.push_back(rep.legendre.verdict == LegendreVerdict::violated
                            ? "legendre-violation"
                            : "legendre-weak-only");
    rep.error = "LegendreViolation: strong Legendre condition fails, minimum "
                "eigenvalue " +
                sci(rep.legendre.overall_min);
    return rep;
  }

  try {
    for (Formulation f : {Formulation::hamiltonian, Formulation::lagrangian}) {
      const JacobiBundle bundle = propagate_bundle(p, ex, f, opts.bundle);
      FormulationResult r;
      r.formulation = f;
      r.search = first_conjugate_time(bundle, opts.search);
      r.det = det_series(bundle, opts.det_samples);
      if (!r.search.near_zeros.empty())
        rep.flags.push_back("near-zero-determinant:" + to_string(f));
      (f == Formulation::hamiltonian ? rep.hamiltonian : rep.lagrangian) =
          std::move(r);
    }
  } catch (const Error &e) {
    rep.verdict = OptimalityVerdict::inconclusive;
    rep.error = e.what();
    return rep;
  }

  const auto &th = rep.hamiltonian->search.t_c;
  const auto &tl = rep.lagrangian->search.t_c;
  if (th.has_value() != tl.has_value() ||
      (th && tl && std::abs(*th - *tl) > 10.0 * opts.search.tol_t)) {
    rep.flags.push_back("coincidence-failure");
    rep.verdict = OptimalityVerdict::inconclusive;
    rep.t_c = tl ? tl : th;
    return rep;
  }
  rep.t_c = tl;
  const double T = ex.trajectory.t_end();
  if (!rep.t_c) {
    rep.verdict = OptimalityVerdict::optimal;
  } else if (std::abs(*rep.t_c - T) <= opts.search.tol_t) {
    rep.flags.push_back("conjugate-time-at-horizon");
    rep.verdict = OptimalityVerdict::inconclusive;
  } else {
    rep.verdict = OptimalityVerdict::not_optimal;
  }
  return rep;
}

} // namespace lagoc
