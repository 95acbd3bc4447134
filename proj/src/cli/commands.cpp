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

#include "lagoc/cli.hpp"
#include "lagoc/control.hpp"
#include "lagoc/hamiltonian.hpp"
#include "lagoc/lagrangian.hpp"
#include "lagoc/registry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

namespace lagoc::cli {

using nlohmann::json;

namespace {

constexpr std::uint32_t kSeed = 20260101;

Vec uniform(std::mt19937 &rng, int n, double a = -1.0, double b = 1.0) {
  std::uniform_real_distribution<double> d(a, b);
  Vec v(n);
  for (int i = 0; i < n; ++i)
    v(i) = d(rng);
  return v;
}

void prepare_out(const RunConfig &cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec)
    throw ConfigError("cannot create " + cfg.out_dir.string() + ": " +
                      ec.message());
}

void progress(const RunConfig &cfg, std::ostream &err, const std::string &s) {
  if (!cfg.quiet)
    err << s << '\n';
}

PropertyResult derivative_property(const SecondOrderOcp &p) {
  PropertyResult r{"derivatives", true, 0.0, 1e-6, ""};
  std::mt19937 rng(kSeed);
  const int nq = p.dims().nq, m = p.dims().m;
  for (int i = 0; i < 100; ++i) {
    const Vec q = uniform(rng, nq), v = uniform(rng, nq), u = uniform(rng, m);
    r.max_error = std::max({r.max_error,
                            check_derivatives(p.cost(), q, v, u, 1e-5).max(),
                            check_derivatives(p.dynamics(), q, v, u, 1e-5).max()});
  }
  r.pass = r.max_error <= r.tolerance;
  if (p.cost().mode() == DerivativeMode::finite_difference ||
      p.dynamics().mode() == DerivativeMode::finite_difference)
    r.note = "finite-difference fallback in use";
  return r;
}

PropertyResult tulczyjew_property(const SecondOrderOcp &p) {
  PropertyResult r{"tulczyjew_identity", true, 0.0, 1e-12, "relative to 1+|H|"};
  std::mt19937 rng(kSeed + 1);
  const int nq = p.dims().nq, m = p.dims().m;
  for (int i = 0; i < 1000; ++i) {
    const ExtendedPoint pt{uniform(rng, nq), uniform(rng, nq), uniform(rng, nq),
                           uniform(rng, nq), uniform(rng, m)};
    const ExtendedPhasePoint a = tulczyjew_map(pt);
    const double h = eval_hamiltonian(p, a.point, a.u);
    r.max_error = std::max(r.max_error, std::abs(eval_lagrangian(p, pt) - h) /
                                            (1.0 + std::abs(h)));
  }
  r.pass = r.max_error <= r.tolerance;
  return r;
}

struct Flow {
  DenseTrajectory el;
  std::vector<Vec> controls;
};

std::vector<PropertyResult> flow_properties(const SecondOrderOcp &p,
                                            const Vec &el0,
                                            std::string note) {
  const int nq = p.dims().nq;
  IntegratorOptions opts = IntegratorOptions::extremal_defaults();
  Flow flow;
  flow.el = integrate_el_flow(p, el0, opts, &flow.controls);

  const ElState s0 = ElState::unpack(el0, nq);
  const PhasePoint x0 = costate_from_lagrangian(p, s0, flow.controls.front());
  Vec u_warm = flow.controls.front();
  VectorField ham = [&p, &u_warm, nq](double, const Vec &x) -> Vec {
    const ReducedRate r = reduced_rhs(p, PhasePoint::unpack(x, nq), u_warm);
    u_warm = r.u;
    return r.rate.pack();
  };
  const DenseTrajectory hflow =
      integrate(ham, x0.pack(), flow.el.t0(), flow.el.t_end(), opts);

  PropertyResult eq{"flow_equivalence", true, 0.0, 1e-6, note};
  PropertyResult cons{"hamiltonian_conservation", true, 0.0, 1e-8, note};
  PropertyResult en{"energy_equals_hamiltonian", true, 0.0, 1e-10, note};
  double h0 = 0.0;
  for (std::size_t i = 0; i < flow.el.size(); ++i) {
    const double t = flow.el.times()[i];
    const ElState s = ElState::unpack(flow.el.states()[i], nq);
    const Vec &u = flow.controls[i];
    const PhasePoint x = costate_from_lagrangian(p, s, u);
    eq.max_error = std::max(
        eq.max_error, (x.pack() - hflow(t)).lpNorm<Eigen::Infinity>());
    const double h = eval_hamiltonian(p, x, u);
    if (i == 0)
      h0 = h;
    cons.max_error = std::max(cons.max_error, std::abs(h - h0));
    en.max_error = std::max(en.max_error, std::abs(energy(p, s, u) - h));
  }
  for (PropertyResult *r : {&eq, &cons, &en})
    r->pass = r->max_error <= r->tolerance;
  return {eq, cons, en};
}

std::vector<PropertyResult> lq_properties(const LqProblem &lq,
                                          const SecondOrderOcp &p,
                                          CheckReport &rep) {
  std::vector<PropertyResult> out;
  const int nq = lq.nq();
  const LinearSystemMatrix ham = assemble_hamiltonian_system(lq);
  const LinearSystemMatrix el = assemble_el_system(lq);
  std::mt19937 rng(kSeed + 2);

  PropertyResult conj{"lq_conjugacy", true, 0.0, 1e-12, ""};
  PropertyResult cross{"lq_cross_path", true, 0.0, 1e-12,
                       "assembled systems against generic evaluators"};
  for (int i = 0; i < 100; ++i) {
    const Vec d = uniform(rng, 4 * nq);
    const Vec lhs = lq_transform(lq, el.apply(d));
    const Vec rhs = ham.apply(lq_transform(lq, d));
    conj.max_error = std::max(conj.max_error,
                              (lhs - rhs).lpNorm<Eigen::Infinity>() /
                                  (1.0 + rhs.lpNorm<Eigen::Infinity>()));

    const ElState s = ElState::unpack(d, nq);
    const Vec u0 = Vec::Zero(lq.m());
    const ControlSolution cs = eliminate_control(p, s.with_control(u0));
    const ElAcceleration acc = el_rhs(p, s, cs.u);
    Vec flat(4 * nq);
    flat << s.qdot, acc.qddot, s.kappadot, acc.kappaddot;
    const Vec e_el = el.apply(d);
    cross.max_error =
        std::max(cross.max_error, (flat - e_el).lpNorm<Eigen::Infinity>() /
                                      (1.0 + e_el.lpNorm<Eigen::Infinity>()));

    const PhasePoint x = PhasePoint::unpack(d, nq);
    const Vec e_ham = ham.apply(d);
    const ReducedRate rr = reduced_rhs(p, x, u0);
    cross.max_error = std::max(
        cross.max_error, (rr.rate.pack() - e_ham).lpNorm<Eigen::Infinity>() /
                             (1.0 + e_ham.lpNorm<Eigen::Infinity>()));
  }
  conj.pass = conj.max_error <= conj.tolerance;
  cross.pass = cross.max_error <= cross.tolerance;
  out.push_back(conj);
  out.push_back(cross);

  const KalmanResult k = kalman_check(lq);
  if (!k.satisfied)
    rep.warnings.push_back("Kalman condition fails: controllability rank " +
                           std::to_string(k.rank) + " < " +
                           std::to_string(2 * nq));
  return out;
}

} // namespace

bool CheckReport::all_pass() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult &p) { return p.pass; });
}

CheckReport run_checks(const SecondOrderOcp &p, const LqProblem *lq) {
  CheckReport rep;
  rep.notes = p.notes();
  for (const std::string &v : validate(p).violations)
    rep.properties.push_back({"validation", false, 0.0, 0.0, v});

  rep.properties.push_back(derivative_property(p));
  rep.properties.push_back(tulczyjew_property(p));

  // Flows start from the shooting solution when one is found.
  const BoundaryData &b = p.boundary();
  const int nq = p.dims().nq;
  Vec el0(4 * nq);
  std::string note;
  try {
    const Extremal ex = solve(p);
    el0 = ex.trajectory.states().front();
    note = "along the solved extremal";
  } catch (const Error &e) {
    el0 << b.q0, b.v0, Vec::Zero(2 * nq);
    note = std::string("shooting failed (") + e.what() +
           "), flow from zero covector";
  }
  try {
    for (PropertyResult &r : flow_properties(p, el0, note))
      rep.properties.push_back(std::move(r));
  } catch (const Error &e) {
    rep.properties.push_back({"flow_equivalence", false, 0.0, 1e-6, e.what()});
  }

  if (lq)
    for (PropertyResult &r : lq_properties(*lq, p, rep))
      rep.properties.push_back(std::move(r));
  return rep;
}

int cmd_solve(const RunConfig &cfg, std::ostream &err) {
  try {
    const SecondOrderOcp p = build_problem(cfg);
    prepare_out(cfg);
    progress(cfg, err, "solve: " + p.name() + " on [0, " + sci(p.boundary().T) + "]");
    try {
      const Extremal ex = solve(p, cfg.z0, cfg.shooting);
      const LegendreReport leg = legendre_check(p, ex);
      json summary = to_json(ex, leg);
      summary["notes"] = p.notes();
      write_json(summary, cfg.out_dir / "summary.json");
      write_extremal_csv(p, ex, cfg.out_dir / "extremal.csv");
      progress(cfg, err,
               "solve: converged in " + std::to_string(ex.iterations) +
                   " iterations, J = " + std::to_string(ex.cost));
      return 0;
    } catch (const NoConvergence &e) {
      json summary;
      summary["problem"] = p.name();
      summary["converged"] = false;
      summary["error"] = e.what();
      summary["best_iterate"] = std::vector<double>(
          e.best_iterate().data(),
          e.best_iterate().data() + e.best_iterate().size());
      summary["residual"] = e.best_residual();
      summary["residual_history"] = e.residual_history();
      summary["assumptions"] = "normal, corank-1 assumed";
      write_json(summary, cfg.out_dir / "summary.json");
      err << "solve: no convergence: " << e.what() << '\n';
      return 2;
    }
  } catch (const Error &e) {
    err << "solve: " << e.what() << '\n';
    return 1;
  }
}

int cmd_conjugate(const RunConfig &cfg, std::ostream &err) {
  try {
    const SecondOrderOcp p = build_problem(cfg);
    prepare_out(cfg);
    progress(cfg, err, "conjugate: solving " + p.name());
    const Extremal ex = solve(p, cfg.z0, cfg.shooting);
    progress(cfg, err, "conjugate: propagating Jacobi bundles");
    const ConjugateReport rep = optimality_verdict(p, ex, cfg.conjugate);
    write_json(to_json(rep), cfg.out_dir / "conjugate.json");
    write_det_csv(rep, cfg.out_dir / "det.csv");
    progress(cfg, err, "conjugate: verdict " + to_string(rep.verdict));
    return 0;
  } catch (const Error &e) {
    err << "conjugate: " << e.what() << '\n';
    return 1;
  }
}

int cmd_check(const RunConfig &cfg, std::ostream &err) {
  try {
    const SecondOrderOcp p = build_problem(cfg);
    prepare_out(cfg);
    progress(cfg, err, "check: " + p.name());
    std::optional<LqProblem> lq = cfg.lq;
    if (!lq && cfg.registry)
      lq = registry_lq(*cfg.registry, p.boundary());
    const CheckReport rep = run_checks(p, lq ? &*lq : nullptr);
    write_json(to_json(rep), cfg.out_dir / "check.json");
    for (const PropertyResult &r : rep.properties)
      progress(cfg, err,
               std::string(r.pass ? "  pass " : "  FAIL ") + r.name +
                   " max error " + sci(r.max_error));
    return rep.all_pass() ? 0 : 1;
  } catch (const Error &e) {
    err << "check: " << e.what() << '\n';
    return 1;
  }
}

} // namespace lagoc::cli
