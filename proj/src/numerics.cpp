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

#include "lagoc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lagoc {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 5.0;

Vec checked(Vec v, double t) {
  if (!v.allFinite())
    throw NonFiniteState("non-finite state or derivative at t = " +
                         std::to_string(t));
  return v;
}

double error_norm(const Vec &err, const Vec &y0, const Vec &y1,
                  double abs_tol, double rel_tol) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sc =
        abs_tol + rel_tol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    worst = std::max(worst, std::abs(err(i)) / sc);
  }
  return worst;
}

double initial_step(const VectorField &rhs, double t0, const Vec &y0,
                    const Vec &f0, double span, const IntegratorOptions &o,
                    long &nfev) {
  Vec sc(y0.size());
  for (Eigen::Index i = 0; i < y0.size(); ++i)
    sc(i) = o.abs_tol + o.rel_tol * std::abs(y0(i));
  const double d0 = (y0.array() / sc.array()).matrix().lpNorm<Eigen::Infinity>();
  const double d1 = (f0.array() / sc.array()).matrix().lpNorm<Eigen::Infinity>();
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  const Vec y1 = y0 + h0 * f0;
  const Vec f1 = checked(rhs(t0 + h0, y1), t0 + h0);
  ++nfev;
  const double d2 =
      ((f1 - f0).array() / sc.array()).matrix().lpNorm<Eigen::Infinity>() / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                  : std::pow(0.01 / dmax, 1.0 / 5.0);
  return std::min({100.0 * h0, h1, span});
}

DenseTrajectory integrate_rk4(const VectorField &rhs, const Vec &y0, double t0,
                              double t1, const IntegratorOptions &o) {
  if (!(o.h_fixed > 0.0))
    throw std::invalid_argument("rk4: h_fixed must be positive");
  const double span = t1 - t0;
  const long n = std::max(1L, static_cast<long>(std::ceil(span / o.h_fixed - 1e-9)));
  const double h = span / static_cast<double>(n);
  std::vector<double> ts{t0};
  std::vector<Vec> ys{y0};
  Vec f = checked(rhs(t0, y0), t0);
  std::vector<Vec> fs{f};
  long nfev = 1;
  Vec y = y0;
  for (long k = 0; k < n; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    const Vec k1 = f;
    const Vec k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
    const Vec k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
    const Vec k4 = rhs(t + h, y + h * k3);
    y = checked(y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), t + h);
    const double tn = (k + 1 == n) ? t1 : t0 + static_cast<double>(k + 1) * h;
    f = checked(rhs(tn, y), tn);
    nfev += 4;
    ts.push_back(tn);
    ys.push_back(y);
    fs.push_back(f);
  }
  DenseTrajectory traj(std::move(ts), std::move(ys), std::move(fs));
  traj.method = to_string(IntegratorMethod::rk4_fixed);
  traj.accepted_steps = n;
  traj.rhs_evaluations = nfev;
  traj.first_step = h;
  return traj;
}

DenseTrajectory integrate_dp45(const VectorField &rhs, const Vec &y0,
                               double t0, double t1,
                               const IntegratorOptions &o) {
  if (!(o.abs_tol > 0.0) || !(o.rel_tol >= 0.0))
    throw std::invalid_argument("dp45: tolerances must be positive");
  const double span = t1 - t0;
  long nfev = 0;
  Vec k1 = checked(rhs(t0, y0), t0);
  ++nfev;
  double h = o.h_initial > 0.0 ? std::min(o.h_initial, span)
                               : initial_step(rhs, t0, y0, k1, span, o, nfev);
  const double h_max = o.h_max > 0.0 ? o.h_max : span;
  h = std::min(h, h_max);

  std::vector<double> ts{t0};
  std::vector<Vec> ys{y0};
  std::vector<Vec> fs{k1};
  double t = t0;
  Vec y = y0;
  long accepted = 0, rejected = 0;
  double first_step = 0.0;
  bool last_rejected = false;

  while (t < t1) {
    if (accepted + rejected >= o.max_steps)
      throw StepSizeUnderflow("dp45: maximum step count exceeded");
    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(t));
    if (h < h_min)
      throw StepSizeUnderflow("dp45: step size underflow at t = " +
                              std::to_string(t));
    bool final_step = false;
    if (t + h >= t1 || t1 - (t + h) < h_min) {
      h = t1 - t;
      final_step = true;
    }
    const Vec k2 = rhs(t + c2 * h, y + h * (a21 * k1));
    const Vec k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Vec k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec k5 = rhs(t + c5 * h,
                       y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 +
                                       a64 * k4 + a65 * k5));
    const Vec y_new =
        y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const double t_new = final_step ? t1 : t + h;
    const Vec k7 = rhs(t_new, y_new);
    nfev += 6;
    const Vec err =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double en = error_norm(err, y, y_new, o.abs_tol, o.rel_tol);
    if (!std::isfinite(en) || !y_new.allFinite() || !k7.allFinite()) {
      // Treat as a rejected step; shrink hard.
      en = std::numeric_limits<double>::infinity();
    }

    if (en <= 1.0) {
      if (accepted == 0)
        first_step = h;
      ++accepted;
      t = t_new;
      y = y_new;
      k1 = k7;
      ts.push_back(t);
      ys.push_back(y);
      fs.push_back(k1);
      double fac = en == 0.0 ? kFacMax
                             : std::clamp(kSafety * std::pow(en, -0.2),
                                          kFacMin, kFacMax);
      if (last_rejected)
        fac = std::min(fac, 1.0);
      last_rejected = false;
      if (!final_step)
        h = std::min(h * fac, h_max);
    } else {
      ++rejected;
      last_rejected = true;
      const double fac =
          std::isfinite(en)
              ? std::clamp(kSafety * std::pow(en, -0.2), kFacMin, 1.0)
              : 0.1;
      h *= fac;
    }
  }
  if (!y.allFinite())
    throw NonFiniteState("dp45: non-finite final state");

  DenseTrajectory traj(std::move(ts), std::move(ys), std::move(fs));
  traj.method = to_string(IntegratorMethod::dp45_adaptive);
  traj.abs_tol = o.abs_tol;
  traj.rel_tol = o.rel_tol;
  traj.accepted_steps = accepted;
  traj.rejected_steps = rejected;
  traj.rhs_evaluations = nfev;
  traj.first_step = first_step;
  return traj;
}

} // namespace

std::string to_string(IntegratorMethod method) {
  switch (method) {
  case IntegratorMethod::rk4_fixed:
    return "rk4_fixed";
  case IntegratorMethod::dp45_adaptive:
    return "dp45_adaptive";
  }
  return "unknown";
}

DenseTrajectory::DenseTrajectory(std::vector<double> times,
                                 std::vector<Vec> states,
                                 std::vector<Vec> derivatives)
    : times_(std::move(times)), states_(std::move(states)),
      derivatives_(std::move(derivatives)) {
  if (times_.empty() || times_.size() != states_.size() ||
      times_.size() != derivatives_.size())
    throw std::invalid_argument("DenseTrajectory: inconsistent node data");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1]))
      throw std::invalid_argument("DenseTrajectory: grid not increasing");
}

int DenseTrajectory::dimension() const {
  return states_.empty() ? 0 : static_cast<int>(states_.front().size());
}

std::size_t DenseTrajectory::interval(double t) const {
  const double slack =
      1e-12 * std::max(1.0, std::abs(times_.back() - times_.front()));
  if (t < times_.front() - slack || t > times_.back() + slack)
    throw std::out_of_range("DenseTrajectory: t = " + std::to_string(t) +
                            " outside [" + std::to_string(times_.front()) +
                            ", " + std::to_string(times_.back()) + "]");
  if (times_.size() == 1)
    return 0;
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times_.begin());
  if (i == 0)
    return 0;
  return std::min(i - 1, times_.size() - 2);
}

Vec DenseTrajectory::operator()(double t) const {
  if (times_.size() == 1)
    return states_.front();
  const std::size_t i = interval(t);
  const double ta = times_[i], tb = times_[i + 1];
  if (t == ta)
    return states_[i];
  if (t == tb)
    return states_[i + 1];
  const double h = tb - ta;
  const double s = std::clamp((t - ta) / h, 0.0, 1.0);
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * states_[i] + (h10 * h) * derivatives_[i] + h01 * states_[i + 1] +
         (h11 * h) * derivatives_[i + 1];
}

Vec DenseTrajectory::derivative(double t) const {
  if (times_.size() == 1)
    return derivatives_.front();
  const std::size_t i = interval(t);
  const double ta = times_[i], tb = times_[i + 1];
  if (t == ta)
    return derivatives_[i];
  if (t == tb)
    return derivatives_[i + 1];
  const double h = tb - ta;
  const double s = std::clamp((t - ta) / h, 0.0, 1.0);
  const double s2 = s * s;
  const double d00 = (6 * s2 - 6 * s) / h;
  const double d10 = 3 * s2 - 4 * s + 1;
  const double d01 = (-6 * s2 + 6 * s) / h;
  const double d11 = 3 * s2 - 2 * s;
  return d00 * states_[i] + d10 * derivatives_[i] + d01 * states_[i + 1] +
         d11 * derivatives_[i + 1];
}

DenseTrajectory integrate(const VectorField &rhs, const Vec &y0, double t0,
                          double t1, const IntegratorOptions &opts) {
  if (!(t1 > t0))
    throw std::invalid_argument("integrate: empty or reversed time span");
  if (!y0.allFinite())
    throw NonFiniteState("integrate: non-finite initial state");
  switch (opts.method) {
  case IntegratorMethod::rk4_fixed:
    return integrate_rk4(rhs, y0, t0, t1, opts);
  case IntegratorMethod::dp45_adaptive:
    return integrate_dp45(rhs, y0, t0, t1, opts);
  }
  throw std::invalid_argument("integrate: unknown method");
}

std::optional<Bracket> find_sign_change(const std::function<double(double)> &g,
                                        double a, double b, int n_scan) {
  if (n_scan < 2 || !(b > a))
    return std::nullopt;
  double t_prev = a;
  double g_prev = g(a);
  for (int i = 1; i < n_scan; ++i) {
    const double t = (i == n_scan - 1)
                         ? b
                         : a + (b - a) * static_cast<double>(i) /
                                   static_cast<double>(n_scan - 1);
    const double gt = g(t);
    if (g_prev * gt < 0.0)
      return Bracket{t_prev, t};
    t_prev = t;
    g_prev = gt;
  }
  return std::nullopt;
}

double bisect(const std::function<double(double)> &g, double a, double b,
              double tol_t) {
  double ga = g(a);
  const double gb = g(b);
  if (!(ga * gb < 0.0))
    throw InvalidBracket("bisect: g(a) and g(b) do not differ in sign");
  while (b - a > tol_t) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b)
      break;
    const double gm = g(mid);
    if (gm == 0.0)
      return mid;
    if (ga * gm < 0.0) {
      b = mid;
    } else {
      a = mid;
      ga = gm;
    }
  }
  return 0.5 * (a + b);
}

Mat fd_jacobian(const VectorMap &F, const Vec &z, double fd_step) {
  Mat jac;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double h = fd_step * (1.0 + std::abs(z(i)));
    Vec zp = z, zm = z;
    zp(i) += h;
    zm(i) -= h;
    const Vec col = (F(zp) - F(zm)) / (2.0 * h);
    if (i == 0)
      jac.resize(col.size(), z.size());
    jac.col(i) = col;
  }
  return jac;
}

NewtonResult newton_solve(const VectorMap &F, const JacobianMap &J,
                          const Vec &z0, const NewtonOptions &opts) {
  NewtonResult res;
  Vec z = z0;
  Vec Fz = F(z);
  double norm = Fz.lpNorm<Eigen::Infinity>();
  res.history.push_back(norm);
  Vec best = z;
  double best_norm = norm;

  for (int it = 0;; ++it) {
    if (norm <= opts.tol) {
      res.z = z;
      res.iterations = it;
      res.residual = norm;
      return res;
    }
    if (it >= opts.max_iter)
      throw NewtonError(NewtonFailure::max_iterations,
                        "newton: no convergence in " +
                            std::to_string(opts.max_iter) + " iterations",
                        best, res.history);
    const Mat jac = J ? J(z, Fz) : fd_jacobian(F, z, opts.fd_step);
    Eigen::FullPivLU<Mat> lu(jac);
    if (!jac.allFinite() || !lu.isInvertible())
      throw NewtonError(NewtonFailure::singular_jacobian,
                        "newton: singular Jacobian", best, res.history);
    const Vec dz = lu.solve(-Fz);

    const double merit = Fz.squaredNorm();
    double alpha = 1.0;
    Vec z_try, F_try;
    for (;;) {
      z_try = z + alpha * dz;
      bool ok = true;
      try {
        F_try = F(z_try);
        ok = F_try.allFinite();
      } catch (const Error &) {
        ok = false;
      }
      if (!opts.damping && ok)
        break;
      if (ok && F_try.squaredNorm() <=
                    (1.0 - 2.0 * opts.armijo_c * alpha) * merit)
        break;
      alpha *= 0.5;
      if (alpha < opts.min_step)
        throw NewtonError(NewtonFailure::line_search,
                          "newton: line search failed", best, res.history);
    }
    z = z_try;
    Fz = F_try;
    norm = Fz.lpNorm<Eigen::Infinity>();
    res.history.push_back(norm);
    if (norm < best_norm) {
      best_norm = norm;
      best = z;
    }
  }
}

double simpson(const std::vector<double> &samples, double h) {
  const std::size_t n = samples.size();
  if (n < 3 || (n - 1) % 2 != 0)
    throw std::invalid_argument("simpson: need an even number of intervals");
  double acc = samples.front() + samples.back();
  for (std::size_t i = 1; i + 1 < n; ++i)
    acc += (i % 2 == 1 ? 4.0 : 2.0) * samples[i];
  return acc * h / 3.0;
}

} // namespace lagoc
