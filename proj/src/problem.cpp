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

#include "lagoc/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lagoc {

namespace {

constexpr double kFdStep = 1e-6;
// Second derivatives from values alone lose twice as many digits; use a
// coarser step so truncation and cancellation balance.
constexpr double kFdStepSecond = 1e-4;

Vec pack(const Vec &q, const Vec &v, const Vec &u) {
  Vec x(q.size() + v.size() + u.size());
  x << q, v, u;
  return x;
}

void unpack(const Vec &x, int nq, Vec &q, Vec &v, Vec &u) {
  q = x.segment(0, nq);
  v = x.segment(nq, nq);
  u = x.segment(2 * nq, x.size() - 2 * nq);
}

double rel_error(const Mat &analytic, const Mat &fd) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < analytic.rows(); ++i)
    for (Eigen::Index j = 0; j < analytic.cols(); ++j) {
      const double e = std::abs(analytic(i, j) - fd(i, j)) /
                       std::max(1.0, std::abs(fd(i, j)));
      worst = std::max(worst, e);
    }
  return worst;
}

} // namespace

SecondPartials SecondPartials::from_packed(const Mat &h, int nq, int m) {
  SecondPartials s;
  s.qq = h.block(0, 0, nq, nq);
  s.qv = h.block(0, nq, nq, nq);
  s.qu = h.block(0, 2 * nq, nq, m);
  s.vv = h.block(nq, nq, nq, nq);
  s.vu = h.block(nq, 2 * nq, nq, m);
  s.uu = h.block(2 * nq, 2 * nq, m, m);
  return s;
}

DifferentiableMap::DifferentiableMap(int output_dim, ValueFn value,
                                     JacobianFn jacobian,
                                     WeightedHessianFn weighted_hessian)
    : output_dim_(output_dim), value_(std::move(value)),
      jacobian_(std::move(jacobian)),
      weighted_hessian_(std::move(weighted_hessian)) {}

DifferentiableMap &
DifferentiableMap::with_component_hessian(ComponentHessianFn fn) {
  component_hessian_ = std::move(fn);
  return *this;
}

DerivativeMode DifferentiableMap::mode() const {
  return has_analytic_jacobian() && has_analytic_hessian()
             ? DerivativeMode::analytic
             : DerivativeMode::finite_difference;
}

Vec DifferentiableMap::value(const Vec &q, const Vec &v, const Vec &u) const {
  Vec out = value_(q, v, u);
  if (!out.allFinite())
    throw NonFiniteError("non-finite map evaluation");
  return out;
}

double DifferentiableMap::scalar(const Vec &q, const Vec &v,
                                 const Vec &u) const {
  return value(q, v, u)(0);
}

Mat DifferentiableMap::jacobian(const Vec &q, const Vec &v,
                                const Vec &u) const {
  if (jacobian_)
    return jacobian_(q, v, u);
  return fd_jacobian(q, v, u);
}

Mat DifferentiableMap::weighted_hessian(const Vec &q, const Vec &v,
                                        const Vec &u, const Vec &w) const {
  if (weighted_hessian_)
    return weighted_hessian_(q, v, u, w);
  const int n = static_cast<int>(q.size() + v.size() + u.size());
  if (component_hessian_) {
    Mat h = Mat::Zero(n, n);
    for (int i = 0; i < output_dim_; ++i)
      if (w(i) != 0.0)
        h += w(i) * component_hessian_(q, v, u, i);
    return h;
  }
  return fd_weighted_hessian(q, v, u, w);
}

FirstPartials DifferentiableMap::partials(const Vec &q, const Vec &v,
                                          const Vec &u) const {
  const Mat j = jacobian(q, v, u);
  const auto nq = q.size();
  return {j.middleCols(0, nq), j.middleCols(nq, nq),
          j.middleCols(2 * nq, u.size())};
}

SecondPartials DifferentiableMap::second_partials(const Vec &q, const Vec &v,
                                                  const Vec &u,
                                                  const Vec &w) const {
  return SecondPartials::from_packed(weighted_hessian(q, v, u, w),
                                     static_cast<int>(q.size()),
                                     static_cast<int>(u.size()));
}

Mat DifferentiableMap::fd_jacobian(const Vec &q, const Vec &v,
                                   const Vec &u) const {
  const Vec x = pack(q, v, u);
  const int nq = static_cast<int>(q.size());
  Mat jac(output_dim_, x.size());
  Vec qa, va, ua;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = kFdStep * (1.0 + std::abs(x(i)));
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    unpack(xp, nq, qa, va, ua);
    const Vec fp = value(qa, va, ua);
    unpack(xm, nq, qa, va, ua);
    const Vec fm = value(qa, va, ua);
    jac.col(i) = (fp - fm) / (2.0 * h);
  }
  return jac;
}

Mat DifferentiableMap::fd_weighted_hessian(const Vec &q, const Vec &v,
                                           const Vec &u, const Vec &w) const {
  const Vec x = pack(q, v, u);
  const int nq = static_cast<int>(q.size());
  const auto n = x.size();
  Mat h = Mat::Zero(n, n);
  Vec qa, va, ua;
  if (jacobian_) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double step = kFdStep * (1.0 + std::abs(x(i)));
      Vec xp = x, xm = x;
      xp(i) += step;
      xm(i) -= step;
      unpack(xp, nq, qa, va, ua);
      const Vec gp = jacobian_(qa, va, ua).transpose() * w;
      unpack(xm, nq, qa, va, ua);
      const Vec gm = jacobian_(qa, va, ua).transpose() * w;
      h.col(i) = (gp - gm) / (2.0 * step);
    }
    return 0.5 * (h + h.transpose());
  }
  auto phi = [&](const Vec &xx) {
    unpack(xx, nq, qa, va, ua);
    return w.dot(value(qa, va, ua));
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    const double hi = kFdStepSecond * (1.0 + std::abs(x(i)));
    for (Eigen::Index j = i; j < n; ++j) {
      const double hj = kFdStepSecond * (1.0 + std::abs(x(j)));
      Vec xpp = x, xpm = x, xmp = x, xmm = x;
      xpp(i) += hi; xpp(j) += hj;
      xpm(i) += hi; xpm(j) -= hj;
      xmp(i) -= hi; xmp(j) += hj;
      xmm(i) -= hi; xmm(j) -= hj;
      const double val =
          (phi(xpp) - phi(xpm) - phi(xmp) + phi(xmm)) / (4.0 * hi * hj);
      h(i, j) = val;
      h(j, i) = val;
    }
  }
  return h;
}

SecondOrderOcp::SecondOrderOcp(std::string name, Dims dims,
                               DifferentiableMap cost,
                               DifferentiableMap dynamics,
                               BoundaryData boundary)
    : name_(std::move(name)), dims_(dims), cost_(std::move(cost)),
      dynamics_(std::move(dynamics)), boundary_(std::move(boundary)) {}

SecondOrderOcp SecondOrderOcp::with_boundary(BoundaryData boundary) const {
  SecondOrderOcp copy = *this;
  copy.boundary_ = std::move(boundary);
  return copy;
}

SecondOrderOcp
SecondOrderOcp::with_notes(std::vector<std::string> notes) const {
  SecondOrderOcp copy = *this;
  copy.notes_ = std::move(notes);
  return copy;
}

ValidationReport validate(const SecondOrderOcp &p) {
  ValidationReport report;
  report.notes = p.notes();
  const Dims &d = p.dims();
  if (d.nq < 1)
    report.violations.push_back("configuration dimension must be >= 1");
  if (d.m < 1)
    report.violations.push_back("control dimension must be >= 1");

  const BoundaryData &b = p.boundary();
  if (!(b.T > 0.0) || !std::isfinite(b.T))
    report.violations.push_back("horizon must be positive");

  const std::pair<const char *, const Vec *> vectors[] = {
      {"q0", &b.q0}, {"v0", &b.v0}, {"qT", &b.qT}, {"vT", &b.vT}};
  bool shapes_ok = d.nq >= 1 && d.m >= 1;
  for (const auto &[label, vec] : vectors) {
    if (vec->size() != d.nq) {
      std::ostringstream os;
      os << "boundary vector " << label << " has length " << vec->size()
         << ", expected " << d.nq;
      report.violations.push_back(os.str());
      shapes_ok = false;
    } else if (!vec->allFinite()) {
      report.violations.push_back(std::string("boundary vector ") + label +
                                  " is not finite");
    }
  }
  if (p.dynamics().output_dim() != d.nq)
    report.violations.push_back("dynamics dimension: declared output " +
                                std::to_string(p.dynamics().output_dim()) +
                                ", expected " + std::to_string(d.nq));
  if (p.cost().output_dim() != 1)
    report.violations.push_back("cost must be scalar-valued");

  if (shapes_ok) {
    // Probe evaluators at the initial boundary point with zero control.
    const Vec u0 = Vec::Zero(d.m);
    try {
      const Vec fv = p.dynamics().value(b.q0, b.v0, u0);
      if (fv.size() != d.nq && p.dynamics().output_dim() == d.nq)
        report.violations.push_back("dynamics dimension: evaluator returned " +
                                    std::to_string(fv.size()) + ", expected " +
                                    std::to_string(d.nq));
      const Vec cv = p.cost().value(b.q0, b.v0, u0);
      if (cv.size() != 1 && p.cost().output_dim() == 1)
        report.violations.push_back("cost must be scalar-valued");
    } catch (const Error &e) {
      report.violations.push_back(std::string("evaluation failed: ") +
                                  e.what());
    }
  }
  return report;
}

double DerivativeCheck::max_first() const { return std::max({dq, dv, du}); }
double DerivativeCheck::max_second() const {
  return std::max({qq, qv, qu, vv, vu, uu});
}
double DerivativeCheck::max() const {
  return std::max(max_first(), max_second());
}

DerivativeCheck check_derivatives(const DifferentiableMap &g, const Vec &q,
                                  const Vec &v, const Vec &u, double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("check_derivatives: step must be positive");
  const int nq = static_cast<int>(q.size());
  const int m = static_cast<int>(u.size());
  const int k = g.output_dim();
  const Vec x = pack(q, v, u);
  const auto n = x.size();

  Mat fd_jac(k, n);
  // fd_hess[i] approximates the Hessian of component i from Jacobian rows.
  std::vector<Mat> fd_hess(static_cast<std::size_t>(k), Mat(n, n));
  Vec qa, va, ua;
  for (Eigen::Index j = 0; j < n; ++j) {
    Vec xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    unpack(xp, nq, qa, va, ua);
    const Vec fp = g.value(qa, va, ua);
    const Mat jp = g.jacobian(qa, va, ua);
    unpack(xm, nq, qa, va, ua);
    const Vec fm = g.value(qa, va, ua);
    const Mat jm = g.jacobian(qa, va, ua);
    if (!jp.allFinite() || !jm.allFinite())
      throw NonFiniteError("check_derivatives: non-finite Jacobian at probe");
    fd_jac.col(j) = (fp - fm) / (2.0 * h);
    for (int i = 0; i < k; ++i)
      fd_hess[static_cast<std::size_t>(i)].col(j) =
          ((jp.row(i) - jm.row(i)) / (2.0 * h)).transpose();
  }

  const Mat jac = g.jacobian(q, v, u);
  if (!jac.allFinite())
    throw NonFiniteError("check_derivatives: non-finite Jacobian");

  DerivativeCheck out;
  out.dq = rel_error(jac.middleCols(0, nq), fd_jac.middleCols(0, nq));
  out.dv = rel_error(jac.middleCols(nq, nq), fd_jac.middleCols(nq, nq));
  out.du = rel_error(jac.middleCols(2 * nq, m), fd_jac.middleCols(2 * nq, m));

  for (int i = 0; i < k; ++i) {
    const Mat hess = g.weighted_hessian(q, v, u, Vec::Unit(k, i));
    if (!hess.allFinite())
      throw NonFiniteError("check_derivatives: non-finite Hessian");
    const auto a = SecondPartials::from_packed(hess, nq, m);
    const auto b = SecondPartials::from_packed(
        fd_hess[static_cast<std::size_t>(i)], nq, m);
    out.qq = std::max(out.qq, rel_error(a.qq, b.qq));
    out.qv = std::max(out.qv, rel_error(a.qv, b.qv));
    out.qu = std::max(out.qu, rel_error(a.qu, b.qu));
    out.vv = std::max(out.vv, rel_error(a.vv, b.vv));
    out.vu = std::max(out.vu, rel_error(a.vu, b.vu));
    out.uu = std::max(out.uu, rel_error(a.uu, b.uu));
  }
  return out;
}

} // namespace lagoc
