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

#include <cstdio>
#include <fstream>
#include <memory>

namespace lagoc::cli {

using nlohmann::json;

namespace {

json vec_json(const Vec &v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    a.push_back(v(i));
  return a;
}

json optional_json(const std::optional<double> &x) {
  return x ? json(*x) : json(nullptr);
}

void add_columns(std::vector<std::string> &header, const std::string &name,
                 int n) {
  if (n == 1) {
    header.push_back(name);
    return;
  }
  for (int i = 1; i <= n; ++i)
    header.push_back(name + "_" + std::to_string(i));
}

struct FileCloser {
  void operator()(std::FILE *f) const { std::fclose(f); }
};

std::unique_ptr<std::FILE, FileCloser> open_out(const std::filesystem::path &p) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(p.c_str(), "w"));
  if (!f)
    throw Error("cannot write " + p.string());
  return f;
}

void write_row(std::FILE *f, double t, const std::vector<const Vec *> &parts) {
  std::fprintf(f, "%.17g", t);
  for (const Vec *v : parts)
    for (Eigen::Index i = 0; i < v->size(); ++i)
      std::fprintf(f, ",%.17g", (*v)(i));
  std::fputc('\n', f);
}

json search_json(const FormulationResult &r) {
  json j;
  j["formulation"] = to_string(r.formulation);
  j["t_c"] = optional_json(r.search.t_c);
  if (r.search.bracket)
    j["bracket"] = {r.search.bracket->a, r.search.bracket->b};
  else
    j["bracket"] = nullptr;
  j["t_skip"] = r.search.t_skip;
  j["near_zeros"] = r.search.near_zeros;
  j["D_T"] = r.det.D.empty() ? json(nullptr) : json(r.det.D.back());
  return j;
}

} // namespace

json to_json(const Extremal &ex, const LegendreReport &legendre) {
  json j;
  j["problem"] = ex.problem_name;
  j["converged"] = true;
  j["z"] = vec_json(ex.z);
  j["J"] = ex.cost;
  j["residual"] = ex.residual;
  j["iterations"] = ex.iterations;
  j["residual_history"] = ex.residual_history;
  j["T"] = ex.horizon();
  j["legendre"] = {{"verdict", to_string(legendre.verdict)},
                   {"min_eigenvalue", legendre.overall_min},
                   {"margin", legendre.margin}};
  j["integrator"] = {{"method", ex.trajectory.method},
                     {"abs_tol", ex.trajectory.abs_tol},
                     {"rel_tol", ex.trajectory.rel_tol},
                     {"accepted_steps", ex.trajectory.accepted_steps},
                     {"rejected_steps", ex.trajectory.rejected_steps}};
  j["assumptions"] = "normal, corank-1 assumed";
  return j;
}

json to_json(const ConjugateReport &rep) {
  json j;
  j["verdict"] = to_string(rep.verdict);
  j["t_c"] = optional_json(rep.t_c);
  j["T"] = rep.horizon;
  j["tol_t"] = rep.tol_t;
  j["flags"] = rep.flags;
  j["error"] = rep.error.empty() ? json(nullptr) : json(rep.error);
  j["legendre"] = {{"verdict", to_string(rep.legendre.verdict)},
                   {"min_eigenvalue", rep.legendre.overall_min},
                   {"margin", rep.legendre.margin}};
  j["hamiltonian"] = rep.hamiltonian ? search_json(*rep.hamiltonian) : json();
  j["lagrangian"] = rep.lagrangian ? search_json(*rep.lagrangian) : json();
  j["assumptions"] = rep.assumptions;
  return j;
}

json to_json(const CheckReport &rep) {
  json j;
  j["all_pass"] = rep.all_pass();
  json props = json::array();
  for (const PropertyResult &p : rep.properties)
    props.push_back({{"name", p.name},
                     {"pass", p.pass},
                     {"max_error", p.max_error},
                     {"tolerance", p.tolerance},
                     {"note", p.note}});
  j["properties"] = props;
  j["notes"] = rep.notes;
  j["warnings"] = rep.warnings;
  j["assumptions"] = "normal, corank-1 assumed";
  return j;
}

void write_extremal_csv(const SecondOrderOcp &p, const Extremal &ex,
                        const std::filesystem::path &path) {
  const int nq = p.dims().nq, m = p.dims().m;
  std::vector<std::string> header{"t"};
  add_columns(header, "q", nq);
  add_columns(header, "qdot", nq);
  add_columns(header, "kappa", nq);
  add_columns(header, "kappadot", nq);
  add_columns(header, "u", m);

  auto f = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i)
    std::fprintf(f.get(), i ? ",%s" : "%s", header[i].c_str());
  std::fputc('\n', f.get());
  for (double t : ex.uniform_grid(ex.output_samples)) {
    const ExtremalSample s = sample_extremal(p, ex, t);
    write_row(f.get(), t,
              {&s.state.q, &s.state.qdot, &s.state.kappa, &s.state.kappadot,
               &s.u});
  }
}

void write_det_csv(const ConjugateReport &rep,
                   const std::filesystem::path &path) {
  auto f = open_out(path);
  std::fputs("t,D_ham,D_lag\n", f.get());
  if (!rep.hamiltonian || !rep.lagrangian)
    return;
  const DetSeries &h = rep.hamiltonian->det;
  const DetSeries &l = rep.lagrangian->det;
  for (std::size_t i = 0; i < h.t.size() && i < l.t.size(); ++i)
    std::fprintf(f.get(), "%.17g,%.17g,%.17g\n", h.t[i], h.D[i], l.D[i]);
}

void write_json(const json &doc, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

} // namespace lagoc::cli
