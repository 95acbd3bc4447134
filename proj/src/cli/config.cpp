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
#include "lagoc/registry.hpp"

#include <fstream>

namespace lagoc::cli {

using nlohmann::json;

namespace {

double positive(const json &j, const char *key, double fallback) {
  if (!j.contains(key))
    return fallback;
  if (!j.at(key).is_number())
    throw ConfigError(std::string(key) + " must be a number");
  const double x = j.at(key).get<double>();
  if (!(x > 0.0))
    throw ConfigError(std::string(key) + " must be positive");
  return x;
}

Vec vector_of(const json &j, const char *what) {
  if (j.is_number())
    return Vec::Constant(1, j.get<double>());
  if (!j.is_array())
    throw ConfigError(std::string(what) + " must be a number or an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      throw ConfigError(std::string(what) + " has a non-numeric entry");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

// Row-major nested arrays; a bare number is a 1x1 matrix.
Mat matrix_of(const json &j, const char *what) {
  if (j.is_number())
    return Mat::Constant(1, 1, j.get<double>());
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ConfigError(std::string(what) + " must be a nested array");
  const std::size_t rows = j.size(), cols = j[0].size();
  Mat a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ConfigError(std::string(what) + " has ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number())
        throw ConfigError(std::string(what) + " has a non-numeric entry");
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          j[r][c].get<double>();
    }
  }
  return a;
}

IntegratorOptions integrator_of(const json &j, IntegratorOptions o) {
  if (!j.is_object())
    throw ConfigError("integrator options must be an object");
  if (j.contains("method")) {
    const std::string m = j.at("method").get<std::string>();
    if (m == "dp45" || m == "dp45_adaptive")
      o.method = IntegratorMethod::dp45_adaptive;
    else if (m == "rk4" || m == "rk4_fixed")
      o.method = IntegratorMethod::rk4_fixed;
    else
      throw ConfigError("unknown integrator method '" + m + "'");
  }
  o.abs_tol = positive(j, "abs_tol", o.abs_tol);
  o.rel_tol = positive(j, "rel_tol", o.rel_tol);
  o.h_fixed = positive(j, "h_fixed", o.h_fixed);
  if (j.contains("max_steps"))
    o.max_steps = j.at("max_steps").get<long>();
  return o;
}

BoundaryData boundary_of(const json &j, double T) {
  BoundaryData b;
  for (const char *k : {"q0", "v0", "qT", "vT"})
    if (!j.contains(k))
      throw ConfigError(std::string("boundary.") + k + " missing");
  b.q0 = vector_of(j.at("q0"), "boundary.q0");
  b.v0 = vector_of(j.at("v0"), "boundary.v0");
  b.qT = vector_of(j.at("qT"), "boundary.qT");
  b.vT = vector_of(j.at("vT"), "boundary.vT");
  b.T = T;
  return b;
}

} // namespace

RunConfig parse_config(const json &doc) {
  if (!doc.is_object())
    throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  try {
    if (!doc.contains("T"))
      throw ConfigError("T missing");
    if (!doc.at("T").is_number())
      throw ConfigError("T must be a number");
    cfg.T = doc.at("T").get<double>();
    if (!(*cfg.T > 0.0))
      throw ConfigError("T must be positive");

    const bool has_name = doc.contains("problem");
    const bool has_lq = doc.contains("lq");
    if (has_name == has_lq)
      throw ConfigError("exactly one of 'problem' and 'lq' must be given");

    if (doc.contains("boundary"))
      cfg.boundary = boundary_of(doc.at("boundary"), *cfg.T);

    if (has_name) {
      cfg.registry = doc.at("problem").get<std::string>();
    } else {
      const json &m = doc.at("lq");
      if (!cfg.boundary)
        throw ConfigError("an LQ problem needs 'boundary'");
      for (const char *k : {"Q1", "Q2", "R", "A1", "A2", "B"})
        if (!m.contains(k))
          throw ConfigError(std::string("lq.") + k + " missing");
      try {
        cfg.lq.emplace(matrix_of(m.at("Q1"), "lq.Q1"),
                       matrix_of(m.at("Q2"), "lq.Q2"),
                       matrix_of(m.at("R"), "lq.R"),
                       matrix_of(m.at("A1"), "lq.A1"),
                       matrix_of(m.at("A2"), "lq.A2"),
                       matrix_of(m.at("B"), "lq.B"), *cfg.boundary);
      } catch (const ConfigError &) {
        throw;
      } catch (const Error &e) {
        throw ConfigError(e.what());
      }
    }

    if (doc.contains("integrator"))
      cfg.shooting.integrator =
          integrator_of(doc.at("integrator"), cfg.shooting.integrator);
    if (doc.contains("jacobi_integrator")) {
      cfg.shooting.jacobi_integrator = integrator_of(
          doc.at("jacobi_integrator"), cfg.shooting.jacobi_integrator);
      cfg.conjugate.bundle.integrator = cfg.shooting.jacobi_integrator;
    }

    if (doc.contains("shooting")) {
      const json &s = doc.at("shooting");
      if (s.contains("z0"))
        cfg.z0 = vector_of(s.at("z0"), "shooting.z0");
      cfg.shooting.tol = positive(s, "tol", cfg.shooting.tol);
      if (s.contains("max_iter")) {
        cfg.shooting.max_iter = s.at("max_iter").get<int>();
        if (cfg.shooting.max_iter < 1)
          throw ConfigError("max_iter must be at least 1");
      }
      if (s.contains("jacobian")) {
        const std::string j = s.at("jacobian").get<std::string>();
        if (j == "finite_difference" || j == "fd")
          cfg.shooting.jacobian = ShootingJacobian::finite_difference;
        else if (j == "variational")
          cfg.shooting.jacobian = ShootingJacobian::variational;
        else
          throw ConfigError("unknown jacobian '" + j + "'");
      }
      if (s.contains("warm_start")) {
        const std::string w = s.at("warm_start").get<std::string>();
        if (w == "none")
          cfg.shooting.warm_start = WarmStart::none;
        else if (w == "linearized")
          cfg.shooting.warm_start = WarmStart::linearized;
        else
          throw ConfigError("unknown warm_start '" + w + "'");
      }
    }

    if (doc.contains("conjugate")) {
      const json &c = doc.at("conjugate");
      if (c.contains("t_skip"))
        cfg.conjugate.search.t_skip = positive(c, "t_skip", 0.0);
      cfg.conjugate.search.tol_t =
          positive(c, "tol_t", cfg.conjugate.search.tol_t);
      if (c.contains("n_scan")) {
        cfg.conjugate.search.n_scan = c.at("n_scan").get<int>();
        if (cfg.conjugate.search.n_scan < 2)
          throw ConfigError("n_scan must be at least 2");
      }
      if (c.contains("det_samples")) {
        cfg.conjugate.det_samples = c.at("det_samples").get<std::size_t>();
        if (cfg.conjugate.det_samples < 1)
          throw ConfigError("det_samples must be positive");
      }
    }
    if (doc.contains("output_samples")) {
      cfg.shooting.output_samples = doc.at("output_samples").get<std::size_t>();
      if (cfg.shooting.output_samples < 1)
        throw ConfigError("output_samples must be positive");
    }
  } catch (const json::exception &e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception &e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

SecondOrderOcp build_problem(const RunConfig &cfg) {
  const int sources = static_cast<int>(cfg.registry.has_value()) +
                      static_cast<int>(cfg.lq.has_value()) +
                      static_cast<int>(cfg.injected.has_value());
  if (sources != 1)
    throw ConfigError("exactly one problem source must be set");

  if (cfg.lq)
    return to_generic(*cfg.lq, "lq");

  SecondOrderOcp p = [&] {
    if (cfg.injected)
      return *cfg.injected;
    try {
      return make_problem(*cfg.registry);
    } catch (const UnknownProblem &e) {
      throw ConfigError(e.what());
    }
  }();
  BoundaryData b = cfg.boundary.value_or(p.boundary());
  if (cfg.T)
    b.T = *cfg.T;
  return p.with_boundary(b);
}

} // namespace lagoc::cli
