// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellsim/chvm/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bellsim/common/error.hpp"
#include "bellsim/common/parallel.hpp"
#include "bellsim/common/rng.hpp"

namespace bellsim::chvm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Params {
  std::size_t k = 0, m = 0;
  std::vector<double> src;
  std::array<std::vector<double>, 4> inst;
  std::array<std::vector<std::int8_t>, 4> out;

  int at(std::size_t o, std::size_t l, std::size_t a) const { return out[o][l * m + a]; }
};

struct Gradient {
  std::vector<double> src;
  std::array<std::vector<double>, 4> inst;
};

struct Targets {
  std::array<double, 4> pair{};
  bool has_single = false;
  std::array<double, 4> single{};
};

class Objective {
 public:
  Objective(const Targets& t, double min_mass) : t_(t), min_mass_(min_mass) {}

  std::size_t evaluations = 0;

  double value(const Params& p) { return evaluate(p, nullptr); }
  double value_and_gradient(const Params& p, Gradient& g) { return evaluate(p, &g); }

 private:
  double evaluate(const Params& p, Gradient* grad) {
    ++evaluations;
    const std::size_t k = p.k;
    std::array<std::vector<double>, 4> mean, det;
    for (std::size_t o = 0; o < 4; ++o) {
      mean[o].assign(k, 0.0);
      det[o].assign(k, 0.0);
      for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t a = 0; a < p.m; ++a) {
          const int v = p.at(o, l, a);
          mean[o][l] += v * p.inst[o][a];
          det[o][l] += std::abs(v) * p.inst[o][a];
        }
      }
    }
    if (grad) {
      grad->src.assign(k * k, 0.0);
      for (std::size_t o = 0; o < 4; ++o) grad->inst[o].assign(p.m, 0.0);
    }
    double r = 0;
    for (std::size_t s = 0; s < 4; ++s) {
      const std::size_t i = s / 2, j = 2 + s % 2;
      double num = 0, den = 0, sa = 0, sb = 0;
      for (std::size_t l1 = 0; l1 < k; ++l1) {
        for (std::size_t l2 = 0; l2 < k; ++l2) {
          const double w = p.src[l1 * k + l2];
          num += w * mean[i][l1] * mean[j][l2];
          den += w * det[i][l1] * det[j][l2];
          sa += w * mean[i][l1] * det[j][l2];
          sb += w * det[i][l1] * mean[j][l2];
        }
      }
      if (!(den >= min_mass_)) return kInf;
      const double e = num / den, la = sa / den, lb = sb / den;
      const double de = e - t_.pair[s];
      const double da = t_.has_single ? la - t_.single[i] : 0.0;
      const double db = t_.has_single ? lb - t_.single[j] : 0.0;
      r += de * de + da * da + db * db;
      if (!grad) continue;
      const double g_num = 2 * de / den, g_sa = 2 * da / den, g_sb = 2 * db / den;
      const double g_den = -2 * (de * e + da * la + db * lb) / den;
      std::vector<double> gm_i(k, 0.0), gd_i(k, 0.0), gm_j(k, 0.0), gd_j(k, 0.0);
      for (std::size_t l1 = 0; l1 < k; ++l1) {
        for (std::size_t l2 = 0; l2 < k; ++l2) {
          const double w = p.src[l1 * k + l2];
          grad->src[l1 * k + l2] += g_num * mean[i][l1] * mean[j][l2] + g_sa * mean[i][l1] * det[j][l2] +
                                    g_sb * det[i][l1] * mean[j][l2] + g_den * det[i][l1] * det[j][l2];
          gm_i[l1] += w * (g_num * mean[j][l2] + g_sa * det[j][l2]);
          gd_i[l1] += w * (g_sb * mean[j][l2] + g_den * det[j][l2]);
          gm_j[l2] += w * (g_num * mean[i][l1] + g_sb * det[i][l1]);
          gd_j[l2] += w * (g_sa * mean[i][l1] + g_den * det[i][l1]);
        }
      }
      for (std::size_t a = 0; a < p.m; ++a) {
        for (std::size_t l = 0; l < k; ++l) {
          const int vi = p.at(i, l, a), vj = p.at(j, l, a);
          grad->inst[i][a] += vi * gm_i[l] + std::abs(vi) * gd_i[l];
          grad->inst[j][a] += vj * gm_j[l] + std::abs(vj) * gd_j[l];
        }
      }
    }
    return r;
  }

  Targets t_;
  double min_mass_;
};

// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0, theta = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  for (auto& x : v) x = std::max(0.0, x - theta);
}

std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double total = 0;
  for (auto& x : v) total += (x = -std::log(rng.uniform_open_closed()));
  for (auto& x : v) x /= total;
  return v;
}

Params random_params(Rng& rng, std::size_t k, std::size_t m, double zero_rate) {
  Params p;
  p.k = k;
  p.m = m;
  p.src = random_simplex(rng, k * k);
  for (std::size_t o = 0; o < 4; ++o) {
    p.inst[o] = random_simplex(rng, m);
    p.out[o].resize(k * m);
    for (auto& v : p.out[o]) v = static_cast<std::int8_t>(rng.uniform01() < zero_rate ? 0 : rng.sign());
  }
  return p;
}

Params step(const Params& p, const Gradient& g, double alpha) {
  Params q = p;
  for (std::size_t i = 0; i < q.src.size(); ++i) q.src[i] -= alpha * g.src[i];
  project_simplex(q.src);
  for (std::size_t o = 0; o < 4; ++o) {
    for (std::size_t a = 0; a < q.m; ++a) q.inst[o][a] -= alpha * g.inst[o][a];
    project_simplex(q.inst[o]);
  }
  return q;
}

struct RestartResult {
  Params params;
  double residual = kInf;
  std::vector<double> trace;
  std::size_t evaluations = 0;
};

RestartResult run_restart(const Targets& t, const FitOptions& opt, std::size_t restart, std::size_t budget) {
  Rng rng(derive_seed(opt.seed, restart));
  static constexpr std::array<double, 4> kZeroRates = {0.0, 0.2, 0.35, 0.5};
  Objective f(t, opt.min_mass);
  RestartResult out;
  Params p = random_params(rng, opt.k, opt.m, kZeroRates[restart % kZeroRates.size()]);
  double r = f.value(p);
  // Re-draw until every pair retains mass.
  for (int tries = 0; r == kInf && tries < 100 && f.evaluations < budget; ++tries) {
    p = random_params(rng, opt.k, opt.m, kZeroRates[restart % kZeroRates.size()]);
    r = f.value(p);
  }
  if (r == kInf) {
    out.evaluations = f.evaluations;
    return out;
  }
  out.trace.push_back(r);

  auto descend = [&] {
    double alpha = 0.1;
    Gradient g;
    while (f.evaluations < budget && r > 0) {
      f.value_and_gradient(p, g);
      bool moved = false;
      while (alpha > 1e-14 && f.evaluations < budget) {
        Params q = step(p, g, alpha);
        const double rq = f.value(q);
        if (rq < r) {
          p = std::move(q);
          r = rq;
          out.trace.push_back(r);
          alpha *= 2;
          moved = true;
          break;
        }
        alpha /= 2;
      }
      if (!moved) break;
      if (out.trace.size() > 1 && out.trace[out.trace.size() - 2] - r < 1e-15 * std::max(1.0, r)) break;
    }
  };

  descend();
  bool improved = true;
  while (improved && f.evaluations < budget && r > 0) {
    improved = false;
    for (std::size_t o = 0; o < 4 && !improved; ++o) {
      for (std::size_t c = 0; c < p.out[o].size() && !improved; ++c) {
        const std::int8_t original = p.out[o][c];
        for (std::int8_t v : {std::int8_t(-1), std::int8_t(0), std::int8_t(1)}) {
          if (v == original || f.evaluations >= budget) continue;
          p.out[o][c] = v;
          const double rv = f.value(p);
          if (rv < r) {
            r = rv;
            out.trace.push_back(r);
            improved = true;
            break;
          }
          p.out[o][c] = original;
        }
      }
    }
    if (improved) descend();
  }
  out.params = std::move(p);
  out.residual = r;
  out.evaluations = f.evaluations;
  return out;
}

std::vector<Rational> to_exact_simplex(const std::vector<double>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  Rational total = 0;
  for (double x : v) {
    out.push_back(exact_from_double(std::max(0.0, x)));
    total += out.back();
  }
  for (auto& x : out) x /= total;
  return out;
}

ContextualModel to_model(const Params& p) {
  ContextualModel model;
  model.k = p.k;
  model.m = p.m;
  model.source = to_exact_simplex(p.src);
  for (std::size_t o = 0; o < 4; ++o) {
    model.instrument[o] = to_exact_simplex(p.inst[o]);
    model.outcome[o] = p.out[o];
  }
  return model;
}

Targets make_targets(const ineq::CorrelationSet& c) {
  c.validate();
  Targets t;
  t.pair = c.pair;
  if (c.single) {
    t.has_single = true;
    t.single = *c.single;
  }
  return t;
}

}  // namespace

double fit_residual(const ContextualModel& model, const ineq::CorrelationSet& targets) {
  model.validate();
  Params p;
  p.k = model.k;
  p.m = model.m;
  for (const auto& w : model.source) p.src.push_back(to_double(w));
  for (std::size_t o = 0; o < 4; ++o) {
    for (const auto& w : model.instrument[o]) p.inst[o].push_back(to_double(w));
    p.out[o] = model.outcome[o];
  }
  Objective f(make_targets(targets), 0.0);
  const double r = f.value(p);
  return r;
}

FitResult fit_contextual(const ineq::CorrelationSet& targets, const FitOptions& options) {
  if (options.k == 0 || options.m == 0) throw Error("fit: k and m must be at least 1");
  if (options.restarts == 0) throw Error("fit: at least one restart is required");
  const Targets t = make_targets(targets);
  const std::size_t per_restart = std::max<std::size_t>(1, options.budget / options.restarts);
  std::vector<RestartResult> runs(options.restarts);
  parallel_for(options.restarts, options.threads,
               [&](std::size_t r) { runs[r] = run_restart(t, options, r, per_restart); });

  FitResult result;
  std::size_t best = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    result.evaluations += runs[r].evaluations;
    result.restart_best.push_back(runs[r].residual);
    if (runs[r].residual < runs[best].residual) best = r;
  }
  if (runs[best].residual == kInf) throw Error("fit: no restart found a model with positive retained mass");
  result.winning_restart = best;
  result.trace = runs[best].trace;
  result.model = to_model(runs[best].params);
  result.residual = fit_residual(result.model, targets);
  return result;
}

}  // namespace bellsim::chvm
