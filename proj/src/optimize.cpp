// Copyright 2026 The qkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qkit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qkit/parallel.hpp"

namespace qkit {

namespace {

using Point = std::vector<double>;

struct Vertex {
  Point x;
  double f;
};

// One simplex descent from x0; stops on value spread <= ftol or budget.
SimplexResult simplex_descent(const Objective& f, const Point& x0, double step, int max_evals,
                              double ftol) {
  const std::size_t n = x0.size();
  SimplexResult out;
  auto eval = [&](const Point& x) {
    ++out.evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<Vertex> s;
  s.reserve(n + 1);
  s.push_back({x0, eval(x0)});
  for (std::size_t i = 0; i < n; ++i) {
    Point x = x0;
    x[i] += step;
    s.push_back({x, eval(x)});
  }

  Point centroid(n), xr(n), xe(n), xc(n);
  auto along = [&](Point& dst, double t) {
    // dst = centroid + t * (centroid - worst)
    const Point& w = s[n].x;
    for (std::size_t i = 0; i < n; ++i) dst[i] = centroid[i] + t * (centroid[i] - w[i]);
  };

  while (true) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (s[n].f - s[0].f <= ftol) {
      out.converged = true;
      break;
    }
    if (out.evals >= max_evals) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += s[k].x[i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    along(xr, 1.0);
    const double fr = eval(xr);
    if (fr < s[0].f) {
      along(xe, 2.0);
      const double fe = eval(xe);
      s[n] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < s[n - 1].f) {
      s[n] = {xr, fr};
      continue;
    }
    bool accepted = false;
    if (fr < s[n].f) {
      along(xc, 0.5);
      const double fc = eval(xc);
      if (fc <= fr) {
        s[n] = {xc, fc};
        accepted = true;
      }
    } else {
      along(xc, -0.5);
      const double fc = eval(xc);
      if (fc < s[n].f) {
        s[n] = {xc, fc};
        accepted = true;
      }
    }
    if (!accepted) {
      for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) s[k].x[i] = s[0].x[i] + 0.5 * (s[k].x[i] - s[0].x[i]);
        s[k].f = eval(s[k].x);
      }
    }
  }
  std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  out.x = s[0].x;
  out.value = s[0].f;
  return out;
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, double step, int max_evals,
                          double ftol) {
  constexpr int kMaxReseeds = 4;
  SimplexResult best;
  best.x = std::move(x0);
  int used = 0;
  for (int round = 0; round <= kMaxReseeds && used < max_evals; ++round) {
    SimplexResult r = simplex_descent(f, best.x, step, max_evals - used, ftol);
    used += r.evals;
    const double previous = best.value;
    if (r.value <= best.value) {
      best.x = std::move(r.x);
      best.value = r.value;
    }
    best.converged = r.converged;
    if (!r.converged) break;
    if (round > 0 && previous - best.value <= ftol) break;
    step *= 0.5;
  }
  best.evals = used;
  return best;
}

ComplexMatrix hermitian_from_params(std::span<const double> p, int dim) {
  ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) g(i, i) = p[k++];
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const Complex z(p[k], p[k + 1]);
      k += 2;
      g(i, j) = z;
      g(j, i) = std::conj(z);
    }
  }
  return g;
}

UnitarySearchResult minimize_over_unitaries(
    int dim, const std::function<double(const ComplexMatrix&)>& f,
    const std::vector<ComplexMatrix>& seeds, const Budget& budget, const Rng& rng, double floor,
    double floor_tol) {
  constexpr int kBatch = 8;
  constexpr double kStep = 0.5;
  const int nparams = dim * dim;
  const int restarts = std::max(1, budget.restarts);

  struct Run {
    ComplexMatrix unitary;
    SimplexResult result;
  };
  std::vector<Run> runs(restarts);

  auto run_start = [&](int k) {
    ComplexMatrix ref;
    if (k < static_cast<int>(seeds.size())) {
      ref = seeds[k];
    } else {
      Rng child = rng.split(static_cast<std::uint64_t>(k));
      ref = random_unitary(dim, child);
    }
    auto objective = [&](std::span<const double> p) {
      return f(ref * exp_i_hermitian(hermitian_from_params(p, dim)));
    };
    SimplexResult r = nelder_mead(objective, std::vector<double>(nparams, 0.0), kStep,
                                  budget.max_evals, budget.ftol);
    runs[k].unitary = ref * exp_i_hermitian(hermitian_from_params(r.x, dim));
    runs[k].result = std::move(r);
  };

  UnitarySearchResult out;
  int best = -1;
  for (int start = 0; start < restarts; start += kBatch) {
    const int count = std::min(kBatch, restarts - start);
    parallel_for(count, [&](int i) { run_start(start + i); });
    for (int k = start; k < start + count; ++k) {
      out.evals += runs[k].result.evals;
      out.restart_values.push_back(runs[k].result.value);
      if (best < 0 || runs[k].result.value < runs[best].result.value) best = k;
    }
    out.restarts_run = start + count;
    if (runs[best].result.value <= floor + floor_tol) break;
  }

  out.unitary = runs[best].unitary;
  out.value = runs[best].result.value;
  const bool at_floor = out.value <= floor + floor_tol;
  std::vector<double> sorted = out.restart_values;
  std::sort(sorted.begin(), sorted.end());
  const bool agreement = sorted.size() >= 2 && sorted[1] - sorted[0] <= kRestartAgreement;
  out.converged = runs[best].result.converged && (at_floor || agreement);
  return out;
}

ComplexMatrix polar_isometry(const ComplexMatrix& y) {
  const ComplexMatrix gram = y.adjoint() * y;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram);
  RealVector inv_sqrt = solver.eigenvalues().array().max(1e-300).rsqrt();
  return y * (solver.eigenvectors() * inv_sqrt.asDiagonal() * solver.eigenvectors().adjoint());
}

StiefelResult minimize_on_stiefel(const StiefelObjective& f, ComplexMatrix x0, int max_iters,
                                  double ftol, double floor) {
  constexpr double kArmijo = 1e-4;
  constexpr int kStallLimit = 8;
  StiefelResult out;
  out.x = std::move(x0);
  ComplexMatrix grad;
  out.value = f(out.x, &grad);
  double step = 1.0;
  int stalled = 0;

  for (out.iterations = 0; out.iterations < max_iters; ++out.iterations) {
    if (out.value <= floor + 1e-15) {
      out.converged = true;
      break;
    }
    // Project onto the tangent space at X.
    const ComplexMatrix xg = out.x.adjoint() * grad;
    const ComplexMatrix direction = grad - out.x * (0.5 * (xg + xg.adjoint()));
    const double slope = direction.squaredNorm();
    if (slope < 1e-28) {
      out.converged = true;
      break;
    }

    bool moved = false;
    ComplexMatrix trial_grad;
    for (int backtrack = 0; backtrack < 60; ++backtrack) {
      ComplexMatrix trial = polar_isometry(out.x - step * direction);
      const double v = f(trial, &trial_grad);
      if (v <= out.value - kArmijo * step * slope) {
        const double decrease = out.value - v;
        out.x = std::move(trial);
        out.value = v;
        grad = trial_grad;
        moved = true;
        stalled = decrease <= ftol ? stalled + 1 : 0;
        step *= 2.0;
        break;
      }
      step *= 0.5;
    }
    if (!moved || stalled >= kStallLimit) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace qkit
