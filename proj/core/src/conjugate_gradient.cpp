#include "hcr/conjugate_gradient.hpp"

#include <algorithm>
#include <cmath>

#include "hcr/error.hpp"

namespace hcr {

void TrainConfig::validate() const {
  if (max_iters < 0) throw Error("max_iters must be >= 0");
  if (!(grad_tol > 0.0)) throw Error("grad_tol must be > 0");
  if (!(line_search_tol > 0.0)) throw Error("line_search_tol must be > 0");
  if (line_search_max_evals < 3) throw Error("line_search_max_evals must be >= 3");
  if (!(alpha_max > 0.0)) throw Error("alpha_max must be > 0");
  if (!(alpha_cap >= alpha_max)) throw Error("alpha_cap must be >= alpha_max");
}

namespace {

double checked(double v) {
  if (!std::isfinite(v)) throw Error("divergent objective");
  return v;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// out = x + alpha * p; the single definition keeps trial points in the line
// search bit-identical to the accepted update.
void step_into(std::span<double> out, std::span<const double> x, double alpha,
               std::span<const double> p) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + alpha * p[i];
}

}  // namespace

double line_search(const std::function<double(double)>& f, double alpha_max,
                   const TrainConfig& cfg) {
  if (!(alpha_max > 0.0)) throw Error("alpha_max must be > 0");
  const double f0 = checked(f(0.0));
  int evals = 1;

  constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt(5)) / 2
  const double tol = cfg.line_search_tol;
  double a = 0.0, b = alpha_max;
  double x = a + kGolden * (b - a);
  double w = x, v = x;
  double fx = checked(f(x));
  ++evals;
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  double best = fx <= f0 ? x : 0.0;
  double f_best = std::min(fx, f0);

  while (evals < cfg.line_search_max_evals) {
    const double mid = 0.5 * (a + b);
    // Stop once the bracket is narrower than tol.
    if (b - a < tol) break;
    const double tol1 = 0.25 * tol;
    const double tol2 = 2.0 * tol1;

    bool golden = true;
    if (std::abs(e) > tol1) {
      // Parabola through (v, fv), (w, fw), (x, fx).
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < mid ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= mid ? a : b) - x;
      d = kGolden * e;
    }
    const double u =
        std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = checked(f(u));
    ++evals;
    if (fu < f_best) {
      f_best = fu;
      best = u;
    }

    if (fu <= fx) {
      (u >= x ? a : b) = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }

  // The interior search never samples the end of the interval; a minimum on
  // the boundary is picked up here.
  if (alpha_max - b < tol) {
    const double fb = checked(f(alpha_max));
    if (fb < f_best) {
      f_best = fb;
      best = alpha_max;
    }
  }
  return f_best <= f0 ? best : 0.0;
}

double search_step(const std::function<double(double)>& f, double f0,
                   const TrainConfig& cfg) {
  double upper = cfg.alpha_max;
  double f_upper = checked(f(upper));
  if (f_upper < f0) {
    while (upper < cfg.alpha_cap) {
      const double next = std::min(2.0 * upper, cfg.alpha_cap);
      const double f_next = checked(f(next));
      upper = next;
      if (!(f_next < f_upper)) break;
      f_upper = f_next;
    }
  }
  return line_search(f, upper, cfg);
}

CgResult minimize_cg(const ObjectiveWithGradient& objective,
                     std::vector<double> x0, const TrainConfig& cfg,
                     const std::function<double(std::span<const double>)>&
                         loss_only) {
  cfg.validate();
  const std::size_t n = x0.size();
  if (n == 0) throw Error("empty parameter vector");
  const std::size_t restart_every = cfg.restart_every ? cfg.restart_every : n;

  CgResult result;
  CgState& s = result.state;
  s.x = std::move(x0);
  s.g.assign(n, 0.0);
  s.p.assign(n, 0.0);

  std::vector<double> trial(n), scratch_grad(n), g_prev(n);
  const auto loss_along = [&](double alpha) {
    step_into(trial, s.x, alpha, s.p);
    return loss_only ? loss_only(trial) : objective(trial, scratch_grad);
  };

  double loss = objective(s.x, s.g);
  if (!std::isfinite(loss)) throw Error("training diverged");
  bool force_restart = true;
  std::size_t since_restart = 0;

  for (int k = 0;; ++k) {
    s.iter = k;
    CgIteration rec;
    rec.iter = k;
    rec.loss = loss;
    rec.grad_norm = std::sqrt(dot(s.g, s.g));
    if (rec.grad_norm < cfg.grad_tol) {
      result.converged = true;
      result.trace.push_back(rec);
      break;
    }
    if (k >= cfg.max_iters) {
      result.trace.push_back(rec);
      break;
    }

    bool restart = force_restart || since_restart >= restart_every;
    double beta = 0.0;
    if (!restart) {
      const double denom = dot(g_prev, g_prev);
      double num = 0.0;
      for (std::size_t i = 0; i < n; ++i) num += s.g[i] * (s.g[i] - g_prev[i]);
      beta = denom > 0.0 ? std::max(0.0, num / denom) : 0.0;
      for (std::size_t i = 0; i < n; ++i) s.p[i] = -s.g[i] + beta * s.p[i];
      if (dot(s.p, s.g) >= 0.0) restart = true;
    }
    if (restart) {
      beta = 0.0;
      for (std::size_t i = 0; i < n; ++i) s.p[i] = -s.g[i];
      since_restart = 0;
    }
    s.beta = beta;
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      residual = std::max(residual, std::abs(s.p[i] + s.g[i]));

    s.alpha = search_step(loss_along, loss, cfg);
    rec.alpha = s.alpha;
    rec.beta = beta;
    rec.restarted = restart;
    rec.direction_residual = residual;
    result.trace.push_back(rec);

    if (s.alpha == 0.0) {
      // No decrease along -g means the line search cannot make progress.
      if (restart) break;
      force_restart = true;
      continue;
    }
    step_into(s.x, s.x, s.alpha, s.p);
    g_prev = s.g;
    loss = objective(s.x, s.g);
    if (!std::isfinite(loss)) throw Error("training diverged");
    force_restart = false;
    ++since_restart;
  }
  return result;
}

}  // namespace hcr
