#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hcr {

struct TrainConfig {
  int max_iters = 500;
  double grad_tol = 1e-6;         // stop once ||g||_2 < grad_tol
  std::size_t restart_every = 0;  // 0 means "parameter count"
  double line_search_tol = 1e-4;  // absolute bracket width in alpha
  int line_search_max_evals = 40;
  double alpha_max = 1.0;         // initial upper end of the step bracket
  double alpha_cap = 1024.0;      // bracket expansion stops here
  std::uint64_t seed = 1;         // weight initialization

  /// Throws hcr::Error naming the first invalid field.
  void validate() const;
};

/// Minimizes f on [0, alpha_max]: golden-section bracketing, accelerated by
/// parabolic interpolation when the fitted step is safe (Brent's bounded
/// minimizer). Stops when the bracket is narrower than cfg.line_search_tol or
/// the evaluation budget is spent. The returned alpha always satisfies
/// f(alpha) <= f(0); alpha = 0 when nothing better was found.
/// Throws "divergent objective" on a non-finite value.
double line_search(const std::function<double(double)>& f, double alpha_max,
                   const TrainConfig& cfg);

/// Picks the bracket for line_search(): starting at cfg.alpha_max, doubles
/// while the objective still decreases past the boundary (up to
/// cfg.alpha_cap), then searches the bracket. `f0` is f(0).
double search_step(const std::function<double(double)>& f, double f0,
                   const TrainConfig& cfg);

/// Iterate of the conjugate-gradient recurrence
///   p_0 = -g_0,  x_{k+1} = x_k + alpha_k p_k,  p_k = -g_k + beta_k p_{k-1}.
struct CgState {
  std::vector<double> x;
  std::vector<double> g;
  std::vector<double> p;
  double alpha = 0.0;
  double beta = 0.0;
  int iter = 0;
};

struct CgIteration {
  int iter = 0;
  double loss = 0.0;
  double grad_norm = 0.0;
  double alpha = 0.0;      // step taken from this iterate (0 on the last entry)
  double beta = 0.0;
  bool restarted = false;  // p was reset to -g (always true at iter 0)
  double direction_residual = 0.0;  // max_i |p_i + g_i|
};

struct CgResult {
  CgState state;
  std::vector<CgIteration> trace;
  bool converged = false;  // gradient tolerance reached
};

/// Loss and gradient at x; `grad` has x.size() entries.
using ObjectiveWithGradient =
    std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Polak-Ribiere-plus nonlinear CG with forced restarts every
/// cfg.restart_every iterations and whenever p_k is not a descent direction.
/// If `loss_only` is empty the line search calls `objective` with a scratch
/// gradient. Throws "training diverged" on a non-finite loss.
CgResult minimize_cg(const ObjectiveWithGradient& objective,
                     std::vector<double> x0, const TrainConfig& cfg,
                     const std::function<double(std::span<const double>)>&
                         loss_only = {});

}  // namespace hcr
