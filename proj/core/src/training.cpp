#include "hcr/training.hpp"

#include <string>

#include "hcr/error.hpp"

namespace hcr {

TrainResult cg_train(const MlpModel& m, std::span<const Example> data,
                     const TrainConfig& cfg) {
  if (data.empty()) throw Error("empty training set");
  for (const Example& ex : data) {
    if (ex.input.size() != m.n_in())
      throw Error("feature length " + std::to_string(ex.input.size()) +
                  " does not match model input length " +
                  std::to_string(m.n_in()));
  }

  const auto objective = [&](std::span<const double> x, std::span<double> grad) {
    return loss_at(m, x, data, grad);
  };
  const auto loss_only = [&](std::span<const double> x) {
    return loss_at(m, x, data);
  };
  const std::vector<double> x0(m.params().begin(), m.params().end());
  CgResult cg = minimize_cg(objective, x0, cfg, loss_only);

  TrainResult out{m, std::move(cg.trace), cg.converged};
  out.model.set_params(cg.state.x);
  if (!out.model.all_finite()) throw Error("training diverged");
  return out;
}

}  // namespace hcr
