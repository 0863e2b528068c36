#pragma once

#include <span>
#include <vector>

#include "hcr/conjugate_gradient.hpp"
#include "hcr/mlp.hpp"

namespace hcr {

struct TrainResult {
  MlpModel model;
  std::vector<CgIteration> trace;
  bool converged = false;
};

/// Full-batch conjugate-gradient training of every weight and bias of `m`
/// on the mean squared error. Throws on an empty set, input-length mismatch
/// or a non-finite loss ("training diverged").
TrainResult cg_train(const MlpModel& m, std::span<const Example> data,
                     const TrainConfig& cfg);

}  // namespace hcr
