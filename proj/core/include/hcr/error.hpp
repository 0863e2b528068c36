#pragma once

#include <stdexcept>
#include <string>

namespace hcr {

// All library failures surface as hcr::Error; the message is the contract
// (tests and the CLI match on it).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hcr
