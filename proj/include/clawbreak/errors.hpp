#pragma once

#include <stdexcept>
#include <string>

namespace clawbreak {

struct UnknownTransceiver : std::runtime_error {
  explicit UnknownTransceiver(int id)
      : std::runtime_error("unknown transceiver id " + std::to_string(id)), id(id) {}
  int id;
};

/// A transceiver has more neighbors than the configured cap K; enumerating its
/// transmissions would blow up exponentially.
struct NeighborCapExceeded : std::runtime_error {
  NeighborCapExceeded(int id, int count, int cap)
      : std::runtime_error("transceiver " + std::to_string(id) + " has " +
                           std::to_string(count) + " neighbors, cap is " + std::to_string(cap)),
        id(id),
        count(count),
        cap(cap) {}
  int id;
  int count;
  int cap;
};

struct SpecViolation : std::runtime_error {
  explicit SpecViolation(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidPermutation : std::runtime_error {
  explicit InvalidPermutation(const std::string& what) : std::runtime_error(what) {}
};

struct EdgeAlreadyPresent : std::runtime_error {
  EdgeAlreadyPresent(int u, int v)
      : std::runtime_error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                           ") already present") {}
};

/// Exact search ran out of its node-expansion budget.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(long long budget)
      : std::runtime_error("exact search exceeded node budget " + std::to_string(budget)),
        budget(budget) {}
  long long budget;
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace clawbreak
