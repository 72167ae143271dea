#pragma once

#include <string>
#include <vector>

#include "sdg/harness.hpp"
#include "sdg/random.hpp"

namespace sdg::detail {

struct Trial {
  const CheckConfig& cfg;
  std::size_t index;
  Rng rng;
  ContextPtr ctx;
  std::vector<Json>& failures;

  void fail(std::string property, Json instance, Json lhs, Json rhs, std::string lhs_op = {}, std::string rhs_op = {},
            std::string detail = {});
};

using CheckFn = void (*)(Trial&);

struct CheckEntry {
  const char* name;
  CheckFn fn;
};

const std::vector<CheckEntry>& registry();

Json instance_json(const DifferentialForm* form, const Representation* rho, const Microcube* cube);

}  // namespace sdg::detail
