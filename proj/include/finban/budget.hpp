#pragma once

#include <cstddef>
#include <string>

namespace finban {

// Size limits for the exponential parts of the library. The defaults can be
// overridden per thread with BudgetScope, or process-wide from the
// FINBAN_BUDGETS environment variable (see README).
struct Budgets {
  std::size_t dd_max_dim = 6;       // largest dimension for facet/vertex enumeration
  std::size_t max_vertices = 20000; // cap on vertices/facets/rays of any body
  std::size_t rademacher_max = 20;  // sign-pattern enumeration length
  std::size_t tensor_max = 16;      // left.dim * right.dim for tensor LPs
  std::size_t tower_max_dim = 8;    // largest tower stage dimension
};

const Budgets& budgets();

// Parses "key=value,key=value"; unknown keys raise InvalidArgument.
Budgets parse_budgets(const std::string& text, Budgets base = {});

// Reads FINBAN_BUDGETS if set, otherwise returns defaults.
Budgets budgets_from_env();

class BudgetScope {
 public:
  explicit BudgetScope(const Budgets& b);
  ~BudgetScope();
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

 private:
  const Budgets* previous_;
  Budgets current_;
};

}  // namespace finban
