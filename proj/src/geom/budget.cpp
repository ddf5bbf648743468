#include "finban/budget.hpp"

#include <cstdlib>

#include "finban/errors.hpp"

namespace finban {

namespace {
thread_local const Budgets* g_scoped = nullptr;
}

const Budgets& budgets() {
  static const Budgets from_env = budgets_from_env();
  return g_scoped ? *g_scoped : from_env;
}

Budgets parse_budgets(const std::string& text, Budgets base) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorKind::InvalidArgument, "budget item without '=': " + item);
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    char* stop = nullptr;
    unsigned long long v = std::strtoull(val.c_str(), &stop, 10);
    if (val.empty() || *stop != '\0') fail(ErrorKind::InvalidArgument, "budget value not an integer: " + item);
    if (key == "dd_max_dim") base.dd_max_dim = v;
    else if (key == "max_vertices") base.max_vertices = v;
    else if (key == "rademacher_max") base.rademacher_max = v;
    else if (key == "tensor_max") base.tensor_max = v;
    else if (key == "tower_max_dim") base.tower_max_dim = v;
    else fail(ErrorKind::InvalidArgument, "unknown budget key: " + key);
  }
  return base;
}

Budgets budgets_from_env() {
  const char* env = std::getenv("FINBAN_BUDGETS");
  if (!env) return Budgets{};
  return parse_budgets(env);
}

BudgetScope::BudgetScope(const Budgets& b) : previous_(g_scoped), current_(b) { g_scoped = &current_; }
BudgetScope::~BudgetScope() { g_scoped = previous_; }

}  // namespace finban
