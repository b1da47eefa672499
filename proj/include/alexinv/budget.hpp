#pragma once

#include <cstddef>
#include <string>

namespace alexinv {

/// Memory budget in bytes. Read once from ALEXINV_MEMORY_BUDGET_MB (default 4096 MB).
std::size_t memory_budget_bytes();

/// Throws BudgetExceeded when an estimated allocation does not fit.
void require_budget(std::size_t estimated_bytes, const std::string& what);

} // namespace alexinv
