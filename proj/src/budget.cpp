#include "alexinv/budget.hpp"

#include "alexinv/errors.hpp"

#include <cstdlib>

namespace alexinv {

std::size_t memory_budget_bytes() {
    static const std::size_t bytes = [] {
        std::size_t mb = 4096;
        if (const char* env = std::getenv("ALEXINV_MEMORY_BUDGET_MB")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && v > 0)
                mb = static_cast<std::size_t>(v);
        }
        return mb * 1024 * 1024;
    }();
    return bytes;
}

void require_budget(std::size_t estimated_bytes, const std::string& what) {
    if (estimated_bytes > memory_budget_bytes())
        throw BudgetExceeded(what + " needs about " + std::to_string(estimated_bytes >> 20) + " MB, budget is " +
                             std::to_string(memory_budget_bytes() >> 20) + " MB (ALEXINV_MEMORY_BUDGET_MB)");
}

} // namespace alexinv
