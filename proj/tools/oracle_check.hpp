#pragma once

#include <json.hpp>

#include <cstdint>

namespace alexinv::cli {

/// Cross-validation suite: every check pairs two independent computations.
/// Returns {"checks": [...], "ok": bool}.
nlohmann::ordered_json run_oracle_check(std::uint32_t seed, std::size_t presentations);

} // namespace alexinv::cli
