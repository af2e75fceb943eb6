#pragma once

#include "risch/parametric.hpp"

#include <optional>
#include <vector>

namespace risch::detail {

struct EngineParam {
    std::vector<TowerElem> c;
    TowerElem g;  // sum c_i f_i - D(part) - sum D(logs)
    TowerElem part;
    std::vector<RootSum> logs;
};

/// Failure bookkeeping for a single integrand.
struct EngineLog {
    IntegrationTrace trace;
    std::optional<Certificate> cert;
    std::optional<EngineParam> snapshot;  // top-level state at the failing step
};

struct EngineResult {
    std::vector<EngineParam> params;
    bool complete = true;
};

EngineResult run_engine(const std::vector<TowerElem>& fs, int level, bool allow_logs, const Tower& tower,
                        const IntegrateOptions& opt, EngineLog* log);

}  // namespace risch::detail
