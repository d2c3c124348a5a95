#pragma once
#include <stdexcept>
#include <string>
#include <utility>

namespace tilescope {

// Raised when a proof-following algorithm cannot complete a step that its
// hypotheses (min degree slack, template-freeness) should guarantee.
// Contract violations on inputs use std::invalid_argument instead.
class HypothesisError : public std::runtime_error {
public:
    HypothesisError(std::string step, std::string detail)
        : std::runtime_error(step + ": " + detail),
          step_(std::move(step)),
          detail_(std::move(detail)) {}

    const std::string& step() const { return step_; }
    const std::string& detail() const { return detail_; }

private:
    std::string step_;
    std::string detail_;
};

} // namespace tilescope
