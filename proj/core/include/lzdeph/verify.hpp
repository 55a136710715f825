#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lzdeph {

/// Outcome of one named property: worst measured value against its threshold.
struct PropertyCheck {
    std::string suite;
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    std::size_t instances = 0;
    bool pass = false;
};

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs kernel | transport | invariant | contraction | residual | all.
/// Randomized suites draw 1000 instances from a generator seeded with `seed`.
/// Throws InvalidArgument for an unknown name.
std::vector<PropertyCheck> run_suite(std::string_view suite, std::uint64_t seed,
                                     std::size_t instances = 1000);

}  // namespace lzdeph
