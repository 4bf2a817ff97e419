// check_report.hpp
#pragma once

#include <Eigen/Core>

#include <string>

namespace khess {

/// Outcome of a pointwise inequality certification over profile nodes.
///
/// Slack is positive when the inequality holds. `min_rel_slack` divides each
/// node's slack by 1 + |reference side| and decides `passed`;
/// `min_slack` is the raw slack at that same worst node.
struct CheckReport {
    std::string name;
    bool passed = true;
    double min_slack = 0.0;
    double min_rel_slack = 0.0;
    Eigen::Index worst_node = -1;
    Eigen::Index node_count = 0;
    double tol = 0.0;
};

} // namespace khess
