#pragma once

#include <utility>
#include <vector>

#include "dms/profile.hpp"

namespace dms {

struct QuadratureNode {
    double t;       // strictly inside a profile segment
    double weight;  // positive; weights over all segments sum to 1
};

// Gauss-Legendre nodes on [-1,1]. Computed by Newton iteration on the
// Legendre recurrence; exact to double precision for n <= 64.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

// Per-segment Gauss-Legendre rule for int_0^1 ... dt aligned to the profile
// breakpoints. The integrand is smooth inside each segment (D is linear
// there), so segment alignment is what makes the rule converge fast.
class QuadratureRule {
public:
    QuadratureRule(const DiffractionProfile& profile, int order_per_segment = 16);

    const std::vector<QuadratureNode>& nodes() const { return nodes_; }
    int order() const { return order_; }

private:
    std::vector<QuadratureNode> nodes_;
    int order_;
};

}  // namespace dms
