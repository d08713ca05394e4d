#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "privcd/domain.hpp"
#include "privcd/geometric.hpp"
#include "privcd/krr.hpp"

namespace privcd {

// Measured privacy diagnostics. ldp_eps is the classical worst-case log
// ratio max ln P(y|x1)/P(y|x2); dpriv_eps divides each ratio by the metric
// distance d(x1, x2). Either can be +infinity when a zero probability meets
// a nonzero counterpart.
struct AuditReport {
    double ldp_eps = 0.0;
    double dpriv_eps = 0.0;
};

// Enumerable view of a channel over a flat index space of size K.
struct ChannelView {
    std::uint64_t size = 0;
    std::function<double(std::uint64_t x, std::uint64_t y)> prob;
};

ChannelView channel_of(const KrrParams& params);
ChannelView channel_of(const BoundedGeometric& geo);

// Product of independent per-attribute channels over the flattened joint
// domain (for auditing C-wise mechanisms as one record-level channel).
ChannelView product_channel(const Domain& domain, std::vector<ChannelView> per_attribute);

// Enumeration caps keep the audits at diagnostic scale: the log-ratio scans
// are O(K^2), the metric scan O(K^3).
inline constexpr std::uint64_t kAuditPairCap = 16384;
inline constexpr std::uint64_t kAuditTripleCap = 512;

double ldp_epsilon(const ChannelView& channel);
double dpriv_epsilon(const ChannelView& channel, const Domain& domain, NormKind norm);

// Probability that a Bayes attacker with a uniform prior recovers the true
// input from one report: sum_y max_x P(y|x) / K.
double bayes_attacker_success(const ChannelView& channel);

// k-RR is analytic: both epsilons equal ln(p/q) (the grid metric has unit
// minimum distance).
AuditReport audit_effective_eps(const KrrParams& params);
AuditReport audit_effective_eps(const BoundedGeometric& geo);

}  // namespace privcd
