#include "privcd/audit.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace privcd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_cap(std::uint64_t size, std::uint64_t cap, const char* who) {
    if (size == 0) {
        throw std::invalid_argument(std::string(who) + ": empty channel");
    }
    if (size > cap) {
        throw std::invalid_argument(std::string(who) + ": domain too large to enumerate");
    }
}

}  // namespace

ChannelView channel_of(const KrrParams& params) {
    ChannelView view;
    view.size = params.k;
    view.prob = [params](std::uint64_t x, std::uint64_t y) {
        return x == y ? params.p : params.q;
    };
    return view;
}

ChannelView channel_of(const BoundedGeometric& geo) {
    auto combined = geo.box().combined_size();
    if (!combined.has_value()) {
        throw std::invalid_argument("channel_of: geometric domain oversized");
    }
    ChannelView view;
    view.size = *combined;
    // Copies share the solved-law cache, so the view owns its mechanism and
    // stays valid past the caller's temporary.
    view.prob = [geo, box = geo.box()](std::uint64_t x, std::uint64_t y) {
        return geo.prob(unflatten_index(box, x), unflatten_index(box, y));
    };
    return view;
}

ChannelView product_channel(const Domain& domain, std::vector<ChannelView> per_attribute) {
    if (per_attribute.size() != domain.arity()) {
        throw std::invalid_argument("product_channel: one channel per attribute required");
    }
    for (std::size_t i = 0; i < domain.arity(); ++i) {
        if (per_attribute[i].size != static_cast<std::uint64_t>(domain.dims[i])) {
            throw std::invalid_argument("product_channel: channel/attribute size mismatch");
        }
    }
    auto combined = domain.combined_size();
    if (!combined.has_value()) {
        throw std::invalid_argument("product_channel: combined domain oversized");
    }
    ChannelView view;
    view.size = *combined;
    auto channels = std::make_shared<std::vector<ChannelView>>(std::move(per_attribute));
    view.prob = [domain, channels](std::uint64_t x, std::uint64_t y) {
        Record rx = unflatten_index(domain, x);
        Record ry = unflatten_index(domain, y);
        double product = 1.0;
        for (std::size_t i = 0; i < rx.size(); ++i) {
            product *= (*channels)[i].prob(static_cast<std::uint64_t>(rx[i]),
                                           static_cast<std::uint64_t>(ry[i]));
        }
        return product;
    };
    return view;
}

double ldp_epsilon(const ChannelView& channel) {
    check_cap(channel.size, kAuditPairCap, "ldp_epsilon");
    double worst = 0.0;
    for (std::uint64_t y = 0; y < channel.size; ++y) {
        double hi = -kInf;
        double lo = kInf;
        for (std::uint64_t x = 0; x < channel.size; ++x) {
            double p = channel.prob(x, y);
            hi = std::max(hi, p);
            lo = std::min(lo, p);
        }
        if (hi > 0.0 && lo == 0.0) return kInf;
        if (hi > 0.0) worst = std::max(worst, std::log(hi / lo));
    }
    return worst;
}

double dpriv_epsilon(const ChannelView& channel, const Domain& domain, NormKind norm) {
    check_cap(channel.size, kAuditTripleCap, "dpriv_epsilon");
    auto combined = domain.combined_size();
    if (!combined.has_value() || *combined != channel.size) {
        throw std::invalid_argument("dpriv_epsilon: channel/domain size mismatch");
    }
    std::vector<Record> points;
    points.reserve(channel.size);
    for (std::uint64_t i = 0; i < channel.size; ++i) {
        points.push_back(unflatten_index(domain, i));
    }
    double worst = 0.0;
    for (std::uint64_t x1 = 0; x1 < channel.size; ++x1) {
        for (std::uint64_t x2 = 0; x2 < channel.size; ++x2) {
            if (x1 == x2) continue;
            double dist = grid_distance(norm, points[x1], points[x2]);
            for (std::uint64_t y = 0; y < channel.size; ++y) {
                double p1 = channel.prob(x1, y);
                double p2 = channel.prob(x2, y);
                if (p1 > 0.0 && p2 == 0.0) return kInf;
                if (p1 <= 0.0) continue;
                worst = std::max(worst, std::log(p1 / p2) / dist);
            }
        }
    }
    return worst;
}

double bayes_attacker_success(const ChannelView& channel) {
    check_cap(channel.size, kAuditPairCap, "bayes_attacker_success");
    double total = 0.0;
    for (std::uint64_t y = 0; y < channel.size; ++y) {
        double best = 0.0;
        for (std::uint64_t x = 0; x < channel.size; ++x) {
            best = std::max(best, channel.prob(x, y));
        }
        total += best;
    }
    return total / static_cast<double>(channel.size);
}

AuditReport audit_effective_eps(const KrrParams& params) {
    AuditReport report;
    if (params.q == 0.0) {
        report.ldp_eps = kInf;
        report.dpriv_eps = kInf;
        return report;
    }
    report.ldp_eps = std::log(params.p / params.q);
    report.dpriv_eps = report.ldp_eps;  // unit minimum distance on the grid
    return report;
}

AuditReport audit_effective_eps(const BoundedGeometric& geo) {
    AuditReport report;
    ChannelView view = channel_of(geo);
    report.ldp_eps = ldp_epsilon(view);
    report.dpriv_eps = dpriv_epsilon(view, geo.box(), geo.norm());
    return report;
}

}  // namespace privcd
