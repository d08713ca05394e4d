#include "privcd/mechanism.hpp"

#include <cmath>
#include <stdexcept>

namespace privcd {

namespace {

class KrrCombMechanism final : public RowMechanism {
public:
    KrrCombMechanism(Domain domain, KrrParams params)
        : domain_(std::move(domain)), params_(params) {}

    Record privatize(const Record& row, Rng& rng) const override {
        std::uint64_t joint = flatten_index(domain_, row);
        return unflatten_index(domain_, krr_sample(joint, params_, rng));
    }

    const Domain& domain() const override { return domain_; }
    const KrrParams& params() const { return params_; }

private:
    Domain domain_;
    KrrParams params_;
};

class KrrCwiseMechanism final : public RowMechanism {
public:
    KrrCwiseMechanism(Domain domain, std::vector<KrrParams> per_attribute)
        : domain_(std::move(domain)), per_attribute_(std::move(per_attribute)) {}

    Record privatize(const Record& row, Rng& rng) const override {
        Record out(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
            out[i] = static_cast<std::int64_t>(
                krr_sample(static_cast<std::uint64_t>(row[i]), per_attribute_[i], rng));
        }
        return out;
    }

    const Domain& domain() const override { return domain_; }
    const std::vector<KrrParams>& params() const { return per_attribute_; }

private:
    Domain domain_;
    std::vector<KrrParams> per_attribute_;
};

class GeoCombMechanism final : public RowMechanism {
public:
    GeoCombMechanism(Domain domain, std::shared_ptr<const BoundedGeometric> geo)
        : domain_(std::move(domain)), geo_(std::move(geo)) {}

    Record privatize(const Record& row, Rng& rng) const override {
        return geo_->sample(row, rng);
    }

    const Domain& domain() const override { return domain_; }
    const BoundedGeometric& geometric() const { return *geo_; }

private:
    Domain domain_;
    std::shared_ptr<const BoundedGeometric> geo_;
};

class GeoCwiseMechanism final : public RowMechanism {
public:
    GeoCwiseMechanism(Domain domain, std::vector<std::shared_ptr<const BoundedGeometric>> dims)
        : domain_(std::move(domain)), dims_(std::move(dims)) {}

    Record privatize(const Record& row, Rng& rng) const override {
        Record out(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
            out[i] = dims_[i]->sample(Record{row[i]}, rng)[0];
        }
        return out;
    }

    const Domain& domain() const override { return domain_; }
    const std::vector<std::shared_ptr<const BoundedGeometric>>& per_attribute() const {
        return dims_;
    }

private:
    Domain domain_;
    std::vector<std::shared_ptr<const BoundedGeometric>> dims_;
};

void validate_spec(const MechanismSpec& spec) {
    if (spec.epsilon.has_value() == spec.level.has_value()) {
        throw std::invalid_argument(
            "MechanismSpec: exactly one of epsilon / level must be set");
    }
    bool is_geo = spec.kind == MechanismKind::geo_cwise || spec.kind == MechanismKind::geo_comb;
    if (!is_geo && (spec.norm.has_value() || spec.mode.has_value())) {
        throw std::invalid_argument("MechanismSpec: norm/mode apply to geometric kinds only");
    }
    if (spec.epsilon && !(*spec.epsilon >= 0.0) ) {
        throw std::invalid_argument("MechanismSpec: epsilon must be >= 0");
    }
    if (spec.level && (*spec.level <= 0.0 || *spec.level > 1.0)) {
        throw std::invalid_argument("MechanismSpec: level must be in (0,1]");
    }
}

Domain attribute_domain(const Domain& domain, std::size_t i) {
    return Domain({domain.dims[i]}, {domain.names[i]});
}

}  // namespace

std::string to_string(MechanismKind kind) {
    switch (kind) {
        case MechanismKind::krr_cwise: return "krr_cwise";
        case MechanismKind::krr_comb: return "krr_comb";
        case MechanismKind::geo_cwise: return "geo_cwise";
        case MechanismKind::geo_comb: return "geo_comb";
    }
    return "?";
}

MechanismKind mechanism_kind_from_string(const std::string& s) {
    if (s == "krr_cwise") return MechanismKind::krr_cwise;
    if (s == "krr_comb") return MechanismKind::krr_comb;
    if (s == "geo_cwise") return MechanismKind::geo_cwise;
    if (s == "geo_comb") return MechanismKind::geo_comb;
    throw std::invalid_argument("unknown mechanism kind: " + s);
}

std::string to_string(CwiseSplit split) {
    return split == CwiseSplit::per_attribute ? "per_attribute" : "joint";
}

CwiseSplit cwise_split_from_string(const std::string& s) {
    if (s == "per_attribute") return CwiseSplit::per_attribute;
    if (s == "joint") return CwiseSplit::joint;
    throw std::invalid_argument("unknown cwise split: " + s);
}

std::string MechanismSpec::id() const { return to_string(kind); }

ResolvedKrrCwise resolve_krr_cwise(const Domain& domain, const MechanismSpec& spec) {
    validate_spec(spec);
    ResolvedKrrCwise resolved;
    if (spec.epsilon) {
        resolved.epsilons = krr_cwise_split(*spec.epsilon, domain);
        return resolved;
    }
    const double level = *spec.level;
    if (spec.cwise_split == CwiseSplit::per_attribute) {
        // Every attribute is reported at the stated level on its own.
        for (std::int64_t k : domain.dims) {
            resolved.epsilons.push_back(
                epsilon_for_krr(level, static_cast<std::uint64_t>(k)));
        }
        return resolved;
    }
    // Joint split: total budget, split proportionally to cardinality, chosen
    // so the product of per-attribute keep probabilities equals the level.
    auto combined = domain.combined_size();
    if (combined.has_value() && level <= 1.0 / static_cast<double>(*combined)) {
        throw std::invalid_argument("resolve_krr_cwise: level below uniform-guessing floor 1/K");
    }
    auto joint_success = [&](double total_eps) {
        double product = 1.0;
        auto split = krr_cwise_split(total_eps, domain);
        for (std::size_t i = 0; i < split.size(); ++i) {
            product *= privacy_of_krr(split[i], static_cast<std::uint64_t>(domain.dims[i]));
        }
        return product;
    };
    double lo = 1e-12;
    double hi = 1.0;
    while (joint_success(hi) < level && hi < 1e6) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (joint_success(mid) < level) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    resolved.epsilons = krr_cwise_split(0.5 * (lo + hi), domain);
    return resolved;
}

ResolvedGeoCwise resolve_geo_cwise(const Domain& domain, const MechanismSpec& spec) {
    validate_spec(spec);
    ResolvedGeoCwise resolved;
    if (spec.epsilon) {
        // Fixed-rate variant: the same decay rate everywhere.
        resolved.p_maxes.assign(domain.arity(), -1.0);
        return resolved;
    }
    double level = *spec.level;
    double per_dim = spec.cwise_split == CwiseSplit::per_attribute
                         ? level
                         : std::pow(level, 1.0 / static_cast<double>(domain.arity()));
    for (std::int64_t k : domain.dims) {
        if (per_dim < 1.0 / static_cast<double>(k) - 1e-12) {
            throw std::invalid_argument(
                "resolve_geo_cwise: level below uniform floor 1/k for attribute");
        }
    }
    resolved.p_maxes.assign(domain.arity(), per_dim);
    return resolved;
}

std::unique_ptr<RowMechanism> build_mechanism(const Domain& domain, const MechanismSpec& spec) {
    validate_spec(spec);
    const NormKind norm = spec.norm.value_or(NormKind::euclidean);
    const BoundingMode mode = spec.mode.value_or(BoundingMode::resample);

    switch (spec.kind) {
        case MechanismKind::krr_comb: {
            auto combined = domain.combined_size();
            if (!combined.has_value() || *combined > kKrrCombCap) {
                throw std::invalid_argument("krr_comb: combined domain too large");
            }
            double eps = spec.epsilon ? *spec.epsilon : epsilon_for_krr(*spec.level, *combined);
            return std::make_unique<KrrCombMechanism>(domain,
                                                      KrrParams::from_epsilon(*combined, eps));
        }
        case MechanismKind::krr_cwise: {
            auto resolved = resolve_krr_cwise(domain, spec);
            std::vector<KrrParams> params;
            for (std::size_t i = 0; i < domain.arity(); ++i) {
                params.push_back(KrrParams::from_epsilon(
                    static_cast<std::uint64_t>(domain.dims[i]), resolved.epsilons[i]));
            }
            return std::make_unique<KrrCwiseMechanism>(domain, std::move(params));
        }
        case MechanismKind::geo_comb: {
            std::shared_ptr<const BoundedGeometric> geo;
            if (spec.epsilon) {
                geo = std::make_shared<BoundedGeometric>(
                    BoundedGeometric::with_fixed_rate(domain, *spec.epsilon, norm, mode));
            } else {
                geo = std::make_shared<BoundedGeometric>(domain, *spec.level, norm, mode);
            }
            return std::make_unique<GeoCombMechanism>(domain, std::move(geo));
        }
        case MechanismKind::geo_cwise: {
            std::vector<std::shared_ptr<const BoundedGeometric>> dims;
            if (spec.epsilon) {
                for (std::size_t i = 0; i < domain.arity(); ++i) {
                    dims.push_back(std::make_shared<BoundedGeometric>(
                        BoundedGeometric::with_fixed_rate(attribute_domain(domain, i),
                                                          *spec.epsilon, norm, mode)));
                }
            } else {
                auto resolved = resolve_geo_cwise(domain, spec);
                for (std::size_t i = 0; i < domain.arity(); ++i) {
                    dims.push_back(std::make_shared<BoundedGeometric>(
                        attribute_domain(domain, i), resolved.p_maxes[i], norm, mode));
                }
            }
            return std::make_unique<GeoCwiseMechanism>(domain, std::move(dims));
        }
    }
    throw std::logic_error("build_mechanism: unreachable");
}

Dataset privatize_dataset(const Dataset& ds, const MechanismSpec& spec, const RngSeed& seed) {
    validate_dataset(ds);
    auto mechanism = build_mechanism(ds.domain, spec);
    Dataset out;
    out.domain = ds.domain;
    out.rows.resize(ds.rows.size());
    for (std::size_t r = 0; r < ds.rows.size(); ++r) {
        Rng rng(derive_stream(seed, static_cast<std::uint64_t>(r)));
        out.rows[r] = mechanism->privatize(ds.rows[r], rng);
    }
    return out;
}

std::vector<MechanismSpec> matched_specs(PrivacyLevel level, const Domain& domain,
                                         const std::vector<MechanismKind>& kinds,
                                         CwiseSplit split, NormKind norm) {
    if (level.p_attack <= 0.0 || level.p_attack > 1.0) {
        throw std::invalid_argument("matched_specs: level must be in (0,1]");
    }
    std::vector<MechanismSpec> specs;
    std::string failures;
    for (MechanismKind kind : kinds) {
        MechanismSpec spec;
        spec.kind = kind;
        spec.level = level.p_attack;
        spec.cwise_split = split;
        if (kind == MechanismKind::geo_cwise || kind == MechanismKind::geo_comb) {
            spec.norm = norm;
        }
        try {
            build_mechanism(domain, spec);  // feasibility check
        } catch (const std::exception& e) {
            failures += to_string(kind) + std::string(": ") + e.what() + "; ";
            continue;
        }
        specs.push_back(spec);
    }
    if (!failures.empty()) {
        throw std::invalid_argument("matched_specs: infeasible level for " + failures);
    }
    return specs;
}

}  // namespace privcd
