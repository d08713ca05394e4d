#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "privcd/domain.hpp"
#include "privcd/geometric.hpp"
#include "privcd/krr.hpp"
#include "privcd/privacy_level.hpp"
#include "privcd/rng.hpp"

namespace privcd {

enum class MechanismKind { krr_cwise, krr_comb, geo_cwise, geo_comb };

// How a record-wide privacy target is shared among attributes when a
// mechanism is applied component-wise:
//   per_attribute — every attribute gets the stated level/p_max itself;
//   joint         — the attributes jointly provide the stated level
//                   (geo: p_i = level^(1/d); k-RR: total budget split
//                   proportionally to cardinality, solved so the combined
//                   record is guessed with probability `level`).
enum class CwiseSplit { per_attribute, joint };

std::string to_string(MechanismKind kind);
MechanismKind mechanism_kind_from_string(const std::string& s);
std::string to_string(CwiseSplit split);
CwiseSplit cwise_split_from_string(const std::string& s);

struct MechanismSpec {
    MechanismKind kind = MechanismKind::krr_comb;
    // Exactly one of the two parameterizations must be set.
    std::optional<double> epsilon;
    std::optional<double> level;  // attacker-success target; for geo this is p_max
    // Geometric-only options; must stay unset for k-RR kinds.
    std::optional<NormKind> norm;
    std::optional<BoundingMode> mode;
    CwiseSplit cwise_split = CwiseSplit::per_attribute;

    std::string id() const;  // short label for reports, e.g. "geo_cwise"
};

// A mechanism instantiated against a concrete domain; privatizes one record
// at a time. Implementations are immutable and shareable.
class RowMechanism {
public:
    virtual ~RowMechanism() = default;
    virtual Record privatize(const Record& row, Rng& rng) const = 0;
    virtual const Domain& domain() const = 0;
};

// Validates the spec against the domain and resolves the privacy
// parameterization. Throws std::invalid_argument on infeasible combinations
// (level below the uniform floor, oversized combined domains, ...).
std::unique_ptr<RowMechanism> build_mechanism(const Domain& domain, const MechanismSpec& spec);

// Applies the mechanism row-wise. Row r uses the stream derive(seed, r), so
// the output is independent of processing order.
Dataset privatize_dataset(const Dataset& ds, const MechanismSpec& spec, const RngSeed& seed);

// One matched spec per requested kind, all tuned to the same attacker
// success `level` (under the given split for the C-wise kinds). Throws if
// the level is infeasible for some kind on this domain.
std::vector<MechanismSpec> matched_specs(PrivacyLevel level, const Domain& domain,
                                         const std::vector<MechanismKind>& kinds,
                                         CwiseSplit split = CwiseSplit::per_attribute,
                                         NormKind norm = NormKind::euclidean);

// Resolved per-attribute parameters, exposed for audits and the tune report.
struct ResolvedKrrCwise {
    std::vector<double> epsilons;  // per attribute
};
struct ResolvedGeoCwise {
    std::vector<double> p_maxes;  // per attribute
};
ResolvedKrrCwise resolve_krr_cwise(const Domain& domain, const MechanismSpec& spec);
ResolvedGeoCwise resolve_geo_cwise(const Domain& domain, const MechanismSpec& spec);

}  // namespace privcd
