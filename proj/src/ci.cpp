#include "privcd/ci.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>

#include "privcd/dsep.hpp"
#include "privcd/special.hpp"

namespace privcd {

CiTestKind ci_test_from_string(const std::string& s) {
    if (s == "chi2" || s == "chi_square") return CiTestKind::chi_square;
    if (s == "fisherz" || s == "fisher_z") return CiTestKind::fisher_z;
    throw std::invalid_argument("unknown CI test: " + s);
}

std::string to_string(CiTestKind kind) {
    return kind == CiTestKind::chi_square ? "chi_square" : "fisher_z";
}

namespace {

void check_ci_args(const Dataset& ds, int i, int j, const std::vector<int>& cond) {
    const int d = static_cast<int>(ds.arity());
    if (i < 0 || i >= d || j < 0 || j >= d || i == j) {
        throw std::invalid_argument("ci test: invalid variable pair");
    }
    for (int c : cond) {
        if (c < 0 || c >= d || c == i || c == j) {
            throw std::invalid_argument("ci test: conditioning set overlaps the pair");
        }
    }
}

}  // namespace

CiResult chi_square_ci(const Dataset& ds, int i, int j, const std::vector<int>& cond,
                       double alpha) {
    check_ci_args(ds, i, j, cond);
    const std::size_t ki = static_cast<std::size_t>(ds.domain.dims[i]);
    const std::size_t kj = static_cast<std::size_t>(ds.domain.dims[j]);

    // Contingency table per observed conditioning configuration.
    std::map<std::vector<std::int64_t>, std::vector<double>> strata;
    std::vector<std::int64_t> config(cond.size());
    for (const auto& row : ds.rows) {
        for (std::size_t c = 0; c < cond.size(); ++c) config[c] = row[cond[c]];
        auto& table = strata[config];
        if (table.empty()) table.assign(ki * kj, 0.0);
        table[static_cast<std::size_t>(row[i]) * kj + static_cast<std::size_t>(row[j])] += 1.0;
    }

    double statistic = 0.0;
    double df = 0.0;
    for (const auto& [cfg, table] : strata) {
        std::vector<double> row_sum(ki, 0.0), col_sum(kj, 0.0);
        double total = 0.0;
        for (std::size_t a = 0; a < ki; ++a) {
            for (std::size_t b = 0; b < kj; ++b) {
                row_sum[a] += table[a * kj + b];
                col_sum[b] += table[a * kj + b];
                total += table[a * kj + b];
            }
        }
        std::size_t nonzero_rows = 0, nonzero_cols = 0;
        for (double v : row_sum) nonzero_rows += v > 0.0;
        for (double v : col_sum) nonzero_cols += v > 0.0;
        if (nonzero_rows < 2 || nonzero_cols < 2) continue;  // degenerate stratum
        df += static_cast<double>((nonzero_rows - 1) * (nonzero_cols - 1));
        for (std::size_t a = 0; a < ki; ++a) {
            if (row_sum[a] == 0.0) continue;
            for (std::size_t b = 0; b < kj; ++b) {
                if (col_sum[b] == 0.0) continue;
                double expected = row_sum[a] * col_sum[b] / total;
                double diff = table[a * kj + b] - expected;
                statistic += diff * diff / expected;
            }
        }
    }

    CiResult result;
    if (df == 0.0) {
        result.independent = true;
        result.p_value = 1.0;
        result.statistic = 0.0;
        result.flagged = true;  // untestable
        return result;
    }
    result.statistic = statistic;
    result.p_value = gamma_q(df / 2.0, statistic / 2.0);
    result.independent = result.p_value >= alpha;
    return result;
}

CiResult fisher_z_ci(const Dataset& ds, int i, int j, const std::vector<int>& cond,
                     double alpha) {
    check_ci_args(ds, i, j, cond);
    const std::size_t n = ds.n();
    if (n <= cond.size() + 3) {
        throw std::invalid_argument("fisher_z_ci: needs n > |cond| + 3");
    }

    std::vector<int> vars = {i, j};
    vars.insert(vars.end(), cond.begin(), cond.end());
    const std::size_t m = vars.size();

    CiResult result;

    // Column means and standard deviations; a constant variable cannot carry
    // correlation evidence.
    std::vector<double> mean(m, 0.0), sd(m, 0.0);
    for (std::size_t v = 0; v < m; ++v) {
        for (const auto& row : ds.rows) mean[v] += static_cast<double>(row[vars[v]]);
        mean[v] /= static_cast<double>(n);
        for (const auto& row : ds.rows) {
            double delta = static_cast<double>(row[vars[v]]) - mean[v];
            sd[v] += delta * delta;
        }
        sd[v] = std::sqrt(sd[v] / static_cast<double>(n));
        if (sd[v] == 0.0) {
            result.independent = true;
            result.p_value = 1.0;
            result.flagged = true;
            return result;
        }
    }

    Eigen::MatrixXd corr(m, m);
    for (std::size_t a = 0; a < m; ++a) {
        corr(a, a) = 1.0;
        for (std::size_t b = a + 1; b < m; ++b) {
            double cov = 0.0;
            for (const auto& row : ds.rows) {
                cov += (static_cast<double>(row[vars[a]]) - mean[a]) *
                       (static_cast<double>(row[vars[b]]) - mean[b]);
            }
            cov /= static_cast<double>(n);
            corr(a, b) = corr(b, a) = cov / (sd[a] * sd[b]);
        }
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(corr);
    Eigen::MatrixXd precision;
    if (lu.isInvertible()) {
        precision = lu.inverse();
    } else {
        corr += 1e-10 * Eigen::MatrixXd::Identity(m, m);
        precision = corr.inverse();
        result.flagged = true;
    }

    double r = -precision(0, 1) / std::sqrt(precision(0, 0) * precision(1, 1));
    r = std::clamp(r, -1.0 + 1e-15, 1.0 - 1e-15);
    double z = std::atanh(r) * std::sqrt(static_cast<double>(n - cond.size() - 3));
    result.statistic = z;
    result.p_value = 2.0 * (1.0 - norm_cdf(std::fabs(z)));
    result.independent = result.p_value >= alpha;
    return result;
}

CiResult DataCiOracle::test(int i, int j, const std::vector<int>& cond) {
    return cfg_.test == CiTestKind::chi_square ? chi_square_ci(ds_, i, j, cond, cfg_.alpha)
                                               : fisher_z_ci(ds_, i, j, cond, cfg_.alpha);
}

CiResult DsepOracle::test(int i, int j, const std::vector<int>& cond) {
    CiResult result;
    result.independent = d_separated(dag_, i, j, cond);
    result.p_value = result.independent ? 1.0 : 0.0;
    result.statistic = result.independent ? 0.0 : 1.0;
    return result;
}

}  // namespace privcd
