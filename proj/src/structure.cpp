#include "eventx/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace eventx {

WalkEnsemble::WalkEnsemble(std::shared_ptr<const WalkSet> unit_walks, double sigma_sq)
    : walks_(std::move(unit_walks)), sigma_sq_(sigma_sq), scale_(std::sqrt(sigma_sq)) {
    if (!walks_ || walks_->empty()) throw std::invalid_argument("walk ensemble is empty");
    if (!(sigma_sq >= 0.0)) throw std::invalid_argument("sigma_sq must be non-negative");
    const std::size_t len = walks_->front().size();
    for (const auto& w : *walks_) {
        if (w.size() != len) throw std::invalid_argument("walks in an ensemble must share a length");
    }
}

WalkEnsemble WalkEnsemble::from_walks(WalkSet walks) {
    return WalkEnsemble(std::make_shared<const WalkSet>(std::move(walks)), 1.0);
}

std::shared_ptr<const WalkEnsemble::WalkSet> WalkEnsemble::sample_unit_walks(std::size_t num_walks,
                                                                             std::size_t length,
                                                                             Rng& rng) {
    std::normal_distribution<double> step(0.0, 1.0);
    WalkSet walks(num_walks, std::vector<double>(length));
    for (auto& w : walks) {
        double acc = 0.0;
        for (std::size_t t = 0; t < length; ++t) {
            if (t > 0) acc += step(rng);
            w[t] = acc;
        }
    }
    return std::make_shared<const WalkSet>(std::move(walks));
}

double estimate_step_variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    double acc = 0.0;
    for (std::size_t t = 1; t < x.size(); ++t) {
        const double d = x[t] - x[t - 1];
        acc += d * d;
    }
    return acc / static_cast<double>(x.size() - 1);
}

std::vector<WalkEnsemble> build_ensembles(const TimeSeries& ts, std::size_t num_walks,
                                          std::uint64_t rng_seed) {
    Rng rng = make_rng(rng_seed, stream::kWalks);
    auto walks = WalkEnsemble::sample_unit_walks(num_walks, ts.length(), rng);
    std::vector<WalkEnsemble> out;
    out.reserve(ts.num_dims());
    for (std::size_t d = 0; d < ts.num_dims(); ++d) {
        out.emplace_back(walks, estimate_step_variance(ts.dim(d)));
    }
    return out;
}

double structure_score(std::span<const double> sub, std::size_t start, const WalkEnsemble& ensemble) {
    const std::size_t m = sub.size();
    if (m < 2) throw std::invalid_argument("structure_score needs a subsequence of length >= 2");
    if (start + m > ensemble.length()) {
        throw std::invalid_argument("no walk window of length " + std::to_string(m) + " at index " +
                                    std::to_string(start));
    }
    const double md = static_cast<double>(m);
    const double mu_sub = std::accumulate(sub.begin(), sub.end(), 0.0) / md;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        double mu_w = 0.0;
        for (std::size_t k = 0; k < m; ++k) mu_w += ensemble.at(i, start + k);
        mu_w /= md;
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double diff = (sub[k] - mu_sub) - (ensemble.at(i, start + k) - mu_w);
            acc += diff * diff;
        }
        best = std::min(best, acc / md);
    }
    return best;
}

StructureTable::StructureTable(std::size_t n, std::size_t num_dims, std::vector<std::size_t> lengths)
    : n_(n), num_dims_(num_dims), lengths_(std::move(lengths)) {
    table_.resize(num_dims_ * lengths_.size());
    for (std::size_t d = 0; d < num_dims_; ++d) {
        for (std::size_t li = 0; li < lengths_.size(); ++li) {
            const std::size_t m = lengths_[li];
            if (m < 2 || m > n_) {
                throw std::invalid_argument("subsequence length " + std::to_string(m) +
                                            " out of range for series of length " + std::to_string(n_));
            }
            table_[d * lengths_.size() + li].assign(n_ - m + 1, 0.0);
        }
    }
}

std::size_t StructureTable::length_index(std::size_t length) const {
    auto it = std::find(lengths_.begin(), lengths_.end(), length);
    if (it == lengths_.end()) throw std::out_of_range("length not in structure table");
    return static_cast<std::size_t>(it - lengths_.begin());
}

std::span<const double> StructureTable::scores(std::size_t dim, std::size_t li) const {
    return table_.at(dim * lengths_.size() + li);
}

std::span<double> StructureTable::scores(std::size_t dim, std::size_t li) {
    return table_.at(dim * lengths_.size() + li);
}

double StructureTable::summed(std::size_t li, std::size_t start) const {
    double acc = 0.0;
    for (std::size_t d = 0; d < num_dims_; ++d) acc += scores(d, li)[start];
    return acc;
}

std::size_t StructureTable::num_entries() const {
    std::size_t total = 0;
    for (const auto& row : table_) total += row.size();
    return total;
}

namespace {

std::vector<double> prefix_sum(std::span<const double> x) {
    std::vector<double> p(x.size() + 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) p[i + 1] = p[i] + x[i];
    return p;
}

std::vector<double> demeaned(std::span<const double> x) {
    const double mu = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) v -= mu;
    return out;
}

}  // namespace

StructureTable structure_scores_all(const TimeSeries& ts, const std::vector<std::size_t>& lengths,
                                    const std::vector<WalkEnsemble>& ensembles) {
    const std::size_t n = ts.length();
    if (ensembles.size() != ts.num_dims()) {
        throw std::invalid_argument("need one walk ensemble per dimension");
    }
    StructureTable table(n, ts.num_dims(), lengths);
    for (auto& e : ensembles) {
        if (e.length() < n) throw std::invalid_argument("walks shorter than the series");
    }

    // Window sums expand as
    //   sum((x - mx) - s(u - mu))^2 = Sxx + s^2 Suu - 2 s Sxu
    // with S.. the centered (co)energies, each O(1) from prefix sums.
    for (std::size_t d = 0; d < ts.num_dims(); ++d) {
        const WalkEnsemble& ens = ensembles[d];
        const double s = ens.scale();
        const auto x = demeaned(ts.dim(d));
        std::vector<double> x2(n);
        for (std::size_t t = 0; t < n; ++t) x2[t] = x[t] * x[t];
        const auto px = prefix_sum(x);
        const auto pxx = prefix_sum(x2);

        for (std::size_t li = 0; li < lengths.size(); ++li) {
            auto row = table.scores(d, li);
            std::fill(row.begin(), row.end(), std::numeric_limits<double>::infinity());
        }

        std::vector<double> u(n), uu(n), xu(n);
        for (std::size_t w = 0; w < ens.size(); ++w) {
            const auto walk = ens.unit_walk(w);
            const double mu = std::accumulate(walk.begin(), walk.begin() + n, 0.0) / static_cast<double>(n);
            for (std::size_t t = 0; t < n; ++t) {
                u[t] = walk[t] - mu;
                uu[t] = u[t] * u[t];
                xu[t] = x[t] * u[t];
            }
            const auto pu = prefix_sum(u);
            const auto puu = prefix_sum(uu);
            const auto pxu = prefix_sum(xu);

            for (std::size_t li = 0; li < lengths.size(); ++li) {
                const std::size_t m = lengths[li];
                const double md = static_cast<double>(m);
                auto row = table.scores(d, li);
                for (std::size_t t = 0; t + m <= n; ++t) {
                    const double sx = px[t + m] - px[t];
                    const double su = pu[t + m] - pu[t];
                    const double sxx = (pxx[t + m] - pxx[t]) - sx * sx / md;
                    const double suu = (puu[t + m] - puu[t]) - su * su / md;
                    const double sxu = (pxu[t + m] - pxu[t]) - sx * su / md;
                    const double score = (sxx + s * s * suu - 2.0 * s * sxu) / md;
                    if (score < row[t]) row[t] = score;
                }
            }
        }

        for (std::size_t li = 0; li < lengths.size(); ++li) {
            for (double& v : table.scores(d, li)) v = std::max(v, 0.0);
        }
    }
    return table;
}

}  // namespace eventx
