#include "eventx/eval.hpp"

#include <algorithm>
#include <cmath>

namespace eventx {

double iou(const Region& a, const Region& b) {
    const std::int64_t inter = std::min(a.end, b.end) - std::max(a.start, b.start) + 1;
    if (inter <= 0) return 0.0;
    const std::int64_t uni = a.length() + b.length() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

std::vector<Region> sorted_by_end(std::span<const Region> r) {
    std::vector<Region> out(r.begin(), r.end());
    std::sort(out.begin(), out.end(), [](const Region& a, const Region& b) {
        return a.end != b.end ? a.end < b.end : a.start < b.start;
    });
    return out;
}

}  // namespace

std::size_t match_count(std::span<const Region> predicted, std::span<const Region> truth, double tau) {
    const auto pred = sorted_by_end(predicted);
    const auto gt = sorted_by_end(truth);
    std::vector<bool> used(gt.size(), false);
    std::size_t count = 0;
    for (const Region& p : pred) {
        for (std::size_t j = 0; j < gt.size(); ++j) {
            if (used[j] || iou(p, gt[j]) < tau) continue;
            used[j] = true;
            ++count;
            break;
        }
    }
    return count;
}

MatchReport prf1(std::span<const Region> predicted, std::span<const Region> truth, double tau,
                 MatchMode mode) {
    MatchReport r;
    r.tau = tau;
    r.match_count = mode == MatchMode::count_only ? std::min(predicted.size(), truth.size())
                                                  : match_count(predicted, truth, tau);
    const double mc = static_cast<double>(r.match_count);
    r.precision = predicted.empty() ? 0.0 : mc / static_cast<double>(predicted.size());
    r.recall = truth.empty() ? 0.0 : mc / static_cast<double>(truth.size());
    const double denom = r.precision + r.recall;
    r.f1 = denom > 0.0 ? 2.0 * r.precision * r.recall / denom : 0.0;
    return r;
}

std::vector<MatchReport> f1_sweep(std::span<const Region> predicted, std::span<const Region> truth,
                                  std::span<const double> taus, MatchMode mode) {
    std::vector<MatchReport> out;
    out.reserve(taus.size());
    for (double tau : taus) out.push_back(prf1(predicted, truth, tau, mode));
    return out;
}

std::vector<double> default_tau_grid() {
    std::vector<double> taus;
    for (int i = 1; i <= 19; ++i) taus.push_back(static_cast<double>(i) * 0.05);
    return taus;
}

}  // namespace eventx
