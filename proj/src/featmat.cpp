#include "eventx/featmat.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <string>

namespace eventx {

bool is_zero_variance(std::span<const double> values) {
    if (values.size() < 2) return true;
    const double md = static_cast<double>(values.size());
    const double mu = std::accumulate(values.begin(), values.end(), 0.0) / md;
    double var = 0.0;
    double sq = 0.0;
    for (double v : values) {
        var += (v - mu) * (v - mu);
        sq += v * v;
    }
    return var <= 1e-12 * sq;
}

std::vector<std::size_t> weighted_sample_without_replacement(std::span<const double> weights,
                                                             std::size_t k, Rng& rng) {
    std::vector<double> w(weights.begin(), weights.end());
    std::vector<bool> eligible(w.size());
    std::size_t remaining = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        eligible[i] = w[i] >= 0.0;
        if (!eligible[i]) w[i] = 0.0;
        remaining += eligible[i] ? 1 : 0;
    }

    std::vector<std::size_t> picked;
    while (picked.size() < k && remaining > 0) {
        const double mass = std::accumulate(w.begin(), w.end(), 0.0);
        std::size_t idx = 0;
        if (mass > 0.0) {
            std::discrete_distribution<std::size_t> dist(w.begin(), w.end());
            idx = dist(rng);
        } else {
            std::uniform_int_distribution<std::size_t> dist(0, remaining - 1);
            std::size_t nth = dist(rng);
            for (idx = 0; idx < w.size(); ++idx) {
                if (eligible[idx] && nth-- == 0) break;
            }
        }
        picked.push_back(idx);
        eligible[idx] = false;
        w[idx] = 0.0;
        --remaining;
    }
    return picked;
}

std::size_t shapes_per_length(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return std::max<std::size_t>(k, 1);
}

std::vector<Shape> sample_shapes(const TimeSeries& ts, const ValidatedConfig& cfg,
                                 const StructureTable& scores) {
    const std::size_t n = ts.length();
    const std::size_t per_length = shapes_per_length(n);
    Rng rng = make_rng(cfg.rng_seed, stream::kShapes);
    std::vector<Shape> shapes;
    for (std::size_t d = 0; d < ts.num_dims(); ++d) {
        const auto x = ts.dim(d);
        for (std::size_t li = 0; li < scores.lengths().size(); ++li) {
            const std::size_t m = scores.lengths()[li];
            const auto s = scores.scores(d, li);
            std::vector<double> weights(s.begin(), s.end());
            for (std::size_t t = 0; t < weights.size(); ++t) {
                if (is_zero_variance(x.subspan(t, m))) weights[t] = -1.0;
            }
            for (std::size_t start : weighted_sample_without_replacement(weights, per_length, rng)) {
                Shape sh;
                sh.dim = d;
                sh.origin = start;
                sh.values.assign(x.begin() + static_cast<std::ptrdiff_t>(start),
                                 x.begin() + static_cast<std::ptrdiff_t>(start + m));
                const double mu = std::accumulate(sh.values.begin(), sh.values.end(), 0.0) /
                                  static_cast<double>(m);
                double var = 0.0;
                for (double v : sh.values) var += (v - mu) * (v - mu);
                sh.variance = var / static_cast<double>(m);
                shapes.push_back(std::move(sh));
            }
        }
    }
    return shapes;
}

double shape_distance(std::span<const double> shape, std::span<const double> sub) {
    if (shape.size() != sub.size() || shape.empty()) {
        throw std::invalid_argument("shape_distance needs equal, nonzero lengths");
    }
    if (is_zero_variance(shape)) return std::numeric_limits<double>::infinity();
    const double md = static_cast<double>(shape.size());
    const double mu_s = std::accumulate(shape.begin(), shape.end(), 0.0) / md;
    const double mu_x = std::accumulate(sub.begin(), sub.end(), 0.0) / md;
    double var = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < shape.size(); ++i) {
        const double sc = shape[i] - mu_s;
        const double diff = sc - (sub[i] - mu_x);
        var += sc * sc;
        acc += diff * diff;
    }
    // acc / (M * var/M)
    return acc / var;
}

FeatureMatrix::FeatureMatrix(std::size_t n, std::vector<std::vector<std::uint8_t>> rows,
                             std::vector<Shape> shapes, BuildStats stats)
    : n_(n), shapes_(std::move(shapes)), stats_(stats) {
    if (rows.size() != shapes_.size()) throw std::invalid_argument("one shape per row required");
    data_.reserve(rows.size() * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("feature row length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

std::size_t FeatureMatrix::nonzeros() const {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

std::vector<std::uint8_t> match_row(const Shape& shape, std::span<const double> series,
                                    double threshold) {
    const std::size_t n = series.size();
    const std::size_t m = shape.length();
    std::vector<std::uint8_t> row(n, 0);
    if (m == 0 || m > n) return row;

    const double md = static_cast<double>(m);
    const double mu_s = std::accumulate(shape.values.begin(), shape.values.end(), 0.0) / md;
    std::vector<double> centered(m);
    double energy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        centered[i] = shape.values[i] - mu_s;
        energy += centered[i] * centered[i];
    }
    if (is_zero_variance(shape.values)) return row;

    // ||s' - x'||^2 = ||s'||^2 + ||x'||^2 - 2 s'.x, using sum(s') = 0.
    for (std::size_t t = 0; t < n; ++t) {
        const std::ptrdiff_t begin = centered_start(t, m);
        if (begin < 0 || static_cast<std::size_t>(begin) + m > n) continue;
        const double* x = series.data() + begin;
        double sx = 0.0, sxx = 0.0, ssx = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            sx += x[i];
            sxx += x[i] * x[i];
            ssx += centered[i] * x[i];
        }
        const double x_energy = std::max(0.0, sxx - sx * sx / md);
        const double dist = (energy + x_energy - 2.0 * ssx) / energy;
        if (dist < threshold) row[t] = 1;
    }
    return row;
}

FeatureMatrix build_feature_matrix(const TimeSeries& ts, const std::vector<Shape>& shapes,
                                   const ValidatedConfig& cfg) {
    const std::size_t n = ts.length();
    FeatureMatrix::BuildStats stats;
    stats.candidates = shapes.size();
    std::vector<std::vector<std::uint8_t>> rows;
    std::vector<Shape> kept;

    // Demeaning each dimension once keeps the window energies well
    // conditioned for series with large offsets.
    std::vector<std::vector<double>> centered_dims(ts.num_dims());
    for (std::size_t d = 0; d < ts.num_dims(); ++d) {
        const auto x = ts.dim(d);
        const double mu = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
        centered_dims[d].assign(x.begin(), x.end());
        for (double& v : centered_dims[d]) v -= mu;
    }

    for (const Shape& shape : shapes) {
        if (is_zero_variance(shape.values)) {
            ++stats.zero_variance;
            continue;
        }
        auto row = match_row(shape, centered_dims.at(shape.dim), cfg.distance_threshold);

        // The shape always matches itself at its own center; it needs a
        // second match anywhere else.
        const std::size_t center = shape.origin + shape.length() / 2;
        std::size_t total = 0;
        std::size_t elsewhere = 0;
        for (std::size_t t = 0; t < n; ++t) {
            if (!row[t]) continue;
            ++total;
            if (t != center) ++elsewhere;
        }
        if (elsewhere == 0) {
            ++stats.no_second_match;
            continue;
        }
        if (2 * total > n) {
            ++stats.too_dense;
            continue;
        }
        rows.push_back(std::move(row));
        kept.push_back(shape);
    }

    if (rows.empty()) {
        throw NoRepeatingStructure("no shape matched anywhere beyond its own origin (" +
                                   std::to_string(stats.candidates) + " candidates)");
    }
    return FeatureMatrix(n, std::move(rows), std::move(kept), stats);
}

std::vector<double> hamming_window(std::size_t length) {
    if (length == 0) return {};
    if (length == 1) return {1.0};
    std::vector<double> w(length);
    const double denom = static_cast<double>(length - 1);
    for (std::size_t k = 0; k < length; ++k) {
        w[k] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / denom);
    }
    return w;
}

BlurredMatrix::BlurredMatrix(std::size_t num_rows, std::size_t n, std::vector<double> data)
    : rows_(num_rows), n_(n), data_(std::move(data)) {
    if (data_.size() != rows_ * n_) throw std::invalid_argument("blurred matrix size mismatch");
    mean_ = data_.empty() ? 0.0
                          : std::accumulate(data_.begin(), data_.end(), 0.0) / static_cast<double>(data_.size());
}

double BlurredMatrix::row_mean(std::size_t j) const {
    const auto r = row(j);
    return std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(n_);
}

std::vector<double> blur_row(std::span<const std::uint8_t> row, std::size_t m_min) {
    const std::size_t n = row.size();
    const auto h = hamming_window(m_min);
    const std::size_t len = h.size();
    // Matches the 'same' mode of a full convolution: output t reads full
    // index t + (len - 1) / 2.
    const std::ptrdiff_t shift = static_cast<std::ptrdiff_t>((len - 1) / 2);
    std::vector<double> out(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        if (!row[p]) continue;
        for (std::size_t k = 0; k < len; ++k) {
            const std::ptrdiff_t t = static_cast<std::ptrdiff_t>(p) + shift - static_cast<std::ptrdiff_t>(k);
            if (t >= 0 && t < static_cast<std::ptrdiff_t>(n)) out[static_cast<std::size_t>(t)] += h[k];
        }
    }

    // Sliding maximum over [t - r, t + r].
    const std::size_t r = m_min / 2;
    std::vector<double> local_max(n, 0.0);
    std::deque<std::size_t> dq;
    std::size_t next = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t hi = std::min(n - 1, t + r);
        while (next <= hi) {
            while (!dq.empty() && out[dq.back()] <= out[next]) dq.pop_back();
            dq.push_back(next++);
        }
        while (dq.front() + r < t) dq.pop_front();
        local_max[t] = out[dq.front()];
    }
    for (std::size_t t = 0; t < n; ++t) {
        out[t] = local_max[t] > 0.0 ? std::clamp(out[t] / local_max[t], 0.0, 1.0) : 0.0;
    }
    return out;
}

BlurredMatrix blur(const FeatureMatrix& fm, std::size_t m_min) {
    if (m_min < 2) throw std::invalid_argument("blur needs m_min >= 2");
    const std::size_t n = fm.length();
    std::vector<double> data;
    data.reserve(fm.num_rows() * n);
    for (std::size_t j = 0; j < fm.num_rows(); ++j) {
        auto r = blur_row(fm.row(j), m_min);
        data.insert(data.end(), r.begin(), r.end());
    }
    return BlurredMatrix(fm.num_rows(), n, std::move(data));
}

}  // namespace eventx
