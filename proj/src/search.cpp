#include "eventx/search.hpp"

#include <fftw3.h>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace eventx {

NoiseModel make_noise_model(const FeatureMatrix& fm, const BlurredMatrix& blurred) {
    if (fm.num_rows() != blurred.num_rows() || fm.length() != blurred.length()) {
        throw std::invalid_argument("feature matrix and blurred matrix differ in shape");
    }
    NoiseModel out;
    const double n = static_cast<double>(blurred.length());
    const double floor = 1.0 / (2.0 * n);
    out.theta0.resize(blurred.num_rows());
    for (std::size_t j = 0; j < blurred.num_rows(); ++j) {
        out.theta0[j] = std::clamp(blurred.row_mean(j), floor, 1.0 - floor);
    }
    out.mean_value = blurred.mean_value();
    const double entries = static_cast<double>(fm.num_rows()) * n;
    out.feature_density = entries > 0 ? static_cast<double>(fm.nonzeros()) / entries : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// WindowCorrelator

namespace {

template <typename T>
struct FftwFree {
    void operator()(T* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree<T>>;

template <typename T>
FftwBuffer<T> fftw_alloc(std::size_t count) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(count, 1)));
    if (!p) throw std::bad_alloc();
    return FftwBuffer<T>(p);
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p *= 2;
    return p;
}

}  // namespace

struct WindowCorrelator::Impl {
    const BlurredMatrix& blurred;
    std::size_t window_length;
    std::size_t nfft;
    std::size_t nspec;
    FftwBuffer<double> in;
    FftwBuffer<fftw_complex> out;
    FftwBuffer<fftw_complex> acc;
    FftwBuffer<double> result;
    FftwBuffer<fftw_complex> spectra;  // rows x nspec
    Plan forward;
    Plan inverse;

    Impl(const BlurredMatrix& b, std::size_t m)
        : blurred(b),
          window_length(m),
          nfft(next_pow2(b.length() + m)),
          nspec(nfft / 2 + 1),
          in(fftw_alloc<double>(nfft)),
          out(fftw_alloc<fftw_complex>(nspec)),
          acc(fftw_alloc<fftw_complex>(nspec)),
          result(fftw_alloc<double>(nfft)),
          spectra(fftw_alloc<fftw_complex>(b.num_rows() * nspec)) {
        const int size = static_cast<int>(nfft);
        forward.reset(fftw_plan_dft_r2c_1d(size, in.get(), out.get(), FFTW_ESTIMATE));
        inverse.reset(fftw_plan_dft_c2r_1d(size, acc.get(), result.get(), FFTW_ESTIMATE));
        if (!forward || !inverse) throw std::runtime_error("failed to create FFT plans");

        const std::size_t n = b.length();
        for (std::size_t j = 0; j < b.num_rows(); ++j) {
            const auto row = b.row(j);
            std::copy(row.begin(), row.end(), in.get());
            std::fill(in.get() + n, in.get() + nfft, 0.0);
            fftw_execute(forward.get());
            std::memcpy(spectra.get() + j * nspec, out.get(), nspec * sizeof(fftw_complex));
        }
    }
};

WindowCorrelator::WindowCorrelator(const BlurredMatrix& blurred, std::size_t window_length) {
    if (window_length == 0 || window_length > blurred.length()) {
        throw std::invalid_argument("window length out of range for correlator");
    }
    impl_ = std::make_unique<Impl>(blurred, window_length);
    num_windows_ = blurred.length() - window_length + 1;
}

WindowCorrelator::~WindowCorrelator() = default;

std::vector<double> WindowCorrelator::dot_trace(std::size_t seed) const {
    Impl& s = *impl_;
    if (seed >= num_windows_) throw std::out_of_range("seed window out of range");
    const std::size_t m = s.window_length;
    std::fill(&s.acc[0][0], &s.acc[0][0] + 2 * s.nspec, 0.0);

    // Correlation with the window is convolution with its reversal:
    // P[i] = conv[i + m - 1].
    bool any = false;
    for (std::size_t j = 0; j < s.blurred.num_rows(); ++j) {
        const auto row = s.blurred.row(j);
        bool active = false;
        for (std::size_t c = 0; c < m; ++c) {
            const double v = row[seed + c];
            s.in[m - 1 - c] = v;
            active = active || v != 0.0;
        }
        if (!active) continue;
        any = true;
        std::fill(s.in.get() + m, s.in.get() + s.nfft, 0.0);
        fftw_execute(s.forward.get());
        const fftw_complex* spec = s.spectra.get() + j * s.nspec;
        for (std::size_t k = 0; k < s.nspec; ++k) {
            const double a = s.out[k][0], b = s.out[k][1];
            const double c = spec[k][0], d = spec[k][1];
            s.acc[k][0] += a * c - b * d;
            s.acc[k][1] += a * d + b * c;
        }
    }

    std::vector<double> p(num_windows_, 0.0);
    if (!any) return p;
    fftw_execute(s.inverse.get());
    const double scale = 1.0 / static_cast<double>(s.nfft);
    double peak = 0.0;
    for (std::size_t i = 0; i < num_windows_; ++i) {
        p[i] = s.result[i + m - 1] * scale;
        peak = std::max(peak, p[i]);
    }
    const double tol = 1e-10 * peak;
    for (double& v : p) {
        if (v <= tol) v = 0.0;
    }
    return p;
}

std::vector<double> dot_trace_direct(const BlurredMatrix& blurred, std::size_t window_length,
                                     std::size_t seed) {
    const std::size_t w = blurred.length() - window_length + 1;
    std::vector<double> p(w, 0.0);
    for (std::size_t i = 0; i < w; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < blurred.num_rows(); ++j) {
            const auto row = blurred.row(j);
            for (std::size_t c = 0; c < window_length; ++c) acc += row[seed + c] * row[i + c];
        }
        p[i] = acc;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Candidates

std::vector<std::size_t> local_maxima(std::span<const double> p) {
    std::vector<std::size_t> out;
    const std::size_t n = p.size();
    std::size_t l = 0;
    while (l < n) {
        std::size_t r = l;
        while (r + 1 < n && p[r + 1] == p[l]) ++r;
        const bool whole = (l == 0 && r + 1 == n);
        const bool left_ok = l == 0 || p[l - 1] < p[l];
        const bool right_ok = r + 1 == n || p[r + 1] < p[l];
        if (!whole && left_ok && right_ok) out.push_back(l);
        l = r + 1;
    }
    return out;
}

std::vector<std::size_t> enforce_minimum_spacing(std::span<const std::size_t> maxima,
                                                 std::span<const double> p, std::size_t min_spacing,
                                                 std::optional<std::size_t> priority) {
    std::vector<std::size_t> order(maxima.begin(), maxima.end());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (p[a] != p[b]) return p[a] > p[b];
        return a < b;
    });
    if (priority) order.insert(order.begin(), *priority);

    std::set<std::size_t> kept;
    for (std::size_t idx : order) {
        auto it = kept.lower_bound(idx);
        if (it != kept.end() && *it - idx < min_spacing) continue;
        if (it != kept.begin() && idx - *std::prev(it) < min_spacing) continue;
        kept.insert(idx);
    }
    return {kept.begin(), kept.end()};
}

CandidateSet candidate_windows(std::size_t seed, const WindowCorrelator& correlator,
                               const LengthBounds& bounds) {
    CandidateSet out;
    out.trace = correlator.dot_trace(seed);
    const auto maxima = local_maxima(out.trace);
    out.degenerate = maxima.empty();
    out.windows = enforce_minimum_spacing(maxima, out.trace, bounds.m_min, seed);
    const auto& p = out.trace;
    std::stable_sort(out.windows.begin(), out.windows.end(), [&](std::size_t a, std::size_t b) {
        if (p[a] != p[b]) return p[a] > p[b];
        return a < b;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Scoring

SubsetAccumulator::SubsetAccumulator(const FeatureMatrix& fm, const BlurredMatrix& blurred,
                                     const NoiseModel& noise, std::size_t window_length)
    : fm_(fm), blurred_(blurred), noise_(noise), window_length_(window_length) {
    if (fm.num_rows() != blurred.num_rows() || noise.theta0.size() != fm.num_rows()) {
        throw std::invalid_argument("feature matrix, blurred matrix and noise model disagree on J");
    }
    const std::size_t features = fm.num_rows() * window_length;
    counts_.assign(features, 0.0);
    blurred_counts_.assign(features, 0.0);
    log_theta0_.resize(fm.num_rows());
    for (std::size_t j = 0; j < fm.num_rows(); ++j) log_theta0_[j] = std::log(noise.theta0[j]);
}

void SubsetAccumulator::add(std::size_t start) {
    if (start + window_length_ > fm_.length()) throw std::out_of_range("window out of range");
    const std::size_t m = window_length_;
    for (std::size_t j = 0; j < fm_.num_rows(); ++j) {
        const auto brow = fm_.row(j);
        const auto frow = blurred_.row(j);
        double* c = counts_.data() + j * m;
        double* ct = blurred_counts_.data() + j * m;
        for (std::size_t col = 0; col < m; ++col) {
            c[col] += brow[start + col];
            ct[col] += frow[start + col];
        }
    }
    windows_.push_back(start);
}

double SubsetAccumulator::score(std::optional<std::size_t> next_best, ScoredSubset* out) const {
    const std::size_t m = window_length_;
    const std::size_t rows = fm_.num_rows();
    const double k = static_cast<double>(windows_.size());
    if (next_best && *next_best + m > fm_.length()) throw std::out_of_range("next window out of range");

    if (out) {
        out->windows = windows_;
        out->num_rows = rows;
        out->window_length = m;
        out->theta1.assign(rows * m, 0.0);
        out->weights.assign(rows * m, 0.0);
        out->feature_set.clear();
    }

    double odds_event = 0.0;
    double weight_sum = 0.0;
    double odds_next = 0.0;
    bool any = false;
    for (std::size_t j = 0; j < rows; ++j) {
        const double* c = counts_.data() + j * m;
        const double* ct = blurred_counts_.data() + j * m;
        const std::uint8_t* next = next_best ? fm_.row(j).data() + *next_best : nullptr;
        for (std::size_t col = 0; col < m; ++col) {
            const double theta1 = ct[col] / k;
            if (out) out->theta1[j * m + col] = theta1;
            // theta1 <= 0.5 excludes the feature whatever its log-ratio.
            if (!(theta1 > 0.5) || !(theta1 > noise_.theta0[j])) continue;
            const double w = std::log(theta1) - log_theta0_[j];
            if (!(w > 0.0)) continue;
            any = true;
            odds_event += w * c[col];
            weight_sum += w;
            if (next) odds_next += w * next[col];
            if (out) {
                out->weights[j * m + col] = w;
                out->feature_set.push_back(j * m + col);
            }
        }
    }

    double result = kNoFeatureScore;
    odds_next *= k;
    const double odds_noise = weight_sum * noise_.feature_density * k;
    if (any) result = odds_event - std::max(odds_noise, odds_next);
    if (out) {
        out->score = result;
        out->odds_event = odds_event;
        out->odds_noise = odds_noise;
        out->odds_next = odds_next;
    }
    return result;
}

ScoredSubset compute_score(std::span<const std::size_t> windows, std::optional<std::size_t> next_best,
                           const FeatureMatrix& fm, const BlurredMatrix& blurred,
                           const NoiseModel& noise, std::size_t window_length) {
    if (windows.size() < 2) throw std::invalid_argument("compute_score needs at least two windows");
    SubsetAccumulator acc(fm, blurred, noise, window_length);
    for (std::size_t w : windows) acc.add(w);
    ScoredSubset out;
    acc.score(next_best, &out);
    return out;
}

// ---------------------------------------------------------------------------
// Search

SearchResult find_instances(const SeedSet& seeds, const FeatureMatrix& fm, const BlurredMatrix& blurred,
                            const LengthBounds& bounds, const NoiseModel& noise,
                            const SearchOptions& options) {
    if (seeds.indices.empty()) throw std::invalid_argument("find_instances needs at least one seed");
    const std::size_t m = bounds.m_max;
    WindowCorrelator correlator(blurred, m);

    SearchResult result;
    double best_score = kNoFeatureScore;
    std::vector<std::size_t> best_windows;
    std::optional<std::size_t> best_next;

    using Clock = std::chrono::steady_clock;
    Clock::duration candidate_time{}, scoring_time{};
    for (std::size_t seed : seeds.indices) {
        const auto t0 = Clock::now();
        const CandidateSet cands = candidate_windows(seed, correlator, bounds);
        const auto t1 = Clock::now();
        candidate_time += t1 - t0;
        SeedOutcome outcome;
        outcome.seed = seed;
        outcome.num_candidates = cands.windows.size();
        if (options.keep_traces) outcome.trace = cands.trace;

        const auto& c = cands.windows;
        if (c.size() >= 2) {
            SubsetAccumulator acc(fm, blurred, noise, m);
            acc.add(c[0]);
            for (std::size_t k = 2; k <= c.size(); ++k) {
                acc.add(c[k - 1]);
                const std::optional<std::size_t> next =
                    k < c.size() ? std::optional<std::size_t>(c[k]) : std::nullopt;
                const double s = acc.score(next);
                if (s > outcome.best_score) {
                    outcome.best_score = s;
                    outcome.best_k = k;
                }
                if (s > best_score) {
                    best_score = s;
                    best_windows.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
                    best_next = next;
                    result.best_seed = seed;
                }
            }
        }
        scoring_time += Clock::now() - t1;
        result.per_seed.push_back(std::move(outcome));
    }
    result.candidates_ms = std::chrono::duration<double, std::milli>(candidate_time).count();
    result.scoring_ms = std::chrono::duration<double, std::milli>(scoring_time).count();

    if (best_windows.empty()) return result;
    result.found = true;
    result.best = compute_score(best_windows, best_next, fm, blurred, noise, m);
    return result;
}

}  // namespace eventx
