#pragma once

// Small hand-built feature matrices shared by the search tests and the
// acceptance run.

#include <random>
#include <vector>

#include "eventx/featmat.hpp"
#include "eventx/rng.hpp"
#include "eventx/search.hpp"
#include "oracles.hpp"

namespace fixtures {

using namespace eventx;

inline FeatureMatrix matrix_from(std::size_t n, const std::vector<std::vector<std::uint8_t>>& rows) {
    return FeatureMatrix(n, rows, std::vector<Shape>(rows.size()));
}

// Identity blur: the blurred matrix equals the binary one.
inline BlurredMatrix binary_blur(const FeatureMatrix& fm) {
    std::vector<double> data;
    for (std::size_t j = 0; j < fm.num_rows(); ++j) {
        for (auto v : fm.row(j)) data.push_back(v);
    }
    return BlurredMatrix(fm.num_rows(), fm.length(), data);
}

inline oracle::Dense dense(const FeatureMatrix& fm) {
    oracle::Dense d{fm.num_rows(), fm.length(), {}};
    for (std::size_t j = 0; j < fm.num_rows(); ++j) {
        for (auto v : fm.row(j)) d.v.push_back(v);
    }
    return d;
}

inline oracle::Dense dense(const BlurredMatrix& b) {
    oracle::Dense d{b.num_rows(), b.length(), {}};
    for (std::size_t j = 0; j < b.num_rows(); ++j) {
        for (auto v : b.row(j)) d.v.push_back(v);
    }
    return d;
}

struct Tiny {
    FeatureMatrix fm;
    BlurredMatrix blurred;
    NoiseModel noise;
    std::size_t m_min, m_max;
};

// A few copies of one random binary motif plus sparse noise ones.
inline Tiny tiny_problem(Rng& rng) {
    std::uniform_int_distribution<std::size_t> rows_dist(2, 8), len_dist(6, 12);
    const std::size_t j = rows_dist(rng), m_max = len_dist(rng);
    const std::size_t m_min = m_max / 2 + 1;
    const std::size_t copies = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
    const std::size_t n = (copies + 3) * m_max;
    std::bernoulli_distribution motif_bit(0.25), noise_bit(0.04), keep(0.85);

    std::vector<std::vector<std::uint8_t>> motif(j, std::vector<std::uint8_t>(m_max, 0));
    for (auto& r : motif) {
        for (auto& v : r) v = motif_bit(rng);
    }
    std::vector<std::vector<std::uint8_t>> rows(j, std::vector<std::uint8_t>(n, 0));
    for (auto& r : rows) {
        for (auto& v : r) v = noise_bit(rng);
    }
    for (std::size_t c = 0; c < copies; ++c) {
        const std::size_t at = c * (m_max + m_max / 2) + m_max / 3;
        for (std::size_t r = 0; r < j; ++r) {
            for (std::size_t k = 0; k < m_max; ++k) {
                if (motif[r][k] && keep(rng)) rows[r][at + k] = 1;
            }
        }
    }
    FeatureMatrix fm = matrix_from(n, rows);
    BlurredMatrix b = blur(fm, m_min);
    NoiseModel noise = make_noise_model(fm, b);
    return {std::move(fm), std::move(b), std::move(noise), m_min, m_max};
}

}  // namespace fixtures
