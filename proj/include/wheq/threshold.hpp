#ifndef WHEQ_THRESHOLD_HPP
#define WHEQ_THRESHOLD_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "wheq/histogram.hpp"

namespace wheq {

struct EntropyParams {
    double alpha = 1e-6;             // ratio guard
    double beta = 1.0;               // log guard
    double min_segment_mass = 0.01;  // both segments must hold at least this mass

    void validate() const {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
        }
        if (!(beta >= 1.0) || !std::isfinite(beta)) {
            throw Error(ErrorCode::InvalidArgument, "beta must be >= 1");
        }
        if (!(min_segment_mass >= 0.0 && min_segment_mass < 0.5)) {
            throw Error(ErrorCode::InvalidArgument, "min_segment_mass must be in [0, 0.5)");
        }
    }
};

/// Entropy contrast score of a split with lower mass `lower` and upper mass
/// `upper`: r * ln(r + beta), r = (upper - lower + alpha) / (upper + lower + alpha).
inline double entropy_score(double lower, double upper, const EntropyParams& params) {
    const double r = (upper - lower + params.alpha) / (upper + lower + params.alpha);
    return r * std::log(r + params.beta);
}

inline double entropy_score(const Histogram& h, int t, const EntropyParams& params) {
    if (t < 0 || t > h.levels() - 2) {
        throw Error(ErrorCode::ThresholdOutOfRange, "threshold " + std::to_string(t));
    }
    std::uint64_t below = 0;
    for (int x = 0; x <= t; ++x) below += h.counts[x];
    const double n = static_cast<double>(h.total);
    return entropy_score(below / n, (h.total - below) / n, params);
}

struct ThresholdResult {
    int t = 0;
    std::vector<int> candidates;  // admissible thresholds, ascending
    std::vector<double> scores;   // scores[i] belongs to candidates[i]

    double score_of(int threshold) const {
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (candidates[i] == threshold) return scores[i];
        }
        throw Error(ErrorCode::ThresholdOutOfRange, "threshold " + std::to_string(threshold) + " is not a candidate");
    }
};

/// Argmax of the entropy score over admissible thresholds; ties go to the
/// smallest t. A threshold is admissible when both sides hold at least
/// min_segment_mass.
inline ThresholdResult find_threshold(const Histogram& h, const EntropyParams& params = {}) {
    params.validate();
    if (h.total == 0 || h.occupied_levels() < 2) {
        throw Error(ErrorCode::NoValidThreshold, "histogram has fewer than two occupied levels");
    }
    ThresholdResult result;
    const double n = static_cast<double>(h.total);
    std::uint64_t below = 0;
    bool found = false;
    double best = 0.0;
    for (int t = 0; t <= h.levels() - 2; ++t) {
        below += h.counts[t];
        const double lower = below / n;
        const double upper = (h.total - below) / n;
        if (lower < params.min_segment_mass || upper < params.min_segment_mass) {
            continue;
        }
        const double score = entropy_score(lower, upper, params);
        result.candidates.push_back(t);
        result.scores.push_back(score);
        if (!found || score > best) {
            best = score;
            result.t = t;
            found = true;
        }
    }
    if (!found) {
        throw Error(ErrorCode::NoValidThreshold, "no threshold leaves both segments above the mass floor");
    }
    return result;
}

}  // namespace wheq

#endif  // WHEQ_THRESHOLD_HPP
