#pragma once

#include "daegeo/regular.hpp"

#include <cstdint>
#include <vector>

namespace daegeo {

/// Input u(t), identical on every channel.
struct InputSignal {
    enum class Kind { zero, step, sinusoid, piecewise_random };
    Kind kind = Kind::zero;
    double amplitude = 1.0;
    double frequency = 1.0;  ///< rad/s, sinusoid only
    std::uint64_t seed = 0;  ///< piecewise_random only
    double period = 0.1;     ///< piecewise_random hold time

    static InputSignal zero() { return {}; }
    static InputSignal step(double amplitude) { return {Kind::step, amplitude}; }
    static InputSignal sinusoid(double amplitude, double frequency) { return {Kind::sinusoid, amplitude, frequency}; }
    static InputSignal piecewise_random(std::uint64_t seed, double period, double amplitude = 1.0) {
        return {Kind::piecewise_random, amplitude, 1.0, seed, period};
    }

    /// Value of channel `channel` at time t. Piecewise-random levels are
    /// uniform in [-amplitude, amplitude], constant on [k period, (k+1) period).
    double value(double t, std::size_t channel) const;
    std::vector<double> at(double t, std::size_t channels) const;
    std::string describe() const;
};

struct TrajectoryConfig {
    double horizon = 1.0;
    double step = 1e-3;
    double tolerance = 1e-6;
    InputSignal input;

    /// Throws InvalidConfig unless step > 0, horizon >= step, tolerance > 0.
    void validate() const;
};

struct TrajectoryResult {
    std::vector<double> times;
    std::vector<std::vector<double>> x_path;
    std::vector<std::vector<double>> y_path;
    double max_residual = 0.0;       ///< largest violation of the algebraic rows
    double relation_distance = 0.0;  ///< 0 for a single-system run
};

/// Integrates a consistent trajectory from x0 with fixed-step RK4 on the
/// differential part of the special form, holding the free algebraic
/// component constant. Disturbances, if present, are eliminated first.
/// Throws EmptyConsistentSet, InconsistentInitialState, InvalidConfig.
TrajectoryResult simulate(const RationalSystem& sys, const RationalMatrix& x0, const TrajectoryConfig& cfg);

struct TrialReport {
    std::vector<double> x1_0, x2_0;
    InputSignal input;
    double output_deviation = 0.0;
    double relation_distance = 0.0;
    double matching_residual = 0.0;  ///< least-squares residual when picking x2'
    double residual_1 = 0.0;
};

struct ValidationReport {
    std::vector<TrialReport> trials;
    double max_output_deviation = 0.0;
    double max_relation_distance = 0.0;
    double max_matching_residual = 0.0;
    bool within_tolerance = false;  ///< both maxima <= cfg.tolerance
};

/// Simulates sys1 from random points of R and drives sys2 alongside it: at
/// each stage x2' is the minimum-norm solution of
/// (x1', x2') in R,  E2 x2' = A2 x2 + B2 u + G2 d2.
/// Trial 0 uses cfg.input; later trials use random sinusoids. Throws
/// UncertifiedRelation unless R passes the exact bisimulation check.
ValidationReport validate_relation(const RationalRelation& r, const RationalSystem& sys1, const RationalSystem& sys2,
                                   const TrajectoryConfig& cfg, std::size_t trials, std::uint64_t seed = 1);

}  // namespace daegeo
