#include "daegeo/trajectory.hpp"

#include "daegeo/geometric.hpp"
#include "daegeo/transforms.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <sstream>

namespace daegeo {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd to_eigen(const RationalMatrix& m) {
    MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
    return out;
}

std::vector<double> to_std(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

VectorXd input_vector(const InputSignal& in, double t, std::size_t m) {
    VectorXd u(m);
    for (std::size_t k = 0; k < m; ++k) u(k) = in.value(t, k);
    return u;
}

// One system prepared for integration: the differential state x_a evolves by
// x_a' = closed x_a + a_ab z0 + b_a u and the full state is T (x_a, F x_a + z0).
struct Plant {
    std::size_t n = 0, na = 0, m = 0;
    MatrixXd t, closed, a_ab, b_a, friend_map, a_ba, a_bb, b_b, c;
    VectorXd xa0, z0;

    VectorXd xa_dot(const VectorXd& xa, const VectorXd& u) const { return closed * xa + a_ab * z0 + b_a * u; }

    VectorXd state(const VectorXd& xa) const {
        VectorXd inner(n);
        inner << xa, friend_map * xa + z0;
        return t * inner;
    }

    VectorXd state_dot(const VectorXd& xa_d) const {
        VectorXd inner(n);
        inner << xa_d, friend_map * xa_d;
        return t * inner;
    }

    double residual(const VectorXd& xa, const VectorXd& u) const {
        if (a_ba.rows() == 0) return 0.0;
        const VectorXd xb = friend_map * xa + z0;
        return (a_ba * xa + a_bb * xb + b_b * u).cwiseAbs().maxCoeff();
    }
};

Plant make_plant(const RationalSystem& sys, const RationalMatrix& x0) {
    if (x0.rows() != sys.n() || x0.cols() != 1)
        throw DimensionMismatch("initial state " + x0.shape() + " for a system with " + std::to_string(sys.n()) +
                                " states");
    const auto consistent = consistent_subset(sys);
    if (!consistent.v_star)
        throw EmptyConsistentSet("system '" + sys.name() + "' has an empty consistent set; no trajectory exists");
    if (!consistent.v_star->contains_vector(x0))
        throw InconsistentInitialState("initial state is not in the consistent subspace of '" + sys.name() + "'");

    const RationalSystem reduced = eliminate_disturbance(sys).reduced;
    const SpecialForm<Rational> sf = to_special_form(reduced);
    const auto pair = controlled_invariant_w(sf.a_aa, sf.a_ab, sf.a_ba, sf.a_bb);
    const RationalMatrix split = inverse(sf.t_matrix) * x0;
    const RationalMatrix xa0 = split.row_range(0, sf.n_a);
    const RationalMatrix z0 = split.row_range(sf.n_a, sf.n_b) - pair.friend_map * xa0;

    Plant p;
    p.n = sys.n();
    p.na = sf.n_a;
    p.m = sys.m();
    p.t = to_eigen(sf.t_matrix);
    p.closed = to_eigen(sf.a_aa + sf.a_ab * pair.friend_map);
    p.a_ab = to_eigen(sf.a_ab);
    p.b_a = to_eigen(sf.b_a);
    p.friend_map = to_eigen(pair.friend_map);
    p.a_ba = to_eigen(sf.a_ba);
    p.a_bb = to_eigen(sf.a_bb);
    p.b_b = to_eigen(sf.b_b);
    p.c = to_eigen(sys.c());
    p.xa0 = to_eigen(xa0);
    p.z0 = to_eigen(z0);
    return p;
}

std::size_t step_count(const TrajectoryConfig& cfg) {
    return static_cast<std::size_t>(std::llround(cfg.horizon / cfg.step));
}

}  // namespace

double InputSignal::value(double t, std::size_t channel) const {
    switch (kind) {
        case Kind::zero: return 0.0;
        case Kind::step: return amplitude;
        case Kind::sinusoid: return amplitude * std::sin(frequency * t);
        case Kind::piecewise_random: {
            const auto slot = static_cast<std::uint64_t>(std::floor(t / period));
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(slot), static_cast<std::uint32_t>(channel)};
            std::mt19937_64 gen(seq);
            return std::uniform_real_distribution<double>(-amplitude, amplitude)(gen);
        }
    }
    return 0.0;
}

std::vector<double> InputSignal::at(double t, std::size_t channels) const {
    std::vector<double> u(channels);
    for (std::size_t k = 0; k < channels; ++k) u[k] = value(t, k);
    return u;
}

std::string InputSignal::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::zero: os << "zero"; break;
        case Kind::step: os << "step:" << amplitude; break;
        case Kind::sinusoid: os << "sin:" << amplitude << ':' << frequency; break;
        case Kind::piecewise_random: os << "random:" << seed << ':' << period; break;
    }
    return os.str();
}

void TrajectoryConfig::validate() const {
    if (!(step > 0.0)) throw InvalidConfig("step must be positive");
    if (!(horizon >= step)) throw InvalidConfig("horizon must be at least one step");
    if (!(tolerance > 0.0)) throw InvalidConfig("tolerance must be positive");
}

TrajectoryResult simulate(const RationalSystem& sys, const RationalMatrix& x0, const TrajectoryConfig& cfg) {
    cfg.validate();
    const Plant p = make_plant(sys, x0);
    const std::size_t steps = step_count(cfg);
    const double h = cfg.step;

    TrajectoryResult out;
    out.times.reserve(steps + 1);
    VectorXd xa = p.xa0;
    auto record = [&](double t) {
        const VectorXd u = input_vector(cfg.input, t, p.m);
        const VectorXd x = p.state(xa);
        out.times.push_back(t);
        out.x_path.push_back(to_std(x));
        out.y_path.push_back(to_std(p.c * x));
        out.max_residual = std::max(out.max_residual, p.residual(xa, u));
    };
    record(0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * h;
        auto f = [&](double s, const VectorXd& v) { return p.xa_dot(v, input_vector(cfg.input, s, p.m)); };
        const VectorXd k1 = f(t, xa);
        const VectorXd k2 = f(t + h / 2, xa + h / 2 * k1);
        const VectorXd k3 = f(t + h / 2, xa + h / 2 * k2);
        const VectorXd k4 = f(t + h, xa + h * k3);
        xa += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        record(static_cast<double>(k + 1) * h);
    }
    return out;
}

ValidationReport validate_relation(const RationalRelation& r, const RationalSystem& sys1, const RationalSystem& sys2,
                                   const TrajectoryConfig& cfg, std::size_t trials, std::uint64_t seed) {
    cfg.validate();
    const auto verdict = is_bisimulation(r, sys1, sys2);
    if (!verdict.holds())
        throw UncertifiedRelation("relation does not pass the exact bisimulation check; refusing to validate");

    const std::size_t n1 = sys1.n(), n2 = sys2.n(), m = sys1.m();
    const RationalMatrix basis = r.space.basis();
    const std::size_t k = basis.cols();
    const MatrixXd r1 = to_eigen(basis.row_range(0, n1));
    const MatrixXd r2 = to_eigen(basis.row_range(n1, n2));
    const MatrixXd e2 = to_eigen(sys2.e()), a2 = to_eigen(sys2.a()), b2 = to_eigen(sys2.b()), g2 = to_eigen(sys2.g());
    const MatrixXd c2 = to_eigen(sys2.c());
    const std::size_t q2 = sys2.q(), s2 = sys2.s();

    // Matching system in the unknowns (coefficients of x2' along R, d2).
    MatrixXd lhs = MatrixXd::Zero(n1 + q2, k + s2);
    lhs.topLeftCorner(n1, k) = r1;
    lhs.bottomLeftCorner(q2, k) = e2 * r2;
    lhs.bottomRightCorner(q2, s2) = -g2;
    const MatrixXd lhs_pinv = lhs.completeOrthogonalDecomposition().pseudoInverse();

    MatrixXd q_basis;
    if (k > 0) {
        const MatrixXd full = to_eigen(basis);
        q_basis = full.householderQr().householderQ() * MatrixXd::Identity(n1 + n2, k);
    } else {
        q_basis = MatrixXd::Zero(n1 + n2, 0);
    }
    auto distance = [&](const VectorXd& w) { return (w - q_basis * (q_basis.transpose() * w)).norm(); };

    std::mt19937_64 rng(seed);
    ValidationReport report;
    const std::size_t steps = step_count(cfg);
    const double h = cfg.step;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        RationalMatrix coeffs(k, 1);
        std::uniform_int_distribution<long> pick(-2, 2);
        for (std::size_t i = 0; i < k; ++i) coeffs(i, 0) = Rational(pick(rng));
        const RationalMatrix w0 = basis * coeffs;
        TrialReport tr;
        tr.input = cfg.input;
        if (trial > 0) {
            std::uniform_real_distribution<double> amp(0.5, 2.0), freq(0.5, 3.0);
            const double a = amp(rng);
            tr.input = InputSignal::sinusoid(a, freq(rng));
        }
        const Plant p1 = make_plant(sys1, w0.row_range(0, n1));
        const VectorXd x2_0 = to_eigen(w0.row_range(n1, n2));
        tr.x1_0 = to_std(p1.state(p1.xa0));
        tr.x2_0 = to_std(x2_0);

        // Combined state (x_a of sys1, x2).
        const std::size_t dim = p1.na + n2;
        auto split_eval = [&](double t, const VectorXd& v, double* matching) {
            const VectorXd u = input_vector(tr.input, t, m);
            const VectorXd xa = v.head(p1.na);
            const VectorXd x2 = v.tail(n2);
            const VectorXd xa_d = p1.xa_dot(xa, u);
            VectorXd rhs(n1 + q2);
            rhs << p1.state_dot(xa_d), a2 * x2 + b2 * u;
            const VectorXd sol = lhs_pinv * rhs;
            if (matching) *matching = (lhs * sol - rhs).norm();
            VectorXd d(dim);
            d << xa_d, r2 * sol.head(k);
            return d;
        };
        VectorXd v(dim);
        v << p1.xa0, x2_0;
        auto observe = [&](double t) {
            const VectorXd u = input_vector(tr.input, t, m);
            const VectorXd x1 = p1.state(v.head(p1.na));
            const VectorXd x2 = v.tail(n2);
            VectorXd w(n1 + n2);
            w << x1, x2;
            double matching = 0.0;
            split_eval(t, v, &matching);
            if (p1.c.rows() > 0)
                tr.output_deviation = std::max(tr.output_deviation, (p1.c * x1 - c2 * x2).cwiseAbs().maxCoeff());
            tr.relation_distance = std::max(tr.relation_distance, distance(w));
            tr.matching_residual = std::max(tr.matching_residual, matching);
            tr.residual_1 = std::max(tr.residual_1, p1.residual(v.head(p1.na), u));
        };
        observe(0.0);
        for (std::size_t s = 0; s < steps; ++s) {
            const double t = static_cast<double>(s) * h;
            auto f = [&](double tt, const VectorXd& vv) { return split_eval(tt, vv, nullptr); };
            const VectorXd k1 = f(t, v);
            const VectorXd k2 = f(t + h / 2, v + h / 2 * k1);
            const VectorXd k3 = f(t + h / 2, v + h / 2 * k2);
            const VectorXd k4 = f(t + h, v + h * k3);
            v += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
            observe(static_cast<double>(s + 1) * h);
        }
        report.max_output_deviation = std::max(report.max_output_deviation, tr.output_deviation);
        report.max_relation_distance = std::max(report.max_relation_distance, tr.relation_distance);
        report.max_matching_residual = std::max(report.max_matching_residual, tr.matching_residual);
        report.trials.push_back(std::move(tr));
    }
    report.within_tolerance =
        report.max_output_deviation <= cfg.tolerance && report.max_relation_distance <= cfg.tolerance;
    return report;
}

}  // namespace daegeo
