#pragma once

#include "daegeo/matrix.hpp"

#include <string>
#include <utility>

namespace daegeo {

/// Linear descriptor system
///
///     E x' = A x + B u + G d,    y = C x
///
/// with q equations, n states, m inputs, s disturbances and p outputs.
/// Any of the dimensions may be zero; s == 0 is a disturbance-free system.
template <Field F>
class DaeSystem {
public:
    DaeSystem() = default;

    DaeSystem(Matrix<F> e, Matrix<F> a, Matrix<F> b, Matrix<F> g, Matrix<F> c, std::string name = {})
        : e_(std::move(e)), a_(std::move(a)), b_(std::move(b)), g_(std::move(g)), c_(std::move(c)),
          name_(std::move(name)) {
        const std::size_t q = e_.rows();
        if (a_.rows() != q || b_.rows() != q || g_.rows() != q)
            throw DimensionError("system '" + name_ + "': E, A, B, G must share their row count (E " + e_.shape() +
                                 ", A " + a_.shape() + ", B " + b_.shape() + ", G " + g_.shape() + ")");
        if (a_.cols() != e_.cols() || c_.cols() != e_.cols())
            throw DimensionError("system '" + name_ + "': E, A, C must share their column count (E " + e_.shape() +
                                 ", A " + a_.shape() + ", C " + c_.shape() + ")");
    }

    /// Disturbance-free system (s = 0).
    static DaeSystem without_disturbance(Matrix<F> e, Matrix<F> a, Matrix<F> b, Matrix<F> c, std::string name = {}) {
        Matrix<F> g(e.rows(), 0);
        return DaeSystem(std::move(e), std::move(a), std::move(b), std::move(g), std::move(c), std::move(name));
    }

    const Matrix<F>& e() const { return e_; }
    const Matrix<F>& a() const { return a_; }
    const Matrix<F>& b() const { return b_; }
    const Matrix<F>& g() const { return g_; }
    const Matrix<F>& c() const { return c_; }
    const std::string& name() const { return name_; }

    std::size_t q() const { return e_.rows(); }
    std::size_t n() const { return e_.cols(); }
    std::size_t m() const { return b_.cols(); }
    std::size_t s() const { return g_.cols(); }
    std::size_t p() const { return c_.rows(); }

    DaeSystem renamed(std::string name) const {
        DaeSystem copy = *this;
        copy.name_ = std::move(name);
        return copy;
    }

    friend bool operator==(const DaeSystem&, const DaeSystem&) = default;

private:
    Matrix<F> e_, a_, b_, g_, c_;
    std::string name_;
};

/// Entrywise change of field, e.g. reducing a rational system mod p.
template <Field To, Field From, typename Fn>
DaeSystem<To> map_system(const DaeSystem<From>& sys, Fn&& fn) {
    return DaeSystem<To>(map_entries<To>(sys.e(), fn), map_entries<To>(sys.a(), fn), map_entries<To>(sys.b(), fn),
                         map_entries<To>(sys.g(), fn), map_entries<To>(sys.c(), fn), sys.name());
}

}  // namespace daegeo
