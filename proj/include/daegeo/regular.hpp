#pragma once

#include "daegeo/bisim.hpp"
#include "daegeo/rational.hpp"

#include <optional>
#include <vector>

namespace daegeo {

using RationalMatrix = Matrix<Rational>;
using RationalSystem = DaeSystem<Rational>;
using RationalSubspace = Subspace<Rational>;
using RationalRelation = Relation<Rational>;

struct PencilReport {
    bool is_square = false;
    bool det_poly_nonzero = false;
    bool geometric_regular = false;  ///< V0* cap ker E = {0}
    bool regular = false;
    /// det(sE - A), lowest degree first; trailing zeros trimmed.
    std::vector<Rational> det_coefficients;
};

/// Coefficients of det(sE - A) (lowest degree first, trailing zeros
/// trimmed; empty for the zero polynomial), recovered by exact
/// interpolation through s = 0, 1, ..., n.
std::vector<Rational> pencil_determinant(const RationalMatrix& e, const RationalMatrix& a);

/// Algebraic and geometric regularity of a square disturbance-free pencil.
/// The two tests must agree; a disagreement raises std::logic_error.
PencilReport is_regular(const RationalSystem& sys);

/// C (sE - A)^{-1} B, or nullopt where the pencil is singular.
std::optional<RationalMatrix> transfer_at(const RationalSystem& sys, const Rational& s);

struct TransferWitness {
    Rational s;
    std::size_t row = 0;
    std::size_t col = 0;
    Rational left;
    Rational right;
};

struct TransferComparison {
    std::vector<Rational> sample_points;
    bool equal = false;
    std::optional<TransferWitness> witness;  ///< first mismatch in sample order
};

/// Compares the transfer matrices at s = 1, 2, ... skipping points where
/// either pencil is singular. Uses max(min_samples, 2(n1 + n2) + 1) points.
TransferComparison transfer_equal(const RationalSystem& sys1, const RationalSystem& sys2, std::size_t min_samples = 0);

/// Relation spanned by the stacked Krylov blocks
/// [(E1^{-1}A1)^k E1^{-1}B1; (E2^{-1}A2)^k E2^{-1}B2], k = 0 .. n1+n2-1.
/// Requires invertible E1, E2 and equal transfer matrices.
RationalRelation relation_from_transfer(const RationalSystem& sys1, const RationalSystem& sys2);

/// Krylov stack with an explicit number of blocks (for truncation checks).
RationalMatrix transfer_krylov_stack(const RationalSystem& sys1, const RationalSystem& sys2, std::size_t blocks);

struct RegularCertificate {
    bool dynamics_invariant = false;  ///< A R in E R
    bool inputs_absorbed = false;     ///< Im B in E R
    bool outputs_equal = false;       ///< R in ker [C1, -C2]
    bool holds() const { return dynamics_invariant && inputs_absorbed && outputs_equal; }
};

/// Reduced conditions for regular disturbance-free systems, evaluated
/// without the product/consistent-subspace machinery.
RegularCertificate check_regular_certificate(const RationalRelation& r, const RationalSystem& sys1,
                                             const RationalSystem& sys2);

}  // namespace daegeo
