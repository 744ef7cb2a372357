#pragma once

// From a framed link in S^3 and a choice of Chern class shift to a contact
// (+-1)-surgery diagram on the same 3-manifold, plus linking-matrix Kirby
// moves used to check the gadgets.

#include "csd/invariants.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace csd {

/// tb and rot of a Legendrian realization of a smooth knot.
struct LegendrianHint {
    Integer tb;
    Integer rot;
};

struct FramedLink {
    IntMatrix lk; // framings n_i on the diagonal
    std::vector<std::optional<LegendrianHint>> hints;
    std::vector<std::optional<std::string>> labels; // empty, or one per component

    int size() const { return static_cast<int>(lk.rows()); }
    /// Throws ValidationError on a non-symmetric matrix or size mismatch.
    void check() const;
};

struct RealizationTarget {
    std::vector<Integer> alpha; // empty means all zero
    std::optional<Rational> d3_target;
};

/// The local diagram replacing component i: K_i itself (index 0) followed
/// by the chain K_{i,0}, ..., K_{i,l} when n_i >= b_i. Linking with the
/// other components of `link` is not included. Throws
/// ValidationError("missing-hint") without a hint for i.
ContactSurgeryDiagram legendrian_adjust(const FramedLink &link, int i);

/// A diagram produced by the realization steps with the positions of the
/// per-component gadgets.
struct RealizedDiagram {
    ContactSurgeryDiagram diagram;              // abstract link data
    std::vector<std::array<int, 3>> reference;  // K'_{i,0}, K'_{i,1}, K'_{i,2}
    std::vector<Integer> alpha;                 // twist applied at each component
};

/// All components made Legendrian and adjusted; no reference gadgets yet.
RealizedDiagram legendrian_adjust_all(const FramedLink &link);

/// Adjusts every component and appends the reference triple for each.
RealizedDiagram add_reference_structure(const FramedLink &link);

/// Replaces the reference triple at component i by the twisted one built
/// from the knot K_k, k = |alpha| + 1 (rotated by 180 degrees for
/// alpha < 0). Throws std::invalid_argument for alpha = 0 or a component
/// that was already twisted.
RealizedDiagram apply_chern_twist(const RealizedDiagram &diagram, int i, const Integer &alpha);

struct Realization {
    ContactSurgeryDiagram diagram;
    int xi_plus_summands = 0;
    int xi_minus_summands = 0;
    std::optional<D3Result> d3; // present when c1 is torsion
};

/// Full pipeline. Throws MathError("c1-non-torsion") when a d3 target is
/// set but c1 is not torsion, MathError("d3-parity") when the target is not
/// an integer away from the reachable values.
Realization realize(const FramedLink &link, const RealizationTarget &target);

/// Removes a (+-1)-framed unknot: n_j -= e lk(j,i)^2, lk(j,l) -= e lk(j,i) lk(l,i).
/// Throws MathError("not-unit-framing") unless the framing is +-1.
IntMatrix blow_down(const IntMatrix &L, int i);

/// Slides handle j over handle i: row and column j get sign times row and
/// column i added.
IntMatrix handle_slide(const IntMatrix &L, int i, int j, int sign);

} // namespace csd
