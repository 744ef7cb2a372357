#pragma once

// The d3 invariant of contact (+-1)-surgery diagrams and a catalog of
// named diagrams on S^3 and S^1 x S^2.

#include "csd/homology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace csd {

struct D3Result {
    Rational value;
    Rational c_squared;
    int sigma = 0;
    int chi = 1;
    int q = 0;
    std::vector<Diagnostic> diagnostics;
};

/// d3 = (c^2 - 3 sigma - 2 chi)/4 + q. Throws MathError("c1-non-torsion")
/// or MathError("not-reduced").
D3Result d3(const HandlebodyPresentation &p);
D3Result d3(const ContactSurgeryDiagram &diagram, const PresentationOptions &options = {});

/// d3 of a disjoint union (connected sum): a + b + 1/2.
Rational d3_disjoint_union(const D3Result &a, const D3Result &b);

/// Names accepted by catalog().
const std::vector<std::string> &catalog_names();
/// Whether the entry takes a parameter (k or i).
bool catalog_takes_parameter(const std::string &name);

/// A named diagram. `param` is k for xi_k, xi_minus_k and K_k_knot (k >= 2)
/// and i for xi_i_on_s3. Throws std::invalid_argument for unknown names
/// or bad parameters.
ContactSurgeryDiagram catalog(const std::string &name, std::optional<long> param = std::nullopt);

/// The Legendrian knot K_k (k >= 2) with tb = 1 - k^2 and rot = k - 2.
FrontDiagram knot_K(int k);
/// The once-stabilized unknot with tb = -2, rot = 1.
FrontDiagram shark();
/// The Legendrian unknot with tb = -1.
FrontDiagram standard_unknot();

/// {(K1, +1), (push-off of K1 with two down zigzags, +1)}: a diagram for
/// S^3 with d3 = -tb(K1) - rot(K1) - 1/2.
ContactSurgeryDiagram alternative_s3(const FrontDiagram &K1);

} // namespace csd
