#pragma once

// The 2-handlebody X attached along a contact (+-1)-surgery link, the first
// homology of its boundary, and the Chern class data entering d3.

#include "csd/surgery.hpp"

#include <optional>
#include <string>
#include <vector>

namespace csd {

/// A non-fatal remark attached to a computation.
struct Diagnostic {
    std::string code;
    std::string message;
    friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
};

struct HandlebodyPresentation {
    IntMatrix L;              // linking matrix, topological framings on the diagonal
    std::vector<Integer> rot; // rotation numbers
    std::vector<Integer> tb;
    int q = 0; // number of (+1)-components
    std::vector<Diagnostic> diagnostics;

    int size() const { return static_cast<int>(L.rows()); }
    /// Presentation from raw matrix data; rot defaults to zero.
    static HandlebodyPresentation from_matrix(IntMatrix L, std::vector<Integer> rot = {});
};

struct PresentationOptions {
    /// Drop the note about (+1)-components with tb = 0.
    bool allow_tb_zero = false;
};

/// Throws MathError("not-reduced") unless every coefficient is +1 or -1.
HandlebodyPresentation build_presentation(const ContactSurgeryDiagram &diagram,
                                          const PresentationOptions &options = {});

/// coker L in Smith-canonical coordinates: torsion coordinates (reduced
/// into [0, d)) come first, then the free ones.
struct HomologyGroup {
    int free_rank = 0;
    std::vector<Integer> torsion; // entries > 1, each dividing the next
    IntMatrix generator_map;      // column i: coordinates of mu_i

    /// Coordinates of sum v_i mu_i.
    std::vector<Integer> coordinates(const std::vector<Integer> &v) const;
    bool is_zero(const std::vector<Integer> &coords) const;
    /// |H_1|, or 0 when infinite.
    Integer order() const;

    IntMatrix U;                     // change of basis from the Smith decomposition
    std::vector<Integer> diagonal;   // full Smith diagonal, padded with zeros
    std::vector<std::size_t> kept;   // rows of U giving the canonical coordinates
};

HomologyGroup first_homology(const HandlebodyPresentation &p);

struct ChernClassData {
    std::vector<Integer> pd_c1; // canonical coordinates of sum rot_i mu_i
    bool is_torsion = true;
    Integer divisibility = 0;
    std::optional<Rational> c_squared;
};

ChernClassData c1_class(const HandlebodyPresentation &p);

/// Largest d with the class in d*H_1; 0 for a torsion class.
Integer c1_divisibility(const HandlebodyPresentation &p);
Integer divisibility(const HomologyGroup &h, const std::vector<Integer> &coords);

/// c^2 = rot^T x with L x = rot. Throws MathError("c1-non-torsion").
Rational c_squared(const HandlebodyPresentation &p);

/// The integral route: the least n > 0 with n*rot in the image of L over
/// the integers, an integral C with L C = n*rot, C^2 = C^T L C and C^2/n^2.
struct IntegralChernSolve {
    Integer n;
    std::vector<Integer> C;
    Integer C_squared;
    Rational c_squared;
};
IntegralChernSolve c_squared_integral(const HandlebodyPresentation &p);

struct CharacteristicNumbers {
    int sigma = 0;
    int chi = 1;
};
CharacteristicNumbers characteristic_numbers(const HandlebodyPresentation &p);

} // namespace csd
