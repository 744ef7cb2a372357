#pragma once

// Contact surgery diagrams and their reduction to contact (+-1)-surgeries.

#include "csd/front.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace csd {

/// A contact surgery coefficient relative to the contact framing: a nonzero
/// rational, or infinity (no surgery).
class SurgeryCoefficient {
  public:
    /// Throws MathError("zero-coefficient") for 0.
    explicit SurgeryCoefficient(Rational value);
    SurgeryCoefficient(long value) : SurgeryCoefficient(Rational(value)) {}
    static SurgeryCoefficient infinity();

    bool is_infinite() const { return infinite_; }
    /// Throws MathError("infinite-coefficient") when infinite.
    const Rational &value() const;
    bool is_plus_one() const { return !infinite_ && value_ == Rational(1); }
    bool is_minus_one() const { return !infinite_ && value_ == Rational(-1); }
    bool is_unit() const { return is_plus_one() || is_minus_one(); }

    /// "+1", "-1", "inf", "p" or "p/q".
    std::string to_string() const;
    /// Accepts the strings produced by to_string (and "1").
    static SurgeryCoefficient parse(const std::string &text);

    friend bool operator==(const SurgeryCoefficient &, const SurgeryCoefficient &) = default;

  private:
    SurgeryCoefficient() = default;
    Rational value_{1};
    bool infinite_ = false;
};

/// Where a component of an expanded diagram came from.
struct ComponentOrigin {
    int source = 0; // component index in the unexpanded diagram
    int depth = 0;  // 0 for the knot itself, i for its i-th push-off
    int up = 0;     // zigzags added on this component
    int down = 0;

    friend bool operator==(const ComponentOrigin &, const ComponentOrigin &) = default;
};

struct ContactSurgeryDiagram {
    std::variant<FrontDiagram, AbstractLinkData> link;
    std::vector<SurgeryCoefficient> coefficients;
    std::vector<ComponentOrigin> provenance; // empty, or one per component

    ContactSurgeryDiagram() : link(FrontDiagram{}) {}
    ContactSurgeryDiagram(FrontDiagram f, std::vector<SurgeryCoefficient> c)
        : link(std::move(f)), coefficients(std::move(c)) {}
    ContactSurgeryDiagram(AbstractLinkData a, std::vector<SurgeryCoefficient> c)
        : link(std::move(a)), coefficients(std::move(c)) {}

    bool is_front() const { return std::holds_alternative<FrontDiagram>(link); }
    const FrontDiagram &front() const;
    int size() const;
    /// Every coefficient is +1 or -1.
    bool is_reduced() const;
    /// Invariant data of the link (converted from the front if needed).
    AbstractLinkData abstract() const;
    std::vector<std::optional<std::string>> labels() const;
    /// Provenance, filled with the identity when not recorded.
    std::vector<ComponentOrigin> origins() const;
    /// Throws ValidationError when the link is invalid or the coefficient
    /// count does not match.
    void check() const;
};

/// Terms r_1..r_n, each <= -2, of r = r_1 + 1 - 1/(r_2 - 1/(... - 1/r_n)).
struct ContinuedFraction {
    std::vector<Integer> terms;
    friend bool operator==(const ContinuedFraction &, const ContinuedFraction &) = default;
};

/// Throws MathError("nonnegative-coefficient") unless r < 0.
ContinuedFraction neg_continued_fraction(const Rational &r);
/// Throws std::invalid_argument on an empty list or a term > -2.
Rational eval_continued_fraction(const ContinuedFraction &cf);

/// tb + r.
Rational contact_to_topological(const SurgeryCoefficient &coefficient, const Integer &tb);

/// Number of up and down zigzags put on one knot of an expansion.
struct ZigzagSplit {
    int up = 0;
    int down = 0;
    friend bool operator==(const ZigzagSplit &, const ZigzagSplit &) = default;
};

/// Replaces `component` (coefficient r < 0) by the chain of (-1)-knots
/// K_1, ..., K_n: K_1 is the knot with |r_1+2| zigzags, K_j a push-off of
/// K_{j-1} with |r_j+2| zigzags. The new knots occupy indices component ..
/// component+n-1. With empty `choices` all zigzags are down.
ContactSurgeryDiagram expand_negative(const ContactSurgeryDiagram &diagram, int component,
                                      const std::vector<ZigzagSplit> &choices = {});

/// Replaces `component` (coefficient r = p/q > 0) by K with +1, push-offs
/// K_1..K_{k-1} with +1 and a push-off K_k with r' = p/(q-kp) < 0. The
/// default k is the smallest with q - kp < 0. r = +1 is returned unchanged.
ContactSurgeryDiagram expand_positive(const ContactSurgeryDiagram &diagram, int component,
                                      std::optional<Integer> k = std::nullopt);

struct ExpandOptions {
    Zigzag side = Zigzag::Down;
    std::optional<Integer> k;
};

/// Fully reduced diagram using one zigzag side throughout.
ContactSurgeryDiagram expand_all(const ContactSurgeryDiagram &diagram,
                                 const ExpandOptions &options = {});

/// Every choice of zigzag sides, per component per continued-fraction term
/// counted by the number of up zigzags, in lexicographic order of the
/// choice vectors.
std::vector<ContactSurgeryDiagram> enumerate_expansions(const ContactSurgeryDiagram &diagram,
                                                        const ExpandOptions &options = {});

/// Number of diagrams enumerate_expansions would return.
Integer expansion_count(const ContactSurgeryDiagram &diagram, const ExpandOptions &options = {});

/// Side-by-side placement. Mixing a front with abstract data converts the
/// front to abstract data.
ContactSurgeryDiagram disjoint_union(const ContactSurgeryDiagram &a,
                                     const ContactSurgeryDiagram &b);

/// 180-degree rotation of the link; coefficients follow their components.
ContactSurgeryDiagram mirror_rotate180(const ContactSurgeryDiagram &diagram);

} // namespace csd
