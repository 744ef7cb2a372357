#include "csd/surgery.hpp"

#include "csd/error.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace csd {

// ---- coefficients -----------------------------------------------------------

SurgeryCoefficient::SurgeryCoefficient(Rational value) : value_(std::move(value)) {
    if (value_.sign() == 0)
        throw MathError("zero-coefficient", "0-surgery excluded");
}

SurgeryCoefficient SurgeryCoefficient::infinity() {
    SurgeryCoefficient c;
    c.infinite_ = true;
    return c;
}

const Rational &SurgeryCoefficient::value() const {
    if (infinite_)
        throw MathError("infinite-coefficient", "coefficient is inf (no surgery)");
    return value_;
}

std::string SurgeryCoefficient::to_string() const {
    if (infinite_)
        return "inf";
    if (is_plus_one())
        return "+1";
    return value_.to_string();
}

SurgeryCoefficient SurgeryCoefficient::parse(const std::string &text) {
    if (text == "inf")
        return infinity();
    std::string body = text;
    if (!body.empty() && body[0] == '+')
        body.erase(0, 1);
    return SurgeryCoefficient(Rational::parse(body));
}

// ---- diagrams ---------------------------------------------------------------

const FrontDiagram &ContactSurgeryDiagram::front() const {
    if (!is_front())
        throw ValidationError("abstract-diagram",
                              "operation needs a front, but the diagram is abstract link data");
    return std::get<FrontDiagram>(link);
}

int ContactSurgeryDiagram::size() const {
    if (is_front())
        return validate(std::get<FrontDiagram>(link)).component_count;
    return std::get<AbstractLinkData>(link).size();
}

bool ContactSurgeryDiagram::is_reduced() const {
    return std::all_of(coefficients.begin(), coefficients.end(),
                       [](const SurgeryCoefficient &c) { return c.is_unit(); });
}

AbstractLinkData ContactSurgeryDiagram::abstract() const {
    if (is_front())
        return to_abstract(std::get<FrontDiagram>(link));
    return std::get<AbstractLinkData>(link);
}

std::vector<std::optional<std::string>> ContactSurgeryDiagram::labels() const {
    return is_front() ? std::get<FrontDiagram>(link).labels
                      : std::get<AbstractLinkData>(link).labels;
}

std::vector<ComponentOrigin> ContactSurgeryDiagram::origins() const {
    if (!provenance.empty())
        return provenance;
    std::vector<ComponentOrigin> out;
    for (int i = 0; i < static_cast<int>(coefficients.size()); ++i)
        out.push_back(ComponentOrigin{i, 0, 0, 0});
    return out;
}

void ContactSurgeryDiagram::check() const {
    int n = 0;
    if (is_front()) {
        n = validate(std::get<FrontDiagram>(link)).component_count;
    } else {
        std::get<AbstractLinkData>(link).check();
        n = std::get<AbstractLinkData>(link).size();
    }
    if (static_cast<int>(coefficients.size()) != n)
        throw ValidationError("coefficient-count", "diagram has " + std::to_string(n) +
                                                       " components but " +
                                                       std::to_string(coefficients.size()) +
                                                       " surgery coefficients");
    if (!provenance.empty() && static_cast<int>(provenance.size()) != n)
        throw ValidationError("invalid-diagram", "provenance size does not match");
}

// ---- continued fractions ----------------------------------------------------

namespace {

Integer ceil_of(const Rational &x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return q;
}

} // namespace

ContinuedFraction neg_continued_fraction(const Rational &r) {
    if (r.sign() >= 0)
        throw MathError("nonnegative-coefficient",
                        "negative continued fraction needs r < 0, got " + r.to_string());
    // Hirzebruch-Jung expansion of 1 - r, with the terms negated.
    ContinuedFraction cf;
    Rational x = Rational(1) - r;
    while (true) {
        const Integer a = ceil_of(x);
        cf.terms.push_back(-a);
        if (x.is_integer())
            break;
        x = Rational(1) / (Rational(a) - x);
    }
    return cf;
}

Rational eval_continued_fraction(const ContinuedFraction &cf) {
    if (cf.terms.empty())
        throw std::invalid_argument("empty continued fraction");
    for (const Integer &t : cf.terms)
        if (t > -2)
            throw std::invalid_argument("continued fraction term " + t.get_str() + " > -2");
    Rational tail(cf.terms.back());
    for (std::size_t i = cf.terms.size() - 1; i-- > 1;)
        tail = Rational(cf.terms[i]) - Rational(1) / tail;
    if (cf.terms.size() == 1)
        return Rational(cf.terms[0]) + Rational(1);
    return Rational(cf.terms[0]) + Rational(1) - Rational(1) / tail;
}

Rational contact_to_topological(const SurgeryCoefficient &coefficient, const Integer &tb) {
    return Rational(tb) + coefficient.value();
}

// ---- expansion --------------------------------------------------------------

namespace {

using Link = std::variant<FrontDiagram, AbstractLinkData>;

Link stabilize_link(const Link &link, int component, Zigzag sign) {
    return std::visit([&](const auto &l) -> Link { return stabilize(l, component, sign); }, link);
}

Link push_off_link(const Link &link, int component) {
    return std::visit([&](const auto &l) -> Link { return push_off(l, component); }, link);
}

void check_index(const ContactSurgeryDiagram &d, int component) {
    if (component < 0 || component >= static_cast<int>(d.coefficients.size()))
        throw std::out_of_range("component " + std::to_string(component) + " out of range");
}

int to_int(const Integer &v, const char *what) {
    if (!v.fits_sint_p() || abs(v) > 100000)
        throw MathError("too-large", std::string(what) + " too large to expand: " + v.get_str());
    return static_cast<int>(v.get_si());
}

// Zigzag count |r_j + 2| per continued-fraction term.
std::vector<int> zigzag_counts(const Rational &r) {
    std::vector<int> out;
    for (const Integer &t : neg_continued_fraction(r).terms)
        out.push_back(to_int(abs(t + 2), "zigzag count"));
    return out;
}

Integer minimal_k(const Rational &r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.den().get_mpz_t(), r.num().get_mpz_t());
    return q + 1;
}

std::string component_name(const ContactSurgeryDiagram &d, int component) {
    const auto labels = d.labels();
    if (component < static_cast<int>(labels.size()) && labels[component])
        return "component " + std::to_string(component + 1) + " (" + *labels[component] + ")";
    return "component " + std::to_string(component + 1);
}

} // namespace

ContactSurgeryDiagram expand_negative(const ContactSurgeryDiagram &diagram, int component,
                                      const std::vector<ZigzagSplit> &choices) {
    diagram.check();
    check_index(diagram, component);
    const Rational r = diagram.coefficients[component].value();
    if (r.sign() >= 0)
        throw MathError("nonnegative-coefficient",
                        component_name(diagram, component) + " has coefficient " + r.to_string() +
                            ", expected a negative one");
    const std::vector<int> counts = zigzag_counts(r);
    std::vector<ZigzagSplit> splits = choices;
    if (splits.empty())
        for (int c : counts)
            splits.push_back(ZigzagSplit{0, c});
    if (splits.size() != counts.size())
        throw std::invalid_argument("expected " + std::to_string(counts.size()) +
                                    " zigzag splits, got " + std::to_string(splits.size()));
    for (std::size_t j = 0; j < counts.size(); ++j)
        if (splits[j].up < 0 || splits[j].down < 0 || splits[j].up + splits[j].down != counts[j])
            throw std::invalid_argument("zigzag split " + std::to_string(j + 1) + " must sum to " +
                                        std::to_string(counts[j]));

    ContactSurgeryDiagram out = diagram;
    std::vector<ComponentOrigin> origins = diagram.origins();
    const ComponentOrigin base = origins[component];
    const SurgeryCoefficient minus_one(-1);
    origins.erase(origins.begin() + component);
    out.coefficients.erase(out.coefficients.begin() + component);

    for (std::size_t j = 0; j < splits.size(); ++j) {
        const int at = component + static_cast<int>(j);
        if (j > 0)
            out.link = push_off_link(out.link, at - 1);
        for (int s = 0; s < splits[j].down; ++s)
            out.link = stabilize_link(out.link, at, Zigzag::Down);
        for (int s = 0; s < splits[j].up; ++s)
            out.link = stabilize_link(out.link, at, Zigzag::Up);
        ComponentOrigin o = base;
        o.depth += static_cast<int>(j);
        if (j == 0) {
            o.up += splits[j].up;
            o.down += splits[j].down;
        } else {
            // a push-off inherits the zigzags of its parent
            o.up = origins[at - 1].up + splits[j].up;
            o.down = origins[at - 1].down + splits[j].down;
        }
        origins.insert(origins.begin() + at, o);
        out.coefficients.insert(out.coefficients.begin() + at, minus_one);
    }
    out.provenance = std::move(origins);
    return out;
}

ContactSurgeryDiagram expand_positive(const ContactSurgeryDiagram &diagram, int component,
                                      std::optional<Integer> k) {
    diagram.check();
    check_index(diagram, component);
    const Rational r = diagram.coefficients[component].value();
    if (r.sign() <= 0)
        throw MathError("nonpositive-coefficient",
                        component_name(diagram, component) + " has coefficient " + r.to_string() +
                            ", expected a positive one");
    if (r == Rational(1))
        return diagram;
    const Integer chosen = k ? *k : minimal_k(r);
    const Integer rest = r.den() - chosen * r.num();
    if (chosen < 1 || rest >= 0)
        throw MathError("invalid-k", "k = " + chosen.get_str() + " does not satisfy q - k*p < 0 for r = " +
                                         r.to_string());
    const int copies = to_int(chosen, "k");

    ContactSurgeryDiagram out = diagram;
    std::vector<ComponentOrigin> origins = diagram.origins();
    out.coefficients[component] = SurgeryCoefficient(1);
    for (int j = 1; j <= copies; ++j) {
        const int at = component + j;
        out.link = push_off_link(out.link, at - 1);
        ComponentOrigin o = origins[at - 1];
        o.depth += 1;
        origins.insert(origins.begin() + at, o);
        out.coefficients.insert(out.coefficients.begin() + at,
                                j < copies ? SurgeryCoefficient(1)
                                           : SurgeryCoefficient(Rational(r.num(), rest)));
    }
    out.provenance = std::move(origins);
    return out;
}

namespace {

void require_finite(const ContactSurgeryDiagram &d) {
    for (std::size_t i = 0; i < d.coefficients.size(); ++i)
        if (d.coefficients[i].is_infinite())
            throw MathError("infinite-coefficient",
                            component_name(d, static_cast<int>(i)) +
                                " has coefficient inf; remove it or give it a finite coefficient");
}

// Per-component plan: where the negative expansion lands and its term counts.
struct ComponentPlan {
    int copies = 0;          // positive push-offs before the negative part
    std::vector<int> counts; // zigzag counts of the negative part
};

std::vector<ComponentPlan> plan(const ContactSurgeryDiagram &d, const ExpandOptions &options) {
    std::vector<ComponentPlan> plans(d.coefficients.size());
    for (std::size_t i = 0; i < d.coefficients.size(); ++i) {
        const SurgeryCoefficient &c = d.coefficients[i];
        if (c.is_unit())
            continue;
        Rational r = c.value();
        if (r.sign() > 0) {
            const Integer k = options.k ? *options.k : minimal_k(r);
            const Integer rest = r.den() - k * r.num();
            if (k < 1 || rest >= 0)
                throw MathError("invalid-k", "k = " + k.get_str() +
                                                 " does not satisfy q - k*p < 0 for " +
                                                 component_name(d, static_cast<int>(i)) +
                                                 " with r = " + r.to_string());
            plans[i].copies = to_int(k, "k");
            r = Rational(r.num(), rest);
        }
        if (r != Rational(-1))
            plans[i].counts = zigzag_counts(r);
    }
    return plans;
}

// Expands using explicit splits; splits[i] lists one split per term.
ContactSurgeryDiagram expand_with(const ContactSurgeryDiagram &d, const ExpandOptions &options,
                                  const std::vector<ComponentPlan> &plans,
                                  const std::vector<std::vector<ZigzagSplit>> &splits) {
    ContactSurgeryDiagram out = d;
    if (out.provenance.empty())
        out.provenance = d.origins();
    // highest index first so lower indices stay put
    for (int i = static_cast<int>(d.coefficients.size()); i-- > 0;) {
        const SurgeryCoefficient &c = d.coefficients[i];
        if (c.is_unit())
            continue;
        int target = i;
        if (c.value().sign() > 0) {
            out = expand_positive(out, i, options.k ? options.k : std::nullopt);
            target = i + plans[i].copies;
        }
        if (!out.coefficients[target].is_unit())
            out = expand_negative(out, target, splits[i]);
    }
    return out;
}

} // namespace

ContactSurgeryDiagram expand_all(const ContactSurgeryDiagram &diagram,
                                 const ExpandOptions &options) {
    diagram.check();
    require_finite(diagram);
    const std::vector<ComponentPlan> plans = plan(diagram, options);
    std::vector<std::vector<ZigzagSplit>> splits(plans.size());
    for (std::size_t i = 0; i < plans.size(); ++i)
        for (int c : plans[i].counts)
            splits[i].push_back(options.side == Zigzag::Down ? ZigzagSplit{0, c}
                                                             : ZigzagSplit{c, 0});
    return expand_with(diagram, options, plans, splits);
}

Integer expansion_count(const ContactSurgeryDiagram &diagram, const ExpandOptions &options) {
    diagram.check();
    require_finite(diagram);
    Integer total = 1;
    for (const ComponentPlan &p : plan(diagram, options))
        for (int c : p.counts)
            total *= c + 1;
    return total;
}

std::vector<ContactSurgeryDiagram> enumerate_expansions(const ContactSurgeryDiagram &diagram,
                                                        const ExpandOptions &options) {
    const Integer count = expansion_count(diagram, options);
    if (count > 100000)
        throw MathError("too-many-variants",
                        "enumeration would produce " + count.get_str() + " diagrams");
    const std::vector<ComponentPlan> plans = plan(diagram, options);

    // flat list of (component, term) slots in lexicographic order
    std::vector<std::pair<int, int>> slots;
    for (std::size_t i = 0; i < plans.size(); ++i)
        for (int c : plans[i].counts)
            slots.emplace_back(static_cast<int>(i), c);

    std::vector<int> ups(slots.size(), 0);
    std::vector<ContactSurgeryDiagram> out;
    while (true) {
        std::vector<std::vector<ZigzagSplit>> splits(plans.size());
        for (std::size_t s = 0; s < slots.size(); ++s)
            splits[slots[s].first].push_back(ZigzagSplit{ups[s], slots[s].second - ups[s]});
        out.push_back(expand_with(diagram, options, plans, splits));
        // odometer, last position fastest
        bool advanced = false;
        for (std::size_t pos = slots.size(); pos-- > 0 && !advanced;) {
            if (ups[pos] < slots[pos].second) {
                ++ups[pos];
                advanced = true;
            } else {
                ups[pos] = 0;
            }
        }
        if (!advanced)
            break;
    }
    return out;
}

ContactSurgeryDiagram disjoint_union(const ContactSurgeryDiagram &a,
                                     const ContactSurgeryDiagram &b) {
    a.check();
    b.check();
    ContactSurgeryDiagram out;
    if (a.is_front() && b.is_front())
        out.link = disjoint_union(a.front(), b.front());
    else
        out.link = disjoint_union(a.abstract(), b.abstract());
    out.coefficients = a.coefficients;
    out.coefficients.insert(out.coefficients.end(), b.coefficients.begin(), b.coefficients.end());
    if (!a.provenance.empty() || !b.provenance.empty()) {
        out.provenance = a.origins();
        const int shift = static_cast<int>(a.coefficients.size());
        for (ComponentOrigin o : b.origins()) {
            o.source += shift;
            out.provenance.push_back(o);
        }
    }
    return out;
}

ContactSurgeryDiagram mirror_rotate180(const ContactSurgeryDiagram &diagram) {
    diagram.check();
    if (!diagram.is_front()) {
        ContactSurgeryDiagram out = diagram;
        out.link = mirror_rotate180(std::get<AbstractLinkData>(diagram.link));
        return out;
    }
    std::vector<int> new_index;
    FrontDiagram f = mirror_rotate180(diagram.front(), &new_index);
    ContactSurgeryDiagram out(std::move(f), diagram.coefficients);
    const std::vector<ComponentOrigin> origins = diagram.origins();
    if (!diagram.provenance.empty())
        out.provenance = origins;
    for (std::size_t i = 0; i < new_index.size(); ++i) {
        out.coefficients[new_index[i]] = diagram.coefficients[i];
        if (!out.provenance.empty())
            out.provenance[new_index[i]] = origins[i];
    }
    return out;
}

} // namespace csd
