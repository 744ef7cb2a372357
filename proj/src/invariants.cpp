#include "csd/invariants.hpp"

#include "csd/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace csd {

D3Result d3(const HandlebodyPresentation &p) {
    D3Result r;
    r.c_squared = c_squared(p);
    const CharacteristicNumbers cn = characteristic_numbers(p);
    r.sigma = cn.sigma;
    r.chi = cn.chi;
    r.q = p.q;
    r.value = (r.c_squared - Rational(3L * r.sigma) - Rational(2L * r.chi)) / Rational(4) +
              Rational(static_cast<long>(r.q));
    r.diagnostics = p.diagnostics;
    return r;
}

D3Result d3(const ContactSurgeryDiagram &diagram, const PresentationOptions &options) {
    return d3(build_presentation(diagram, options));
}

Rational d3_disjoint_union(const D3Result &a, const D3Result &b) {
    return a.value + b.value + Rational(1, 2);
}

// ---- catalog fronts ---------------------------------------------------------

FrontDiagram standard_unknot() {
    return FrontDiagram::from_word({MorseEvent::left(1), MorseEvent::right(1)});
}

FrontDiagram shark() { return stabilize(standard_unknot(), 0, Zigzag::Down); }

namespace {

// K_2 is the unknot with a loop and one zigzag of each kind; K_k adds to
// K_{k-1} one loop, k down and k-1 up zigzags. Each loop is a positive
// self-crossing paired with two cusps, so the crossing convention shows
// up in tb.
FrontDiagram apply_K_recipe(FrontDiagram f, int component, int k) {
    for (int j = 2; j <= k; ++j) {
        f = add_loop(f, component);
        for (int s = 0; s < (j == 2 ? 1 : j); ++s)
            f = stabilize(f, component, Zigzag::Down);
        for (int s = 0; s < j - 1; ++s)
            f = stabilize(f, component, Zigzag::Up);
    }
    return f;
}

int require_k(const std::string &name, std::optional<long> param) {
    if (!param)
        throw std::invalid_argument(name + " needs a parameter k >= 2");
    if (*param < 2 || *param > 200)
        throw std::invalid_argument(name + " needs 2 <= k <= 200, got " + std::to_string(*param));
    return static_cast<int>(*param);
}

FrontDiagram with_labels(FrontDiagram f, std::vector<std::string> names) {
    f.labels.clear();
    for (auto &n : names)
        f.labels.emplace_back(std::move(n));
    return f;
}

FrontDiagram seeded_unknot(bool rightward) {
    FrontDiagram f = standard_unknot();
    f.orientation_seeds = {rightward};
    return f;
}

// Shark and K_k clasped k times. With `shark_on_top` false the K_k knot is
// drawn above, which makes the shark come first after a 180 degree turn.
ContactSurgeryDiagram xi_k_diagram(int k, bool shark_on_top) {
    FrontDiagram f = shark_on_top ? clasp(seeded_unknot(true), seeded_unknot(false), k)
                                  : clasp(seeded_unknot(false), seeded_unknot(true), k);
    const int s = shark_on_top ? 0 : 1;
    f = stabilize(f, s, Zigzag::Down);
    f = apply_K_recipe(f, 1 - s, k);
    std::vector<SurgeryCoefficient> coeff(2, SurgeryCoefficient(-1));
    coeff[s] = SurgeryCoefficient(1);
    f = shark_on_top ? with_labels(f, {"K1", "K2"}) : with_labels(f, {"K2", "K1"});
    return ContactSurgeryDiagram(std::move(f), std::move(coeff));
}

ContactSurgeryDiagram xi_plus_diagram() {
    return ContactSurgeryDiagram(with_labels(shark(), {"K"}), {SurgeryCoefficient(1)});
}

ContactSurgeryDiagram xi_minus_diagram() {
    FrontDiagram f = clasp(standard_unknot(), standard_unknot(), 2);
    f = stabilize(f, 0, Zigzag::Down);
    f = stabilize(f, 0, Zigzag::Down);
    f = stabilize(f, 0, Zigzag::Up);
    f = stabilize(f, 1, Zigzag::Up);
    return ContactSurgeryDiagram(with_labels(f, {"K1", "K2"}),
                                 {SurgeryCoefficient(-1), SurgeryCoefficient(1)});
}

ContactSurgeryDiagram unlabeled(ContactSurgeryDiagram d) {
    std::get<FrontDiagram>(d.link).labels.clear();
    return d;
}

} // namespace

FrontDiagram knot_K(int k) {
    if (k < 2)
        throw std::invalid_argument("K_k needs k >= 2");
    return apply_K_recipe(standard_unknot(), 0, k);
}

const std::vector<std::string> &catalog_names() {
    static const std::vector<std::string> names{"xi_plus",    "xi_minus",   "tight_s1s2",
                                                "xi_k",       "xi_minus_k", "shark_knot",
                                                "K_k_knot",   "xi_i_on_s3"};
    return names;
}

bool catalog_takes_parameter(const std::string &name) {
    return name == "xi_k" || name == "xi_minus_k" || name == "K_k_knot" || name == "xi_i_on_s3";
}

ContactSurgeryDiagram catalog(const std::string &name, std::optional<long> param) {
    if (std::find(catalog_names().begin(), catalog_names().end(), name) == catalog_names().end())
        throw std::invalid_argument("unknown catalog entry '" + name + "'");
    if (!catalog_takes_parameter(name) && param)
        throw std::invalid_argument(name + " takes no parameter");

    if (name == "xi_plus")
        return xi_plus_diagram();
    if (name == "xi_minus")
        return xi_minus_diagram();
    if (name == "tight_s1s2")
        return ContactSurgeryDiagram(with_labels(standard_unknot(), {"K"}), {SurgeryCoefficient(1)});
    if (name == "shark_knot")
        return ContactSurgeryDiagram(with_labels(shark(), {"K"}), {SurgeryCoefficient(1)});
    if (name == "K_k_knot") {
        const int k = require_k(name, param);
        return ContactSurgeryDiagram(with_labels(knot_K(k), {"K"}), {SurgeryCoefficient(-1)});
    }
    if (name == "xi_k")
        return xi_k_diagram(require_k(name, param), true);
    if (name == "xi_minus_k") {
        ContactSurgeryDiagram d = mirror_rotate180(xi_k_diagram(require_k(name, param), false));
        if (d.labels().front() != std::optional<std::string>("K1"))
            throw std::logic_error("mirrored xi_k lost its component order");
        return d;
    }

    // xi_i_on_s3
    if (!param)
        throw std::invalid_argument("xi_i_on_s3 needs an integer parameter i");
    const long i = *param;
    if (i > 200 || i < -200)
        throw std::invalid_argument("xi_i_on_s3 needs |i| <= 200");
    const ContactSurgeryDiagram plus = unlabeled(xi_plus_diagram());
    const ContactSurgeryDiagram minus = unlabeled(xi_minus_diagram());
    // each further summand adds its own d3 plus 1/2
    ContactSurgeryDiagram out;
    if (i >= 1) {
        out = plus;
        for (long j = 1; j < i; ++j)
            out = disjoint_union(out, plus);
    } else if (i == 0) {
        out = disjoint_union(plus, minus);
    } else {
        out = minus;
        for (long j = 1; j < -i; ++j)
            out = disjoint_union(out, minus);
    }
    return out;
}

ContactSurgeryDiagram alternative_s3(const FrontDiagram &K1) {
    const ComponentDecomposition d = validate(K1);
    if (d.component_count != 1)
        throw std::invalid_argument("alternative_s3 needs a single-component front, got " +
                                    std::to_string(d.component_count) + " components");
    FrontDiagram f = push_off(K1, 0);
    f = stabilize(f, 1, Zigzag::Down);
    f = stabilize(f, 1, Zigzag::Down);
    return ContactSurgeryDiagram(std::move(f), {SurgeryCoefficient(1), SurgeryCoefficient(1)});
}

} // namespace csd
