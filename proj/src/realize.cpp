#include "csd/realize.hpp"

#include "csd/error.hpp"

#include <stdexcept>

namespace csd {

void FramedLink::check() const {
    if (!lk.is_square() || !lk.is_symmetric())
        throw ValidationError("invalid-link", "framed link matrix must be square and symmetric");
    if (!hints.empty() && static_cast<int>(hints.size()) != size())
        throw ValidationError("invalid-link", "hint count does not match component count");
    if (!labels.empty() && static_cast<int>(labels.size()) != size())
        throw ValidationError("invalid-link", "label count does not match component count");
}

namespace {

// Growable abstract link with coefficients.
struct Assembly {
    std::vector<Integer> tb, rot;
    std::vector<std::vector<Integer>> lk;
    std::vector<SurgeryCoefficient> coeff;
    std::vector<std::optional<std::string>> labels;

    int add(const Integer &t, const Integer &r, long c, std::string label) {
        tb.push_back(t);
        rot.push_back(r);
        coeff.emplace_back(c);
        labels.emplace_back(std::move(label));
        for (auto &row : lk)
            row.emplace_back(0);
        lk.emplace_back(tb.size(), Integer(0));
        return static_cast<int>(tb.size()) - 1;
    }
    void link(int a, int b, const Integer &v) {
        lk[a][b] = v;
        lk[b][a] = v;
    }
    ContactSurgeryDiagram build() const {
        const std::size_t n = tb.size();
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = lk[i][j];
        AbstractLinkData a = make_abstract(tb, rot, m);
        a.labels = labels;
        return ContactSurgeryDiagram(std::move(a), coeff);
    }
    static Assembly from(const ContactSurgeryDiagram &d) {
        Assembly s;
        const AbstractLinkData a = d.abstract();
        s.tb = a.tb;
        s.rot = a.rot;
        s.coeff = d.coefficients;
        s.labels = a.labels.empty() ? std::vector<std::optional<std::string>>(a.tb.size())
                                    : a.labels;
        for (std::size_t i = 0; i < a.tb.size(); ++i) {
            s.lk.emplace_back();
            for (std::size_t j = 0; j < a.tb.size(); ++j)
                s.lk.back().push_back(a.lk(i, j));
        }
        return s;
    }
};

std::string base_name(const FramedLink &link, int i) {
    if (!link.labels.empty() && link.labels[i])
        return *link.labels[i];
    return "K" + std::to_string(i + 1);
}

const LegendrianHint &hint(const FramedLink &link, int i) {
    if (link.hints.empty() || !link.hints[i])
        throw ValidationError("missing-hint", "component " + std::to_string(i + 1) +
                                                  " has no Legendrian realization (tb, rot)");
    return *link.hints[i];
}

// Adds K_i (adjusted) and its chain; returns the index of K_i.
void add_adjusted(Assembly &s, const FramedLink &link, int i, int k_index) {
    const LegendrianHint &h = hint(link, i);
    const Integer n = link.lk(i, i);
    const std::string name = base_name(link, i);
    if (n < h.tb) {
        // down zigzags until tb - 1 = n
        const Integer zigzags = h.tb - n - 1;
        s.tb[k_index] = n + 1;
        s.rot[k_index] = h.rot + zigzags;
        return;
    }
    s.tb[k_index] = h.tb;
    s.rot[k_index] = h.rot;
    // K_{i,0}: tb -2 with +1 (topologically -1); K_{i,s}: tb -1 with -1 (-2)
    const Integer l = n - h.tb;
    int prev = s.add(-2, 1, 1, name + "_c0");
    s.link(k_index, prev, 1);
    for (Integer j = 1; j <= l; ++j) {
        const int next = s.add(-1, 0, -1, name + "_c" + j.get_str());
        s.link(prev, next, 1);
        prev = next;
    }
}

} // namespace

ContactSurgeryDiagram legendrian_adjust(const FramedLink &link, int i) {
    link.check();
    if (i < 0 || i >= link.size())
        throw std::out_of_range("component " + std::to_string(i) + " out of range");
    Assembly s;
    s.add(0, 0, -1, base_name(link, i));
    add_adjusted(s, link, i, 0);
    return s.build();
}

RealizedDiagram legendrian_adjust_all(const FramedLink &link) {
    link.check();
    Assembly s;
    const int t = link.size();
    for (int i = 0; i < t; ++i)
        s.add(0, 0, -1, base_name(link, i));
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            if (i != j)
                s.lk[i][j] = link.lk(i, j);
    for (int i = 0; i < t; ++i)
        add_adjusted(s, link, i, i);
    RealizedDiagram out;
    out.diagram = s.build();
    out.reference.assign(t, {-1, -1, -1});
    out.alpha.assign(t, Integer(0));
    return out;
}

RealizedDiagram add_reference_structure(const FramedLink &link) {
    RealizedDiagram out = legendrian_adjust_all(link);
    Assembly s = Assembly::from(out.diagram);
    for (int i = 0; i < link.size(); ++i) {
        const std::string name = base_name(link, i);
        // topological framings 0, -1, -2
        const int r0 = s.add(-1, 0, 1, name + "_r0");
        const int r1 = s.add(-2, 1, 1, name + "_r1");
        const int r2 = s.add(-1, 0, -1, name + "_r2");
        s.link(r0, r2, 1);
        s.link(r2, i, -1);
        out.reference[i] = {r0, r1, r2};
    }
    out.diagram = s.build();
    return out;
}

RealizedDiagram apply_chern_twist(const RealizedDiagram &diagram, int i, const Integer &alpha) {
    if (i < 0 || i >= static_cast<int>(diagram.reference.size()))
        throw std::out_of_range("component " + std::to_string(i) + " out of range");
    if (alpha == 0)
        throw std::invalid_argument("alpha = 0 keeps the reference structure");
    if (diagram.reference[i][0] < 0)
        throw std::invalid_argument("component " + std::to_string(i + 1) +
                                    " has no reference structure");
    if (diagram.alpha[i] != 0)
        throw std::invalid_argument("component " + std::to_string(i + 1) +
                                    " is already twisted");
    const Integer k = abs(alpha) + 1;
    const int sign = alpha > 0 ? 1 : -1;
    RealizedDiagram out = diagram;
    Assembly s = Assembly::from(diagram.diagram);
    const auto [k0, k1, k2] = diagram.reference[i];
    const std::string name = s.labels[i] ? *s.labels[i] : "K" + std::to_string(i + 1);

    // K''_0 takes the place of K'_0: the knot K_k with coefficient -1
    s.tb[k0] = 1 - k * k;
    s.rot[k0] = sign * (k - 2);
    s.coeff[k0] = SurgeryCoefficient(-1);
    s.labels[k0] = name + "_t0";
    // the shark, now linked k times with K''_0
    s.tb[k1] = -2;
    s.rot[k1] = sign;
    s.coeff[k1] = SurgeryCoefficient(1);
    s.labels[k1] = name + "_t1";
    s.link(k0, k1, k);
    // companion between K''_0 and K_i, unchanged
    s.labels[k2] = name + "_t2";

    out.diagram = s.build();
    out.alpha[i] = alpha;
    return out;
}

Realization realize(const FramedLink &link, const RealizationTarget &target) {
    link.check();
    if (!target.alpha.empty() && static_cast<int>(target.alpha.size()) != link.size())
        throw ValidationError("alpha-size", "alpha has " + std::to_string(target.alpha.size()) +
                                                " entries for " + std::to_string(link.size()) +
                                                " components");
    RealizedDiagram r = add_reference_structure(link);
    for (std::size_t i = 0; i < target.alpha.size(); ++i)
        if (target.alpha[i] != 0)
            r = apply_chern_twist(r, static_cast<int>(i), target.alpha[i]);

    Realization out;
    out.diagram = r.diagram;
    const HandlebodyPresentation p = build_presentation(out.diagram);
    const ChernClassData c1 = c1_class(p);
    if (!c1.is_torsion) {
        if (target.d3_target)
            throw MathError("c1-non-torsion",
                            "d3 target given, but c1 of the realized structure is not torsion; "
                            "d3 is only defined for torsion c1");
        return out;
    }
    D3Result current = d3(p);
    if (target.d3_target) {
        const Rational gap = *target.d3_target - current.value;
        if (!gap.is_integer())
            throw MathError("d3-parity", "d3 target " + target.d3_target->to_string() +
                                             " differs from the reachable value " +
                                             current.value.to_string() +
                                             " by a non-integer; each summand shifts d3 by +-1");
        if (abs(gap.num()) > 1000)
            throw MathError("d3-unreachable", "d3 target " + target.d3_target->to_string() +
                                                  " needs more than 1000 summands");
        // a summand with d3 = 1/2 (resp. -3/2) shifts the sum by +1 (resp. -1)
        const bool up = gap.sign() > 0;
        const long steps = Integer(abs(gap.num())).get_si();
        ContactSurgeryDiagram summand = catalog(up ? "xi_plus" : "xi_minus");
        AbstractLinkData sa = summand.abstract();
        summand.link = sa;
        for (long j = 0; j < steps; ++j) {
            AbstractLinkData named = sa;
            const std::string tag = (up ? "P" : "M") + std::to_string(j + 1);
            named.labels.clear();
            for (std::size_t c = 0; c < sa.tb.size(); ++c)
                named.labels.emplace_back(tag + "_" + std::to_string(c + 1));
            out.diagram = disjoint_union(out.diagram,
                                         ContactSurgeryDiagram(named, summand.coefficients));
        }
        (up ? out.xi_plus_summands : out.xi_minus_summands) = static_cast<int>(steps);
        current = d3(out.diagram);
        if (current.value != *target.d3_target)
            throw std::logic_error("d3 correction missed its target");
    }
    out.d3 = current;
    return out;
}

// ---- Kirby moves ------------------------------------------------------------

IntMatrix blow_down(const IntMatrix &L, int i) {
    if (!L.is_square() || !L.is_symmetric())
        throw ValidationError("invalid-matrix", "blow_down needs a symmetric matrix");
    if (i < 0 || i >= static_cast<int>(L.rows()))
        throw std::out_of_range("component " + std::to_string(i) + " out of range");
    const Integer e = L(i, i);
    if (e != 1 && e != -1)
        throw MathError("not-unit-framing", "blow-down needs framing +-1, component " +
                                                std::to_string(i + 1) + " has " + e.get_str());
    const std::size_t n = L.rows();
    IntMatrix out(n - 1, n - 1);
    for (std::size_t a = 0, ra = 0; a < n; ++a) {
        if (static_cast<int>(a) == i)
            continue;
        for (std::size_t b = 0, rb = 0; b < n; ++b) {
            if (static_cast<int>(b) == i)
                continue;
            out(ra, rb) = L(a, b) - e * L(a, i) * L(b, i);
            ++rb;
        }
        ++ra;
    }
    return out;
}

IntMatrix handle_slide(const IntMatrix &L, int i, int j, int sign) {
    if (!L.is_square())
        throw ValidationError("invalid-matrix", "handle_slide needs a square matrix");
    const int n = static_cast<int>(L.rows());
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw std::out_of_range("handle index out of range");
    if (i == j)
        throw std::invalid_argument("cannot slide a handle over itself");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("slide sign must be +1 or -1");
    IntMatrix out = L;
    for (int c = 0; c < n; ++c)
        out(j, c) += sign * out(i, c);
    for (int r = 0; r < n; ++r)
        out(r, j) += sign * out(r, i);
    return out;
}

} // namespace csd
