#include "csd/homology.hpp"

#include "csd/error.hpp"

#include <stdexcept>

namespace csd {

HandlebodyPresentation HandlebodyPresentation::from_matrix(IntMatrix L, std::vector<Integer> rot) {
    if (!L.is_square() || !L.is_symmetric())
        throw ValidationError("invalid-matrix", "linking matrix must be square and symmetric");
    HandlebodyPresentation p;
    const std::size_t n = L.rows();
    if (rot.empty())
        rot.assign(n, Integer(0));
    if (rot.size() != n)
        throw ValidationError("invalid-matrix", "rotation vector length does not match");
    p.tb.assign(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
        p.tb[i] = L(i, i);
    p.L = std::move(L);
    p.rot = std::move(rot);
    return p;
}

HandlebodyPresentation build_presentation(const ContactSurgeryDiagram &diagram,
                                          const PresentationOptions &options) {
    diagram.check();
    for (std::size_t i = 0; i < diagram.coefficients.size(); ++i) {
        const SurgeryCoefficient &c = diagram.coefficients[i];
        if (c.is_infinite())
            throw MathError("infinite-coefficient", "component " + std::to_string(i + 1) +
                                                        " has coefficient inf");
        if (!c.is_unit())
            throw MathError("not-reduced", "component " + std::to_string(i + 1) +
                                               " has coefficient " + c.to_string() +
                                               "; expand the diagram to (+-1)-surgeries first");
    }
    const AbstractLinkData link = diagram.abstract();
    const std::size_t n = link.tb.size();
    HandlebodyPresentation p;
    p.L = IntMatrix(n, n);
    p.rot = link.rot;
    p.tb = link.tb;
    for (std::size_t i = 0; i < n; ++i) {
        const bool plus = diagram.coefficients[i].is_plus_one();
        for (std::size_t j = 0; j < n; ++j)
            p.L(i, j) = i == j ? link.tb[i] + (plus ? 1 : -1) : link.lk(i, j);
        if (plus) {
            ++p.q;
            if (link.tb[i] == 0 && !options.allow_tb_zero)
                p.diagnostics.push_back(
                    {"tb-zero-plus-one",
                     "component " + std::to_string(i + 1) +
                         ": contact (+1)-surgery on a knot with tb = 0; the d3 formula is "
                         "still valid in this case"});
        }
    }
    return p;
}

// ---- H_1 --------------------------------------------------------------------

std::vector<Integer> HomologyGroup::coordinates(const std::vector<Integer> &v) const {
    if (v.size() != U.cols())
        throw std::invalid_argument("vector length does not match the presentation");
    const std::vector<Integer> w = U * v;
    std::vector<Integer> out;
    for (std::size_t idx : kept) {
        Integer x = w[idx];
        if (diagonal[idx] != 0) {
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), diagonal[idx].get_mpz_t());
        }
        out.push_back(x);
    }
    return out;
}

bool HomologyGroup::is_zero(const std::vector<Integer> &coords) const {
    for (const Integer &c : coords)
        if (c != 0)
            return false;
    return true;
}

Integer HomologyGroup::order() const {
    if (free_rank > 0)
        return 0;
    Integer n = 1;
    for (const Integer &d : torsion)
        n *= d;
    return n;
}

HomologyGroup first_homology(const HandlebodyPresentation &p) {
    const std::size_t n = p.L.rows();
    const SmithDecomposition snf = smith_normal_form(p.L);
    HomologyGroup h;
    h.U = snf.U;
    h.diagonal.assign(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
        h.diagonal[i] = snf.D(i, i);
    for (std::size_t i = 0; i < n; ++i)
        if (h.diagonal[i] > 1) {
            h.kept.push_back(i);
            h.torsion.push_back(h.diagonal[i]);
        }
    for (std::size_t i = 0; i < n; ++i)
        if (h.diagonal[i] == 0) {
            h.kept.push_back(i);
            ++h.free_rank;
        }
    h.generator_map = IntMatrix(h.kept.size(), n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Integer> e(n, Integer(0));
        e[j] = 1;
        const std::vector<Integer> c = h.coordinates(e);
        for (std::size_t r = 0; r < c.size(); ++r)
            h.generator_map(r, j) = c[r];
    }
    return h;
}

// ---- c_1 --------------------------------------------------------------------

Integer divisibility(const HomologyGroup &h, const std::vector<Integer> &coords) {
    const std::size_t t = h.torsion.size();
    Integer g = 0;
    for (std::size_t i = t; i < coords.size(); ++i)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), coords[i].get_mpz_t());
    if (g == 0)
        return 0;
    // x lies in d*(Z/m) iff gcd(d, m) divides x
    auto admissible = [&](const Integer &d) {
        for (std::size_t j = 0; j < t; ++j) {
            Integer c;
            mpz_gcd(c.get_mpz_t(), d.get_mpz_t(), h.torsion[j].get_mpz_t());
            if (!mpz_divisible_p(coords[j].get_mpz_t(), c.get_mpz_t()))
                return false;
        }
        return true;
    };
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= g; ++d)
        if (mpz_divisible_p(g.get_mpz_t(), d.get_mpz_t())) {
            small.push_back(d);
            large.push_back(g / d);
        }
    Integer best = 1;
    for (const Integer &d : small)
        if (d > best && admissible(d))
            best = d;
    for (const Integer &d : large)
        if (d > best && admissible(d))
            best = d;
    return best;
}

ChernClassData c1_class(const HandlebodyPresentation &p) {
    const HomologyGroup h = first_homology(p);
    ChernClassData c;
    c.pd_c1 = h.coordinates(p.rot);
    for (std::size_t i = h.torsion.size(); i < c.pd_c1.size(); ++i)
        if (c.pd_c1[i] != 0)
            c.is_torsion = false;
    c.divisibility = c.is_torsion ? Integer(0) : divisibility(h, c.pd_c1);
    if (c.is_torsion)
        c.c_squared = c_squared(p);
    return c;
}

Integer c1_divisibility(const HandlebodyPresentation &p) { return c1_class(p).divisibility; }

Rational c_squared(const HandlebodyPresentation &p) {
    const auto x = solve_rational(p.L, p.rot);
    if (!x)
        throw MathError("c1-non-torsion", "c1 non-torsion, c^2 and d3 undefined");
    Rational total(0);
    for (std::size_t i = 0; i < x->size(); ++i)
        total += Rational(p.rot[i]) * (*x)[i];
    return total;
}

IntegralChernSolve c_squared_integral(const HandlebodyPresentation &p) {
    const std::size_t n = p.L.rows();
    const SmithDecomposition snf = smith_normal_form(p.L);
    const std::vector<Integer> b = snf.U * p.rot;
    IntegralChernSolve out;
    out.n = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Integer &d = snf.D(i, i);
        if (d == 0) {
            if (b[i] != 0)
                throw MathError("c1-non-torsion", "c1 non-torsion, c^2 and d3 undefined");
            continue;
        }
        Integer g, need;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), b[i].get_mpz_t());
        need = d / g;
        mpz_lcm(out.n.get_mpz_t(), out.n.get_mpz_t(), need.get_mpz_t());
    }
    std::vector<Integer> y(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
        if (snf.D(i, i) != 0)
            y[i] = out.n * b[i] / snf.D(i, i);
    out.C = snf.V * y;
    out.C_squared = 0;
    for (std::size_t i = 0; i < n; ++i)
        out.C_squared += out.n * p.rot[i] * out.C[i];
    out.c_squared = Rational(out.C_squared, out.n * out.n);
    return out;
}

CharacteristicNumbers characteristic_numbers(const HandlebodyPresentation &p) {
    return CharacteristicNumbers{signature(p.L), 1 + p.size()};
}

} // namespace csd
