// csd: command-line front end for contact surgery diagrams.

#include "csd/dsl.hpp"
#include "csd/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

using namespace csd;

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kMath = 3 };

Json integer_string_or_number(const Integer &v) {
    return v.fits_slong_p() ? Json(v.get_si()) : Json(v.get_str());
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input = "-";
    std::string format;
    bool enumerate = false;
    std::string zigzag = "down";
    std::optional<long> k;
    std::string alpha;
    std::string d3_target;
    bool no_d3 = false;
    bool allow_tb_zero = false;
    std::optional<long> seed; // accepted for harness replay, unused
    std::string catalog_name;
    std::optional<long> catalog_param;
};

std::string read_input(const std::string &path) {
    if (path == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string format_of(const Options &o, const std::string &fallback,
                      std::initializer_list<const char *> allowed) {
    const std::string f = o.format.empty() ? fallback : o.format;
    for (const char *a : allowed)
        if (f == a)
            return f;
    throw UsageError("--format=" + f + " is not available for this command");
}

ExpandOptions expand_options(const Options &o) {
    ExpandOptions e;
    e.side = o.zigzag == "up" ? Zigzag::Up : Zigzag::Down;
    if (o.k)
        e.k = Integer(*o.k);
    return e;
}

ContactSurgeryDiagram reduced(const ContactSurgeryDiagram &d, const Options &o) {
    return d.is_reduced() ? d : expand_all(d, expand_options(o));
}

std::string emit_diagram(const ContactSurgeryDiagram &d, const std::string &format) {
    if (format == "dsl")
        return print(d);
    if (format == "svg")
        return render_svg(d);
    return to_json(d) + "\n";
}

std::string cmd_check(const Options &o) {
    const SourceDocument doc = read_document(read_input(o.input));
    const std::string f = format_of(o, "json", {"json", "dsl"});
    if (f == "dsl")
        return print(doc.diagram);
    Json out = json_of(doc.diagram);
    out["reduced"] = doc.diagram.is_reduced();
    out["expansion_count"] = integer_string_or_number(expansion_count(doc.diagram));
    return out.dump(2) + "\n";
}

std::string cmd_expand(const Options &o) {
    const ContactSurgeryDiagram d = read_document(read_input(o.input)).diagram;
    const std::string f = format_of(o, "json", {"json", "dsl"});
    if (!o.enumerate)
        return emit_diagram(expand_all(d, expand_options(o)), f);
    const std::vector<ContactSurgeryDiagram> all = enumerate_expansions(d, expand_options(o));
    if (f == "dsl") {
        std::string s;
        for (std::size_t i = 0; i < all.size(); ++i)
            s += "# variant " + std::to_string(i + 1) + " of " + std::to_string(all.size()) +
                 "\n" + print(all[i]);
        return s;
    }
    Json out;
    out["count"] = all.size();
    out["variants"] = Json::array();
    for (const ContactSurgeryDiagram &v : all)
        out["variants"].push_back(json_of(v));
    return out.dump(2) + "\n";
}

std::string cmd_invariants(const Options &o) {
    format_of(o, "json", {"json"});
    const ContactSurgeryDiagram d = reduced(read_document(read_input(o.input)).diagram, o);
    PresentationOptions po;
    po.allow_tb_zero = o.allow_tb_zero;
    const HandlebodyPresentation p = build_presentation(d, po);
    const ChernClassData c1 = c1_class(p);
    if (!c1.is_torsion && !o.no_d3)
        throw MathError("c1-non-torsion",
                        "c1 is not torsion, so d3 is undefined (use --no-d3 for the c1 report)");
    Json out;
    out["h1"] = json_of(first_homology(p));
    out["c1"] = json_of(c1);
    if (!o.no_d3)
        out["d3"] = json_of(d3(p));
    out["diagnostics"] = json_of(p.diagnostics);
    return out.dump(2) + "\n";
}

std::string cmd_homology(const Options &o) {
    format_of(o, "json", {"json"});
    const ContactSurgeryDiagram d = reduced(read_document(read_input(o.input)).diagram, o);
    PresentationOptions po;
    po.allow_tb_zero = o.allow_tb_zero;
    const HandlebodyPresentation p = build_presentation(d, po);
    const CharacteristicNumbers cn = characteristic_numbers(p);
    Json out;
    out["h1"] = json_of(first_homology(p));
    out["det"] = integer_string_or_number(determinant(p.L));
    out["sigma"] = cn.sigma;
    out["chi"] = cn.chi;
    return out.dump(2) + "\n";
}

std::vector<Integer> parse_alpha(const std::string &text) {
    std::vector<Integer> out;
    if (text.empty())
        return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::optional<Rational> v;
        try {
            v = Rational::parse(item);
        } catch (const std::invalid_argument &) {
        }
        if (!v || !v->is_integer())
            throw UsageError("--alpha expects comma-separated integers, got '" + item + "'");
        out.push_back(v->num());
    }
    return out;
}

std::string cmd_realize(const Options &o) {
    const std::string f = format_of(o, "json", {"json", "dsl"});
    const SourceDocument doc = read_document(read_input(o.input));
    const FramedLink link = framed_link_from(doc);
    RealizationTarget t;
    t.alpha = parse_alpha(o.alpha);
    if (!o.d3_target.empty()) {
        try {
            t.d3_target = Rational::parse(o.d3_target);
        } catch (const std::invalid_argument &) {
            throw UsageError("--d3 expects a rational p/q, got '" + o.d3_target + "'");
        }
    }
    const Realization r = realize(link, t);
    if (f == "dsl")
        return print(r.diagram);
    Json out = json_of(r.diagram);
    Json info;
    info["xi_plus_summands"] = r.xi_plus_summands;
    info["xi_minus_summands"] = r.xi_minus_summands;
    if (r.d3)
        info["d3"] = json_of(*r.d3);
    out["realization"] = info;
    return out.dump(2) + "\n";
}

std::string cmd_catalog(const Options &o) {
    const std::string f = format_of(o, "json", {"json", "dsl", "svg"});
    ContactSurgeryDiagram d;
    try {
        d = catalog(o.catalog_name, o.catalog_param);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    return emit_diagram(d, f);
}

std::string cmd_render(const Options &o) {
    format_of(o, "svg", {"svg"});
    return render_svg(read_document(read_input(o.input)).diagram);
}

void error_line(const std::string &reason, const std::string &message) {
    std::cerr << "error: " << reason << ": " << message << "\n";
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Contact surgery diagrams: expansion, homology, c1 and d3."};
    app.require_subcommand(1, 1);
    Options o;

    auto input = [&](CLI::App *sub) {
        sub->add_option("input", o.input, "diagram file (.csd or JSON), '-' for stdin")
            ->capture_default_str();
    };
    auto format = [&](CLI::App *sub, const std::string &help) {
        sub->add_option("--format", o.format, help)
            ->check(CLI::IsMember({"json", "dsl", "svg"}));
    };
    auto expansion = [&](CLI::App *sub) {
        sub->add_option("--zigzag", o.zigzag, "zigzag side for negative expansions")
            ->check(CLI::IsMember({"up", "down"}))
            ->capture_default_str();
        sub->add_option("--k", o.k, "number of +1 push-offs in positive expansions")
            ->check(CLI::PositiveNumber);
    };
    app.add_option("--seed", o.seed, "reserved for test replay; has no effect");

    CLI::App *check = app.add_subcommand("check", "parse, validate and summarize a diagram");
    input(check);
    format(check, "json (default) or dsl");

    CLI::App *expand = app.add_subcommand("expand", "reduce to a contact (+-1)-surgery diagram");
    input(expand);
    format(expand, "json (default) or dsl");
    expansion(expand);
    expand->add_flag("--enumerate", o.enumerate, "emit every choice of zigzag sides");

    CLI::App *inv = app.add_subcommand("invariants", "H1, c1 and d3 (expands first)");
    input(inv);
    format(inv, "json");
    expansion(inv);
    inv->add_flag("--no-d3", o.no_d3, "report c1 and H1 only");
    inv->add_flag("--allow-tb-zero", o.allow_tb_zero, "suppress the tb = 0 diagnostic");

    CLI::App *hom = app.add_subcommand("homology", "H1, determinant, signature, Euler characteristic");
    input(hom);
    format(hom, "json");
    expansion(hom);
    hom->add_flag("--allow-tb-zero", o.allow_tb_zero, "suppress the tb = 0 diagnostic");

    CLI::App *real = app.add_subcommand("realize", "contact diagram for a framed link");
    input(real);
    format(real, "json (default) or dsl");
    real->add_option("--alpha", o.alpha, "Chern class shifts, comma separated");
    real->add_option("--d3", o.d3_target, "target d3 as p/q");

    CLI::App *cat = app.add_subcommand("catalog", "emit a built-in diagram");
    cat->add_option("name", o.catalog_name, "catalog entry")->required();
    cat->add_option("param", o.catalog_param, "k or i for parametrized entries");
    format(cat, "json (default), dsl or svg");

    CLI::App *render = app.add_subcommand("render", "SVG drawing of a front");
    input(render);
    format(render, "svg");

    for (CLI::App *sub : app.get_subcommands({}))
        sub->add_option("--seed", o.seed, "reserved for test replay; has no effect");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        error_line("usage", e.what());
        return kUsage;
    }

    try {
        std::string out;
        if (*check)
            out = cmd_check(o);
        else if (*expand)
            out = cmd_expand(o);
        else if (*inv)
            out = cmd_invariants(o);
        else if (*hom)
            out = cmd_homology(o);
        else if (*real)
            out = cmd_realize(o);
        else if (*cat)
            out = cmd_catalog(o);
        else
            out = cmd_render(o);
        std::cout << out;
        return kOk;
    } catch (const UsageError &e) {
        error_line("usage", e.what());
        return kUsage;
    } catch (const MathError &e) {
        error_line(e.reason(), e.what());
        return kMath;
    } catch (const Error &e) {
        error_line(e.reason(), e.what());
        return kInput;
    } catch (const std::exception &e) {
        error_line("internal", e.what());
        return kUsage;
    }
}
