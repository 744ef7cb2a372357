#include "csd/dsl.hpp"

#include "csd/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace csd {

namespace {

// ---- lexer ------------------------------------------------------------------

enum class Tok { Ident, Int, LBrace, RBrace, Semi, Eq, Slash, Plus, Minus, End };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

std::string where(const SourceSpan &s) {
    return "line " + std::to_string(s.line) + ", column " + std::to_string(s.column);
}

[[noreturn]] void fail(const SourceSpan &s, const std::string &msg) {
    throw ParseError(s.line, s.column, where(s) + ": " + msg);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(const std::string &text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            const unsigned char c = static_cast<unsigned char>(text[i]);
            if (c == '\n') {
                ++line;
                col = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++col;
            }
        }
    };
    // U+2212 MINUS SIGN reads as '-'
    auto is_unicode_minus = [&](std::size_t at) {
        return text.compare(at, 3, "\xE2\x88\x92") == 0;
    };
    while (i < text.size()) {
        const char c = text[i];
        const SourceSpan here{line, col};
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const bool minus = c == '-' || is_unicode_minus(i);
        const std::size_t sign_width = c == '-' || c == '+' ? 1 : (minus ? 3 : 0);
        if ((c == '+' || minus) && i + sign_width < text.size() && is_digit(text[i + sign_width])) {
            std::string t(1, minus ? '-' : '+');
            advance(sign_width);
            while (i < text.size() && is_digit(text[i])) {
                t += text[i];
                advance(1);
            }
            out.push_back({Tok::Int, t, here});
            continue;
        }
        if (is_digit(c)) {
            std::string t;
            while (i < text.size() && is_digit(text[i])) {
                t += text[i];
                advance(1);
            }
            out.push_back({Tok::Int, t, here});
            continue;
        }
        if (ident_start(c)) {
            std::string t;
            while (i < text.size() && ident_char(text[i])) {
                t += text[i];
                advance(1);
            }
            out.push_back({Tok::Ident, t, here});
            continue;
        }
        Tok kind;
        std::size_t width = 1;
        switch (c) {
        case '{':
            kind = Tok::LBrace;
            break;
        case '}':
            kind = Tok::RBrace;
            break;
        case ';':
            kind = Tok::Semi;
            break;
        case '=':
            kind = Tok::Eq;
            break;
        case '/':
            kind = Tok::Slash;
            break;
        case '+':
            kind = Tok::Plus;
            break;
        default:
            if (!minus)
                fail(here, "unexpected character '" + std::string(1, c) + "'");
            kind = Tok::Minus;
            width = sign_width;
        }
        out.push_back({kind, kind == Tok::Minus ? "-" : std::string(1, c), here});
        advance(width);
    }
    out.push_back({Tok::End, "", {line, col}});
    return out;
}

const char *describe(Tok k) {
    switch (k) {
    case Tok::Ident:
        return "a name";
    case Tok::Int:
        return "an integer";
    case Tok::LBrace:
        return "'{'";
    case Tok::RBrace:
        return "'}'";
    case Tok::Semi:
        return "';'";
    case Tok::Eq:
        return "'='";
    case Tok::Slash:
        return "'/'";
    case Tok::Plus:
        return "'+'";
    case Tok::Minus:
        return "'-'";
    case Tok::End:
        return "end of input";
    }
    return "?";
}

// ---- parser -----------------------------------------------------------------

struct Ref {
    bool by_index = false;
    long index = 0;
    std::string name;
    SourceSpan span;
};

struct PendingLabel {
    long index;
    std::string name;
    SourceSpan span, index_span;
};
struct PendingOrient {
    long index;
    bool positive;
    SourceSpan span;
};
struct PendingSurgery {
    Ref target;
    SurgeryCoefficient value;
    SourceSpan span;
};
struct PendingFraming {
    Ref target;
    Integer value;
    SourceSpan span;
};
struct PendingKnot {
    std::string name;
    Integer tb, rot;
    SourceSpan span;
};
struct PendingLk {
    Ref a, b;
    Integer value;
    SourceSpan span;
};

class Parser {
  public:
    explicit Parser(const std::string &text) : toks_(lex(text)) {}

    SourceDocument run() {
        if (peek_keyword("diagram")) {
            next();
            doc_.name = expect(Tok::Ident, "a diagram name").text;
        }
        while (peek().kind != Tok::End)
            statement();
        return finish();
    }

  private:
    enum class Mode { None, Front, Abstract };

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    SourceDocument doc_;
    Mode mode_ = Mode::None;
    SourceSpan mode_span_{};
    std::vector<MorseEvent> events_;
    SourceSpan front_end_{};
    std::vector<PendingLabel> labels_;
    std::vector<PendingOrient> orients_;
    std::vector<PendingSurgery> surgeries_;
    std::vector<PendingFraming> framings_;
    std::vector<PendingKnot> knots_;
    std::vector<PendingLk> lks_;

    const Token &peek() const { return toks_[pos_]; }
    const Token &next() { return toks_[pos_++]; }
    bool peek_keyword(const char *kw) const {
        return peek().kind == Tok::Ident && peek().text == kw;
    }
    const Token &expect(Tok kind, const std::string &what) {
        if (peek().kind != kind)
            fail(peek().span, "expected " + what + ", found " + found(peek()));
        return next();
    }
    static std::string found(const Token &t) {
        if (t.kind == Tok::Ident || t.kind == Tok::Int)
            return "'" + t.text + "'";
        return describe(t.kind);
    }
    void expect_keyword(const char *kw) {
        if (!peek_keyword(kw))
            fail(peek().span, std::string("expected '") + kw + "', found " + found(peek()));
        next();
    }

    Integer integer(const Token &t) {
        std::string s = t.text;
        if (!s.empty() && s[0] == '+')
            s.erase(0, 1);
        return Integer(s);
    }
    long small_index(const Token &t) {
        const Integer v = integer(t);
        if (v < 1 || v > 1000000)
            fail(t.span, "component index must be a positive integer, got " + t.text);
        return v.get_si();
    }

    void enter(Mode m, const SourceSpan &span) {
        if (mode_ != Mode::None && mode_ != m)
            fail(span, std::string("cannot mix front and abstract input in one document (") +
                           (mode_ == Mode::Front ? "front" : "abstract") + " data started at " +
                           where(mode_span_) + ")");
        if (mode_ == Mode::None) {
            mode_ = m;
            mode_span_ = span;
        }
    }

    Ref reference() {
        const Token &t = next();
        Ref r;
        r.span = t.span;
        if (t.kind == Tok::Int) {
            r.by_index = true;
            r.index = small_index(t);
        } else if (t.kind == Tok::Ident) {
            r.name = t.text;
        } else {
            fail(t.span, "expected a component number or name, found " + found(t));
        }
        return r;
    }

    SurgeryCoefficient coefficient() {
        const Token &t = peek();
        if (t.kind == Tok::Ident && t.text == "inf") {
            next();
            return SurgeryCoefficient::infinity();
        }
        if (t.kind != Tok::Int)
            fail(t.span, "expected a surgery coefficient (integer, p/q, +1, -1 or inf), found " +
                             found(t));
        next();
        Integer num = integer(t), den = 1;
        if (peek().kind == Tok::Slash) {
            next();
            const Token &d = expect(Tok::Int, "a denominator");
            if (d.text[0] == '-' || d.text[0] == '+')
                fail(d.span, "denominator must be an unsigned integer");
            den = integer(d);
            if (den == 0)
                fail(d.span, "zero denominator");
        }
        if (num == 0)
            throw MathError("zero-coefficient", where(t.span) + ": 0-surgery excluded");
        return SurgeryCoefficient(Rational(num, den));
    }

    void statement() {
        const Token &t = peek();
        if (t.kind != Tok::Ident)
            fail(t.span, "expected a statement, found " + found(t));
        const std::string kw = t.text;
        if (kw == "front")
            front_block();
        else if (kw == "abstract") {
            enter(Mode::Abstract, t.span);
            next();
        } else if (kw == "knot")
            knot_decl();
        else if (kw == "lk")
            lk_decl();
        else if (kw == "label") {
            next();
            const Token &idx = expect(Tok::Int, "a component number");
            const long index = small_index(idx);
            const Token &name = expect(Tok::Ident, "a label");
            labels_.push_back({index, name.text, name.span, idx.span});
        } else if (kw == "orient") {
            next();
            const Token &idx = expect(Tok::Int, "a component number");
            const long index = small_index(idx);
            const Token &s = next();
            if (s.kind != Tok::Plus && s.kind != Tok::Minus)
                fail(s.span, "expected '+' or '-', found " + found(s));
            orients_.push_back({index, s.kind == Tok::Plus, t.span});
        } else if (kw == "surgery") {
            next();
            Ref r = reference();
            expect(Tok::Eq, "'='");
            SurgeryCoefficient c = coefficient();
            surgeries_.push_back({r, c, t.span});
        } else if (kw == "framing") {
            next();
            Ref r = reference();
            expect(Tok::Eq, "'='");
            const Token &v = expect(Tok::Int, "an integer framing");
            framings_.push_back({r, integer(v), t.span});
        } else if (kw == "diagram") {
            fail(t.span, "the 'diagram' header must come first");
        } else {
            fail(t.span, "unknown statement '" + kw + "'");
        }
    }

    void front_block() {
        const Token &kw = next();
        enter(Mode::Front, kw.span);
        if (!doc_.event_spans.empty() || front_end_.line != 0)
            fail(kw.span, "only one front block is allowed");
        expect(Tok::LBrace, "'{'");
        while (peek().kind != Tok::RBrace) {
            const Token &t = peek();
            if (t.kind != Tok::Ident)
                fail(t.span, "expected an event L<i>, R<i> or X<i>, found " + found(t));
            next();
            const char letter = t.text[0];
            if (letter != 'L' && letter != 'R' && letter != 'X')
                fail(t.span, "expected an event L<i>, R<i> or X<i>, found '" + t.text + "'");
            std::string digits = t.text.substr(1);
            if (digits.empty()) {
                const Token &n = expect(Tok::Int, "a slot number");
                if (n.text[0] == '-' || n.text[0] == '+')
                    fail(n.span, "slot must be a positive integer");
                digits = n.text;
            }
            if (!std::all_of(digits.begin(), digits.end(), is_digit))
                fail(t.span, "expected an event L<i>, R<i> or X<i>, found '" + t.text + "'");
            const Integer slot(digits);
            if (slot < 1 || slot > 1000000)
                fail(t.span, "slot must be a positive integer");
            const int s = static_cast<int>(slot.get_si());
            events_.push_back(letter == 'L'   ? MorseEvent::left(s)
                              : letter == 'R' ? MorseEvent::right(s)
                                              : MorseEvent::cross(s));
            doc_.event_spans.push_back(t.span);
            expect(Tok::Semi, "';' after the event");
        }
        front_end_ = next().span;
    }

    void knot_decl() {
        const Token &kw = next();
        enter(Mode::Abstract, kw.span);
        const Token &name = expect(Tok::Ident, "a knot name");
        expect_keyword("tb");
        expect(Tok::Eq, "'='");
        const Integer tb = integer(expect(Tok::Int, "an integer tb"));
        expect_keyword("rot");
        expect(Tok::Eq, "'='");
        const Integer rot = integer(expect(Tok::Int, "an integer rot"));
        expect(Tok::Semi, "';'");
        for (const PendingKnot &k : knots_)
            if (k.name == name.text)
                fail(name.span, "duplicate knot '" + name.text + "' (first declared at " +
                                    where(k.span) + ")");
        knots_.push_back({name.text, tb, rot, name.span});
    }

    void lk_decl() {
        const Token &kw = next();
        enter(Mode::Abstract, kw.span);
        Ref a = reference();
        Ref b = reference();
        expect(Tok::Eq, "'='");
        const Integer v = integer(expect(Tok::Int, "an integer linking number"));
        expect(Tok::Semi, "';'");
        lks_.push_back({a, b, v, kw.span});
    }

    // ---- resolution ----

    std::vector<std::optional<std::string>> names_;

    int resolve(const Ref &r, int n) const {
        if (r.by_index) {
            if (r.index > n)
                fail(r.span, "component " + std::to_string(r.index) + " out of range (" +
                                 std::to_string(n) + " components)");
            return static_cast<int>(r.index - 1);
        }
        for (int i = 0; i < n; ++i)
            if (names_[i] && *names_[i] == r.name)
                return i;
        fail(r.span, "unknown label '" + r.name + "'");
    }

    void check_front() {
        int live = 0;
        for (std::size_t e = 0; e < events_.size(); ++e) {
            const MorseEvent &ev = events_[e];
            const bool ok = ev.kind == EventKind::LeftCusp ? ev.slot <= live + 1
                                                           : ev.slot + 1 <= live;
            if (!ok)
                fail(doc_.event_spans[e],
                     "slot " + std::to_string(ev.slot) + " out of range with " +
                         std::to_string(live) + " live strands");
            live += ev.kind == EventKind::LeftCusp ? 2 : ev.kind == EventKind::RightCusp ? -2 : 0;
        }
        if (live != 0)
            fail(front_end_, "front ends with " + std::to_string(live) + " open strands");
    }

    SourceDocument finish() {
        int n = 0;
        if (mode_ == Mode::Abstract) {
            n = static_cast<int>(knots_.size());
            for (const PendingKnot &k : knots_)
                names_.emplace_back(k.name);
            for (const PendingOrient &o : orients_)
                fail(o.span, "'orient' needs a front; abstract data has no orientation seeds");
        } else {
            check_front();
            n = count_components(events_);
            names_.assign(n, std::nullopt);
        }

        std::map<std::string, SourceSpan> used_names;
        for (int i = 0; i < n; ++i)
            if (names_[i])
                used_names.emplace(*names_[i], knots_[i].span);
        std::vector<bool> relabeled(n, false);
        for (const PendingLabel &l : labels_) {
            if (l.index > n)
                fail(l.index_span, "component " + std::to_string(l.index) + " out of range (" +
                                       std::to_string(n) + " components)");
            const int i = static_cast<int>(l.index - 1);
            if (relabeled[i])
                fail(l.span, "duplicate label for component " + std::to_string(l.index));
            auto it = used_names.find(l.name);
            if (it != used_names.end() && !(names_[i] && *names_[i] == l.name))
                fail(l.span, "label '" + l.name + "' already used (at " + where(it->second) + ")");
            if (names_[i])
                used_names.erase(*names_[i]);
            names_[i] = l.name;
            used_names.emplace(l.name, l.span);
            relabeled[i] = true;
        }

        std::vector<SurgeryCoefficient> coeff(n, SurgeryCoefficient::infinity());
        std::vector<std::optional<SourceSpan>> assigned(n);
        for (const PendingSurgery &s : surgeries_) {
            const int i = resolve(s.target, n);
            if (assigned[i])
                fail(s.span, "duplicate surgery assignment for component " +
                                 std::to_string(i + 1) + " (first at " + where(*assigned[i]) + ")");
            assigned[i] = s.span;
            coeff[i] = s.value;
        }
        doc_.framings.assign(n, std::nullopt);
        std::vector<std::optional<SourceSpan>> framed(n);
        for (const PendingFraming &f : framings_) {
            const int i = resolve(f.target, n);
            if (framed[i])
                fail(f.span, "duplicate framing for component " + std::to_string(i + 1));
            framed[i] = f.span;
            doc_.framings[i] = f.value;
        }

        const bool any_label = std::any_of(names_.begin(), names_.end(),
                                           [](const auto &x) { return x.has_value(); });
        if (mode_ == Mode::Abstract) {
            IntMatrix lk(n, n);
            std::vector<std::vector<bool>> set(n, std::vector<bool>(n, false));
            for (const PendingLk &l : lks_) {
                const int a = resolve(l.a, n);
                const int b = resolve(l.b, n);
                if (a == b)
                    fail(l.span, "lk needs two different knots");
                if (set[a][b])
                    fail(l.span, "duplicate lk for this pair");
                set[a][b] = set[b][a] = true;
                lk(a, b) = l.value;
                lk(b, a) = l.value;
            }
            std::vector<Integer> tb, rot;
            for (const PendingKnot &k : knots_) {
                tb.push_back(k.tb);
                rot.push_back(k.rot);
            }
            AbstractLinkData a = make_abstract(tb, rot, lk);
            a.labels = names_;
            doc_.diagram = ContactSurgeryDiagram(std::move(a), std::move(coeff));
        } else {
            FrontDiagram f = FrontDiagram::from_word(events_);
            for (const PendingOrient &o : orients_) {
                if (o.index > n)
                    fail(o.span, "component " + std::to_string(o.index) + " out of range (" +
                                     std::to_string(n) + " components)");
                f.orientation_seeds[o.index - 1] = o.positive;
            }
            if (any_label)
                f.labels = names_;
            doc_.diagram = ContactSurgeryDiagram(std::move(f), std::move(coeff));
        }
        doc_.diagram.check();
        return std::move(doc_);
    }
};

// ---- printing helpers -------------------------------------------------------

bool valid_name(const std::string &s) {
    if (s.empty() || !ident_start(s[0]))
        return false;
    if (s == "inf")
        return false;
    return std::all_of(s.begin(), s.end(), ident_char);
}

// Unique identifiers for abstract knots; keeps labels where possible.
std::vector<std::string> knot_names(const std::vector<std::optional<std::string>> &labels,
                                    std::size_t n) {
    std::vector<std::string> out(n);
    std::set<std::string> taken;
    for (std::size_t i = 0; i < n; ++i)
        if (i < labels.size() && labels[i] && valid_name(*labels[i]) && !taken.count(*labels[i])) {
            out[i] = *labels[i];
            taken.insert(out[i]);
        }
    for (std::size_t i = 0; i < n; ++i) {
        if (!out[i].empty())
            continue;
        std::string name = "C" + std::to_string(i + 1);
        while (taken.count(name))
            name += "_";
        out[i] = name;
        taken.insert(name);
    }
    return out;
}

char event_letter(EventKind k) {
    return k == EventKind::LeftCusp ? 'L' : k == EventKind::RightCusp ? 'R' : 'X';
}

Json integer_json(const Integer &v) {
    if (v.fits_slong_p())
        return Json(v.get_si());
    return Json(v.get_str());
}

Json integers_json(const std::vector<Integer> &v) {
    Json a = Json::array();
    for (const Integer &x : v)
        a.push_back(integer_json(x));
    return a;
}

} // namespace

SourceDocument parse_document(const std::string &text) { return Parser(text).run(); }

ContactSurgeryDiagram parse(const std::string &text) { return parse_document(text).diagram; }

std::string print(const ContactSurgeryDiagram &diagram) {
    diagram.check();
    std::ostringstream os;
    const int n = diagram.size();
    if (diagram.is_front()) {
        const FrontDiagram &f = diagram.front();
        if (f.events.empty() && n == 0)
            return "";
        os << "front {";
        for (std::size_t e = 0; e < f.events.size(); ++e) {
            os << (e % 16 == 0 ? "\n  " : " ") << event_letter(f.events[e].kind)
               << f.events[e].slot << ";";
        }
        os << "\n}\n";
        for (int i = 0; i < n; ++i)
            if (!f.orientation_seeds[i])
                os << "orient " << i + 1 << " -\n";
        // labels only when they can be read back unambiguously
        std::set<std::string> seen;
        bool labels_ok = true;
        for (const auto &l : f.labels)
            if (l && (!valid_name(*l) || !seen.insert(*l).second))
                labels_ok = false;
        if (labels_ok)
            for (std::size_t i = 0; i < f.labels.size(); ++i)
                if (f.labels[i])
                    os << "label " << i + 1 << " " << *f.labels[i] << "\n";
        for (int i = 0; i < n; ++i)
            os << "surgery " << i + 1 << " = " << diagram.coefficients[i].to_string() << "\n";
        return os.str();
    }
    const AbstractLinkData &a = std::get<AbstractLinkData>(diagram.link);
    if (n == 0)
        return "";
    const std::vector<std::string> names = knot_names(a.labels, n);
    os << "abstract\n";
    for (int i = 0; i < n; ++i)
        os << "knot " << names[i] << " tb=" << a.tb[i] << " rot=" << a.rot[i] << ";\n";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a.lk(i, j) != 0)
                os << "lk " << names[i] << " " << names[j] << " = " << a.lk(i, j) << ";\n";
    for (int i = 0; i < n; ++i)
        os << "surgery " << names[i] << " = " << diagram.coefficients[i].to_string() << "\n";
    return os.str();
}

bool semantically_equal(const ContactSurgeryDiagram &a, const ContactSurgeryDiagram &b) {
    if (a.coefficients != b.coefficients)
        return false;
    if (a.is_front() && b.is_front()) {
        const FrontDiagram &fa = a.front(), &fb = b.front();
        if (fa.events != fb.events || fa.orientation_seeds != fb.orientation_seeds)
            return false;
    }
    const AbstractLinkData x = a.abstract(), y = b.abstract();
    if (x.tb != y.tb || x.rot != y.rot || x.lk != y.lk)
        return false;
    for (std::size_t i = 0; i < x.labels.size() && i < y.labels.size(); ++i)
        if (x.labels[i] && y.labels[i] && *x.labels[i] != *y.labels[i])
            return false;
    return true;
}

FramedLink framed_link_from(const SourceDocument &document) {
    const AbstractLinkData a = document.diagram.abstract();
    const std::size_t n = a.tb.size();
    FramedLink link;
    link.lk = a.lk;
    link.labels = a.labels;
    for (std::size_t i = 0; i < n; ++i) {
        if (!document.framings[i])
            throw ValidationError("missing-framing", "component " + std::to_string(i + 1) +
                                                         " has no 'framing' statement");
        link.lk(i, i) = *document.framings[i];
        link.hints.push_back(LegendrianHint{a.tb[i], a.rot[i]});
    }
    return link;
}

// ---- JSON -------------------------------------------------------------------

Json json_of(const ContactSurgeryDiagram &diagram) {
    const AbstractLinkData a = diagram.abstract();
    const std::size_t n = a.tb.size();
    Json out;
    Json comps = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json c;
        if (i < a.labels.size() && a.labels[i])
            c["label"] = *a.labels[i];
        c["tb"] = integer_json(a.tb[i]);
        c["rot"] = integer_json(a.rot[i]);
        c["coefficient"] = diagram.coefficients[i].to_string();
        comps.push_back(c);
    }
    out["components"] = comps;
    Json lk = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < n; ++j)
            row.push_back(integer_json(a.lk(i, j)));
        lk.push_back(row);
    }
    out["lk"] = lk;
    if (diagram.is_front()) {
        const FrontDiagram &f = diagram.front();
        Json events = Json::array();
        for (const MorseEvent &e : f.events)
            events.push_back(std::string(1, event_letter(e.kind)) + std::to_string(e.slot));
        Json seeds = Json::array();
        for (bool s : f.orientation_seeds)
            seeds.push_back(s);
        out["front"] = {{"events", events}, {"orientation", seeds}};
    }
    return out;
}

Json json_of(const HomologyGroup &h) {
    Json out;
    out["free_rank"] = h.free_rank;
    out["torsion"] = integers_json(h.torsion);
    out["order"] = h.free_rank > 0 ? Json(nullptr) : integer_json(h.order());
    return out;
}

Json json_of(const ChernClassData &c) {
    Json out;
    out["coords"] = integers_json(c.pd_c1);
    out["torsion"] = c.is_torsion;
    out["divisibility"] = integer_json(c.divisibility);
    return out;
}

Json json_of(const D3Result &d) {
    Json out;
    out["num"] = integer_json(d.value.num());
    out["den"] = integer_json(d.value.den());
    out["c2"] = integer_json(d.c_squared.num());
    out["c2_den"] = integer_json(d.c_squared.den());
    out["sigma"] = d.sigma;
    out["chi"] = d.chi;
    out["q"] = d.q;
    return out;
}

Json json_of(const std::vector<Diagnostic> &diagnostics) {
    Json out = Json::array();
    for (const Diagnostic &d : diagnostics)
        out.push_back({{"code", d.code}, {"message", d.message}});
    return out;
}

std::string to_json(const ContactSurgeryDiagram &diagram) { return json_of(diagram).dump(2); }
std::string to_json(const HomologyGroup &h) { return Json{{"h1", json_of(h)}}.dump(2); }
std::string to_json(const ChernClassData &c) { return Json{{"c1", json_of(c)}}.dump(2); }
std::string to_json(const D3Result &d) { return Json{{"d3", json_of(d)}}.dump(2); }

// ---- JSON input -------------------------------------------------------------

namespace {

[[noreturn]] void json_fail(const std::string &msg) { throw ParseError(1, 1, "json: " + msg); }

Integer json_integer(const Json &v, const std::string &what) {
    if (v.is_number_integer())
        return Integer(v.get<long>());
    if (v.is_string()) {
        Integer out;
        if (out.set_str(v.get<std::string>(), 10) == 0)
            return out;
    }
    json_fail(what + " must be an integer");
}

const Json &field(const Json &obj, const char *name) {
    if (!obj.is_object() || !obj.contains(name))
        json_fail(std::string("missing field '") + name + "'");
    return obj.at(name);
}

struct JsonInput {
    ContactSurgeryDiagram diagram;
    std::vector<std::optional<Integer>> framings;
};

JsonInput json_input(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        // byte offset to line/column
        const std::size_t at = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        int line = 1, col = 1;
        for (std::size_t i = 0; i < at; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
                ++col;
            }
        }
        throw ParseError(line, col, where({line, col}) + ": malformed JSON");
    }
    const Json &comps = field(j, "components");
    if (!comps.is_array())
        json_fail("'components' must be an array");
    const std::size_t n = comps.size();
    JsonInput out;
    std::vector<Integer> tb, rot;
    std::vector<std::optional<std::string>> labels;
    std::vector<SurgeryCoefficient> coeff;
    bool any_label = false;
    for (const Json &c : comps) {
        tb.push_back(json_integer(field(c, "tb"), "tb"));
        rot.push_back(json_integer(field(c, "rot"), "rot"));
        const Json &k = field(c, "coefficient");
        if (!k.is_string())
            json_fail("'coefficient' must be a string such as \"+1\" or \"-5/3\"");
        try {
            coeff.push_back(SurgeryCoefficient::parse(k.get<std::string>()));
        } catch (const std::invalid_argument &) {
            json_fail("bad coefficient '" + k.get<std::string>() + "'");
        }
        if (c.contains("label") && c.at("label").is_string()) {
            labels.emplace_back(c.at("label").get<std::string>());
            any_label = true;
        } else {
            labels.emplace_back();
        }
        out.framings.push_back(c.contains("framing")
                                   ? std::optional<Integer>(json_integer(c.at("framing"), "framing"))
                                   : std::nullopt);
    }
    IntMatrix lk(n, n);
    if (j.contains("lk")) {
        const Json &rows = j.at("lk");
        if (!rows.is_array() || rows.size() != n)
            json_fail("'lk' must be an n x n array");
        for (std::size_t a = 0; a < n; ++a) {
            if (!rows[a].is_array() || rows[a].size() != n)
                json_fail("'lk' must be an n x n array");
            for (std::size_t b = 0; b < n; ++b)
                lk(a, b) = json_integer(rows[a][b], "lk entry");
        }
    }
    if (j.contains("front")) {
        const Json &f = j.at("front");
        std::vector<MorseEvent> events;
        for (const Json &e : field(f, "events")) {
            const std::string t = e.is_string() ? e.get<std::string>() : "";
            if (t.size() < 2 || (t[0] != 'L' && t[0] != 'R' && t[0] != 'X') ||
                !std::all_of(t.begin() + 1, t.end(), is_digit) || t.size() > 8)
                json_fail("bad front event " + e.dump());
            const int slot = std::stoi(t.substr(1));
            events.push_back(t[0] == 'L'   ? MorseEvent::left(slot)
                             : t[0] == 'R' ? MorseEvent::right(slot)
                                           : MorseEvent::cross(slot));
        }
        FrontDiagram front = FrontDiagram::from_word(std::move(events));
        if (f.contains("orientation")) {
            front.orientation_seeds.clear();
            for (const Json &b : f.at("orientation")) {
                if (!b.is_boolean())
                    json_fail("'orientation' entries must be booleans");
                front.orientation_seeds.push_back(b.get<bool>());
            }
        }
        if (any_label)
            front.labels = labels;
        out.diagram = ContactSurgeryDiagram(std::move(front), std::move(coeff));
        out.diagram.check();
        const AbstractLinkData a = out.diagram.abstract();
        if (a.tb != tb || a.rot != rot)
            throw ValidationError("json-mismatch", "json: tb/rot do not match the front");
    } else {
        AbstractLinkData a = make_abstract(tb, rot, lk);
        a.labels = labels;
        out.diagram = ContactSurgeryDiagram(std::move(a), std::move(coeff));
        out.diagram.check();
    }
    return out;
}

} // namespace

ContactSurgeryDiagram diagram_from_json(const std::string &text) {
    return json_input(text).diagram;
}

SourceDocument read_document(const std::string &text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{')
        return parse_document(text);
    JsonInput in = json_input(text);
    SourceDocument doc;
    doc.diagram = std::move(in.diagram);
    doc.framings = std::move(in.framings);
    return doc;
}

// ---- SVG --------------------------------------------------------------------

namespace {

constexpr int kStep = 40;   // horizontal width of one event
constexpr int kSlot = 24;   // vertical distance between strands
constexpr int kMargin = 60; // room for labels

const char *const kPalette[] = {"#1f4e9c", "#b23a2e", "#2e7d32", "#7b3fa0",
                                "#c77700", "#00838f", "#5d4037", "#ad1457"};

int slot_y(int index) { return kMargin / 2 + kSlot * (index + 1); }

struct Segment {
    int arc;
    std::string d;
};

} // namespace

std::string render_svg(const ContactSurgeryDiagram &diagram) {
    const FrontDiagram &f = diagram.front();
    const ComponentDecomposition dec = validate(f);
    const int n_events = static_cast<int>(f.events.size());
    int max_live = 0;
    for (int e = 0; e < n_events; ++e)
        max_live = std::max(max_live, dec.live_before[e] + 2);
    const int width = 2 * kMargin + kStep * std::max(n_events, 1);
    const int height = kMargin + kSlot * (max_live + 1);

    std::vector<Segment> plain, under, over;
    std::vector<std::pair<int, int>> cusp_points;
    std::vector<int> stack;
    auto color = [&](int arc) { return kPalette[dec.arcs[arc].component % 8]; };

    for (int e = 0; e < n_events; ++e) {
        const MorseEvent &ev = f.events[e];
        const int x0 = kMargin + kStep * e;
        const int x1 = x0 + kStep;
        const int xm = x0 + kStep / 2;
        const int i = ev.slot - 1;
        std::vector<int> after = stack;
        if (ev.kind == EventKind::LeftCusp) {
            const FrontCusp &c = dec.cusps[dec.event_item[e]];
            after.insert(after.begin() + i, {c.upper_arc, c.lower_arc});
        } else if (ev.kind == EventKind::RightCusp) {
            after.erase(after.begin() + i, after.begin() + i + 2);
        } else {
            std::swap(after[i], after[i + 1]);
        }
        auto pos = [](const std::vector<int> &s, int arc) {
            return static_cast<int>(std::find(s.begin(), s.end(), arc) - s.begin());
        };
        auto curve = [&](int xa, int ya, int xb, int yb) {
            const int xc = (xa + xb) / 2;
            return "M" + std::to_string(xa) + "," + std::to_string(ya) + " C" +
                   std::to_string(xc) + "," + std::to_string(ya) + " " + std::to_string(xc) +
                   "," + std::to_string(yb) + " " + std::to_string(xb) + "," + std::to_string(yb);
        };
        // strands passing through
        for (int arc : stack) {
            const int pb = pos(stack, arc);
            const int pa = pos(after, arc);
            if (pa == static_cast<int>(after.size()))
                continue;
            Segment s{arc, curve(x0, slot_y(pb), x1, slot_y(pa))};
            if (ev.kind == EventKind::Crossing && (pb == i || pb == i + 1))
                (pb == i ? over : under).push_back(s); // descending strand in front
            else
                plain.push_back(s);
        }
        if (ev.kind != EventKind::Crossing) {
            const bool left = ev.kind == EventKind::LeftCusp;
            const std::vector<int> &ref = left ? after : stack;
            const int yc = (slot_y(i) + slot_y(i + 1)) / 2;
            cusp_points.emplace_back(xm, yc);
            for (int k = 0; k < 2; ++k) {
                const int arc = ref[i + k];
                const int y = slot_y(i + k);
                plain.push_back({arc, left ? curve(xm, yc, x1, y) : curve(x0, y, xm, yc)});
            }
        }
        stack = std::move(after);
    }

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    auto emit = [&](const Segment &s, const char *cls) {
        os << "<path class=\"" << cls << "\" d=\"" << s.d << "\" fill=\"none\" stroke=\""
           << color(s.arc) << "\" stroke-width=\"2\"/>\n";
    };
    for (const Segment &s : plain)
        emit(s, "strand");
    for (const Segment &s : under)
        emit(s, "strand under");
    for (const Segment &s : over) {
        os << "<path class=\"gap\" d=\"" << s.d
           << "\" fill=\"none\" stroke=\"white\" stroke-width=\"8\"/>\n";
        emit(s, "strand over");
    }
    for (const auto &[x, y] : cusp_points)
        os << "<circle class=\"cusp\" cx=\"" << x << "\" cy=\"" << y
           << "\" r=\"2\" fill=\"black\"/>\n";
    // coefficient and label next to each component's first left cusp
    for (int c = 0; c < dec.component_count; ++c) {
        const int e = dec.first_left_cusp[c];
        const int i = f.events[e].slot - 1;
        const int x = kMargin + kStep * e + kStep / 2 - 6;
        const int y = (slot_y(i) + slot_y(i + 1)) / 2 + 4;
        std::string text = c < static_cast<int>(diagram.coefficients.size())
                               ? diagram.coefficients[c].to_string()
                               : "";
        if (c < static_cast<int>(f.labels.size()) && f.labels[c])
            text = *f.labels[c] + " " + text;
        os << "<text class=\"coefficient\" x=\"" << x << "\" y=\"" << y
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
           << kPalette[c % 8] << "\">" << text << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace csd
