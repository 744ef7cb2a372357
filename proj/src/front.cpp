#include "csd/front.hpp"

#include "csd/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace csd {

FrontDiagram FrontDiagram::from_word(std::vector<MorseEvent> events) {
    FrontDiagram f;
    const int n = count_components(events);
    f.events = std::move(events);
    f.orientation_seeds.assign(n, true);
    return f;
}

int ComponentDecomposition::crossing_sign(const FrontCrossing &c,
                                          CrossingConvention conv) const {
    // With the descending strand in front, the frame (over, under) is
    // positively oriented exactly when both strands run the same way.
    const bool same = arcs[c.descending_arc].rightward == arcs[c.ascending_arc].rightward;
    const int sign = same ? 1 : -1;
    return conv == CrossingConvention::SmallerSlopeOver ? sign : -sign;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    int add() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

const char *kind_letter(EventKind k) {
    switch (k) {
    case EventKind::LeftCusp:
        return "L";
    case EventKind::RightCusp:
        return "R";
    case EventKind::Crossing:
        return "X";
    }
    return "?";
}

[[noreturn]] void bad_slot(std::size_t index, const MorseEvent &e, int live) {
    throw ValidationError("invalid-front",
                          "event " + std::to_string(index + 1) + " (" + kind_letter(e.kind) +
                              std::to_string(e.slot) + "): slot out of range with " +
                              std::to_string(live) + " live strands");
}

// Word structure without orientation data.
ComponentDecomposition decompose(const std::vector<MorseEvent> &events) {
    ComponentDecomposition d;
    UnionFind uf;
    std::vector<int> stack;
    d.event_item.resize(events.size(), -1);
    d.event_component.resize(events.size(), -1);
    d.live_before.resize(events.size(), 0);

    for (std::size_t e = 0; e < events.size(); ++e) {
        const MorseEvent &ev = events[e];
        const int live = static_cast<int>(stack.size());
        d.live_before[e] = live;
        switch (ev.kind) {
        case EventKind::LeftCusp: {
            if (ev.slot < 1 || ev.slot > live + 1)
                bad_slot(e, ev, live);
            FrontCusp cusp;
            cusp.event = static_cast<int>(e);
            cusp.is_left = true;
            cusp.upper_arc = uf.add();
            cusp.lower_arc = uf.add();
            uf.unite(cusp.upper_arc, cusp.lower_arc);
            const int ci = static_cast<int>(d.cusps.size());
            d.arcs.push_back(FrontArc{-1, ci, -1, true});
            d.arcs.push_back(FrontArc{-1, ci, -1, true});
            stack.insert(stack.begin() + (ev.slot - 1), {cusp.upper_arc, cusp.lower_arc});
            d.event_item[e] = ci;
            d.cusps.push_back(cusp);
            break;
        }
        case EventKind::RightCusp: {
            if (ev.slot < 1 || ev.slot + 1 > live)
                bad_slot(e, ev, live);
            FrontCusp cusp;
            cusp.event = static_cast<int>(e);
            cusp.is_left = false;
            cusp.upper_arc = stack[ev.slot - 1];
            cusp.lower_arc = stack[ev.slot];
            uf.unite(cusp.upper_arc, cusp.lower_arc);
            const int ci = static_cast<int>(d.cusps.size());
            d.arcs[cusp.upper_arc].right_cusp = ci;
            d.arcs[cusp.lower_arc].right_cusp = ci;
            stack.erase(stack.begin() + (ev.slot - 1), stack.begin() + (ev.slot + 1));
            d.event_item[e] = ci;
            d.cusps.push_back(cusp);
            break;
        }
        case EventKind::Crossing: {
            if (ev.slot < 1 || ev.slot + 1 > live)
                bad_slot(e, ev, live);
            FrontCrossing x;
            x.event = static_cast<int>(e);
            x.descending_arc = stack[ev.slot - 1];
            x.ascending_arc = stack[ev.slot];
            std::swap(stack[ev.slot - 1], stack[ev.slot]);
            d.event_item[e] = static_cast<int>(d.crossings.size());
            d.crossings.push_back(x);
            break;
        }
        }
    }
    if (!stack.empty())
        throw ValidationError("invalid-front", std::to_string(stack.size()) +
                                                   " strands still open at the end of the front");

    // number components by first left cusp
    std::map<int, int> root_to_component;
    for (const FrontCusp &c : d.cusps) {
        if (!c.is_left)
            continue;
        const int root = uf.find(c.upper_arc);
        if (root_to_component.emplace(root, d.component_count).second) {
            d.first_left_cusp.push_back(c.event);
            ++d.component_count;
        }
    }
    for (std::size_t a = 0; a < d.arcs.size(); ++a)
        d.arcs[a].component = root_to_component.at(uf.find(static_cast<int>(a)));
    for (FrontCusp &c : d.cusps) {
        c.component = d.arcs[c.upper_arc].component;
        d.event_component[c.event] = c.component;
    }
    for (const FrontCrossing &x : d.crossings) {
        const int ca = d.arcs[x.descending_arc].component;
        if (ca == d.arcs[x.ascending_arc].component)
            d.event_component[x.event] = ca;
    }

    std::vector<int> left(d.component_count, 0), right(d.component_count, 0);
    for (const FrontCusp &c : d.cusps)
        ++(c.is_left ? left : right)[c.component];
    if (left != right)
        throw std::logic_error("front decomposition: unbalanced cusps on a component");
    return d;
}

// Propagates the seeds around each component and classifies the cusps.
void orient(ComponentDecomposition &d, const std::vector<bool> &seeds) {
    std::vector<int> state(d.arcs.size(), -1); // -1 unknown, 0 leftward, 1 rightward
    for (int comp = 0; comp < d.component_count; ++comp) {
        const FrontCusp *first = nullptr;
        for (const FrontCusp &c : d.cusps)
            if (c.event == d.first_left_cusp[comp]) {
                first = &c;
                break;
            }
        std::vector<int> work{first->upper_arc};
        state[first->upper_arc] = seeds[comp] ? 1 : 0;
        while (!work.empty()) {
            const int a = work.back();
            work.pop_back();
            for (int ci : {d.arcs[a].left_cusp, d.arcs[a].right_cusp}) {
                const FrontCusp &c = d.cusps[ci];
                const int other = c.upper_arc == a ? c.lower_arc : c.upper_arc;
                const int want = 1 - state[a];
                if (state[other] == -1) {
                    state[other] = want;
                    work.push_back(other);
                } else if (state[other] != want) {
                    throw ValidationError("invalid-front",
                                          "inconsistent orientation on component " +
                                              std::to_string(comp + 1));
                }
            }
        }
    }
    for (std::size_t a = 0; a < d.arcs.size(); ++a)
        d.arcs[a].rightward = state[a] == 1;
    for (FrontCusp &c : d.cusps) {
        const bool upper_right = d.arcs[c.upper_arc].rightward;
        // entering a left cusp on the upper branch means moving down
        c.down = c.is_left ? !upper_right : upper_right;
    }
}

void check_component(const ComponentDecomposition &d, int component) {
    if (component < 0 || component >= d.component_count)
        throw std::out_of_range("component " + std::to_string(component) +
                                " out of range (front has " +
                                std::to_string(d.component_count) + " components)");
}

} // namespace

int count_components(const std::vector<MorseEvent> &events) {
    return decompose(events).component_count;
}

ComponentDecomposition validate(const FrontDiagram &front) {
    ComponentDecomposition d = decompose(front.events);
    if (static_cast<int>(front.orientation_seeds.size()) != d.component_count)
        throw ValidationError("invalid-front",
                              "front has " + std::to_string(d.component_count) +
                                  " components but " +
                                  std::to_string(front.orientation_seeds.size()) +
                                  " orientation seeds");
    if (!front.labels.empty() && static_cast<int>(front.labels.size()) != d.component_count)
        throw ValidationError("invalid-front", "label count does not match component count");
    orient(d, front.orientation_seeds);
    return d;
}

Integer writhe(const FrontDiagram &front, int component, CrossingConvention conv) {
    const ComponentDecomposition d = validate(front);
    check_component(d, component);
    long w = 0;
    for (const FrontCrossing &x : d.crossings)
        if (d.event_component[x.event] == component)
            w += d.crossing_sign(x, conv);
    return Integer(w);
}

int cusp_count(const FrontDiagram &front, int component) {
    const ComponentDecomposition d = validate(front);
    check_component(d, component);
    return static_cast<int>(std::count_if(d.cusps.begin(), d.cusps.end(), [&](const FrontCusp &c) {
        return c.component == component;
    }));
}

Integer thurston_bennequin(const FrontDiagram &front, int component, CrossingConvention conv) {
    return writhe(front, component, conv) - cusp_count(front, component) / 2;
}

Integer rotation(const FrontDiagram &front, int component) {
    const ComponentDecomposition d = validate(front);
    check_component(d, component);
    long balance = 0;
    for (const FrontCusp &c : d.cusps)
        if (c.component == component)
            balance += c.down ? 1 : -1;
    return Integer(balance / 2);
}

Integer linking_number(const FrontDiagram &front, int a, int b, CrossingConvention conv) {
    const ComponentDecomposition d = validate(front);
    check_component(d, a);
    check_component(d, b);
    if (a == b)
        throw std::invalid_argument("linking_number needs two distinct components");
    long total = 0;
    for (const FrontCrossing &x : d.crossings) {
        const int ca = d.arcs[x.descending_arc].component;
        const int cb = d.arcs[x.ascending_arc].component;
        if ((ca == a && cb == b) || (ca == b && cb == a))
            total += d.crossing_sign(x, conv);
    }
    if (total % 2 != 0)
        throw std::logic_error("odd crossing count between two closed components");
    return Integer(total / 2);
}

// ---- rewriting --------------------------------------------------------------

namespace {

// Collects a new word. Each left cusp is tagged with the logical component
// it belongs to and the direction of its upper arc; `finish` derives the
// component numbering, seeds and labels of the result from those tags.
class FrontBuilder {
  public:
    void left(int slot, int tag, bool upper_rightward) {
        tags_.emplace(static_cast<int>(events_.size()), Tag{tag, upper_rightward});
        events_.push_back(MorseEvent::left(slot));
    }
    void right(int slot) { events_.push_back(MorseEvent::right(slot)); }
    void cross(int slot) { events_.push_back(MorseEvent::cross(slot)); }
    void raw(const MorseEvent &e) { events_.push_back(e); }

    FrontDiagram finish(const std::map<int, std::optional<std::string>> &label_of_tag,
                        bool with_labels, std::vector<int> *component_of_tag = nullptr) && {
        FrontDiagram out;
        const ComponentDecomposition d = decompose(events_);
        out.events = std::move(events_);
        for (int comp = 0; comp < d.component_count; ++comp) {
            const Tag &t = tags_.at(d.first_left_cusp[comp]);
            out.orientation_seeds.push_back(t.upper_rightward);
            if (component_of_tag) {
                if (static_cast<int>(component_of_tag->size()) <= t.tag)
                    component_of_tag->resize(t.tag + 1, -1);
                (*component_of_tag)[t.tag] = comp;
            }
            if (with_labels) {
                auto it = label_of_tag.find(t.tag);
                out.labels.push_back(it == label_of_tag.end() ? std::nullopt : it->second);
            }
        }
        // every tagged cusp must agree with the propagated orientation
        const ComponentDecomposition oriented = validate(out);
        for (const auto &[event, t] : tags_) {
            const FrontCusp &c = oriented.cusps[oriented.event_item[event]];
            if (oriented.arcs[c.upper_arc].rightward != t.upper_rightward)
                throw std::logic_error("front rewrite produced an inconsistent orientation");
        }
        return out;
    }

  private:
    struct Tag {
        int tag;
        bool upper_rightward;
    };
    std::vector<MorseEvent> events_;
    std::map<int, Tag> tags_;
};

std::map<int, std::optional<std::string>> labels_by_component(const FrontDiagram &f) {
    std::map<int, std::optional<std::string>> out;
    for (std::size_t i = 0; i < f.labels.size(); ++i)
        out[static_cast<int>(i)] = f.labels[i];
    return out;
}

bool upper_rightward_at(const ComponentDecomposition &d, int event) {
    return d.arcs[d.cusps[d.event_item[event]].upper_arc].rightward;
}

// Re-emits `front` unchanged except for extra events spliced in right after
// the first left cusp of `component`.
template <typename Splice>
FrontDiagram splice_after_first_cusp(const FrontDiagram &front, int component, Splice splice) {
    const ComponentDecomposition d = validate(front);
    check_component(d, component);
    FrontBuilder b;
    for (std::size_t e = 0; e < front.events.size(); ++e) {
        const MorseEvent &ev = front.events[e];
        if (ev.kind == EventKind::LeftCusp)
            b.left(ev.slot, d.event_component[e], upper_rightward_at(d, static_cast<int>(e)));
        else
            b.raw(ev);
        if (static_cast<int>(e) == d.first_left_cusp[component])
            splice(b, ev.slot, upper_rightward_at(d, static_cast<int>(e)), component);
    }
    return std::move(b).finish(labels_by_component(front), !front.labels.empty());
}

} // namespace

FrontDiagram stabilize(const FrontDiagram &front, int component, Zigzag sign) {
    return splice_after_first_cusp(
        front, component, [sign](FrontBuilder &b, int slot, bool rightward, int comp) {
            // The arc s leaving the cusp sits at `slot`. Turning it back
            // through a new cusp pair below it gives two down-cusps when s
            // runs rightward; the pair above it gives two up-cusps.
            const bool down = sign == Zigzag::Down;
            if (down == rightward) {
                b.left(slot + 1, comp, !rightward);
                b.right(slot);
            } else {
                b.left(slot, comp, rightward);
                b.right(slot + 1);
            }
        });
}

FrontDiagram add_loop(const FrontDiagram &front, int component) {
    return splice_after_first_cusp(front, component,
                                   [](FrontBuilder &b, int slot, bool rightward, int comp) {
                                       b.left(slot + 1, comp, rightward);
                                       b.cross(slot);
                                       b.right(slot + 1);
                                   });
}

FrontDiagram push_off(const FrontDiagram &front, int component) {
    const ComponentDecomposition d = validate(front);
    check_component(d, component);
    const int copy_tag = d.component_count;

    // components of the strands on the original stack, top to bottom
    std::vector<int> stack;
    auto new_position = [&](int slot) {
        int p = slot;
        for (int j = 0; j < slot - 1; ++j)
            if (stack[j] == component)
                ++p;
        return p;
    };

    FrontBuilder b;
    for (std::size_t e = 0; e < front.events.size(); ++e) {
        const MorseEvent &ev = front.events[e];
        const int i = ev.slot;
        switch (ev.kind) {
        case EventKind::LeftCusp: {
            const int comp = d.event_component[e];
            const bool dir = upper_rightward_at(d, static_cast<int>(e));
            const int p = new_position(i);
            if (comp != component) {
                b.left(p, comp, dir);
            } else {
                // copy cusp just above: copy-lower then crosses original-upper
                b.left(p, comp, dir);
                b.left(p, copy_tag, dir);
                b.cross(p + 1);
            }
            stack.insert(stack.begin() + (i - 1), {comp, comp});
            break;
        }
        case EventKind::RightCusp: {
            const int comp = d.event_component[e];
            const int p = new_position(i);
            if (comp != component) {
                b.right(p);
            } else {
                b.cross(p + 1);
                b.right(p);
                b.right(p);
            }
            stack.erase(stack.begin() + (i - 1), stack.begin() + (i + 1));
            break;
        }
        case EventKind::Crossing: {
            const bool upper_in = stack[i - 1] == component;
            const bool lower_in = stack[i] == component;
            const int p = new_position(i);
            if (!upper_in && !lower_in) {
                b.cross(p);
            } else if (upper_in && !lower_in) {
                b.cross(p + 1);
                b.cross(p);
            } else if (!upper_in && lower_in) {
                b.cross(p);
                b.cross(p + 1);
            } else {
                b.cross(p + 1);
                b.cross(p);
                b.cross(p + 2);
                b.cross(p + 1);
            }
            std::swap(stack[i - 1], stack[i]);
            break;
        }
        }
    }

    auto labels = labels_by_component(front);
    if (!front.labels.empty() && front.labels[component])
        labels[copy_tag] = *front.labels[component] + "'";
    return std::move(b).finish(labels, !front.labels.empty());
}

FrontDiagram reverse_orientation(const FrontDiagram &front, int component) {
    const ComponentDecomposition d = validate(front);
    check_component(d, component);
    FrontDiagram out = front;
    out.orientation_seeds[component] = !out.orientation_seeds[component];
    return out;
}

FrontDiagram mirror_rotate180(const FrontDiagram &front, std::vector<int> *new_index) {
    const ComponentDecomposition d = validate(front);
    FrontBuilder b;
    for (std::size_t k = front.events.size(); k-- > 0;) {
        const MorseEvent &ev = front.events[k];
        const int n = d.live_before[k];
        switch (ev.kind) {
        case EventKind::RightCusp:
            // the old lower arc becomes the new upper arc, traversed backwards
            b.left(n - ev.slot, d.event_component[k], upper_rightward_at(d, static_cast<int>(k)));
            break;
        case EventKind::LeftCusp:
            b.right(n + 2 - ev.slot);
            break;
        case EventKind::Crossing:
            b.cross(n - ev.slot);
            break;
        }
    }
    if (new_index)
        new_index->clear();
    return std::move(b).finish(labels_by_component(front), !front.labels.empty(), new_index);
}

FrontDiagram disjoint_union(const FrontDiagram &a, const FrontDiagram &b) {
    const int na = validate(a).component_count;
    const int nb = validate(b).component_count;
    FrontDiagram out;
    out.events = a.events;
    out.events.insert(out.events.end(), b.events.begin(), b.events.end());
    out.orientation_seeds = a.orientation_seeds;
    out.orientation_seeds.insert(out.orientation_seeds.end(), b.orientation_seeds.begin(),
                                 b.orientation_seeds.end());
    if (!a.labels.empty() || !b.labels.empty()) {
        out.labels = a.labels.empty() ? std::vector<std::optional<std::string>>(na) : a.labels;
        if (b.labels.empty())
            out.labels.resize(na + nb);
        else
            out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
    }
    return out;
}

FrontDiagram clasp(const FrontDiagram &upper, const FrontDiagram &lower, int twists) {
    const ComponentDecomposition du = validate(upper);
    const ComponentDecomposition dl = validate(lower);
    if (upper.events.empty() || lower.events.empty())
        throw std::invalid_argument("clasp needs two nonempty fronts");
    if (twists < 0)
        throw std::invalid_argument("clasp needs a nonnegative twist count");
    const int offset = du.component_count;

    FrontBuilder b;
    auto emit = [&](const FrontDiagram &f, const ComponentDecomposition &d, std::size_t e,
                    int slot_shift, int tag_shift) {
        const MorseEvent &ev = f.events[e];
        if (ev.kind == EventKind::LeftCusp)
            b.left(ev.slot + slot_shift, d.event_component[e] + tag_shift,
                   upper_rightward_at(d, static_cast<int>(e)));
        else
            b.raw(MorseEvent{ev.kind, ev.slot + slot_shift});
    };
    emit(upper, du, 0, 0, 0);
    emit(lower, dl, 0, 2, offset);
    for (int t = 0; t < 2 * twists; ++t)
        b.cross(2);
    for (std::size_t e = 1; e < upper.events.size(); ++e)
        emit(upper, du, e, 0, 0);
    for (std::size_t e = 1; e < lower.events.size(); ++e)
        emit(lower, dl, e, 0, offset);

    std::map<int, std::optional<std::string>> labels;
    for (std::size_t i = 0; i < upper.labels.size(); ++i)
        labels[static_cast<int>(i)] = upper.labels[i];
    for (std::size_t i = 0; i < lower.labels.size(); ++i)
        labels[offset + static_cast<int>(i)] = lower.labels[i];
    return std::move(b).finish(labels, !upper.labels.empty() || !lower.labels.empty());
}

// ---- abstract link data -----------------------------------------------------

void AbstractLinkData::check() const {
    const std::size_t n = tb.size();
    if (rot.size() != n || lk.rows() != n || lk.cols() != n)
        throw ValidationError("invalid-link", "inconsistent component counts in link data");
    if (!labels.empty() && labels.size() != n)
        throw ValidationError("invalid-link", "label count does not match component count");
    if (!lk.is_symmetric())
        throw ValidationError("invalid-link", "linking matrix not symmetric");
}

AbstractLinkData make_abstract(std::vector<Integer> tb, std::vector<Integer> rot, IntMatrix lk) {
    AbstractLinkData out{std::move(tb), std::move(rot), std::move(lk), {}};
    for (std::size_t i = 0; i < out.lk.rows() && i < out.lk.cols(); ++i)
        out.lk(i, i) = 0;
    out.check();
    return out;
}

AbstractLinkData to_abstract(const FrontDiagram &front) {
    const ComponentDecomposition d = validate(front);
    const int n = d.component_count;
    AbstractLinkData out;
    out.tb.assign(n, Integer(0));
    out.rot.assign(n, Integer(0));
    out.lk = IntMatrix(n, n);
    out.labels = front.labels;

    std::vector<long> writhes(n, 0), cusps(n, 0), balance(n, 0);
    IntMatrix twice_lk(n, n);
    for (const FrontCusp &c : d.cusps) {
        ++cusps[c.component];
        balance[c.component] += c.down ? 1 : -1;
    }
    for (const FrontCrossing &x : d.crossings) {
        const int ca = d.arcs[x.descending_arc].component;
        const int cb = d.arcs[x.ascending_arc].component;
        const int s = d.crossing_sign(x);
        if (ca == cb) {
            writhes[ca] += s;
        } else {
            twice_lk(ca, cb) += s;
            twice_lk(cb, ca) += s;
        }
    }
    for (int i = 0; i < n; ++i) {
        out.tb[i] = writhes[i] - cusps[i] / 2;
        out.rot[i] = balance[i] / 2;
        for (int j = 0; j < n; ++j)
            if (i != j)
                out.lk(i, j) = twice_lk(i, j) / 2;
    }
    return out;
}

namespace {

void check_component(const AbstractLinkData &link, int component) {
    if (component < 0 || component >= link.size())
        throw std::out_of_range("component " + std::to_string(component) +
                                " out of range (link has " + std::to_string(link.size()) +
                                " components)");
}

} // namespace

AbstractLinkData stabilize(const AbstractLinkData &link, int component, Zigzag sign) {
    check_component(link, component);
    AbstractLinkData out = link;
    out.tb[component] -= 1;
    out.rot[component] += sign == Zigzag::Down ? 1 : -1;
    return out;
}

AbstractLinkData push_off(const AbstractLinkData &link, int component) {
    check_component(link, component);
    const std::size_t n = link.tb.size();
    const std::size_t at = component + 1;
    auto old_index = [&](std::size_t i) -> std::size_t {
        return i < at ? i : (i == at ? component : i - 1);
    };
    AbstractLinkData out;
    out.lk = IntMatrix(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        out.tb.push_back(link.tb[old_index(i)]);
        out.rot.push_back(link.rot[old_index(i)]);
        for (std::size_t j = 0; j <= n; ++j) {
            if (i == j)
                continue;
            const std::size_t oi = old_index(i), oj = old_index(j);
            out.lk(i, j) = oi == oj ? link.tb[oi] : link.lk(oi, oj);
        }
    }
    if (!link.labels.empty()) {
        out.labels = link.labels;
        std::optional<std::string> copy;
        if (link.labels[component])
            copy = *link.labels[component] + "'";
        out.labels.insert(out.labels.begin() + at, copy);
    }
    return out;
}

AbstractLinkData reverse_orientation(const AbstractLinkData &link, int component) {
    check_component(link, component);
    AbstractLinkData out = link;
    out.rot[component] = -out.rot[component];
    for (int j = 0; j < link.size(); ++j) {
        if (j == component)
            continue;
        out.lk(component, j) = -out.lk(component, j);
        out.lk(j, component) = -out.lk(j, component);
    }
    return out;
}

AbstractLinkData mirror_rotate180(const AbstractLinkData &link) {
    AbstractLinkData out = link;
    for (Integer &r : out.rot)
        r = -r;
    return out;
}

AbstractLinkData disjoint_union(const AbstractLinkData &a, const AbstractLinkData &b) {
    const std::size_t na = a.tb.size(), nb = b.tb.size();
    AbstractLinkData out;
    out.tb = a.tb;
    out.tb.insert(out.tb.end(), b.tb.begin(), b.tb.end());
    out.rot = a.rot;
    out.rot.insert(out.rot.end(), b.rot.begin(), b.rot.end());
    out.lk = IntMatrix(na + nb, na + nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            out.lk(i, j) = a.lk(i, j);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            out.lk(na + i, na + j) = b.lk(i, j);
    if (!a.labels.empty() || !b.labels.empty()) {
        out.labels = a.labels.empty() ? std::vector<std::optional<std::string>>(na) : a.labels;
        if (b.labels.empty())
            out.labels.resize(na + nb);
        else
            out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
    }
    return out;
}

} // namespace csd
