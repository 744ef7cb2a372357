#pragma once

// Legendrian fronts encoded as Morse-event words.
//
// A front is read left to right. The strands alive at any moment form a
// stack counted from the top (slot 1 is the highest strand):
//
//   L i   a left cusp inserts two new strands at slots i, i+1
//   R i   a right cusp joins strands i, i+1 and removes them
//   X i   strands i and i+1 cross and exchange places
//
// Every strand therefore runs from a left cusp to a right cusp ("arc").
// Components are numbered in order of their first left cusp. The
// orientation of a component is given by one bit: whether the upper arc
// born at its first left cusp points to the right.

#include "csd/exactalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace csd {

enum class EventKind { LeftCusp, RightCusp, Crossing };

struct MorseEvent {
    EventKind kind;
    int slot; // 1-based, counted from the top

    static MorseEvent left(int slot) { return {EventKind::LeftCusp, slot}; }
    static MorseEvent right(int slot) { return {EventKind::RightCusp, slot}; }
    static MorseEvent cross(int slot) { return {EventKind::Crossing, slot}; }

    friend bool operator==(const MorseEvent &, const MorseEvent &) = default;
};

struct FrontDiagram {
    std::vector<MorseEvent> events;
    std::vector<std::optional<std::string>> labels; // empty, or one per component
    std::vector<bool> orientation_seeds;            // one per component

    /// Front with every component seeded "upper arc rightward".
    static FrontDiagram from_word(std::vector<MorseEvent> events);

    friend bool operator==(const FrontDiagram &, const FrontDiagram &) = default;
};

/// Which strand is drawn in front at a crossing.
enum class CrossingConvention {
    // The strand with smaller slope (the one descending from slot i to
    // slot i+1) is the over-strand. This is the convention that makes tb
    // a Legendrian isotopy invariant for fronts seen from the standard
    // side, and the one that reproduces tb(K_k) = 1 - k^2.
    SmallerSlopeOver,
    // The mirror convention; only kept so tests can show it is wrong.
    LargerSlopeOver,
};

struct FrontArc {
    int component = -1;
    int left_cusp = -1;  // index into ComponentDecomposition::cusps
    int right_cusp = -1; // index into ComponentDecomposition::cusps
    bool rightward = true;
};

struct FrontCusp {
    int event = -1;
    bool is_left = true;
    int upper_arc = -1;
    int lower_arc = -1;
    int component = -1;
    bool down = false; // traversal passes through it moving downward
};

struct FrontCrossing {
    int event = -1;
    int descending_arc = -1; // moves from slot i to slot i+1
    int ascending_arc = -1;
};

/// Result of validating a front: the arcs, cusps and crossings of the word
/// together with the partition into oriented components.
struct ComponentDecomposition {
    int component_count = 0;
    std::vector<FrontArc> arcs;
    std::vector<FrontCusp> cusps;
    std::vector<FrontCrossing> crossings;
    std::vector<int> event_item;      // per event: index into cusps or crossings
    std::vector<int> event_component; // per event: owning component, -1 for
                                      // crossings between two components
    std::vector<int> live_before;     // per event: stack height before it
    std::vector<int> first_left_cusp; // per component: event index

    /// Sign of a crossing under the given convention.
    int crossing_sign(const FrontCrossing &c,
                      CrossingConvention conv = CrossingConvention::SmallerSlopeOver) const;
};

/// Validates the word and computes the component decomposition. Throws
/// ValidationError on slot out of range, a nonempty final stack, or seed
/// and label vectors whose length does not match the component count.
ComponentDecomposition validate(const FrontDiagram &front);

/// Component count of a word, ignoring seeds and labels.
int count_components(const std::vector<MorseEvent> &events);

Integer writhe(const FrontDiagram &front, int component,
               CrossingConvention conv = CrossingConvention::SmallerSlopeOver);
Integer thurston_bennequin(const FrontDiagram &front, int component,
                           CrossingConvention conv = CrossingConvention::SmallerSlopeOver);
Integer rotation(const FrontDiagram &front, int component);
Integer linking_number(const FrontDiagram &front, int a, int b,
                       CrossingConvention conv = CrossingConvention::SmallerSlopeOver);
int cusp_count(const FrontDiagram &front, int component);

/// Zigzag sign: Down adds two down-cusps (rot + 1), Up two up-cusps (rot - 1).
enum class Zigzag { Up, Down };

/// Adds one zigzag to `component` right after its first left cusp.
FrontDiagram stabilize(const FrontDiagram &front, int component, Zigzag sign);

/// Adds a vertically shifted parallel copy of `component`. The copy becomes
/// component `component + 1`; later components shift up by one.
FrontDiagram push_off(const FrontDiagram &front, int component);

FrontDiagram reverse_orientation(const FrontDiagram &front, int component);

/// Rotation of the front plane by 180 degrees. Reading the word backwards
/// can renumber components; `new_index`, when given, receives the new
/// index of every old component.
FrontDiagram mirror_rotate180(const FrontDiagram &front, std::vector<int> *new_index = nullptr);

/// Side-by-side placement; components of `b` follow those of `a`.
FrontDiagram disjoint_union(const FrontDiagram &a, const FrontDiagram &b);

/// Adds a Legendrian Reidemeister I loop (two cusps and one positive
/// self-crossing) right after the first left cusp of `component`. Leaves
/// tb and rot unchanged.
FrontDiagram add_loop(const FrontDiagram &front, int component);

/// Places the front `upper` above `lower` and lets the
/// bottom arc of `upper` and the top arc of `lower` cross 2*twists times
/// right after their first cusps. The linking number of the result is
/// +twists when those arcs point the same way and -twists otherwise.
FrontDiagram clasp(const FrontDiagram &upper, const FrontDiagram &lower, int twists);

/// Per-component (tb, rot) and the symmetric matrix of pairwise linking
/// numbers. The diagonal of `lk` is unused and kept at zero.
struct AbstractLinkData {
    std::vector<Integer> tb;
    std::vector<Integer> rot;
    IntMatrix lk;
    std::vector<std::optional<std::string>> labels; // empty, or one per component

    int size() const { return static_cast<int>(tb.size()); }
    /// Throws ValidationError on inconsistent sizes or an asymmetric lk.
    void check() const;

    friend bool operator==(const AbstractLinkData &, const AbstractLinkData &) = default;
};

AbstractLinkData to_abstract(const FrontDiagram &front);

// The same operations acting directly on invariant data.
AbstractLinkData stabilize(const AbstractLinkData &link, int component, Zigzag sign);
AbstractLinkData push_off(const AbstractLinkData &link, int component);
AbstractLinkData reverse_orientation(const AbstractLinkData &link, int component);
AbstractLinkData mirror_rotate180(const AbstractLinkData &link);
AbstractLinkData disjoint_union(const AbstractLinkData &a, const AbstractLinkData &b);

/// Link data from explicit invariants; the diagonal of `lk` is cleared.
AbstractLinkData make_abstract(std::vector<Integer> tb, std::vector<Integer> rot, IntMatrix lk);

} // namespace csd
