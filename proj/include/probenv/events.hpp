#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace probenv {

// Hard cap on the number of named events: atomization is exponential by
// construction, an explicit limit beats an out-of-memory crash.
inline constexpr int kMaxEvents = 24;

struct EventId {
    uint32_t index = 0;
    std::string name;
};

/// One elementary outcome: bit i is set iff event i occurs.
using Atom = uint32_t;

/// Subset of the 2^n atoms, as a packed bitset.
class AtomSet {
public:
    AtomSet() = default;
    explicit AtomSet(int n) : n_(n), bits_((size_t(1) << n) / 64 + 1, 0) {}

    int n() const { return n_; }
    size_t universe() const { return size_t(1) << n_; }

    bool test(Atom a) const { return (bits_[a >> 6] >> (a & 63)) & 1; }
    void set(Atom a) { bits_[a >> 6] |= uint64_t(1) << (a & 63); }
    void reset(Atom a) { bits_[a >> 6] &= ~(uint64_t(1) << (a & 63)); }

    size_t count() const;
    bool empty() const;
    bool is_universe() const { return count() == universe(); }

    AtomSet operator&(const AtomSet& o) const;
    AtomSet operator|(const AtomSet& o) const;
    AtomSet complement() const;
    bool operator==(const AtomSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }
    bool operator<(const AtomSet& o) const;  // total order for registry keys

    std::vector<Atom> atoms() const;

private:
    int n_ = 0;
    std::vector<uint64_t> bits_;
};

/// Boolean combination of named events. Immutable; nodes shared.
class BooleanExpr {
public:
    enum class Kind { Event, Not, And, Or };

    static BooleanExpr event(uint32_t index);
    static BooleanExpr negation(BooleanExpr e);
    static BooleanExpr conj(BooleanExpr a, BooleanExpr b);
    static BooleanExpr disj(BooleanExpr a, BooleanExpr b);

    Kind kind() const { return node_->kind; }
    uint32_t event_index() const { return node_->event; }
    const BooleanExpr& left() const { return node_->a; }
    const BooleanExpr& right() const { return node_->b; }

    uint32_t max_event_index() const;
    std::string to_string(const std::vector<EventId>& events) const;

private:
    struct Node {
        Kind kind;
        uint32_t event = 0;
        BooleanExpr a, b;
    };
    BooleanExpr() = default;
    std::shared_ptr<const Node> node_;
};

/// Truth of expression e at atom a (event i true iff bit i of a is set).
bool eval_expr(const BooleanExpr& e, Atom a);

/// Disjunctive-normal-form expansion: the exact set of atoms satisfying e.
AtomSet atoms_of(const BooleanExpr& e, int n);

AtomSet complement_atoms(const AtomSet& s);

}  // namespace probenv
