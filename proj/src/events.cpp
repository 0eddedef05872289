#include "probenv/events.hpp"

#include <bit>
#include <stdexcept>

namespace probenv {

size_t AtomSet::count() const {
    size_t c = 0;
    size_t u = universe();
    for (size_t w = 0; w < bits_.size(); ++w) {
        uint64_t v = bits_[w];
        if ((w + 1) * 64 > u) {
            size_t keep = u - w * 64;
            if (keep < 64) v &= (uint64_t(1) << keep) - 1;
        }
        c += std::popcount(v);
    }
    return c;
}

bool AtomSet::empty() const { return count() == 0; }

AtomSet AtomSet::operator&(const AtomSet& o) const {
    AtomSet r(n_);
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_[i];
    return r;
}

AtomSet AtomSet::operator|(const AtomSet& o) const {
    AtomSet r(n_);
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | o.bits_[i];
    return r;
}

AtomSet AtomSet::complement() const {
    AtomSet r(n_);
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = ~bits_[i];
    // mask off atoms beyond the universe
    size_t u = universe();
    for (size_t a = u; a < bits_.size() * 64; ++a) r.bits_[a >> 6] &= ~(uint64_t(1) << (a & 63));
    return r;
}

bool AtomSet::operator<(const AtomSet& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return bits_ < o.bits_;
}

std::vector<Atom> AtomSet::atoms() const {
    std::vector<Atom> out;
    for (size_t a = 0; a < universe(); ++a)
        if (test(Atom(a))) out.push_back(Atom(a));
    return out;
}

BooleanExpr BooleanExpr::event(uint32_t index) {
    BooleanExpr e;
    e.node_ = std::make_shared<Node>(Node{Kind::Event, index, {}, {}});
    return e;
}

BooleanExpr BooleanExpr::negation(BooleanExpr a) {
    BooleanExpr e;
    e.node_ = std::make_shared<Node>(Node{Kind::Not, 0, std::move(a), {}});
    return e;
}

BooleanExpr BooleanExpr::conj(BooleanExpr a, BooleanExpr b) {
    BooleanExpr e;
    e.node_ = std::make_shared<Node>(Node{Kind::And, 0, std::move(a), std::move(b)});
    return e;
}

BooleanExpr BooleanExpr::disj(BooleanExpr a, BooleanExpr b) {
    BooleanExpr e;
    e.node_ = std::make_shared<Node>(Node{Kind::Or, 0, std::move(a), std::move(b)});
    return e;
}

uint32_t BooleanExpr::max_event_index() const {
    switch (kind()) {
        case Kind::Event: return event_index();
        case Kind::Not: return left().max_event_index();
        default: return std::max(left().max_event_index(), right().max_event_index());
    }
}

std::string BooleanExpr::to_string(const std::vector<EventId>& events) const {
    switch (kind()) {
        case Kind::Event: return events.at(event_index()).name;
        case Kind::Not: {
            const auto& c = left();
            std::string inner = c.to_string(events);
            if (c.kind() == Kind::Event || c.kind() == Kind::Not) return "!" + inner;
            return "!(" + inner + ")";
        }
        case Kind::And: {
            auto wrap = [&](const BooleanExpr& e) {
                std::string s = e.to_string(events);
                return e.kind() == Kind::Or ? "(" + s + ")" : s;
            };
            return wrap(left()) + " & " + wrap(right());
        }
        case Kind::Or: return left().to_string(events) + " | " + right().to_string(events);
    }
    return {};
}

bool eval_expr(const BooleanExpr& e, Atom a) {
    switch (e.kind()) {
        case BooleanExpr::Kind::Event: return (a >> e.event_index()) & 1;
        case BooleanExpr::Kind::Not: return !eval_expr(e.left(), a);
        case BooleanExpr::Kind::And: return eval_expr(e.left(), a) && eval_expr(e.right(), a);
        case BooleanExpr::Kind::Or: return eval_expr(e.left(), a) || eval_expr(e.right(), a);
    }
    return false;
}

AtomSet atoms_of(const BooleanExpr& e, int n) {
    if (n < 1 || n > kMaxEvents) throw std::invalid_argument("event count out of range");
    switch (e.kind()) {
        case BooleanExpr::Kind::Event: {
            AtomSet s(n);
            for (size_t a = 0; a < s.universe(); ++a)
                if ((a >> e.event_index()) & 1) s.set(Atom(a));
            return s;
        }
        case BooleanExpr::Kind::Not: return atoms_of(e.left(), n).complement();
        case BooleanExpr::Kind::And: return atoms_of(e.left(), n) & atoms_of(e.right(), n);
        case BooleanExpr::Kind::Or: return atoms_of(e.left(), n) | atoms_of(e.right(), n);
    }
    return AtomSet(n);
}

AtomSet complement_atoms(const AtomSet& s) { return s.complement(); }

}  // namespace probenv
