#include "probenv/atomize.hpp"

#include <sstream>

#include "probenv/digest.hpp"

namespace probenv {

bool PolyRow::is_constant() const {
    if (!head.is_constant()) return false;
    for (auto& p : prods)
        for (auto& f : p.factors)
            if (!f.is_constant()) return false;
    return true;
}

Rational PolyRow::constant_value() const {
    Rational v = head.constant_value();
    for (auto& p : prods) {
        Rational t = p.coeff;
        for (auto& f : p.factors) t *= f.constant_value();
        v += t;
    }
    return v;
}

unsigned PolyRow::total_degree() const {
    unsigned d = head.total_degree();
    for (auto& p : prods) {
        unsigned t = 0;
        for (auto& f : p.factors) t += f.total_degree();
        d = std::max(d, t);
    }
    return d;
}

std::set<VarId> PolyRow::vars() const {
    std::set<VarId> s = head.vars();
    for (auto& p : prods)
        for (auto& f : p.factors)
            for (VarId v : f.vars()) s.insert(v);
    return s;
}

size_t PolyRow::expanded_term_estimate() const {
    size_t est = head.term_count();
    for (auto& p : prods) {
        size_t t = 1;
        for (auto& f : p.factors) {
            t *= std::max<size_t>(1, f.term_count());
            if (t > Polynomial::kTermGuard) return Polynomial::kTermGuard + 1;
        }
        est += t;
        if (est > Polynomial::kTermGuard) return Polynomial::kTermGuard + 1;
    }
    return est;
}

PolyRow PolyRow::subst(VarId var, const Polynomial& repl) const {
    PolyRow r = *this;
    r.head = r.head.subst(var, repl);
    for (auto& p : r.prods)
        for (auto& f : p.factors) f = f.subst(var, repl);
    return r;
}

Polynomial PolyRow::expanded() const {
    Polynomial out = head;
    for (auto& p : prods) {
        Polynomial t = Polynomial::constant(p.coeff, out.space());
        for (auto& f : p.factors) t = t * f;
        out += t;
    }
    return out;
}

void PolyRow::maybe_expand(size_t limit) {
    if (prods.empty()) return;
    if (expanded_term_estimate() <= limit) {
        head = expanded();
        prods.clear();
    }
}

Rational PolyRow::eval(const std::function<Rational(VarId)>& point) const {
    Rational v = head.eval(point);
    for (auto& p : prods) {
        Rational t = p.coeff;
        for (auto& f : p.factors) t *= f.eval(point);
        v += t;
    }
    return v;
}

RatInterval PolyRow::interval(const std::function<RatInterval(VarId)>& box) const {
    RatInterval v = interval_eval(head, box);
    for (auto& p : prods) {
        RatInterval t = RatInterval::point(1);
        for (auto& f : p.factors) t = t * interval_eval(f, box);
        v = v + t.scale(p.coeff);
    }
    return v.capped();
}

UPoly PolyRow::compose(const std::function<const UPoly&(VarId)>& param) const {
    auto compose_poly = [&](const Polynomial& p) {
        UPoly acc;
        for (auto& [m, c] : p.terms()) {
            UPoly t{c};
            for (auto& [v, e] : m.powers)
                for (uint32_t k = 0; k < e; ++k) t = umul(t, param(v));
            acc = uadd(acc, t);
        }
        return acc;
    };
    UPoly out = compose_poly(head);
    for (auto& p : prods) {
        UPoly t{p.coeff};
        for (auto& f : p.factors) t = umul(t, compose_poly(f));
        out = uadd(out, t);
    }
    return out;
}

namespace {
constexpr size_t kEagerExpandLimit = 4096;
}

PolySystem atomize(const RequirementSet& rs) {
    PolySystem sys;
    sys.n = rs.n;
    for (auto& e : rs.events) sys.event_names.push_back(e.name);
    for (size_t v = 0; v < rs.terms.size(); ++v) {
        sys.xforms.push_back(rs.terms.atoms(VarId(v)));
        sys.xlabels.push_back(rs.terms.label(VarId(v)));
    }
    sys.xconstraints = rs.constraints;

    auto linear_form = [&](VarId xv) {
        Polynomial p(VarSpace::Y);
        for (Atom a : sys.xforms[xv].atoms()) p.add_term(Monomial::var(VarId(a)), Rational(1));
        return p;
    };

    for (size_t ci = 0; ci < rs.constraints.size(); ++ci) {
        const Constraint& c = rs.constraints[ci];
        PolyRow row;
        row.rel = c.rel;
        row.origin = int(ci);
        row.tag = c.prov.kind;
        for (auto& [m, coeff] : c.poly.terms()) {
            if (m.powers.empty()) {
                row.head.add_term(Monomial::one(), coeff);
                continue;
            }
            FactoredProduct p{coeff, {}};
            for (auto& [v, e] : m.powers)
                for (uint32_t k = 0; k < e; ++k) p.factors.push_back(linear_form(v));
            row.prods.push_back(std::move(p));
        }
        row.maybe_expand(kEagerExpandLimit);
        sys.rows.push_back(std::move(row));
    }

    // normalization
    {
        PolyRow norm;
        norm.rel = Relation::EqZero;
        norm.tag = "normalization";
        for (size_t a = 0; a < sys.atom_count(); ++a)
            norm.head.add_term(Monomial::var(VarId(a)), Rational(1));
        norm.head.add_term(Monomial::one(), Rational(-1));
        sys.normalization_row = sys.rows.size();
        sys.rows.push_back(std::move(norm));
    }
    // nonnegativity
    sys.nonneg_begin = sys.rows.size();
    for (size_t a = 0; a < sys.atom_count(); ++a) {
        PolyRow nn;
        nn.rel = Relation::GeqZero;
        nn.tag = "nonneg";
        nn.head = Polynomial::variable(VarId(a), VarSpace::Y);
        sys.rows.push_back(std::move(nn));
    }
    sys.digest = fnv64(print_system(sys));
    return sys;
}

std::string PolySystem::row_str(size_t i) const {
    const PolyRow& r = rows[i];
    auto namer = [&](VarId v) { return default_var_name(VarSpace::Y, v); };
    std::ostringstream os;
    if (r.is_expanded()) {
        os << r.head.to_string(namer);
    } else {
        os << r.head.to_string(namer);
        for (auto& p : r.prods) {
            os << (p.coeff < 0 ? " - " : " + ");
            Rational a = rat_abs(p.coeff);
            if (a != 1) os << rat_str(a) << "*";
            for (size_t k = 0; k < p.factors.size(); ++k) {
                if (k) os << "*";
                os << "(" << p.factors[k].to_string(namer) << ")";
            }
        }
    }
    os << " " << relation_str(r.rel);
    return os.str();
}

std::string print_system(const PolySystem& sys) {
    std::ostringstream os;
    os << "atoms n=" << sys.n << " rows=" << sys.rows.size() << "\n";
    for (size_t i = 0; i < sys.rows.size(); ++i) {
        os << sys.row_str(i);
        if (!sys.rows[i].tag.empty()) os << "  # " << sys.rows[i].tag;
        os << "\n";
    }
    return os.str();
}

Rational x_of_witness(const Witness& w, const BooleanExpr& e, const RequirementSet& rs) {
    if (w.interval_kind)
        throw std::logic_error("x_of_witness requires an exact witness");
    AtomSet s = atoms_of(e, rs.n);
    Rational total(0);
    for (Atom a : s.atoms()) total += w.y.at(a);
    return total;
}

static WitnessReport verify_exact(const Witness& w, const PolySystem& sys) {
    WitnessReport rep;
    rep.ok = true;
    auto point = [&](VarId v) { return w.y.at(v); };
    for (size_t i = 0; i < sys.rows.size(); ++i) {
        Rational val = sys.rows[i].eval(point);
        bool ok = true;
        switch (sys.rows[i].rel) {
            case Relation::EqZero: ok = val == 0; break;
            case Relation::GeqZero: ok = val >= 0; break;
            case Relation::GtZero: ok = val > 0; break;
            case Relation::NeqZero: ok = val != 0; break;
        }
        if (!ok) {
            rep.ok = false;
            rep.violations.push_back({i, sys.row_str(i), val});
        }
    }
    return rep;
}

static WitnessReport verify_interval(const Witness& w, const PolySystem& sys) {
    WitnessReport rep;
    rep.ok = true;
    if (w.y_of_z.size() != sys.atom_count()) {
        rep.ok = false;
        rep.violations.push_back({0, "parametrization size mismatch", Rational(0)});
        return rep;
    }
    // the isolating interval must contain exactly one root of the defining polynomial
    if (count_roots(w.defining, w.isolating) != 1) {
        rep.ok = false;
        rep.violations.push_back({0, "isolating interval does not certify one root", Rational(0)});
        return rep;
    }
    auto param = [&](VarId v) -> const UPoly& { return w.y_of_z.at(v); };
    for (size_t i = 0; i < sys.rows.size(); ++i) {
        UPoly resid = sys.rows[i].compose(param);
        bool ok = true;
        if (sys.rows[i].rel == Relation::EqZero) {
            ok = uis_zero(resid) || sign_at_root(resid, w.defining, w.isolating) == 0;
        } else {
            int s = sign_at_root(resid, w.defining, w.isolating);
            switch (sys.rows[i].rel) {
                case Relation::GeqZero: ok = s >= 0; break;
                case Relation::GtZero: ok = s > 0; break;
                case Relation::NeqZero: ok = s != 0; break;
                default: break;
            }
        }
        if (!ok) {
            rep.ok = false;
            rep.violations.push_back({i, sys.row_str(i), Rational(0)});
        }
    }
    return rep;
}

WitnessReport verify_witness_system(const Witness& w, const PolySystem& sys) {
    return w.interval_kind ? verify_interval(w, sys) : verify_exact(w, sys);
}

WitnessReport verify_witness(const Witness& w, const RequirementSet& rs) {
    if (w.interval_kind) return verify_interval(w, atomize(rs));

    WitnessReport rep;
    rep.ok = true;
    // witness invariants first
    Rational total(0);
    for (size_t a = 0; a < w.y.size(); ++a) {
        if (w.y[a] < 0) {
            rep.ok = false;
            rep.violations.push_back({SIZE_MAX, "y" + std::to_string(a) + " < 0", w.y[a]});
        }
        total += w.y[a];
    }
    if (total != 1) {
        rep.ok = false;
        rep.violations.push_back({SIZE_MAX, "atom masses sum to " + rat_str(total), total - 1});
    }
    // every desugared constraint, evaluated exactly at x(w)
    for (size_t ci = 0; ci < rs.constraints.size(); ++ci) {
        const Constraint& c = rs.constraints[ci];
        auto xval = [&](VarId xv) {
            Rational t(0);
            for (Atom a : rs.terms.atoms(xv).atoms()) t += w.y.at(a);
            return t;
        };
        Rational val = c.poly.eval(xval);
        bool ok = true;
        switch (c.rel) {
            case Relation::EqZero: ok = val == 0; break;
            case Relation::GeqZero: ok = val >= 0; break;
            case Relation::GtZero: ok = val > 0; break;
            case Relation::NeqZero: ok = val != 0; break;
        }
        if (!ok) {
            rep.ok = false;
            auto namer = [&](VarId v) { return rs.terms.label(v); };
            rep.violations.push_back(
                {ci, c.poly.to_string(namer) + " " + relation_str(c.rel), val});
        }
    }
    return rep;
}

}  // namespace probenv
