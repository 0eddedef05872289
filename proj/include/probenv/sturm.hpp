#pragma once

#include <optional>
#include <vector>

#include "probenv/interval.hpp"
#include "probenv/poly.hpp"
#include "probenv/rational.hpp"

namespace probenv {

/// Dense univariate polynomial, coefficients low -> high; empty == zero.
using UPoly = std::vector<Rational>;

int udeg(const UPoly& u);  // -1 for zero
bool uis_zero(const UPoly& u);
Rational uval(const UPoly& u, const Rational& x);
UPoly utrim(UPoly u);
UPoly uneg(const UPoly& u);
UPoly uadd(const UPoly& a, const UPoly& b);
UPoly usub(const UPoly& a, const UPoly& b);
UPoly umul(const UPoly& a, const UPoly& b);
UPoly uderiv(const UPoly& u);
std::pair<UPoly, UPoly> udivmod(const UPoly& a, const UPoly& b);
UPoly ugcd(UPoly a, UPoly b);  // monic
UPoly usquarefree(const UPoly& u);

UPoly upoly_of(const Polynomial& p, VarId var);
Polynomial upoly_to(const UPoly& u, VarId var, VarSpace space);

/// Signed remainder chain p0, p1 = p0', p_{k+1} = -rem(p_{k-1}, p_k).
/// p0 is sign-normalized to a positive leading coefficient so the chain of
/// z - a - z^5 reads (z^5 - z + a, 5z^4 - 1, (4/5)z - a, 1 - 3125a^4/256).
std::vector<UPoly> sturm_sequence(const UPoly& p);

/// Sign variations of the chain evaluated at x (zeros skipped).
int sign_variations(const std::vector<UPoly>& chain, const Rational& x);

struct RootCount {
    int count = 0;
    int variations_lo = 0;
    int variations_hi = 0;
    UPoly squarefree;              // the polynomial the tallies refer to
    int endpoint_deflations = 0;   // exact endpoint roots divided out
};

/// Distinct real roots of p in the CLOSED interval [lo, hi]; endpoint roots
/// are detected exactly and deflated before the Sturm count, per the
/// endpoint-roots design decision.
RootCount count_roots_detail(const UPoly& p, const RatInterval& iv);
int count_roots(const UPoly& p, const RatInterval& iv);

/// Disjoint isolating intervals (ascending), one per distinct root in [lo,hi],
/// each of width <= tol; exact rational roots come back as point intervals.
std::vector<RatInterval> isolate_roots(const UPoly& p, const RatInterval& iv,
                                       const Rational& tol);

/// Shrinks an isolating interval of p (must contain exactly one root) to
/// width <= tol.
RatInterval refine_root(const UPoly& p, RatInterval iv, const Rational& tol);

/// Exact sign of q at the unique root of defining in iv (count 1 required).
/// Returns -1, 0, or 1; decided by gcd (for exact vanishing) plus interval
/// refinement.
int sign_at_root(const UPoly& q, const UPoly& defining, const RatInterval& iv);

}  // namespace probenv
