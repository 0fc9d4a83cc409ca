#include "gps/support.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gps {

ExpVec PFamily::member(unsigned j, const Int& p) const {
    return limit + (seed - limit).scaled(Rat(1, pow_int(p, j)));
}

bool StructuredSupport::contains(const ExpVec& x) const {
    for (const auto& f : finite)
        if (f == x) return true;
    for (const auto& fam : families) {
        ExpVec diff = x - fam.limit;
        ExpVec dir = fam.seed - fam.limit;
        if (diff.is_zero()) continue;  // the limit itself is not a member
        // x = l + c*(u-l) with c = p^{-j}, j >= J
        size_t i = 0;
        while (i < d && dir.num()[i] == 0) ++i;
        if (i == d || diff.num()[i] == 0) continue;
        Rat c = diff.coord(i) / dir.coord(i);
        if (c <= 0) continue;
        bool match = true;
        for (size_t k = 0; k < d && match; ++k)
            if (diff.coord(k) != c * dir.coord(k)) match = false;
        if (!match) continue;
        if (rat_num(c) != 1) continue;
        auto [n, j] = p_part(rat_den(c), p);
        if (n == 1 && j >= fam.start_index) return true;
    }
    return false;
}

namespace {

std::vector<Int> halfspace_of(const ExpVec& direction) {
    return clear_denominators(direction.coords());
}

bool tight_at_w1(const WeightOrder& order, const std::vector<Int>& h) {
    Rat s = 0;
    for (size_t i = 0; i < h.size(); ++i) s += Rat(h[i]) * order.row(0)[i];
    return s == 0;
}

// sign of compare(a_j, gamma') is constant for j >= this bound
unsigned family_tail_start(const PFamily& fam, const ExpVec& gamma_prime,
                           const WeightOrder& order, const Int& p) {
    ExpVec alpha_vec = fam.limit - gamma_prime;
    ExpVec beta_vec = fam.seed - fam.limit;
    unsigned bound = fam.start_index;
    for (unsigned r = 0; r < order.dim(); ++r) {
        Rat alpha = dot(order.row(r), alpha_vec);
        Rat beta = dot(order.row(r), beta_vec);
        if (alpha == 0 || beta == 0) continue;
        // row value alpha + p^{-j} beta has the sign of alpha once |alpha| p^j > |beta|
        Rat aa = alpha < 0 ? -alpha : alpha;
        Rat bb = beta < 0 ? -beta : beta;
        unsigned j = 0;
        Rat scale = aa;
        while (scale <= bb) {
            scale *= Rat(p);
            ++j;
        }
        bound = std::max(bound, j);
    }
    return bound;
}

}  // namespace

CheckResult pdiscrete_check(const StructuredSupport& s, const WeightOrder& order) {
    if (order.dim() != s.d) throw DimensionMismatch("pdiscrete_check");
    std::vector<std::vector<Int>> sigma_halfspaces;
    bool refined = false;

    // (a) every family must increase strictly toward its limit
    for (size_t fi = 0; fi < s.families.size(); ++fi) {
        const auto& fam = s.families[fi];
        if (fam.seed == fam.limit) throw SchemaError("PFamily with seed == limit");
        ExpVec dir = fam.seed - fam.limit;
        Rat delta = dot(order.row(0), dir);
        bool descending;
        if (delta > 0)
            descending = true;
        else if (delta < 0)
            descending = false;
        else {
            descending = order.compare(fam.seed, fam.limit) == Cmp::GT;
            if (!descending) refined = true;  // w1 sits on the boundary of sigma
        }
        if (descending) {
            Violation v;
            v.condition = 'a';
            v.message = "family " + std::to_string(fi) +
                        " has strictly decreasing weight values (no well-ordering)";
            for (unsigned j = fam.start_index; j < fam.start_index + 3; ++j) {
                ExpVec m = fam.member(j, s.p);
                v.witness_values.push_back(dot(order.row(0), m));
                v.witness_points.push_back(std::move(m));
            }
            return v;
        }
        sigma_halfspaces.push_back(halfspace_of(fam.limit - fam.seed));
    }
    // finite-part separations that are strict under w1 stay on their side of sigma
    for (size_t i = 0; i < s.finite.size(); ++i)
        for (size_t j = i + 1; j < s.finite.size(); ++j) {
            ExpVec diff = s.finite[i] - s.finite[j];
            Rat v = dot(order.row(0), diff);
            if (v > 0)
                sigma_halfspaces.push_back(halfspace_of(diff));
            else if (v < 0)
                sigma_halfspaces.push_back(halfspace_of(-diff));
        }

    // (c) distinct limits may not share a primary weight value
    for (size_t i = 0; i < s.families.size(); ++i)
        for (size_t j = i + 1; j < s.families.size(); ++j) {
            const ExpVec &li = s.families[i].limit, &lj = s.families[j].limit;
            if (li != lj && dot(order.row(0), li) == dot(order.row(0), lj)) {
                Violation v;
                v.condition = 'c';
                v.message =
                    "families " + std::to_string(i) + " and " + std::to_string(j) +
                    " have distinct limits with equal primary weight value; the simulated "
                    "order cannot certify convergence (a finer irrational weight might)";
                v.witness_points = {li, lj};
                v.witness_values = {dot(order.row(0), li), dot(order.row(0), lj)};
                return v;
            }
        }

    // (b) gamma + pointed cone containment with w1 strictly inside the dual
    std::vector<ExpVec> anchors = s.finite;
    for (const auto& fam : s.families) {
        anchors.push_back(fam.limit);
        anchors.push_back(fam.member(fam.start_index, s.p));
    }
    PDiscreteCertificate cert;
    cert.refined = refined;
    cert.limits.clear();
    for (const auto& fam : s.families) cert.limits.push_back(fam.limit);

    if (anchors.empty()) {
        cert.gamma = ExpVec::zero(s.d);
        cert.cone_c = Cone::from_generators(s.d, {});
        cert.big_n = 1;
    } else {
        ExpVec least = anchors[0];
        for (const auto& a : anchors)
            if (order.compare(a, least) == Cmp::LT) least = a;
        cert.gamma = least - ExpVec::from_rats(order.row(0));
        std::vector<std::vector<Int>> gens;
        for (const auto& a : anchors) gens.push_back(halfspace_of(a - cert.gamma));
        cert.cone_c = Cone::from_generators(s.d, std::move(gens));
        Int nn = 1;
        for (const auto& a : anchors) nn = int_lcm(nn, a.den());
        cert.big_n = p_part(nn, s.p).first;
    }
    cert.sigma = Cone::from_halfspaces(s.d, std::move(sigma_halfspaces));
    return cert;
}

SplitResult split_at(const StructuredSupport& s, const ExpVec& gamma_prime,
                     const WeightOrder& order) {
    CheckResult cr = pdiscrete_check(s, order);
    if (!is_certified(cr))
        throw NotCertified("split_at: " + std::get<Violation>(cr).message);

    SplitResult out;
    out.plus.p = out.minus.p = s.p;
    out.plus.d = out.minus.d = s.d;
    out.refined = false;
    std::vector<std::vector<Int>> hs;

    auto note = [&](const std::vector<Int>& h) {
        if (tight_at_w1(order, h)) out.refined = true;
        hs.push_back(h);
    };
    auto place_point = [&](const ExpVec& x) {
        Cmp c = order.compare(x, gamma_prime);
        if (c == Cmp::EQ) return;  // strict inequalities on both sides
        if (c == Cmp::GT) {
            out.plus.finite.push_back(x);
            note(halfspace_of(x - gamma_prime));
        } else {
            out.minus.finite.push_back(x);
            note(halfspace_of(gamma_prime - x));
        }
    };

    for (const auto& x : s.finite) place_point(x);

    for (const auto& fam : s.families) {
        unsigned jstar = family_tail_start(fam, gamma_prime, order, s.p);
        for (unsigned j = fam.start_index; j < jstar; ++j) place_point(fam.member(j, s.p));
        ExpVec head = fam.member(jstar, s.p);
        Cmp c = order.compare(head, gamma_prime);
        PFamily tail{fam.limit, fam.seed, jstar};
        if (c == Cmp::GT) {
            out.plus.families.push_back(tail);
            note(halfspace_of(fam.limit - gamma_prime));
            note(halfspace_of(head - gamma_prime));
        } else {
            out.minus.families.push_back(tail);
            note(halfspace_of(gamma_prime - fam.limit));
            note(halfspace_of(gamma_prime - head));
        }
        note(halfspace_of(fam.limit - fam.seed));
    }
    out.sigma = Cone::from_halfspaces(s.d, std::move(hs));
    return out;
}

StructuredSupport support_union(const StructuredSupport& a, const StructuredSupport& b) {
    if (a.d != b.d || a.p != b.p) throw IncompatibleContexts("support_union");
    StructuredSupport r = a;
    for (const auto& x : b.finite)
        if (std::find(r.finite.begin(), r.finite.end(), x) == r.finite.end())
            r.finite.push_back(x);
    for (const auto& f : b.families)
        if (std::find(r.families.begin(), r.families.end(), f) == r.families.end())
            r.families.push_back(f);
    return r;
}

StructuredSupport support_translate(const StructuredSupport& s, const ExpVec& gamma) {
    StructuredSupport r;
    r.p = s.p;
    r.d = s.d;
    for (const auto& x : s.finite) r.finite.push_back(x + gamma);
    for (const auto& f : s.families)
        r.families.push_back({f.limit + gamma, f.seed + gamma, f.start_index});
    return r;
}

StructuredSupport scale_p_inverse_union(const StructuredSupport& s, const WeightOrder& order) {
    StructuredSupport r;
    r.p = s.p;
    r.d = s.d;
    ExpVec zero = ExpVec::zero(s.d);
    for (const auto& x : s.finite) {
        if (order.compare(x, zero) != Cmp::LT)
            throw HypothesisViolated("scale_p_inverse_union needs every element below 0");
        r.families.push_back({zero, x, 0});
    }
    for (const auto& fam : s.families) {
        if (order.compare(fam.limit, zero) == Cmp::GT)
            throw HypothesisViolated("scale_p_inverse_union needs every element below 0");
        if (!fam.limit.is_zero())
            throw HypothesisViolated(
                "p^{-i} union of a family with nonzero limit is not expressible as "
                "finitely many p-families; only limit-0 families are accepted");
        r.families.push_back(fam);  // already closed under division by p
    }
    // dedupe families
    StructuredSupport empty;
    empty.p = s.p;
    empty.d = s.d;
    return support_union(empty, r);
}

SemigroupBelow semigroup_below(const StructuredSupport& s, const ExpVec& gamma,
                               const WeightOrder& order) {
    ExpVec zero = ExpVec::zero(s.d);
    Rat target = dot(order.row(0), gamma);

    // hypothesis: every element at or above 0; strictness of the primary value
    // for nonzero elements is what makes the summand bound work
    std::vector<ExpVec> base;  // elements with value < target
    Rat min_pos;
    bool have_min = false;
    bool zero_in = false;
    auto consider = [&](const ExpVec& x) {
        Cmp c = order.compare(x, zero);
        if (c == Cmp::LT) throw HypothesisViolated("semigroup_below needs elements >= 0");
        if (c == Cmp::EQ) {
            zero_in = true;
            return;
        }
        Rat v = dot(order.row(0), x);
        if (v == 0)
            throw HypothesisViolated(
                "element above 0 with zero primary value: the simulated order "
                "cannot bound summand counts");
        if (!have_min || v < min_pos) {
            min_pos = v;
            have_min = true;
        }
        if (v < target) base.push_back(x);
    };
    for (const auto& x : s.finite) consider(x);
    for (const auto& fam : s.families) {
        // members increase toward the limit; finitely many lie below gamma
        // only when the limit value is at least the target
        Rat lim_v = dot(order.row(0), fam.limit);
        unsigned j0 = fam.start_index;
        ExpVec head = fam.member(j0, s.p);
        if (head.is_zero()) {  // at most one member can be the origin
            zero_in = true;
            head = fam.member(++j0, s.p);
        }
        Cmp c0 = order.compare(head, zero);
        if (c0 == Cmp::LT) throw HypothesisViolated("semigroup_below needs elements >= 0");
        Rat head_v = dot(order.row(0), head);
        if (head_v == 0)
            throw HypothesisViolated(
                "family member above 0 with zero primary value under the simulated order");
        if (!have_min || head_v < min_pos) {
            min_pos = head_v;
            have_min = true;
        }
        if (lim_v < target || (lim_v == target && head_v < lim_v))
            throw HypothesisViolated(
                "infinitely many family members lie below gamma; the cut is not finite");
        for (unsigned j = j0;; ++j) {
            ExpVec m = fam.member(j, s.p);
            if (dot(order.row(0), m) >= target) break;
            base.push_back(m);
        }
    }

    SemigroupBelow out;
    out.min_positive = have_min ? min_pos : Rat(0);
    if (!have_min) {
        out.bound_m = 0;
        if (zero_in && target > 0) out.elements.push_back(zero);
        return out;
    }
    Rat ratio = target / min_pos;
    Int m_int = rat_num(ratio) / rat_den(ratio);
    if (Rat(m_int) < ratio) m_int += 1;  // ceiling
    if (m_int < 0) m_int = 0;
    out.bound_m = (unsigned)m_int;

    std::sort(base.begin(), base.end(),
              [&](const ExpVec& a, const ExpVec& b) { return order.less(a, b); });
    std::set<ExpVec> found;
    if (zero_in && target > 0) found.insert(zero);
    // sums of at most M base elements, nondecreasing index, pruned by value
    std::function<void(size_t, const ExpVec&, unsigned)> dfs = [&](size_t from, const ExpVec& sum,
                                                                   unsigned count) {
        for (size_t i = from; i < base.size(); ++i) {
            ExpVec next = sum + base[i];
            if (dot(order.row(0), next) >= target) continue;
            found.insert(next);
            if (count + 1 < out.bound_m) dfs(i, next, count + 1);
        }
    };
    dfs(0, zero, 0);
    out.elements.assign(found.begin(), found.end());
    std::sort(out.elements.begin(), out.elements.end(),
              [&](const ExpVec& a, const ExpVec& b) { return order.less(a, b); });
    return out;
}

}  // namespace gps
