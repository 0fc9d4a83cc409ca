#include "gps/roots.hpp"

#include <algorithm>
#include <cassert>

namespace gps {

GPSeries series_poly_eval(const SeriesPoly& f, const GPSeries& y) {
    GPSeries acc = gp_make(y.field, y.order, Cutoff::inf());
    for (size_t k = f.size(); k-- > 0;) {
        acc = gp_mul(acc, y);
        acc = gp_add(acc, f[k]);
    }
    return acc;
}

SeriesPoly series_poly_derivative(const SeriesPoly& f) {
    SeriesPoly d;
    for (size_t k = 1; k < f.size(); ++k)
        d.push_back(gp_scalar_mul(f[k], ff_from_int(f[k].field, Int(k))));
    if (d.empty() && !f.empty()) d.push_back(gp_make(f[0].field, f[0].order, Cutoff::inf()));
    return d;
}

namespace {

// residual valuation lower bound, as a Cutoff (inf when exactly zero)
Cutoff residual_bound(const GPSeries& r) { return gp_val_lb(r); }

// A computed root is a concrete finite series; its closeness to the true root
// is certified by the residual valuation, not by a cutoff on the terms.
GPSeries strip_cutoff(GPSeries f) {
    f.cutoff = Cutoff::inf();
    return f;
}

FqPoly residue_poly(const SeriesPoly& f) {
    // exponent-zero coefficients
    const FieldPtr& fld = f.at(0).field;
    FqPoly rp(fld);
    ExpVec zero = ExpVec::zero(f[0].dim());
    for (size_t k = 0; k < f.size(); ++k) {
        auto it = f[k].terms.find(zero);
        if (it != f[k].terms.end()) rp.set_coeff(k, it->second);
    }
    return rp;
}

}  // namespace

RootExpansion hensel_root(const SeriesPoly& f, const FFElem& residue_root, const Rat& target,
                          HenselSchedule schedule) {
    if (f.size() < 2) throw SchemaError("hensel_root needs degree >= 1");
    const FieldPtr& fld = f[0].field;
    const OrderPtr& ord = f[0].order;
    if (!residue_root.field->same(*fld)) throw IncompatibleContexts("residue root field");
    for (const auto& c : f) {
        Cutoff lb = gp_val_lb(c);
        if (lb.finite && lb.value < 0)
            throw HypothesisViolated("hensel_root needs coefficient valuations >= 0");
        if (c.cutoff.finite && c.cutoff.value < target)
            throw InsufficientPrecision("coefficient cutoff below the requested target");
    }

    FqPoly rbar = residue_poly(f);
    if (!poly_eval(rbar, residue_root).is_zero())
        throw NotSimpleRoot("not a root of the residue polynomial");
    if (poly_eval(poly_derivative(rbar), residue_root).is_zero())
        throw NotSimpleRoot("residue root is not simple");

    SeriesPoly fd = series_poly_derivative(f);
    GPSeries b = gp_constant(fld, ord, residue_root);
    b.cutoff = Cutoff::at(target);
    GPSeries frozen = series_poly_eval(fd, b);  // for the frozen-derivative schedule

    RootExpansion out;
    out.extension_field = fld;
    out.branch_log.push_back({ExpVec::zero(f[0].dim()), residue_root, "hensel"});

    for (unsigned iter = 0;; ++iter) {
        GPSeries r = series_poly_eval(f, b);
        Cutoff lb = residual_bound(r);
        if (!lb.finite || lb.value >= target) {
            out.root = strip_cutoff(b);
            GPSeries exact_r = series_poly_eval(f, out.root);
            Cutoff xlb = residual_bound(exact_r);
            out.residual_exact_zero = exact_r.no_terms();
            out.residual_valuation = xlb.finite ? xlb.value : target;
            return out;
        }
        if (iter > 256) throw ResourceBound("hensel_root did not reach the target");
        const GPSeries& den =
            schedule == HenselSchedule::newton ? series_poly_eval(fd, b) : frozen;
        b = gp_sub(b, gp_div(r, den));
        b.cutoff = min(b.cutoff, Cutoff::at(target));
    }
}

RootExpansion artin_schreier_root(const GPSeries& f, const Rat& target, unsigned depth,
                                  uint64_t seed) {
    const FieldPtr& fld = f.field;
    const Int p = fld->p;
    auto [fplus, fminus] = gp_split_pm(f);

    // g: Hensel root of X^p - X - f^+ from a residue root of X^p - X - f^+(0)
    ExpVec zero = ExpVec::zero(f.dim());
    FFElem c0 = ff_zero(fld);
    if (auto it = fplus.terms.find(zero); it != fplus.terms.end()) c0 = it->second;
    FqPoly as(fld);
    as.set_coeff(0, ff_neg(c0));
    as.set_coeff(1, ff_neg(ff_one(fld)));
    as.set_coeff((size_t)(long)p, ff_one(fld));
    FactorResult fr = factor_univariate(as, true, seed);
    if (fr.roots.empty()) throw NotFound("Artin-Schreier residue equation has no roots");
    // least root in the smallest extension, deterministically
    const RootInExtension* pick = &fr.roots[0];
    for (const auto& r : fr.roots)
        if (r.ext_degree < pick->ext_degree ||
            (r.ext_degree == pick->ext_degree && ff_less(r.value, pick->value)))
            pick = &r;
    FieldPtr ext = pick->field;
    Embedding emb = embed_field(fld, ext, seed);
    GPSeries fplus_e = gp_map_field(fplus, emb);
    GPSeries fminus_e = gp_map_field(fminus, emb);

    RootExpansion out;
    out.extension_field = ext;

    GPSeries g;
    if (fplus_e.exact_zero() && pick->value.is_zero()) {
        g = gp_make(ext, f.order, Cutoff::inf());
    } else {
        SeriesPoly F;  // y^p - y - f^+
        F.push_back(gp_neg(fplus_e));
        F.push_back(gp_constant(ext, f.order, ff_neg(ff_one(ext))));
        for (long k = 2; k < (long)p; ++k) F.push_back(gp_make(ext, f.order, Cutoff::inf()));
        F.push_back(gp_constant(ext, f.order, ff_one(ext)));
        g = hensel_root(F, pick->value, target).root;
    }

    // h: the telescoping sum over the negative part, depth layers of p-th roots
    GPSeries h = gp_make(ext, f.order, Cutoff::inf());
    if (!fminus_e.terms.empty()) {
        for (const auto& [u, c] : fminus_e.terms) {
            FFElem root_c = c;
            for (unsigned j = 1; j <= depth; ++j) {
                root_c = ff_pth_root(root_c);
                gp_add_term(h, u.scaled(Rat(1, pow_int(p, j))), root_c);
            }
        }
        if (fminus_e.model) h.model = scale_p_inverse_union(*fminus_e.model, *f.order);
        else if (!fminus_e.cutoff.finite || fminus_e.cutoff.value >= 0) {
            StructuredSupport sm;
            sm.p = p;
            sm.d = f.dim();
            for (const auto& [u, c] : fminus_e.terms) sm.finite.push_back(u);
            h.model = scale_p_inverse_union(sm, *f.order);
        }
    }

    out.root = gp_add(strip_cutoff(g), h);
    // the model must cover the full untruncated support; g's is only known
    // when g is at most a constant
    out.root.model = std::nullopt;
    if (h.model) {
        if (g.no_terms()) {
            out.root.model = h.model;
        } else if (g.terms.size() == 1 && g.terms.begin()->first.is_zero()) {
            StructuredSupport m = *h.model;
            m.finite.push_back(zero);
            out.root.model = m;
        }
    }
    out.branch_log.push_back({zero, pick->value, "artin_schreier"});

    // residual: root^p - root - f, evaluated with the exact Frobenius
    GPSeries fe = gp_map_field(f, emb);
    GPSeries r = gp_sub(gp_sub(gp_frobenius_pow(out.root), out.root), fe);
    Cutoff lb = residual_bound(r);
    out.residual_exact_zero = r.no_terms();
    out.residual_valuation = lb.finite ? lb.value : target;
    return out;
}

// ---- Newton-Puiseux driver ----------------------------------------------------

namespace {

struct DriverState {
    OrderPtr order;
    Rat target;
    unsigned max_steps;
    unsigned as_depth;
    uint64_t seed;
    std::vector<RootExpansion> roots;
    std::vector<PartialBranch> unresolved;
};

bool poly_coeff_is_exact_zero(const GPSeries& c) { return c.exact_zero(); }

long min_nonzero_ydeg(const SeriesPoly& f) {
    for (size_t k = 0; k < f.size(); ++k)
        if (!f[k].no_terms()) return (long)k;
    return -1;
}

// leading exponent (full-order least) of each nonzero coefficient
std::vector<std::optional<ExpVec>> leading_exponents(const SeriesPoly& f) {
    std::vector<std::optional<ExpVec>> le(f.size());
    for (size_t k = 0; k < f.size(); ++k)
        if (!f[k].no_terms()) le[k] = gp_leading_term(f[k]).first;
    return le;
}

// substitute y = c t^gamma + y' into a monic series polynomial
SeriesPoly shift_root(const SeriesPoly& f, const FFElem& c, const ExpVec& gamma) {
    const FieldPtr& fld = f[0].field;
    const OrderPtr& ord = f[0].order;
    size_t s = f.size() - 1;
    GPSeries mono = gp_monomial(fld, ord, gamma, c);
    // precompute powers of the monomial
    std::vector<GPSeries> mpow{gp_constant(fld, ord, ff_one(fld))};
    for (size_t i = 1; i <= s; ++i) mpow.push_back(gp_mul(mpow.back(), mono));
    SeriesPoly out(f.size(), gp_make(fld, ord, Cutoff::inf()));
    // binomial expansion: coeff'_k = sum_{i>=k} C(i,k) f_i (c t^gamma)^{i-k}
    std::vector<std::vector<Int>> bino(f.size(), std::vector<Int>(f.size(), 0));
    for (size_t i = 0; i < f.size(); ++i) {
        bino[i][0] = 1;
        for (size_t k = 1; k <= i; ++k)
            bino[i][k] = bino[i - 1][k - 1] + (k <= i - 1 ? bino[i - 1][k] : Int(0));
    }
    for (size_t k = 0; k < f.size(); ++k) {
        GPSeries acc = gp_make(fld, ord, Cutoff::inf());
        for (size_t i = k; i < f.size(); ++i) {
            if (f[i].exact_zero()) continue;
            FFElem bc = ff_from_int(fld, bino[i][k]);
            if (bc.is_zero()) continue;
            acc = gp_add(acc, gp_scalar_mul(gp_mul(f[i], mpow[i - k]), bc));
        }
        out[k] = acc;
    }
    return out;
}

SeriesPoly embed_poly(const SeriesPoly& f, const Embedding& emb) {
    SeriesPoly out;
    for (const auto& c : f) out.push_back(gp_map_field(c, emb));
    return out;
}

void finish_expansion(DriverState& st, const std::vector<BranchStep>& log, const GPSeries& prefix,
                      const GPSeries& tail_root, const FieldPtr& fld, unsigned mult,
                      const SeriesPoly& original) {
    RootExpansion ex;
    ex.root = gp_add(prefix, tail_root);
    if (tail_root.model) {
        StructuredSupport m = *tail_root.model;
        for (const auto& [e, c] : prefix.terms) m.finite.push_back(e);
        ex.root.model = m;
    }
    ex.branch_log = log;
    ex.extension_field = fld;
    ex.multiplicity = mult;
    GPSeries r = series_poly_eval(original, ex.root);
    Cutoff lb = gp_val_lb(r);
    ex.residual_exact_zero = r.no_terms();
    ex.residual_valuation = lb.finite ? lb.value : st.target;
    st.roots.push_back(std::move(ex));
}

// the original polynomial re-embedded into each extension, for residual checks
SeriesPoly original_in(const SeriesPoly& base, const FieldPtr& fld, uint64_t seed) {
    if (base[0].field->same(*fld)) return base;
    Embedding emb = embed_field(base[0].field, fld, seed);
    return embed_poly(base, emb);
}

void branch(DriverState& st, SeriesPoly f, GPSeries prefix, std::vector<BranchStep> log,
            std::optional<ExpVec> gamma_prev, unsigned steps, unsigned mult_budget,
            const SeriesPoly& base) {
    const FieldPtr fld = f[0].field;
    const OrderPtr& ord = st.order;
    size_t s = f.size() - 1;

    // roots at the current prefix: y' = 0 divides when the low coefficients vanish
    long k0 = min_nonzero_ydeg(f);
    if (k0 != 0) {
        bool certain = true;
        for (long k = 0; k < (k0 < 0 ? (long)f.size() : k0); ++k)
            if (!poly_coeff_is_exact_zero(f[k])) certain = false;
        unsigned zero_mult = k0 < 0 ? (unsigned)s : (unsigned)k0;
        if (!certain) {
            st.unresolved.push_back({log, zero_mult, "low coefficients only known to cutoff"});
        } else if (zero_mult > 0) {
            finish_expansion(st, log, prefix, gp_make(fld, ord, Cutoff::inf()), fld, zero_mult,
                             original_in(base, fld, st.seed));
        }
        if (k0 < 0) return;
        // peel off the y^{k0} factor and continue with the remaining roots
        SeriesPoly g(f.begin() + k0, f.end());
        f = std::move(g);
        s = f.size() - 1;
        if (s == 0) return;
    }

    if (s == 1) {
        // monic linear: y = -c0
        GPSeries root = gp_neg(gp_div(f[0], f[1]));
        finish_expansion(st, log, prefix, root, fld, 1, original_in(base, fld, st.seed));
        return;
    }

    // Artin-Schreier normal form: y^p - y - q
    const Int p = fld->p;
    if (Int(s) == p) {
        bool middle_zero = true;
        for (size_t k = 2; k < s; ++k)
            if (!f[k].no_terms()) middle_zero = false;
        bool c1_is_minus_one =
            f[1].terms.size() == 1 && f[1].terms.begin()->first.is_zero() &&
            f[1].terms.begin()->second == ff_neg(ff_one(fld));
        if (middle_zero && c1_is_minus_one && !f[0].no_terms()) {
            GPSeries q = gp_neg(f[0]);
            Cutoff vq = gp_val_lb(q);
            if (vq.finite && vq.value < 0) {
                RootExpansion as = artin_schreier_root(q, st.target, st.as_depth, st.seed);
                // all p roots differ by the prime-field constants
                FieldPtr ext = as.extension_field;
                SeriesPoly orig = original_in(base, ext, st.seed);
                GPSeries prefix_e = prefix;
                if (!prefix.field->same(*ext))
                    prefix_e = gp_map_field(prefix, embed_field(prefix.field, ext, st.seed));
                for (Int c = 0; c < p; ++c) {
                    auto log2 = log;
                    log2.push_back({ExpVec::zero(ord->dim()), ff_from_int(ext, c),
                                    "artin_schreier"});
                    GPSeries shifted = gp_add(as.root, gp_constant(ext, ord, ff_from_int(ext, c)));
                    if (as.root.model) {
                        StructuredSupport m = *as.root.model;
                        if (c != 0) m.finite.push_back(ExpVec::zero(ord->dim()));
                        shifted.model = m;
                    }
                    finish_expansion(st, log2, prefix_e, shifted, ext, 1, orig);
                }
                return;
            }
        }
    }

    if (steps >= st.max_steps) {
        st.unresolved.push_back({log, mult_budget, "step limit reached"});
        return;
    }

    // lower Newton polyhedron: candidate initial exponents from coefficient pairs
    auto le = leading_exponents(f);
    std::vector<ExpVec> candidates;
    for (size_t i = 0; i < f.size(); ++i) {
        if (!le[i]) continue;
        for (size_t j = i + 1; j < f.size(); ++j) {
            if (!le[j]) continue;
            ExpVec gamma = (*le[i] - *le[j]).scaled(Rat(1, (long)(j - i)));
            if (gamma_prev && ord->compare(gamma, *gamma_prev) != Cmp::GT) continue;
            if (std::find(candidates.begin(), candidates.end(), gamma) == candidates.end())
                candidates.push_back(gamma);
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](const ExpVec& a, const ExpVec& b) { return ord->less(a, b); });

    unsigned found = 0;
    for (const auto& gamma : candidates) {
        // argmin of le_k + k*gamma under the full order
        std::optional<ExpVec> m;
        for (size_t k = 0; k < f.size(); ++k) {
            if (!le[k]) continue;
            ExpVec v = *le[k] + gamma.scaled(Rat((long)k));
            if (!m || ord->compare(v, *m) == Cmp::LT) m = v;
        }
        std::vector<size_t> attained;
        for (size_t k = 0; k < f.size(); ++k) {
            if (!le[k]) continue;
            if (*le[k] + gamma.scaled(Rat((long)k)) == *m) attained.push_back(k);
        }
        if (attained.size() < 2) continue;

        // initial coefficient equation
        FqPoly chi(fld);
        for (size_t k : attained) chi.set_coeff(k, gp_leading_term(f[k]).second);
        FactorResult fr = factor_univariate(chi, true, st.seed);
        for (const auto& root : fr.roots) {
            if (root.value.is_zero()) continue;
            FieldPtr ext = root.field;
            SeriesPoly fe = f;
            GPSeries prefix_e = prefix;
            if (!fld->same(*ext)) {
                Embedding emb = embed_field(fld, ext, st.seed);
                fe = embed_poly(f, emb);
                prefix_e = gp_map_field(prefix, emb);
            }
            found += root.mult;
            if (root.mult == 1) {
                // normalize to valuations >= 0 and lift by Hensel in one shot:
                // H(z) = f(t^gamma z) / t^mu with mu the common minimum
                SeriesPoly H;
                for (size_t k = 0; k < fe.size(); ++k) {
                    ExpVec shift = gamma.scaled(Rat((long)k)) - *m;
                    GPSeries ck = fe[k];
                    GPSeries mono = gp_monomial(ext, ord, shift, ff_one(ext));
                    H.push_back(gp_mul(ck, mono));
                }
                Rat sub_target = st.target - dot(ord->row(0), gamma);
                RootExpansion he;
                try {
                    he = hensel_root(H, root.value, sub_target);
                } catch (const Error& e) {
                    st.unresolved.push_back({log, root.mult, std::string("hensel: ") + e.what()});
                    continue;
                }
                GPSeries tail = gp_mul(gp_monomial(ext, ord, gamma, ff_one(ext)), he.root);
                auto log2 = log;
                log2.push_back({gamma, root.value, "hensel"});
                finish_expansion(st, log2, prefix_e, tail, ext, 1,
                                 original_in(base, ext, st.seed));
            } else {
                auto log2 = log;
                log2.push_back({gamma, root.value, "newton_step"});
                SeriesPoly next = shift_root(fe, root.value, gamma);
                GPSeries mono = gp_monomial(ext, ord, gamma, root.value);
                branch(st, next, gp_add(prefix_e, mono), log2, gamma, steps + 1, root.mult,
                       base);
            }
        }
    }
    (void)found;
}

}  // namespace

NewtonPuiseuxResult newton_puiseux(const LaurentPoly& f, const OrderPtr& order,
                                   const Rat& target_cutoff, unsigned max_steps,
                                   unsigned as_depth, uint64_t seed) {
    if (!lp_monic_in_y(f)) throw NotMonicInY("newton_puiseux input must be monic in y");
    unsigned s = f.ydeg();
    if (s < 1) throw NotMonicInY("degree in y must be >= 1");
    SeriesPoly coeffs;
    for (unsigned k = 0; k <= s; ++k) coeffs.push_back(lp_ycoeff_series(f, k, order));

    DriverState st{order, target_cutoff, max_steps, as_depth, seed, {}, {}};
    GPSeries zero_prefix = gp_make(f.field, order, Cutoff::inf());
    branch(st, coeffs, zero_prefix, {}, std::nullopt, 0, s, coeffs);

    NewtonPuiseuxResult out;
    out.roots = std::move(st.roots);
    out.unresolved = std::move(st.unresolved);

    unsigned count = 0;
    for (const auto& r : out.roots) count += r.multiplicity;
    for (const auto& u : out.unresolved) count += u.multiplicity;
    if (count > s) throw BranchExplosion("more roots than the degree");

    Int n = 1;
    const Int p = f.field->p;
    for (const auto& r : out.roots)
        for (const auto& [e, c] : r.root.terms) n = int_lcm(n, p_part(e.den(), p).first);
    out.common_den_prime_to_p = n;

    // canonical order: by branch log, then by root terms
    std::sort(out.roots.begin(), out.roots.end(), [](const RootExpansion& a, const RootExpansion& b) {
        auto key = [](const RootExpansion& r) {
            std::string k;
            for (const auto& step : r.branch_log) {
                for (const auto& x : step.gamma.num()) k += x.str() + ",";
                k += "/" + step.gamma.den().str() + ";";
                for (auto c : step.coef.coords) k += std::to_string(c) + ".";
                k += step.method + "|";
            }
            for (const auto& [e, c] : r.root.terms) {
                for (const auto& x : e.num()) k += x.str() + ",";
                k += "/" + e.den().str() + ":";
                for (auto cc : c.coords) k += std::to_string(cc) + ".";
            }
            return k;
        };
        return key(a) < key(b);
    });
    return out;
}

}  // namespace gps
