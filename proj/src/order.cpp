#include "gps/order.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace gps {

// ---- ExpVec -----------------------------------------------------------------

ExpVec::ExpVec(std::vector<Int> num, Int den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw SchemaError("ExpVec: zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        for (auto& x : num_) x = -x;
    }
    Int g = den_;
    for (const auto& x : num_) g = int_gcd(g, int_abs(x));
    if (g > 1) {
        den_ /= g;
        for (auto& x : num_) x /= g;
    }
}

ExpVec ExpVec::zero(unsigned d) { return ExpVec(std::vector<Int>(d, 0), 1); }

ExpVec ExpVec::from_rats(const std::vector<Rat>& v) {
    Int den = 1;
    for (const auto& r : v) den = int_lcm(den, rat_den(r));
    std::vector<Int> num(v.size());
    for (size_t i = 0; i < v.size(); ++i) num[i] = rat_num(v[i]) * (den / rat_den(v[i]));
    return ExpVec(std::move(num), den);
}

std::vector<Rat> ExpVec::coords() const {
    std::vector<Rat> r(num_.size());
    for (size_t i = 0; i < num_.size(); ++i) r[i] = Rat(num_[i], den_);
    return r;
}

bool ExpVec::is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const Int& x) { return x == 0; });
}

ExpVec operator+(const ExpVec& a, const ExpVec& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("ExpVec +");
    Int den = int_lcm(a.den_, b.den_);
    Int ma = den / a.den_, mb = den / b.den_;
    std::vector<Int> num(a.dim());
    for (size_t i = 0; i < num.size(); ++i) num[i] = a.num_[i] * ma + b.num_[i] * mb;
    return ExpVec(std::move(num), den);
}

ExpVec operator-(const ExpVec& a, const ExpVec& b) { return a + (-b); }

ExpVec ExpVec::operator-() const {
    std::vector<Int> num(num_.size());
    for (size_t i = 0; i < num_.size(); ++i) num[i] = -num_[i];
    return ExpVec(std::move(num), den_);
}

ExpVec ExpVec::scaled(const Rat& c) const {
    std::vector<Int> num(num_.size());
    for (size_t i = 0; i < num_.size(); ++i) num[i] = num_[i] * rat_num(c);
    return ExpVec(std::move(num), den_ * rat_den(c));
}

bool ExpVec::operator<(const ExpVec& o) const {
    if (den_ != o.den_) return den_ < o.den_;
    return num_ < o.num_;
}

Rat dot(const std::vector<Rat>& w, const ExpVec& a) {
    if (w.size() != a.dim()) throw DimensionMismatch("dot");
    Rat s = 0;
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * Rat(a.num()[i], a.den());
    return s;
}

Rat dot(const std::vector<Int>& n, const ExpVec& a) {
    if (n.size() != a.dim()) throw DimensionMismatch("dot");
    Int s = 0;
    for (size_t i = 0; i < n.size(); ++i) s += n[i] * a.num()[i];
    return Rat(s, a.den());
}

Rat dot(const std::vector<Rat>& w, const std::vector<Rat>& x) {
    if (w.size() != x.size()) throw DimensionMismatch("dot");
    Rat s = 0;
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * x[i];
    return s;
}

// ---- WeightOrder ------------------------------------------------------------

WeightOrder::WeightOrder(std::vector<std::vector<Rat>> rows) : rows_(std::move(rows)) {
    unsigned d = (unsigned)rows_.size();
    if (d == 0) throw SchemaError("WeightOrder: empty matrix");
    for (const auto& r : rows_)
        if (r.size() != d) throw DimensionMismatch("WeightOrder: matrix must be square");
    std::vector<std::vector<Rat>> m = rows_;
    if (rank_rat(std::move(m)) != d) throw SchemaError("WeightOrder: matrix is singular");
}

WeightOrder WeightOrder::identity(unsigned d) {
    std::vector<std::vector<Rat>> rows(d, std::vector<Rat>(d, 0));
    for (unsigned i = 0; i < d; ++i) rows[i][i] = 1;
    return WeightOrder(std::move(rows));
}

Cmp WeightOrder::compare(const ExpVec& a, const ExpVec& b) const {
    if (a.dim() != dim() || b.dim() != dim()) throw DimensionMismatch("compare");
    ExpVec diff = a - b;
    for (const auto& row : rows_) {
        Rat v = dot(row, diff);
        if (v < 0) return Cmp::LT;
        if (v > 0) return Cmp::GT;
    }
    return Cmp::EQ;
}

bool WeightOrder::row1_positive() const {
    return std::all_of(rows_[0].begin(), rows_[0].end(), [](const Rat& x) { return x > 0; });
}

// ---- integer vector helpers ---------------------------------------------------

std::vector<Int> primitive(std::vector<Int> v) {
    Int g = 0;
    for (const auto& x : v) g = int_gcd(g, int_abs(x));
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

std::vector<Int> clear_denominators(const std::vector<Rat>& v) {
    Int den = 1;
    for (const auto& r : v) den = int_lcm(den, rat_den(r));
    std::vector<Int> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = rat_num(v[i]) * (den / rat_den(v[i]));
    return primitive(std::move(out));
}

namespace {

Int idot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero_vec(const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

std::vector<Int> canonical_line(std::vector<Int> v) {
    v = primitive(std::move(v));
    for (const auto& x : v) {
        if (x > 0) break;
        if (x < 0) {
            for (auto& y : v) y = -y;
            break;
        }
    }
    return v;
}

// ---- double description: constraint normals -> (rays, lines) ----------------

struct DDRay {
    std::vector<Int> v;
    std::vector<bool> tight;  // per constraint
};

struct DDResult {
    std::vector<std::vector<Int>> rays, lines;
};

DDResult dd_from_constraints(unsigned d, const std::vector<std::vector<Int>>& constraints) {
    std::vector<std::vector<Int>> lines;
    for (unsigned i = 0; i < d; ++i) {
        std::vector<Int> e(d, 0);
        e[i] = 1;
        lines.push_back(e);
    }
    std::vector<DDRay> rays;
    const size_t m = constraints.size();

    auto eval_tight = [&](const std::vector<Int>& v, size_t upto) {
        std::vector<bool> t(m, false);
        for (size_t i = 0; i < upto; ++i) t[i] = (idot(constraints[i], v) == 0);
        return t;
    };

    for (size_t ci = 0; ci < m; ++ci) {
        const auto& h = constraints[ci];
        if (is_zero_vec(h)) continue;

        // peel one lineality generator if the hyperplane cuts the lineality space
        size_t cut = lines.size();
        for (size_t i = 0; i < lines.size(); ++i)
            if (idot(h, lines[i]) != 0) { cut = i; break; }
        if (cut != lines.size()) {
            std::vector<Int> l0 = lines[cut];
            Int hl0 = idot(h, l0);
            if (hl0 < 0) {
                for (auto& x : l0) x = -x;
                hl0 = -hl0;
            }
            std::vector<std::vector<Int>> new_lines;
            for (size_t i = 0; i < lines.size(); ++i) {
                if (i == cut) continue;
                Int hl = idot(h, lines[i]);
                std::vector<Int> l(d);
                for (unsigned j = 0; j < d; ++j) l[j] = hl0 * lines[i][j] - hl * l0[j];
                l = primitive(std::move(l));
                if (!is_zero_vec(l)) new_lines.push_back(std::move(l));
            }
            for (auto& r : rays) {
                Int hr = idot(h, r.v);
                std::vector<Int> v(d);
                for (unsigned j = 0; j < d; ++j) v[j] = hl0 * r.v[j] - hr * l0[j];
                r.v = primitive(std::move(v));
                r.tight = eval_tight(r.v, ci);
                r.tight[ci] = true;
            }
            auto l0_tight = eval_tight(l0, ci);
            l0_tight[ci] = false;
            rays.push_back(DDRay{std::move(l0), std::move(l0_tight)});
            lines = std::move(new_lines);
            continue;
        }

        // ordinary DD step on rays
        std::vector<size_t> P, Z, N;
        std::vector<Int> vals(rays.size());
        for (size_t i = 0; i < rays.size(); ++i) {
            vals[i] = idot(h, rays[i].v);
            if (vals[i] > 0)
                P.push_back(i);
            else if (vals[i] == 0)
                Z.push_back(i);
            else
                N.push_back(i);
        }
        if (N.empty()) {
            for (size_t i : Z) rays[i].tight[ci] = true;
            continue;
        }
        std::vector<DDRay> next;
        for (size_t i : P) next.push_back(rays[i]);
        for (size_t i : Z) {
            rays[i].tight[ci] = true;
            next.push_back(rays[i]);
        }
        for (size_t ip : P) {
            for (size_t in : N) {
                // combinatorial adjacency test (Fukuda-Prodon)
                std::vector<bool> T(ci, false);
                for (size_t t = 0; t < ci; ++t)
                    T[t] = rays[ip].tight[t] && rays[in].tight[t];
                bool adjacent = true;
                for (size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == ip || o == in) continue;
                    bool contains_T = true;
                    for (size_t t = 0; t < ci && contains_T; ++t)
                        if (T[t] && !rays[o].tight[t]) contains_T = false;
                    if (contains_T) adjacent = false;
                }
                if (!adjacent) continue;
                std::vector<Int> v(d);
                for (unsigned j = 0; j < d; ++j)
                    v[j] = vals[ip] * rays[in].v[j] - vals[in] * rays[ip].v[j];
                v = primitive(std::move(v));
                if (is_zero_vec(v)) continue;
                auto tight = eval_tight(v, ci);
                tight[ci] = true;
                next.push_back(DDRay{std::move(v), std::move(tight)});
            }
        }
        rays = std::move(next);
    }

    // cleanup: dedupe, drop combinatorially non-extreme rays
    for (auto& r : rays) r.tight = eval_tight(r.v, m);
    std::vector<std::vector<Int>> out_rays;
    for (size_t i = 0; i < rays.size(); ++i) {
        bool drop = false;
        for (size_t j = 0; j < rays.size() && !drop; ++j) {
            if (i == j) continue;
            if (rays[j].v == rays[i].v) {
                drop = j < i;  // keep the first duplicate
                continue;
            }
            bool superset = true, strictly = false;
            for (size_t t = 0; t < m; ++t) {
                if (rays[i].tight[t] && !rays[j].tight[t]) superset = false;
                if (!rays[i].tight[t] && rays[j].tight[t]) strictly = true;
            }
            if (superset && strictly) drop = true;
        }
        if (!drop) out_rays.push_back(rays[i].v);
    }
    std::sort(out_rays.begin(), out_rays.end());
    out_rays.erase(std::unique(out_rays.begin(), out_rays.end()), out_rays.end());

    std::vector<std::vector<Int>> out_lines;
    for (auto& l : lines) out_lines.push_back(canonical_line(l));
    std::sort(out_lines.begin(), out_lines.end());
    return {std::move(out_rays), std::move(out_lines)};
}

}  // namespace

// ---- Cone -------------------------------------------------------------------

Cone Cone::from_halfspaces(unsigned d, std::vector<std::vector<Int>> halfspaces,
                           std::vector<std::vector<Int>> equations) {
    std::vector<std::vector<Int>> constraints;
    for (auto& e : equations) {
        if (e.size() != d) throw DimensionMismatch("Cone constraint");
        auto en = primitive(e);
        if (is_zero_vec(en)) continue;
        constraints.push_back(en);
        std::vector<Int> neg(d);
        for (unsigned j = 0; j < d; ++j) neg[j] = -en[j];
        constraints.push_back(std::move(neg));
    }
    for (auto& h : halfspaces) {
        if (h.size() != d) throw DimensionMismatch("Cone constraint");
        auto hn = primitive(h);
        if (!is_zero_vec(hn)) constraints.push_back(std::move(hn));
    }
    DDResult v = dd_from_constraints(d, constraints);

    Cone c;
    c.d_ = d;
    c.rays_ = std::move(v.rays);
    c.lines_ = std::move(v.lines);
    // canonical minimal H-description, read off the dual's V-description
    std::vector<std::vector<Int>> dual_constraints = c.rays_;
    for (const auto& l : c.lines_) {
        dual_constraints.push_back(l);
        std::vector<Int> neg(d);
        for (unsigned j = 0; j < d; ++j) neg[j] = -l[j];
        dual_constraints.push_back(std::move(neg));
    }
    DDResult hrep = dd_from_constraints(d, dual_constraints);
    c.half_ = std::move(hrep.rays);
    c.eq_ = std::move(hrep.lines);
    return c;
}

Cone Cone::from_generators(unsigned d, std::vector<std::vector<Int>> rays,
                           std::vector<std::vector<Int>> lines) {
    // H-description of the cone = V-description of its dual
    std::vector<std::vector<Int>> constraints;
    for (auto& r : rays) {
        if (r.size() != d) throw DimensionMismatch("Cone generator");
        auto rn = primitive(r);
        if (!is_zero_vec(rn)) constraints.push_back(std::move(rn));
    }
    for (auto& l : lines) {
        if (l.size() != d) throw DimensionMismatch("Cone generator");
        auto ln = primitive(l);
        if (is_zero_vec(ln)) continue;
        constraints.push_back(ln);
        std::vector<Int> neg(d);
        for (unsigned j = 0; j < d; ++j) neg[j] = -ln[j];
        constraints.push_back(std::move(neg));
    }
    DDResult dualv = dd_from_constraints(d, constraints);
    return from_halfspaces(d, std::move(dualv.rays), std::move(dualv.lines));
}

Cone Cone::orthant(unsigned d) {
    std::vector<std::vector<Int>> hs;
    for (unsigned i = 0; i < d; ++i) {
        std::vector<Int> e(d, 0);
        e[i] = 1;
        hs.push_back(std::move(e));
    }
    return from_halfspaces(d, std::move(hs));
}

Cone Cone::dual() const { return Cone::from_halfspaces(d_, rays_, lines_); }

bool Cone::is_fulldim() const { return span_dim() == d_; }

unsigned Cone::span_dim() const {
    std::vector<std::vector<Rat>> m;
    for (const auto& r : rays_) {
        std::vector<Rat> row(d_);
        for (unsigned j = 0; j < d_; ++j) row[j] = Rat(r[j]);
        m.push_back(std::move(row));
    }
    for (const auto& l : lines_) {
        std::vector<Rat> row(d_);
        for (unsigned j = 0; j < d_; ++j) row[j] = Rat(l[j]);
        m.push_back(std::move(row));
    }
    return rank_rat(std::move(m));
}

bool Cone::contains(const std::vector<Rat>& x, bool strict) const {
    if (x.size() != d_) throw DimensionMismatch("Cone::contains");
    for (const auto& e : eq_) {
        Rat s = 0;
        for (unsigned j = 0; j < d_; ++j) s += Rat(e[j]) * x[j];
        if (s != 0) return false;
    }
    if (strict && !eq_.empty()) return false;  // no interior
    for (const auto& h : half_) {
        Rat s = 0;
        for (unsigned j = 0; j < d_; ++j) s += Rat(h[j]) * x[j];
        if (strict ? s <= 0 : s < 0) return false;
    }
    return true;
}

bool Cone::contains(const std::vector<Int>& x, bool strict) const {
    std::vector<Rat> r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = Rat(x[i]);
    return contains(r, strict);
}

bool Cone::subset_of(const Cone& other) const {
    if (d_ != other.d_) throw DimensionMismatch("Cone::subset_of");
    auto in_other = [&](const std::vector<Int>& v, bool as_line) {
        std::vector<Rat> x(d_);
        for (unsigned j = 0; j < d_; ++j) x[j] = Rat(v[j]);
        if (!other.contains(x)) return false;
        if (as_line) {
            for (auto& c : x) c = -c;
            if (!other.contains(x)) return false;
        }
        return true;
    };
    for (const auto& r : rays_)
        if (!in_other(r, false)) return false;
    for (const auto& l : lines_)
        if (!in_other(l, true)) return false;
    return true;
}

Cone intersect(const Cone& a, const Cone& b) {
    if (a.d_ != b.d_) throw DimensionMismatch("intersect");
    auto hs = a.half_;
    hs.insert(hs.end(), b.half_.begin(), b.half_.end());
    auto eq = a.eq_;
    eq.insert(eq.end(), b.eq_.begin(), b.eq_.end());
    return Cone::from_halfspaces(a.d_, std::move(hs), std::move(eq));
}

Cone minkowski_sum(const Cone& a, const Cone& b) {
    if (a.d_ != b.d_) throw DimensionMismatch("minkowski_sum");
    auto rays = a.rays_;
    rays.insert(rays.end(), b.rays_.begin(), b.rays_.end());
    auto lines = a.lines_;
    lines.insert(lines.end(), b.lines_.begin(), b.lines_.end());
    return Cone::from_generators(a.d_, std::move(rays), std::move(lines));
}

// ---- exact linear algebra -----------------------------------------------------

unsigned rank_rat(std::vector<std::vector<Rat>> M) {
    unsigned rank = 0;
    size_t rows = M.size();
    if (rows == 0) return 0;
    size_t cols = M[0].size();
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && M[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[rank]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || M[i][c] == 0) continue;
            Rat f = M[i][c] / M[rank][c];
            for (size_t j = c; j < cols; ++j) M[i][j] -= f * M[rank][j];
        }
        ++rank;
    }
    return rank;
}

Int det_int(const IntMat& M) {
    size_t n = M.size();
    if (n == 0) return 1;
    IntMat a = M;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
    size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
    IntMat C(n, std::vector<Int>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

SNFResult snf(const IntMat& M) {
    size_t m = M.size(), n = m ? M[0].size() : 0;
    SNFResult r;
    r.D = M;
    r.U.assign(m, std::vector<Int>(m, 0));
    r.V.assign(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < m; ++i) r.U[i][i] = 1;
    for (size_t j = 0; j < n; ++j) r.V[j][j] = 1;
    auto& D = r.D;

    auto swap_rows = [&](size_t i, size_t j) {
        std::swap(D[i], D[j]);
        std::swap(r.U[i], r.U[j]);
    };
    auto swap_cols = [&](size_t i, size_t j) {
        for (size_t k = 0; k < m; ++k) std::swap(D[k][i], D[k][j]);
        for (size_t k = 0; k < n; ++k) std::swap(r.V[k][i], r.V[k][j]);
    };
    auto add_row = [&](size_t dst, size_t src, const Int& f) {
        for (size_t k = 0; k < n; ++k) D[dst][k] += f * D[src][k];
        for (size_t k = 0; k < m; ++k) r.U[dst][k] += f * r.U[src][k];
    };
    auto add_col = [&](size_t dst, size_t src, const Int& f) {
        for (size_t k = 0; k < m; ++k) D[k][dst] += f * D[k][src];
        for (size_t k = 0; k < n; ++k) r.V[k][dst] += f * r.V[k][src];
    };

    size_t steps = std::min(m, n);
    for (size_t t = 0; t < steps; ++t) {
        for (;;) {
            size_t bi = t, bj = t;
            Int best = 0;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j)
                    if (D[i][j] != 0 && (best == 0 || int_abs(D[i][j]) < best)) {
                        best = int_abs(D[i][j]);
                        bi = i;
                        bj = j;
                    }
            if (best == 0) break;
            if (bi != t) swap_rows(bi, t);
            if (bj != t) swap_cols(bj, t);

            bool clean = true;
            for (size_t i = t + 1; i < m; ++i)
                if (D[i][t] != 0) {
                    add_row(i, t, -(D[i][t] / D[t][t]));
                    if (D[i][t] != 0) clean = false;
                }
            for (size_t j = t + 1; j < n; ++j)
                if (D[t][j] != 0) {
                    add_col(j, t, -(D[t][j] / D[t][t]));
                    if (D[t][j] != 0) clean = false;
                }
            if (!clean) continue;

            // divisibility of the remaining block by the pivot
            bool fixed = false;
            for (size_t i = t + 1; i < m && !fixed; ++i)
                for (size_t j = t + 1; j < n && !fixed; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        add_row(t, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (t < m && t < n && D[t][t] < 0) {
            for (size_t k = 0; k < n; ++k) D[t][k] = -D[t][k];
            for (size_t k = 0; k < m; ++k) r.U[t][k] = -r.U[t][k];
        }
    }
    return r;
}

// ---- IntLattice ----------------------------------------------------------------

IntLattice::IntLattice(unsigned d, IntMat basis_columns) : d_(d), cols_(std::move(basis_columns)) {
    if (cols_.size() != d) throw DimensionMismatch("IntLattice basis");
    for (const auto& c : cols_)
        if (c.size() != d) throw DimensionMismatch("IntLattice basis");
    IntMat B(d, std::vector<Int>(d));
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) B[i][j] = cols_[j][i];
    SNFResult s = snf(B);
    diag_.resize(d);
    Int idx = 1;
    for (unsigned i = 0; i < d; ++i) {
        diag_[i] = s.D[i][i];
        idx *= diag_[i];
    }
    if (idx == 0) throw SchemaError("IntLattice: basis is singular");
    index_ = int_abs(idx);
    u_ = std::move(s.U);
}

bool IntLattice::contains(const std::vector<Int>& n) const {
    if (n.size() != d_) throw DimensionMismatch("IntLattice::contains");
    // n = B x  <=>  (U n) = D (V^{-1} x); solvable over Z iff the diagonal divides U n
    for (unsigned i = 0; i < d_; ++i) {
        Int s = 0;
        for (unsigned j = 0; j < d_; ++j) s += u_[i][j] * n[j];
        if (s % diag_[i] != 0) return false;
    }
    return true;
}

IntLattice lattice_of_integrality(const ExpVec& v) {
    unsigned d = v.dim();
    // unimodular M with M*num = (g,0,...,0)^T, from the SNF of the column vector
    IntMat col(d, std::vector<Int>(1));
    for (unsigned i = 0; i < d; ++i) col[i][0] = v.num()[i];
    SNFResult s = snf(col);
    // n = y*M lies in H iff den(v) | y_1, so H is spanned by den*m_1, m_2, ..., m_d
    IntMat basis_cols;
    for (unsigned i = 0; i < d; ++i) {
        std::vector<Int> row = s.U[i];
        if (i == 0)
            for (auto& x : row) x *= v.den();
        basis_cols.push_back(std::move(row));
    }
    return IntLattice(d, basis_cols);
}

std::vector<Int> pick_outside_lattices(const Cone& c, const std::vector<IntLattice>& lattices,
                                       unsigned bound) {
    unsigned d = c.dim();
    std::vector<Int> x(d);
    for (unsigned s = 1; s <= bound; ++s) {
        std::vector<long> idx(d, -(long)s);
        for (;;) {
            long maxabs = 0;
            for (unsigned i = 0; i < d; ++i) maxabs = std::max(maxabs, std::labs(idx[i]));
            if (maxabs == (long)s) {
                for (unsigned i = 0; i < d; ++i) x[i] = idx[i];
                bool ok = c.contains(x, /*strict=*/true);
                for (size_t l = 0; ok && l < lattices.size(); ++l)
                    if (lattices[l].contains(x)) ok = false;
                if (ok) return x;
            }
            int i = (int)d - 1;
            while (i >= 0 && idx[i] == (long)s) idx[i--] = -(long)s;
            if (i < 0) break;
            ++idx[i];
        }
    }
    throw NotFound("no direction outside the lattices within the box");
}

std::vector<IntLattice> sublattices_of_index(unsigned d, const Int& index) {
    // column-style HNF: upper triangular, H[i][i] >= 1, prod of diag = index,
    // 0 <= H[i][j] < H[i][i] for j > i.  Deterministic enumeration order.
    std::vector<IntLattice> out;
    std::vector<Int> diag(d, 1);
    std::function<void(unsigned, Int)> rec_diag = [&](unsigned pos, Int rem) {
        if (pos == d) {
            if (rem != 1) return;
            IntMat H(d, std::vector<Int>(d, 0));
            for (unsigned i = 0; i < d; ++i) H[i][i] = diag[i];
            std::vector<std::pair<unsigned, unsigned>> slots;
            for (unsigned i = 0; i < d; ++i)
                for (unsigned j = i + 1; j < d; ++j)
                    if (diag[i] > 1) slots.push_back({i, j});
            std::function<void(size_t)> rec_fill = [&](size_t sl) {
                if (sl == slots.size()) {
                    IntMat cols(d, std::vector<Int>(d));
                    for (unsigned i = 0; i < d; ++i)
                        for (unsigned j = 0; j < d; ++j) cols[j][i] = H[i][j];
                    out.emplace_back(d, cols);
                    return;
                }
                auto [i, j] = slots[sl];
                for (Int v = 0; v < diag[i]; ++v) {
                    H[i][j] = v;
                    rec_fill(sl + 1);
                }
                H[i][j] = 0;
            };
            rec_fill(0);
            return;
        }
        for (Int dv = 1; dv <= rem; ++dv) {
            if (rem % dv != 0) continue;
            diag[pos] = dv;
            rec_diag(pos + 1, rem / dv);
        }
        diag[pos] = 1;
    };
    rec_diag(0, index);
    return out;
}

}  // namespace gps
