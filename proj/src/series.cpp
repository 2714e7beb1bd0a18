#include "series.hpp"

#include <algorithm>
#include <functional>

namespace cmnf {

int expo_sum(const Expo& e) {
    int s = 0;
    for (int x : e) s += x;
    return s;
}

static bool lex_less(const Expo& a, const Expo& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool TermLess::operator()(const Term& a, const Term& b) const {
    int wa = a.wt(), wb = b.wt();
    if (wa != wb) return wa < wb;
    if (a.alpha != b.alpha) return lex_less(a.alpha, b.alpha);
    if (a.beta != b.beta) return lex_less(a.beta, b.beta);
    return lex_less(a.gamma, b.gamma);
}

bool HTermLess::operator()(const HTerm& a, const HTerm& b) const {
    int wa = a.wt(), wb = b.wt();
    if (wa != wb) return wa < wb;
    if (a.alpha != b.alpha) return lex_less(a.alpha, b.alpha);
    return lex_less(a.delta, b.delta);
}

static bool vec_zero(const CoeffVec& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------- BigradedSeries

BigradedSeries BigradedSeries::identity_z(int n, int d, int cap) {
    BigradedSeries r(n, d, n, cap);
    for (int i = 0; i < n; ++i) {
        Term t{Expo(n, 0), Expo(n, 0), Expo(d, 0)};
        t.alpha[i] = 1;
        r.add_term(t, i, GaussRat(1));
    }
    return r;
}

BigradedSeries BigradedSeries::monomial(int n, int d, int s, int cap, const Term& t, int comp, const GaussRat& c) {
    BigradedSeries r(n, d, s, cap);
    r.add_term(t, comp, c);
    return r;
}

GaussRat BigradedSeries::coeff(const Term& t, int comp) const {
    auto it = terms_.find(t);
    if (it == terms_.end()) return GaussRat();
    return it->second[comp];
}

void BigradedSeries::add_term(const Term& t, int comp, const GaussRat& c) {
    if (c.is_zero() || t.wt() > cap_) return;
    auto it = terms_.find(t);
    if (it == terms_.end()) {
        CoeffVec v(s_);
        v[comp] = c;
        terms_.emplace(t, std::move(v));
        return;
    }
    it->second[comp] += c;
    if (vec_zero(it->second)) terms_.erase(it);
}

void BigradedSeries::set_cap(int cap) {
    cap_ = cap;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.wt() > cap_)
            it = terms_.erase(it);
        else
            ++it;
    }
}

BigradedSeries& BigradedSeries::operator+=(const BigradedSeries& o) {
    if (n_ != o.n_ || d_ != o.d_ || s_ != o.s_) fail_validation("series dimension mismatch in add");
    cap_ = std::min(cap_, o.cap_);
    set_cap(cap_);
    for (const auto& [t, v] : o.terms_) {
        if (t.wt() > cap_) continue;
        auto it = terms_.find(t);
        if (it == terms_.end()) {
            terms_.emplace(t, v);
            if (vec_zero(terms_[t])) terms_.erase(t);
            continue;
        }
        for (int j = 0; j < s_; ++j) it->second[j] += v[j];
        if (vec_zero(it->second)) terms_.erase(it);
    }
    return *this;
}

BigradedSeries& BigradedSeries::operator-=(const BigradedSeries& o) { return *this += o.scaled(GaussRat(-1)); }

bool operator==(const BigradedSeries& a, const BigradedSeries& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.s_ == b.s_ && a.terms_ == b.terms_;
}

BigradedSeries BigradedSeries::scaled(const GaussRat& c) const {
    BigradedSeries r(n_, d_, s_, cap_);
    if (c.is_zero()) return r;
    for (const auto& [t, v] : terms_) {
        CoeffVec w(s_);
        for (int j = 0; j < s_; ++j) w[j] = v[j] * c;
        r.terms_.emplace(t, std::move(w));
    }
    return r;
}

BigradedSeries BigradedSeries::conjugate() const {
    BigradedSeries r(n_, d_, s_, cap_);
    for (const auto& [t, v] : terms_) {
        Term tc{t.beta, t.alpha, t.gamma};
        CoeffVec w(s_);
        for (int j = 0; j < s_; ++j) w[j] = v[j].conj();
        r.terms_.emplace(tc, std::move(w));
    }
    return r;
}

bool BigradedSeries::is_real_valued() const { return conjugate() == *this; }

BigradedSeries BigradedSeries::component(int j) const {
    BigradedSeries r(n_, d_, 1, cap_);
    for (const auto& [t, v] : terms_)
        if (!v[j].is_zero()) r.terms_.emplace(t, CoeffVec{v[j]});
    return r;
}

void BigradedSeries::set_component(int j, const BigradedSeries& c) {
    for (const auto& [t, v] : c.terms()) add_term(t, j, v[0]);
}

BigradedSeries BigradedSeries::extract_pq(int p, int q) const {
    BigradedSeries r(n_, d_, s_, cap_);
    for (const auto& [t, v] : terms_)
        if (expo_sum(t.alpha) == p && expo_sum(t.beta) == q) r.terms_.emplace(t, v);
    return r;
}

BigradedSeries BigradedSeries::extract_quasidegree(int k) const {
    BigradedSeries r(n_, d_, s_, cap_);
    for (const auto& [t, v] : terms_)
        if (t.wt() == k) r.terms_.emplace(t, v);
    return r;
}

BigradedSeries BigradedSeries::truncated(int cap) const {
    BigradedSeries r = *this;
    r.set_cap(std::min(cap, cap_));
    return r;
}

int BigradedSeries::quasiorder() const {
    if (terms_.empty()) return cap_ + 1;
    return terms_.begin()->first.wt();
}

static BigradedSeries derivative_impl(const BigradedSeries& a, int which, int idx) {
    BigradedSeries r(a.n(), a.d(), a.s(), a.cap());
    for (const auto& [t, v] : a.terms()) {
        const Expo& e = which == 0 ? t.alpha : which == 1 ? t.beta : t.gamma;
        if (e[idx] == 0) continue;
        Term td = t;
        Expo& ed = which == 0 ? td.alpha : which == 1 ? td.beta : td.gamma;
        ed[idx] -= 1;
        GaussRat m(rat_from_long(e[idx]));
        for (int j = 0; j < a.s(); ++j) r.add_term(td, j, v[j] * m);
    }
    return r;
}

BigradedSeries BigradedSeries::d_z(int i) const { return derivative_impl(*this, 0, i); }
BigradedSeries BigradedSeries::d_zbar(int i) const { return derivative_impl(*this, 1, i); }
BigradedSeries BigradedSeries::d_u(int j) const { return derivative_impl(*this, 2, j); }

BigradedSeries BigradedSeries::bar_swap() const { return conjugate(); }

int BigradedSeries::min_udeg() const {
    int m = -1;
    for (const auto& [t, v] : terms_) {
        int u = expo_sum(t.gamma);
        if (m < 0 || u < m) m = u;
    }
    return m;
}

int BigradedSeries::max_udeg() const {
    int m = 0;
    for (const auto& [t, v] : terms_) m = std::max(m, expo_sum(t.gamma));
    return m;
}

BigradedSeries mul(const BigradedSeries& a, const BigradedSeries& b) {
    if (a.s() != 1) fail_validation("mul: left factor must be scalar valued");
    if (a.n() != b.n() || a.d() != b.d()) fail_validation("mul: variable dimension mismatch");
    int cap = std::min(a.cap(), b.cap());
    BigradedSeries r(a.n(), a.d(), b.s(), cap);
    for (const auto& [ta, va] : a.terms()) {
        int wa = ta.wt();
        if (wa > cap) continue;
        for (const auto& [tb, vb] : b.terms()) {
            if (wa + tb.wt() > cap) continue;
            Term t;
            t.alpha.resize(a.n());
            t.beta.resize(a.n());
            t.gamma.resize(a.d());
            for (int i = 0; i < a.n(); ++i) {
                t.alpha[i] = ta.alpha[i] + tb.alpha[i];
                t.beta[i] = ta.beta[i] + tb.beta[i];
            }
            for (int j = 0; j < a.d(); ++j) t.gamma[j] = ta.gamma[j] + tb.gamma[j];
            for (int j = 0; j < b.s(); ++j)
                if (!vb[j].is_zero()) r.add_term(t, j, va[0] * vb[j]);
        }
    }
    return r;
}

BigradedSeries dot_plain(const BigradedSeries& a, const BigradedSeries& b) {
    if (a.s() != b.s()) fail_validation("dot: value dimension mismatch");
    BigradedSeries r(a.n(), a.d(), 1, std::min(a.cap(), b.cap()));
    for (int j = 0; j < a.s(); ++j) r += mul(a.component(j), b.component(j));
    return r;
}

BigradedSeries series_arith(const BigradedSeries& a, const BigradedSeries& b, ArithOp op, const GaussRat& scale) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return mul(a, b);
        case ArithOp::scale: return a.scaled(scale);
    }
    fail_internal("unreachable");
}

// ---------------------------------------------------------------- HoloSeries

HoloSeries HoloSeries::identity_z(int n, int d, int cap) {
    HoloSeries r(n, d, n, cap);
    for (int i = 0; i < n; ++i) {
        HTerm t{Expo(n, 0), Expo(d, 0)};
        t.alpha[i] = 1;
        r.add_term(t, i, GaussRat(1));
    }
    return r;
}

HoloSeries HoloSeries::identity_w(int n, int d, int cap) {
    HoloSeries r(n, d, d, cap);
    for (int j = 0; j < d; ++j) {
        HTerm t{Expo(n, 0), Expo(d, 0)};
        t.delta[j] = 1;
        r.add_term(t, j, GaussRat(1));
    }
    return r;
}

HoloSeries HoloSeries::monomial(int n, int d, int s, int cap, const HTerm& t, int comp, const GaussRat& c) {
    HoloSeries r(n, d, s, cap);
    r.add_term(t, comp, c);
    return r;
}

GaussRat HoloSeries::coeff(const HTerm& t, int comp) const {
    auto it = terms_.find(t);
    if (it == terms_.end()) return GaussRat();
    return it->second[comp];
}

void HoloSeries::add_term(const HTerm& t, int comp, const GaussRat& c) {
    if (c.is_zero() || t.wt() > cap_) return;
    auto it = terms_.find(t);
    if (it == terms_.end()) {
        CoeffVec v(s_);
        v[comp] = c;
        terms_.emplace(t, std::move(v));
        return;
    }
    it->second[comp] += c;
    if (vec_zero(it->second)) terms_.erase(it);
}

HoloSeries& HoloSeries::operator+=(const HoloSeries& o) {
    if (n_ != o.n_ || d_ != o.d_ || s_ != o.s_) fail_validation("holo series dimension mismatch in add");
    cap_ = std::min(cap_, o.cap_);
    for (const auto& [t, v] : o.terms_)
        for (int j = 0; j < s_; ++j) add_term(t, j, v[j]);
    return *this;
}

HoloSeries& HoloSeries::operator-=(const HoloSeries& o) { return *this += o.scaled(GaussRat(-1)); }

bool operator==(const HoloSeries& a, const HoloSeries& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.s_ == b.s_ && a.terms_ == b.terms_;
}

HoloSeries HoloSeries::scaled(const GaussRat& c) const {
    HoloSeries r(n_, d_, s_, cap_);
    if (c.is_zero()) return r;
    for (const auto& [t, v] : terms_) {
        CoeffVec w(s_);
        for (int j = 0; j < s_; ++j) w[j] = v[j] * c;
        r.terms_.emplace(t, std::move(w));
    }
    return r;
}

HoloSeries HoloSeries::extract_zdeg(int a) const {
    HoloSeries r(n_, d_, s_, cap_);
    for (const auto& [t, v] : terms_)
        if (expo_sum(t.alpha) == a) r.terms_.emplace(t, v);
    return r;
}

HoloSeries HoloSeries::extract_quasidegree(int k) const {
    HoloSeries r(n_, d_, s_, cap_);
    for (const auto& [t, v] : terms_)
        if (t.wt() == k) r.terms_.emplace(t, v);
    return r;
}

HoloSeries HoloSeries::truncated(int cap) const {
    HoloSeries r(n_, d_, s_, std::min(cap, cap_));
    for (const auto& [t, v] : terms_)
        if (t.wt() <= r.cap_) r.terms_.emplace(t, v);
    return r;
}

int HoloSeries::quasiorder() const {
    if (terms_.empty()) return cap_ + 1;
    return terms_.begin()->first.wt();
}

HoloSeries HoloSeries::d_w(int j) const {
    HoloSeries r(n_, d_, s_, cap_);
    for (const auto& [t, v] : terms_) {
        if (t.delta[j] == 0) continue;
        HTerm td = t;
        td.delta[j] -= 1;
        GaussRat m(rat_from_long(t.delta[j]));
        for (int c = 0; c < s_; ++c) r.add_term(td, c, v[c] * m);
    }
    return r;
}

BigradedSeries HoloSeries::rename_w_to_u() const {
    BigradedSeries r(n_, d_, s_, cap_);
    for (const auto& [t, v] : terms_) {
        Term tb{t.alpha, Expo(n_, 0), t.delta};
        for (int j = 0; j < s_; ++j) r.add_term(tb, j, v[j]);
    }
    return r;
}

BigradedSeries HoloSeries::conj_rename_w_to_u() const {
    BigradedSeries r(n_, d_, s_, cap_);
    for (const auto& [t, v] : terms_) {
        Term tb{Expo(n_, 0), t.alpha, t.delta};
        for (int j = 0; j < s_; ++j) r.add_term(tb, j, v[j].conj());
    }
    return r;
}

// ---------------------------------------------------------------- substitution

BigradedSeries substitute_w(const HoloSeries& g, const BigradedSeries& v, int sign) {
    if (v.s() != g.d()) fail_validation("substitute_w: v must be d-vector valued");
    if (!v.is_real_valued()) fail_validation("substitute_w: v must be real valued");
    if (!v.is_zero() && v.quasiorder() < 2) fail_validation("substitute_w: v must have quasiorder >= 2");
    int cap = std::min(g.cap(), v.cap());
    GaussRat iu = GaussRat::i_unit() * GaussRat(sign >= 0 ? 1 : -1);

    BigradedSeries result(g.n(), g.d(), g.s(), cap);
    BigradedSeries one(g.n(), g.d(), 1, cap);
    one.add_term(Term{Expo(g.n(), 0), Expo(g.n(), 0), Expo(g.d(), 0)}, 0, GaussRat(1));

    // walk(j, deriv, prod, coef): sum over exponents of u-direction j..d-1.
    std::function<void(int, const HoloSeries&, const BigradedSeries&, const GaussRat&)> walk =
        [&](int j, const HoloSeries& deriv, const BigradedSeries& prod, const GaussRat& coef) {
            if (j == g.d()) {
                BigradedSeries base = deriv.rename_w_to_u();
                for (int c = 0; c < g.s(); ++c) {
                    BigradedSeries piece = mul(prod, base.component(c)).scaled(coef);
                    BigradedSeries lift(g.n(), g.d(), g.s(), cap);
                    lift.set_component(c, piece);
                    result += lift;
                }
                return;
            }
            HoloSeries dg = deriv;
            GaussRat cf = coef;
            BigradedSeries pr = prod;
            walk(j + 1, dg, pr, cf);
            for (int e = 1;; ++e) {
                dg = dg.d_w(j);
                if (dg.is_zero()) break;
                cf = cf * iu / GaussRat(rat_from_long(e));
                pr = mul(pr, v.component(j)).truncated(cap);
                if (pr.is_zero()) break;
                walk(j + 1, dg, pr, cf);
            }
        };
    walk(0, g.truncated(cap), one, GaussRat(1));
    return result;
}

BigradedSeries taylor_shift_u(const BigradedSeries& a, const BigradedSeries& P) {
    if (P.s() != a.d()) fail_validation("taylor_shift_u: shift must be d-vector valued");
    if (!P.is_zero() && P.quasiorder() < 2) fail_validation("taylor_shift_u: shift must have quasiorder >= 2");
    int cap = std::min(a.cap(), P.cap());
    BigradedSeries result(a.n(), a.d(), a.s(), cap);
    BigradedSeries one(a.n(), a.d(), 1, cap);
    one.add_term(Term{Expo(a.n(), 0), Expo(a.n(), 0), Expo(a.d(), 0)}, 0, GaussRat(1));

    std::function<void(int, const BigradedSeries&, const BigradedSeries&, const GaussRat&)> walk =
        [&](int j, const BigradedSeries& deriv, const BigradedSeries& prod, const GaussRat& coef) {
            if (j == a.d()) {
                for (int c = 0; c < a.s(); ++c) {
                    BigradedSeries piece = mul(prod, deriv.component(c)).scaled(coef);
                    BigradedSeries lift(a.n(), a.d(), a.s(), cap);
                    lift.set_component(c, piece);
                    result += lift;
                }
                return;
            }
            BigradedSeries dg = deriv;
            GaussRat cf = coef;
            BigradedSeries pr = prod;
            walk(j + 1, dg, pr, cf);
            for (int e = 1;; ++e) {
                dg = dg.d_u(j);
                if (dg.is_zero()) break;
                cf = cf / GaussRat(rat_from_long(e));
                pr = mul(pr, P.component(j)).truncated(cap);
                if (pr.is_zero()) break;
                walk(j + 1, dg, pr, cf);
            }
        };
    walk(0, a.truncated(cap), one, GaussRat(1));
    return result;
}

BigradedSeries taylor_compose(const BigradedSeries& phi, const BigradedSeries& dz, const BigradedSeries& dzb,
                              const BigradedSeries& du) {
    int n = phi.n(), d = phi.d();
    if (dz.s() != n || dzb.s() != n || du.s() != d) fail_validation("taylor_compose: argument dimensions");
    for (const BigradedSeries* p : {&dz, &dzb})
        if (!p->is_zero() && p->quasiorder() < 2) fail_validation("taylor_compose: z-shift of quasiorder < 2");
    if (!du.is_zero() && du.quasiorder() < 3) fail_validation("taylor_compose: u-shift of quasiorder < 3");
    int cap = phi.cap();
    for (const BigradedSeries* p : {&dz, &dzb, &du}) cap = std::min(cap, p->cap());

    BigradedSeries result(n, d, phi.s(), cap);
    BigradedSeries one(n, d, 1, cap);
    one.add_term(Term{Expo(n, 0), Expo(n, 0), Expo(d, 0)}, 0, GaussRat(1));

    int nvars = 2 * n + d;
    auto deriv_of = [&](const BigradedSeries& a, int var) {
        if (var < n) return a.d_z(var);
        if (var < 2 * n) return a.d_zbar(var - n);
        return a.d_u(var - 2 * n);
    };
    auto factor_of = [&](int var) -> BigradedSeries {
        if (var < n) return dz.component(var);
        if (var < 2 * n) return dzb.component(var - n);
        return du.component(var - 2 * n);
    };

    std::function<void(int, const BigradedSeries&, const BigradedSeries&, const GaussRat&)> walk =
        [&](int var, const BigradedSeries& deriv, const BigradedSeries& prod, const GaussRat& coef) {
            if (var == nvars) {
                for (int c = 0; c < phi.s(); ++c) {
                    BigradedSeries piece = mul(prod, deriv.component(c)).scaled(coef);
                    BigradedSeries lift(n, d, phi.s(), cap);
                    lift.set_component(c, piece);
                    result += lift;
                }
                return;
            }
            BigradedSeries dg = deriv;
            GaussRat cf = coef;
            BigradedSeries pr = prod;
            walk(var + 1, dg, pr, cf);
            BigradedSeries fac = factor_of(var);
            if (fac.is_zero()) return;
            for (int e = 1;; ++e) {
                dg = deriv_of(dg, var);
                if (dg.is_zero()) break;
                cf = cf / GaussRat(rat_from_long(e));
                pr = mul(pr, fac).truncated(cap);
                if (pr.is_zero()) break;
                walk(var + 1, dg, pr, cf);
            }
        };
    walk(0, phi.truncated(cap), one, GaussRat(1));
    return result;
}

BigradedSeries substitute_full(const BigradedSeries& phi, const HoloSeries& f, const HoloSeries& g,
                               const BigradedSeries& v) {
    BigradedSeries F = substitute_w(f, v, +1);
    BigradedSeries G = substitute_w(g, v, +1);
    BigradedSeries dz = F - BigradedSeries::identity_z(phi.n(), phi.d(), F.cap());
    BigradedSeries dzb = dz.conjugate();
    BigradedSeries re_g = (G + G.conjugate()).scaled(GaussRat(Rat(1, 2)));
    BigradedSeries du = re_g;
    for (int j = 0; j < phi.d(); ++j) {
        Term uj{Expo(phi.n(), 0), Expo(phi.n(), 0), Expo(phi.d(), 0)};
        uj.gamma[j] = 1;
        du.add_term(uj, j, GaussRat(-1));
    }
    return taylor_compose(phi, dz, dzb, du);
}

HoloSeries evaluate_at_holo(const BigradedSeries& theta, const HoloSeries& Fz, const HoloSeries& Fchi,
                            const HoloSeries& Ftau) {
    int n = theta.n(), d = theta.d();
    int cap = std::min({theta.cap(), Fz.cap(), Fchi.cap(), Ftau.cap()});
    HoloSeries result(n, d, theta.s(), cap);
    HoloSeries one(n, d, 1, cap);
    one.add_term(HTerm{Expo(n, 0), Expo(d, 0)}, 0, GaussRat(1));

    // Memoized powers of argument components.
    std::vector<std::vector<HoloSeries>> zp(n), cp(n), tp(d);
    auto holo_mul = [&](const HoloSeries& a, const HoloSeries& b) {
        HoloSeries r(n, d, 1, cap);
        for (const auto& [ta, va] : a.terms())
            for (const auto& [tb, vb] : b.terms()) {
                HTerm t;
                t.alpha.resize(n);
                t.delta.resize(d);
                for (int i = 0; i < n; ++i) t.alpha[i] = ta.alpha[i] + tb.alpha[i];
                for (int j = 0; j < d; ++j) t.delta[j] = ta.delta[j] + tb.delta[j];
                r.add_term(t, 0, va[0] * vb[0]);
            }
        return r;
    };
    auto holo_component = [&](const HoloSeries& a, int j) {
        HoloSeries r(n, d, 1, cap);
        for (const auto& [t, v] : a.terms())
            if (!v[j].is_zero()) r.add_term(t, 0, v[j]);
        return r;
    };
    auto power = [&](std::vector<std::vector<HoloSeries>>& store, const HoloSeries& base, int j, int e) -> const HoloSeries& {
        auto& col = store[j];
        while (static_cast<int>(col.size()) < e) {
            if (col.empty())
                col.push_back(holo_component(base, j).truncated(cap));
            else
                col.push_back(holo_mul(col.back(), holo_component(base, j)).truncated(cap));
        }
        return col[e - 1];
    };

    for (const auto& [t, v] : theta.terms()) {
        HoloSeries prod = one;
        bool dead = false;
        for (int i = 0; i < n && !dead; ++i)
            if (t.alpha[i] > 0) {
                prod = holo_mul(prod, power(zp, Fz, i, t.alpha[i])).truncated(cap);
                dead = prod.is_zero();
            }
        for (int i = 0; i < n && !dead; ++i)
            if (t.beta[i] > 0) {
                prod = holo_mul(prod, power(cp, Fchi, i, t.beta[i])).truncated(cap);
                dead = prod.is_zero();
            }
        for (int j = 0; j < d && !dead; ++j)
            if (t.gamma[j] > 0) {
                prod = holo_mul(prod, power(tp, Ftau, j, t.gamma[j])).truncated(cap);
                dead = prod.is_zero();
            }
        if (dead) continue;
        for (int c = 0; c < theta.s(); ++c) {
            if (v[c].is_zero()) continue;
            for (const auto& [pt, pv] : prod.terms()) result.add_term(pt, c, pv[0] * v[c]);
        }
    }
    return result;
}

BigradedSeries d_u_contract(const BigradedSeries& a, const BigradedSeries& V) {
    if (V.s() != a.d()) fail_validation("d_u_contract: contraction vector must be d-valued");
    BigradedSeries r(a.n(), a.d(), a.s(), std::min(a.cap(), V.cap()));
    for (int l = 0; l < a.d(); ++l) r += mul(V.component(l), a.d_u(l));
    return r;
}

}  // namespace cmnf
