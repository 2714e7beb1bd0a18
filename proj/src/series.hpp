#pragma once

#include <map>
#include <vector>

#include "rational.hpp"

namespace cmnf {

using Expo = std::vector<int>;

int expo_sum(const Expo& e);

// Monomial z^alpha zbar^beta u^gamma. Quasidegree weights are 1 for z, zbar and 2 for u.
struct Term {
    Expo alpha, beta, gamma;
    int wt() const { return expo_sum(alpha) + expo_sum(beta) + 2 * expo_sum(gamma); }
    friend bool operator==(const Term& a, const Term& b) {
        return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma;
    }
};

// Graded lexicographic order on (wt, alpha, beta, gamma); fixes all serialized output.
struct TermLess {
    bool operator()(const Term& a, const Term& b) const;
};

// Monomial z^alpha w^delta of a holomorphic map component, wt = |alpha| + 2|delta|.
struct HTerm {
    Expo alpha, delta;
    int wt() const { return expo_sum(alpha) + 2 * expo_sum(delta); }
    friend bool operator==(const HTerm& a, const HTerm& b) { return a.alpha == b.alpha && a.delta == b.delta; }
};

struct HTermLess {
    bool operator()(const HTerm& a, const HTerm& b) const;
};

using CoeffVec = std::vector<GaussRat>;

class HoloSeries;

// Truncated series in (z, zbar, u) with values in C^s, exact coefficients,
// no stored zeros, every term of quasidegree <= cap.
class BigradedSeries {
  public:
    BigradedSeries() = default;
    BigradedSeries(int n, int d, int s, int cap) : n_(n), d_(d), s_(s), cap_(cap) {}

    static BigradedSeries zero(int n, int d, int s, int cap) { return BigradedSeries(n, d, s, cap); }
    // The tuple (z_1, ..., z_n) as an n-valued series.
    static BigradedSeries identity_z(int n, int d, int cap);
    static BigradedSeries monomial(int n, int d, int s, int cap, const Term& t, int comp, const GaussRat& c);

    int n() const { return n_; }
    int d() const { return d_; }
    int s() const { return s_; }
    int cap() const { return cap_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Term, CoeffVec, TermLess>& terms() const& { return terms_; }
    const std::map<Term, CoeffVec, TermLess>& terms() const&& = delete;

    GaussRat coeff(const Term& t, int comp) const;
    void add_term(const Term& t, int comp, const GaussRat& c);
    void set_cap(int cap);

    BigradedSeries& operator+=(const BigradedSeries& o);
    BigradedSeries& operator-=(const BigradedSeries& o);
    friend BigradedSeries operator+(BigradedSeries a, const BigradedSeries& b) { return a += b; }
    friend BigradedSeries operator-(BigradedSeries a, const BigradedSeries& b) { return a -= b; }
    friend bool operator==(const BigradedSeries& a, const BigradedSeries& b);

    BigradedSeries scaled(const GaussRat& c) const;
    BigradedSeries conjugate() const;
    bool is_real_valued() const;

    BigradedSeries component(int j) const;               // s-valued -> scalar
    void set_component(int j, const BigradedSeries& c);  // c scalar
    BigradedSeries extract_pq(int p, int q) const;
    BigradedSeries extract_quasidegree(int k) const;
    BigradedSeries truncated(int cap) const;
    int quasiorder() const;  // least wt of a stored term; cap+1 when zero

    BigradedSeries d_z(int i) const;
    BigradedSeries d_zbar(int i) const;
    BigradedSeries d_u(int j) const;

    // Swaps the z and zbar slots and conjugates coefficients (used for the chi <-> z
    // symmetry of complex defining equations).
    BigradedSeries bar_swap() const;

    int min_udeg() const;
    int max_udeg() const;

  private:
    int n_ = 0, d_ = 0, s_ = 1, cap_ = 0;
    std::map<Term, CoeffVec, TermLess> terms_;
};

// a*b for scalar a (s = 1); b may be vector valued.
BigradedSeries mul(const BigradedSeries& a, const BigradedSeries& b);
// Componentwise <a, b-conjugate-free> contraction: sum_j a_j * b_j, both s-valued.
BigradedSeries dot_plain(const BigradedSeries& a, const BigradedSeries& b);

enum class ArithOp { add, sub, mul, scale };
BigradedSeries series_arith(const BigradedSeries& a, const BigradedSeries& b, ArithOp op,
                            const GaussRat& scale = GaussRat(1));

// Truncated holomorphic series in (z, w) with values in C^s.
class HoloSeries {
  public:
    HoloSeries() = default;
    HoloSeries(int n, int d, int s, int cap) : n_(n), d_(d), s_(s), cap_(cap) {}

    static HoloSeries zero(int n, int d, int s, int cap) { return HoloSeries(n, d, s, cap); }
    static HoloSeries identity_z(int n, int d, int cap);  // s = n
    static HoloSeries identity_w(int n, int d, int cap);  // s = d
    static HoloSeries monomial(int n, int d, int s, int cap, const HTerm& t, int comp, const GaussRat& c);

    int n() const { return n_; }
    int d() const { return d_; }
    int s() const { return s_; }
    int cap() const { return cap_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<HTerm, CoeffVec, HTermLess>& terms() const& { return terms_; }
    const std::map<HTerm, CoeffVec, HTermLess>& terms() const&& = delete;

    GaussRat coeff(const HTerm& t, int comp) const;
    void add_term(const HTerm& t, int comp, const GaussRat& c);

    HoloSeries& operator+=(const HoloSeries& o);
    HoloSeries& operator-=(const HoloSeries& o);
    friend HoloSeries operator+(HoloSeries a, const HoloSeries& b) { return a += b; }
    friend HoloSeries operator-(HoloSeries a, const HoloSeries& b) { return a -= b; }
    friend bool operator==(const HoloSeries& a, const HoloSeries& b);

    HoloSeries scaled(const GaussRat& c) const;
    HoloSeries extract_zdeg(int a) const;
    HoloSeries extract_quasidegree(int k) const;
    HoloSeries truncated(int cap) const;
    int quasiorder() const;
    HoloSeries d_w(int j) const;

    // Forgets holomorphy: w exponents become u exponents.
    BigradedSeries rename_w_to_u() const;
    // Conjugate map as a series in (zbar, u): alpha moves to the beta slot.
    BigradedSeries conj_rename_w_to_u() const;

  private:
    int n_ = 0, d_ = 0, s_ = 1, cap_ = 0;
    std::map<HTerm, CoeffVec, HTermLess> terms_;
};

// g(z, u + i*sign*v) = sum_gamma (i*sign)^{|gamma|}/gamma! * D_w^gamma g(z, u) * v^gamma,
// the symmetric multilinear contraction over the d u-directions. v must be real valued
// with quasiorder >= 2.
BigradedSeries substitute_w(const HoloSeries& g, const BigradedSeries& v, int sign);

// a(z, zbar, u + P) for a d-vector-valued shift P of quasiorder >= 2.
BigradedSeries taylor_shift_u(const BigradedSeries& a, const BigradedSeries& P);

// phi(z + dz, zbar + dzb, u + du); dz, dzb have quasiorder >= 2, du >= 3.
BigradedSeries taylor_compose(const BigradedSeries& phi, const BigradedSeries& dz, const BigradedSeries& dzb,
                              const BigradedSeries& du);

// phi(f(z,u+iv), conj f(zbar,u-iv), (g(z,u+iv) + conj g(zbar,u-iv))/2) per the
// multivariate Taylor expansion; f = z + h.o.t., g = w + h.o.t., v real.
BigradedSeries substitute_full(const BigradedSeries& phi, const HoloSeries& f, const HoloSeries& g,
                               const BigradedSeries& v);

// theta(Fz, Fchi, Ftau) with holomorphic arguments; Fz = z + h.o.t., Ftau = w + h.o.t.,
// Fchi of quasiorder >= 2. Used for normal-coordinate preparation.
HoloSeries evaluate_at_holo(const BigradedSeries& theta, const HoloSeries& Fz, const HoloSeries& Fchi,
                            const HoloSeries& Ftau);

// sum_l (d a / d u_l) * V_l for d-vector-valued V; the "prime" contraction of the paper's
// S'/Phi' notation.
BigradedSeries d_u_contract(const BigradedSeries& a, const BigradedSeries& V);

}  // namespace cmnf
