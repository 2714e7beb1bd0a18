#include "conditions.hpp"

#include "error.hpp"

namespace cmnf {

void ConditionReport::add(const std::string& name, const BigradedSeries& residual) {
    ConditionEntry e;
    e.name = name;
    e.residual = residual;
    e.pass = residual.is_zero();
    e.residual_terms = residual.term_count();
    pass = pass && e.pass;
    entries.push_back(std::move(e));
}

ConditionReport check_N0(const HermitianFamily& fam, const BigradedSeries& phi) {
    (void)fam;
    if (!phi.is_real_valued()) fail_validation("check_N0: phi must be real valued");
    ConditionReport rep;
    BigradedSeries residual(phi.n(), phi.d(), phi.s(), phi.cap());
    for (int p = 0; p <= phi.cap(); ++p) {
        residual += phi.extract_pq(p, 0);
        if (p > 0) residual += phi.extract_pq(0, p);
    }
    rep.add("N0", residual);
    rep.checked_range = "p <= " + std::to_string(phi.cap());
    return rep;
}

ConditionReport check_N1(const HermitianFamily& fam, const BigradedSeries& phi, int k_max) {
    if (!phi.is_real_valued()) fail_validation("check_N1: phi must be real valued");
    ConditionReport rep;
    int pmax = std::min(k_max, phi.cap());
    for (int p = 2; p <= pmax; ++p) {
        BigradedSeries p1 = phi.extract_pq(p, 1);
        BigradedSeries onep = phi.extract_pq(1, p);
        rep.add("N1 Kstar(Phi_{" + std::to_string(p) + ",1})", Kstar_apply(fam, p1, false));
        rep.add("N1 Kbarstar(Phi_{1," + std::to_string(p) + "})", Kstar_apply(fam, onep, true));
    }
    rep.checked_range = "1 < p <= " + std::to_string(pmax);
    return rep;
}

ConditionReport check_Nd(const HermitianFamily& fam, const BigradedSeries& phi) {
    if (!phi.is_real_valued()) fail_validation("check_Nd: phi must be real valued");
    ConditionReport rep;
    BigradedSeries p11 = phi.extract_pq(1, 1);
    BigradedSeries p22 = phi.extract_pq(2, 2);
    BigradedSeries p33 = phi.extract_pq(3, 3);
    BigradedSeries ds33 = deltastar_apply(fam, deltastar_apply(fam, p33));
    BigradedSeries r1 = deltastar_apply(fam, p11).scaled(GaussRat(-6)) + deltastar_apply(fam, ds33);
    rep.add("Nd diagonal", r1);
    BigradedSeries inner = p11 - deltastar_apply(fam, p22).scaled(GaussRat::i_unit()) - ds33;
    rep.add("Nd Kstar combination", Kstar_apply(fam, inner, false));
    return rep;
}

ConditionReport check_Noff(const HermitianFamily& fam, const BigradedSeries& phi) {
    if (!phi.is_real_valued()) fail_validation("check_Noff: phi must be real valued");
    ConditionReport rep;
    BigradedSeries a = phi.extract_pq(2, 3) + delta_apply(fam, phi.extract_pq(1, 2)).scaled(GaussRat::i_unit());
    BigradedSeries b = phi.extract_pq(3, 2) - delta_apply(fam, phi.extract_pq(2, 1)).scaled(GaussRat::i_unit());
    rep.add("Noff (2,3)", Kstar_apply(fam, deltastar_apply(fam, deltastar_apply(fam, a)), false));
    rep.add("Noff (3,2)", Kstar_apply(fam, deltastar_apply(fam, deltastar_apply(fam, b)), true));
    return rep;
}

ConditionReport check_CM(const HermitianFamily& fam, const BigradedSeries& phi) {
    if (fam.d != 1) fail_validation("check_CM: requires d = 1");
    if (!phi.is_real_valued()) fail_validation("check_CM: phi must be real valued");
    ConditionReport rep;
    BigradedSeries harmonic(phi.n(), phi.d(), phi.s(), phi.cap());
    for (int p = 0; p <= phi.cap(); ++p) {
        harmonic += phi.extract_pq(p, 0);
        if (p > 0) harmonic += phi.extract_pq(0, p);
    }
    rep.add("CM harmonic", harmonic);
    BigradedSeries line(phi.n(), phi.d(), phi.s(), phi.cap());
    for (int p = 1; p <= phi.cap(); ++p) {
        line += phi.extract_pq(p, 1);
        if (p > 1) line += phi.extract_pq(1, p);
    }
    rep.add("CM (p,1)", line);
    rep.add("CM T Phi_{2,2}", cm_trace(fam, phi.extract_pq(2, 2), 1));
    rep.add("CM T^2 Phi_{2,3}", cm_trace(fam, phi.extract_pq(2, 3), 2));
    rep.add("CM T^3 Phi_{3,3}", cm_trace(fam, phi.extract_pq(3, 3), 3));
    rep.checked_range = "p <= " + std::to_string(phi.cap());
    return rep;
}

ConditionReport merge_reports(const std::vector<ConditionReport>& reports) {
    ConditionReport out;
    for (const auto& r : reports) {
        for (const auto& e : r.entries) {
            out.pass = out.pass && e.pass;
            out.entries.push_back(e);
        }
        if (!r.checked_range.empty()) {
            if (!out.checked_range.empty()) out.checked_range += "; ";
            out.checked_range += r.checked_range;
        }
    }
    return out;
}

}  // namespace cmnf
