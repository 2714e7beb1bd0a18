#include "serialize.hpp"

#include <json.hpp>
#include <sstream>

#include "error.hpp"

namespace cmnf {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string expo_to_text(const Expo& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(e[i]);
    }
    return out;
}

Expo expo_from_stream(std::istringstream& in, int count) {
    Expo e(count);
    for (int i = 0; i < count; ++i) {
        if (!(in >> e[i]) || e[i] < 0) fail_parse("malformed exponent vector in series file");
    }
    return e;
}

void expect_pipe(std::istringstream& in) {
    std::string tok;
    if (!(in >> tok) || tok != "|") fail_parse("expected '|' separator in series term");
}

std::string header_line(const std::string& kind, int n, int d, int s, int cap) {
    return "cmnf-series " + kind + " v1\nn " + std::to_string(n) + "\nd " + std::to_string(d) + "\ns " +
           std::to_string(s) + "\ncap " + std::to_string(cap) + "\n";
}

struct Header {
    std::string kind;
    int n, d, s, cap;
};

Header parse_header(std::istream& in) {
    Header h;
    std::string magic, kind, ver;
    if (!(in >> magic >> kind >> ver) || magic != "cmnf-series" || ver != "v1")
        fail_parse("bad series header");
    h.kind = kind;
    std::string key;
    auto field = [&](const char* name) {
        int v;
        if (!(in >> key >> v) || key != name || v < 0) fail_parse("bad series header field");
        return v;
    };
    h.n = field("n");
    h.d = field("d");
    h.s = field("s");
    h.cap = field("cap");
    return h;
}

}  // namespace

std::string series_to_text(const BigradedSeries& s) {
    std::string out = header_line("bigraded", s.n(), s.d(), s.s(), s.cap());
    for (const auto& [t, v] : s.terms())
        for (int j = 0; j < s.s(); ++j) {
            if (v[j].is_zero()) continue;
            out += std::to_string(j + 1) + " | " + expo_to_text(t.alpha) + " | " + expo_to_text(t.beta) +
                   " | " + expo_to_text(t.gamma) + " | " + rat_to_string(v[j].re) + " | " +
                   rat_to_string(v[j].im) + "\n";
        }
    return out;
}

BigradedSeries series_from_text(const std::string& text) {
    std::istringstream in(text);
    Header h = parse_header(in);
    if (h.kind != "bigraded") fail_parse("expected a bigraded series file");
    BigradedSeries s(h.n, h.d, h.s, h.cap);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int j;
        if (!(ls >> j) || j < 1 || j > h.s) fail_parse("bad component index in series term");
        expect_pipe(ls);
        Term t;
        t.alpha = expo_from_stream(ls, h.n);
        expect_pipe(ls);
        t.beta = expo_from_stream(ls, h.n);
        expect_pipe(ls);
        t.gamma = expo_from_stream(ls, h.d);
        expect_pipe(ls);
        std::string re, bar, im2;
        if (!(ls >> re >> bar >> im2) || bar != "|") fail_parse("bad coefficient in series term");
        if (t.wt() > h.cap) fail_parse("series term above cap");
        s.add_term(t, j - 1, GaussRat(rat_from_string(re), rat_from_string(im2)));
    }
    return s;
}

std::string holo_to_text(const HoloSeries& s) {
    std::string out = header_line("holo", s.n(), s.d(), s.s(), s.cap());
    for (const auto& [t, v] : s.terms())
        for (int j = 0; j < s.s(); ++j) {
            if (v[j].is_zero()) continue;
            out += std::to_string(j + 1) + " | " + expo_to_text(t.alpha) + " | " + expo_to_text(t.delta) +
                   " | " + rat_to_string(v[j].re) + " | " + rat_to_string(v[j].im) + "\n";
        }
    return out;
}

HoloSeries holo_from_text(const std::string& text) {
    std::istringstream in(text);
    Header h = parse_header(in);
    if (h.kind != "holo") fail_parse("expected a holomorphic series file");
    HoloSeries s(h.n, h.d, h.s, h.cap);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int j;
        if (!(ls >> j) || j < 1 || j > h.s) fail_parse("bad component index in series term");
        expect_pipe(ls);
        HTerm t;
        t.alpha = expo_from_stream(ls, h.n);
        expect_pipe(ls);
        t.delta = expo_from_stream(ls, h.d);
        expect_pipe(ls);
        std::string re, bar, im2;
        if (!(ls >> re >> bar >> im2) || bar != "|") fail_parse("bad coefficient in series term");
        if (t.wt() > h.cap) fail_parse("series term above cap");
        s.add_term(t, j - 1, GaussRat(rat_from_string(re), rat_from_string(im2)));
    }
    return s;
}

std::string transform_to_text(const Transform& t) {
    return "cmnf-transform v1\nf\n" + holo_to_text(t.f) + "g\n" + holo_to_text(t.g);
}

Transform transform_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string magic, ver;
    if (!(in >> magic >> ver) || magic != "cmnf-transform" || ver != "v1") fail_parse("bad transform header");
    std::string line;
    std::getline(in, line);
    std::string fpart, gpart, cur;
    int section = 0;
    while (std::getline(in, line)) {
        if (line == "f") {
            section = 1;
            continue;
        }
        if (line == "g") {
            section = 2;
            continue;
        }
        if (section == 1) fpart += line + "\n";
        if (section == 2) gpart += line + "\n";
    }
    Transform t;
    t.f = holo_from_text(fpart);
    t.g = holo_from_text(gpart);
    return t;
}

namespace {

GaussRat coeff_from_json(const ordered_json& o) {
    if (!o.is_object() || !o.contains("re") || !o.contains("im")) fail_parse("coefficient must be {re, im}");
    return GaussRat(rat_from_string(o["re"].get<std::string>()), rat_from_string(o["im"].get<std::string>()));
}

ordered_json coeff_to_json(const GaussRat& c) {
    return ordered_json{{"re", rat_to_string(c.re)}, {"im", rat_to_string(c.im)}};
}

}  // namespace

ManifoldSpec spec_from_json(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        fail_parse(std::string("spec JSON parse error: ") + e.what());
    }
    ManifoldSpec spec;
    try {
        if (j.value("version", "") != "1") fail_parse("spec version must be \"1\"");
        spec.n = j.at("n").get<int>();
        spec.d = j.at("d").get<int>();
        spec.cap = j.at("cap").get<int>();
        if (spec.n < 1 || spec.d < 1 || spec.cap < 3) fail_parse("spec requires n >= 1, d >= 1, cap >= 3");
        spec.family.n = spec.n;
        spec.family.d = spec.d;
        const auto& J = j.at("J");
        if (!J.is_array() || static_cast<int>(J.size()) != spec.d) fail_parse("J must list d matrices");
        for (const auto& Jk : J) {
            QMat m(spec.n, spec.n);
            if (!Jk.is_array() || static_cast<int>(Jk.size()) != spec.n) fail_parse("J_k must be n x n");
            for (int p = 0; p < spec.n; ++p) {
                if (static_cast<int>(Jk[p].size()) != spec.n) fail_parse("J_k must be n x n");
                for (int q = 0; q < spec.n; ++q) m.at(p, q) = coeff_from_json(Jk[p][q]);
            }
            spec.family.J.push_back(std::move(m));
        }
        spec.perturbation = BigradedSeries(spec.n, spec.d, spec.d, spec.cap);
        for (const auto& term : j.at("perturbation")) {
            int comp = term.at("j").get<int>();
            if (comp < 1 || comp > spec.d) fail_parse("perturbation component out of range");
            Term t;
            t.alpha = term.at("alpha").get<std::vector<int>>();
            t.beta = term.at("beta").get<std::vector<int>>();
            t.gamma = term.at("gamma").get<std::vector<int>>();
            if (static_cast<int>(t.alpha.size()) != spec.n || static_cast<int>(t.beta.size()) != spec.n ||
                static_cast<int>(t.gamma.size()) != spec.d)
                fail_parse("perturbation exponent lengths must match (n, n, d)");
            for (int e : t.alpha)
                if (e < 0) fail_parse("negative exponent");
            for (int e : t.beta)
                if (e < 0) fail_parse("negative exponent");
            for (int e : t.gamma)
                if (e < 0) fail_parse("negative exponent");
            if (t.wt() > spec.cap) fail_parse("perturbation term above cap");
            GaussRat c(rat_from_string(term.at("re").get<std::string>()),
                       rat_from_string(term.at("im").get<std::string>()));
            spec.perturbation.add_term(t, comp - 1, c);
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail_parse(std::string("spec JSON shape error: ") + e.what());
    }
    return spec;
}

std::string spec_to_json(const ManifoldSpec& spec) {
    ordered_json j;
    j["version"] = "1";
    j["n"] = spec.n;
    j["d"] = spec.d;
    j["cap"] = spec.cap;
    ordered_json J = ordered_json::array();
    for (const QMat& m : spec.family.J) {
        ordered_json Jk = ordered_json::array();
        for (int p = 0; p < spec.n; ++p) {
            ordered_json row = ordered_json::array();
            for (int q = 0; q < spec.n; ++q) row.push_back(coeff_to_json(m.at(p, q)));
            Jk.push_back(row);
        }
        J.push_back(Jk);
    }
    j["J"] = J;
    ordered_json pert = ordered_json::array();
    for (const auto& [t, v] : spec.perturbation.terms())
        for (int c = 0; c < spec.d; ++c) {
            if (v[c].is_zero()) continue;
            ordered_json term;
            term["j"] = c + 1;
            term["alpha"] = t.alpha;
            term["beta"] = t.beta;
            term["gamma"] = t.gamma;
            term["re"] = rat_to_string(v[c].re);
            term["im"] = rat_to_string(v[c].im);
            pert.push_back(term);
        }
    j["perturbation"] = pert;
    return j.dump(2) + "\n";
}

std::string validation_report_json(const SpecReport& rep) {
    ordered_json j;
    j["pass"] = rep.pass;
    j["family"] = {{"hermitian", rep.family.hermitian},
                   {"common_kernel_dim", rep.family.common_kernel_dim},
                   {"independent", rep.family.independent},
                   {"pass", rep.family.pass}};
    j["perturbation_real"] = rep.perturbation_real;
    j["quasiorder_ok"] = rep.quasiorder_ok;
    j["message"] = rep.message;
    return j.dump(2) + "\n";
}

namespace {

ordered_json condition_report_obj(const ConditionReport& rep) {
    ordered_json j;
    j["pass"] = rep.pass;
    j["checked_range"] = rep.checked_range;
    ordered_json entries = ordered_json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"name", e.name}, {"pass", e.pass}, {"residual_terms", e.residual_terms}});
    j["conditions"] = entries;
    return j;
}

}  // namespace

std::string condition_report_json(const ConditionReport& rep) { return condition_report_obj(rep).dump(2) + "\n"; }

std::string normal_form_report_json(const NormalFormReport& rep, const ManifoldSpec& spec) {
    ordered_json j;
    j["mode"] = rep.mode == NormalFormMode::full ? "full" : rep.mode == NormalFormMode::weak ? "weak" : "cm";
    j["n"] = spec.n;
    j["d"] = spec.d;
    j["cap"] = spec.cap;
    j["conjugacy_exact"] = rep.conjugacy_exact;
    j["report"] = condition_report_obj(rep.conditions);
    ordered_json kd = ordered_json::array();
    for (const auto& [k, dim] : rep.kernel_dims) kd.push_back({{"quasidegree", k}, {"ker_L_dim", dim}});
    j["kernel_dims"] = kd;
    j["phi11_terms"] = rep.phi11_terms;
    j["phi12_terms"] = rep.phi12_terms;
    if (rep.crucial_holds) j["crucial_criterion_holds"] = *rep.crucial_holds;
    j["phi_terms"] = rep.phi.term_count();
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j.dump(2) + "\n";
}

std::string growth_report_json(const GrowthProfile& g) {
    ordered_json j;
    j["phi_norms"] = g.phi_norms;
    j["transform_norms"] = g.transform_norms;
    if (g.ratio) j["geometric_ratio"] = *g.ratio;
    return j.dump(2) + "\n";
}

std::string bigdenom_report_json(const BigdenomTable& t) {
    ordered_json j;
    j["op"] = t.op == BigdenomOp::Delta_cubed ? "delta-cubed" : "L1-tilde";
    j["q"] = t.cfg.q;
    j["i_min"] = t.cfg.i_min;
    j["i_max"] = t.cfg.i_max;
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"degree", r.degree},
                        {"inverse_norms", r.inverse_norms},
                        {"rescaled", r.rescaled},
                        {"gram_singular", r.gram_singular}});
    j["rows"] = rows;
    j["bounded"] = t.bounded;
    j["verdict"] = t.verdict;
    j["note"] = "advisory probe; thresholds are heuristic";
    return j.dump(2) + "\n";
}

std::string bigdenom_table_text(const BigdenomTable& t) {
    std::ostringstream out;
    out << "# big-denominator probe: " << (t.op == BigdenomOp::Delta_cubed ? "delta-cubed" : "L1-tilde")
        << "  q=" << t.cfg.q << "\n";
    out << "# degree";
    for (std::size_t g = 0; g < t.rows.front().rescaled.size(); ++g)
        out << "  inv_norm[" << g << "]  rescaled[" << g << "]";
    out << "\n";
    char buf[64];
    for (const auto& r : t.rows) {
        out << r.degree;
        for (std::size_t g = 0; g < r.rescaled.size(); ++g) {
            std::snprintf(buf, sizeof buf, "  %.12e  %.12e", r.inverse_norms[g], r.rescaled[g]);
            out << buf;
        }
        out << "\n";
    }
    out << "# verdict: " << (t.verdict ? "bounded" : "unbounded") << "\n";
    return out.str();
}

std::string regularity_report_json(const RegularityReport& r) {
    ordered_json j;
    ordered_json slots = ordered_json::array();
    for (const auto& s : r.slots)
        slots.push_back({{"component", s.slot.j},
                         {"alpha", s.slot.alpha},
                         {"required_order", s.required_order},
                         {"actual_order", s.actual_order},
                         {"pass", s.pass}});
    j["slots"] = slots;
    j["regular"] = r.regular;
    if (r.strict_increase) j["strict_increase"] = *r.strict_increase;
    return j.dump(2) + "\n";
}

}  // namespace cmnf
