#include "cmnf.h"

#include <cstring>
#include <list>
#include <string>

#include "diagnostics.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "serialize.hpp"

using namespace cmnf;

struct cmnf_spec {
    ManifoldSpec spec;
    std::list<std::string> owned;  // stable addresses for returned strings
    const char* keep(std::string s) {
        owned.push_back(std::move(s));
        return owned.back().c_str();
    }
};

struct cmnf_result {
    std::string phi_text, transform_text, report_json;
};

namespace {

void write_err(char* errbuf, size_t errcap, const std::string& msg) {
    if (!errbuf || errcap == 0) return;
    std::size_t len = std::min(errcap - 1, msg.size());
    std::memcpy(errbuf, msg.data(), len);
    errbuf[len] = '\0';
}

cmnf_status status_of(const Error& e) { return static_cast<cmnf_status>(static_cast<int>(e.code())); }

template <typename Fn>
cmnf_status guarded(char* errbuf, size_t errcap, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        write_err(errbuf, errcap, e.what());
        return status_of(e);
    } catch (const std::exception& e) {
        write_err(errbuf, errcap, e.what());
        return CMNF_ERR_INTERNAL;
    }
}

ConditionReport space_report(const ManifoldSpec& spec, const BigradedSeries& phi, const std::string& space) {
    if (space == "cm") return check_CM(spec.family, phi);
    std::vector<ConditionReport> reports;
    reports.push_back(check_N0(spec.family, phi));
    reports.push_back(check_N1(spec.family, phi, spec.cap));
    reports.push_back(check_Nd(spec.family, phi));
    if (space == "full") reports.push_back(check_Noff(spec.family, phi));
    return merge_reports(reports);
}

}  // namespace

extern "C" {

const char* cmnf_version(void) { return "cmnf 1.0.0"; }

cmnf_status cmnf_spec_parse(const char* json_text, cmnf_spec** out, char* errbuf, size_t errcap) {
    if (!json_text || !out) return CMNF_ERR_USAGE;
    *out = nullptr;
    return guarded(errbuf, errcap, [&] {
        auto handle = new cmnf_spec{spec_from_json(json_text), {}};
        *out = handle;
        return CMNF_OK;
    });
}

void cmnf_spec_free(cmnf_spec* spec) { delete spec; }

cmnf_status cmnf_spec_validate(cmnf_spec* spec, const char** report_json) {
    if (!spec) return CMNF_ERR_USAGE;
    return guarded(nullptr, 0, [&] {
        SpecReport rep = validate_spec(spec->spec);
        if (report_json) *report_json = spec->keep(validation_report_json(rep));
        return rep.pass ? CMNF_OK : CMNF_ERR_VALIDATE;
    });
}

cmnf_status cmnf_normalize(cmnf_spec* spec, const char* mode, int degree, const char* f0_series_text,
                           cmnf_result** out, char* errbuf, size_t errcap) {
    if (!spec || !mode || !out) return CMNF_ERR_USAGE;
    *out = nullptr;
    return guarded(errbuf, errcap, [&] {
        ManifoldSpec run = spec->spec;
        if (degree != 0) {
            if (degree < 3 || degree > run.cap)
                throw Error(ErrorCode::usage, "degree must lie in [3, cap]");
            run.cap = degree;
            run.perturbation = run.perturbation.truncated(degree);
        }
        std::string m = mode;
        NormalFormReport rep;
        if (m == "full") {
            rep = normalize_formal(run);
        } else if (m == "weak") {
            HoloSeries f0 = f0_series_text ? holo_from_text(f0_series_text)
                                           : HoloSeries::zero(run.n, run.d, run.n, run.cap);
            rep = normalize_weak(run, f0);
        } else if (m == "cm") {
            rep = cm_normalize(run);
        } else {
            throw Error(ErrorCode::usage, "mode must be full, weak or cm");
        }
        auto result = new cmnf_result;
        result->phi_text = series_to_text(rep.phi);
        result->transform_text = transform_to_text(rep.transform);
        result->report_json = normal_form_report_json(rep, run);
        *out = result;
        return CMNF_OK;
    });
}

void cmnf_result_free(cmnf_result* result) { delete result; }

const char* cmnf_result_phi(const cmnf_result* result) { return result ? result->phi_text.c_str() : nullptr; }
const char* cmnf_result_transform(const cmnf_result* result) {
    return result ? result->transform_text.c_str() : nullptr;
}
const char* cmnf_result_report(const cmnf_result* result) {
    return result ? result->report_json.c_str() : nullptr;
}

cmnf_status cmnf_verify(cmnf_spec* spec, const char* transform_text, const char* phi_text, int* exact_zero,
                        char* errbuf, size_t errcap) {
    if (!spec || !transform_text || !phi_text) return CMNF_ERR_USAGE;
    return guarded(errbuf, errcap, [&] {
        Transform t = transform_from_text(transform_text);
        BigradedSeries phi = series_from_text(phi_text);
        BigradedSeries residual = verify_conjugacy(spec->spec, t, phi);
        if (exact_zero) *exact_zero = residual.is_zero() ? 1 : 0;
        return residual.is_zero() ? CMNF_OK : CMNF_ERR_INTERNAL;
    });
}

cmnf_status cmnf_check_nf(cmnf_spec* spec, const char* phi_text, const char* space, int* pass,
                          const char** report_json, char* errbuf, size_t errcap) {
    if (!spec || !phi_text || !space) return CMNF_ERR_USAGE;
    return guarded(errbuf, errcap, [&] {
        std::string sp = space;
        if (sp != "full" && sp != "weak" && sp != "cm")
            throw Error(ErrorCode::usage, "space must be full, weak or cm");
        BigradedSeries phi = series_from_text(phi_text);
        ConditionReport rep = space_report(spec->spec, phi, sp);
        if (pass) *pass = rep.pass ? 1 : 0;
        if (report_json) *report_json = spec->keep(condition_report_json(rep));
        return rep.pass ? CMNF_OK : CMNF_ERR_CRITERION;
    });
}

cmnf_status cmnf_diagnose_crucial(cmnf_spec* spec, const char* phi_text, int* holds, const char** report_json,
                                  char* errbuf, size_t errcap) {
    if (!spec || !phi_text) return CMNF_ERR_USAGE;
    return guarded(errbuf, errcap, [&] {
        BigradedSeries phi = series_from_text(phi_text);
        BigradedSeries residual = crucial_residual(spec->spec.family, phi);
        bool ok = residual.is_zero();
        if (holds) *holds = ok ? 1 : 0;
        if (report_json) {
            std::string j = std::string("{\n  \"criterion_holds\": ") + (ok ? "true" : "false") +
                            ",\n  \"residual_terms\": " + std::to_string(residual.term_count()) + "\n}\n";
            *report_json = spec->keep(j);
        }
        return ok ? CMNF_OK : CMNF_ERR_CRITERION;
    });
}

cmnf_status cmnf_diagnose_growth(cmnf_spec* spec, const char* phi_text, const char* transform_text,
                                 const char** report_json, char* errbuf, size_t errcap) {
    if (!spec || !phi_text) return CMNF_ERR_USAGE;
    return guarded(errbuf, errcap, [&] {
        BigradedSeries phi = series_from_text(phi_text);
        Transform t = transform_text ? transform_from_text(transform_text)
                                     : Transform::identity(spec->spec.n, spec->spec.d, spec->spec.cap);
        GrowthProfile g = norm_growth(phi, t);
        if (report_json) *report_json = spec->keep(growth_report_json(g));
        return CMNF_OK;
    });
}

cmnf_status cmnf_diagnose_bigdenom(cmnf_spec* spec, const char* op, int i_min, int i_max, int q,
                                   const char** report_json, const char** table_text, char* errbuf,
                                   size_t errcap) {
    if (!spec || !op) return CMNF_ERR_USAGE;
    return guarded(errbuf, errcap, [&] {
        std::string o = op;
        BigdenomOp bop;
        if (o == "delta-cubed")
            bop = BigdenomOp::Delta_cubed;
        else if (o == "L1-tilde")
            bop = BigdenomOp::L1_tilde;
        else
            throw Error(ErrorCode::usage, "op must be delta-cubed or L1-tilde");
        if (i_min < 0 || i_max < i_min) throw Error(ErrorCode::usage, "bad degree range");
        ProbeConfig cfg;
        cfg.q = q;
        cfg.i_min = i_min;
        cfg.i_max = i_max;
        cfg.m = bop == BigdenomOp::Delta_cubed ? std::vector<int>{3} : std::vector<int>{2, 3};
        BigdenomTable t = bigdenom_probe(spec->spec.family, bop, cfg);
        if (report_json) *report_json = spec->keep(bigdenom_report_json(t));
        if (table_text) *table_text = spec->keep(bigdenom_table_text(t));
        return CMNF_OK;
    });
}

cmnf_status cmnf_diagnose_regularity(cmnf_spec* spec, unsigned seed, const char** report_json, char* errbuf,
                                     size_t errcap) {
    if (!spec) return CMNF_ERR_USAGE;
    return guarded(errbuf, errcap, [&] {
        ConcreteWSystem sys = build_diagonal_row_system(spec->spec);
        ProbeConfig cfg;
        cfg.m = sys.m;
        cfg.q = 0;
        auto jet = sys.sample_jet(seed);
        auto jet2 = sys.sample_jet(seed + 1);
        RegularityReport rep = regularity_probe(sys.n, sys.d, sys.cap, sys.W, sys.slots, cfg, jet,
                                                sys.slot_directions(), &jet2);
        if (report_json) *report_json = spec->keep(regularity_report_json(rep));
        return rep.regular ? CMNF_OK : CMNF_ERR_CRITERION;
    });
}

}  // extern "C"
