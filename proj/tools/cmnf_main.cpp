// Command-line front end for the cmnf shared library. Talks to the engine solely
// through the public C interface.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cmnf.h"

namespace {

int fail_with(int code, const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return code;
}

bool read_file(const std::string& path, std::string& out, std::string& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err = "cannot open '" + path + "'";
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_file(const std::string& path, const std::string& content, std::string& err) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        err = "cannot write '" + path + "'";
        return false;
    }
    out << content;
    return true;
}

struct SpecHandle {
    cmnf_spec* spec = nullptr;
    ~SpecHandle() { cmnf_spec_free(spec); }
};

int load_spec(const std::string& path, SpecHandle& h) {
    std::string text, err;
    if (!read_file(path, text, err)) return fail_with(1, err);
    char errbuf[512];
    cmnf_status st = cmnf_spec_parse(text.c_str(), &h.spec, errbuf, sizeof errbuf);
    if (st != CMNF_OK) return fail_with(static_cast<int>(st), errbuf);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cmnf: exact normal forms for perturbed Levi-nondegenerate hyperquadrics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cmnf_version());

    std::string spec_path, out_dir = ".", mode = "full", f0_path, phi_path, transform_path, space = "full";
    int degree = 0;

    auto* validate = app.add_subcommand("validate", "validate a manifold spec file");
    validate->add_option("spec", spec_path, "spec JSON file")->required();

    auto* normalize = app.add_subcommand("normalize", "compute the normal form and transformation");
    normalize->add_option("spec", spec_path, "spec JSON file")->required();
    normalize->add_option("--degree", degree, "truncation quasidegree (default: spec cap)");
    normalize->add_option("--mode", mode, "full | weak | cm")->check(CLI::IsMember({"full", "weak", "cm"}));
    normalize->add_option("--f0", f0_path, "transverse parameter series file (weak mode)");
    normalize->add_option("--out", out_dir, "output directory");

    auto* verify = app.add_subcommand("verify", "re-check the conjugacy identity for artifacts");
    verify->add_option("spec", spec_path)->required();
    verify->add_option("--phi", phi_path, "phi.series artifact")->required();
    verify->add_option("--transform", transform_path, "transform.series artifact")->required();

    auto* checknf = app.add_subcommand("check-nf", "exact normal-form space membership");
    checknf->add_option("spec", spec_path)->required();
    checknf->add_option("--phi", phi_path)->required();
    checknf->add_option("--space", space, "full | weak | cm")->check(CLI::IsMember({"full", "weak", "cm"}));

    auto* diagnose = app.add_subcommand("diagnose", "convergence criterion and numerical probes");
    diagnose->add_option("spec", spec_path)->required();
    bool want_crucial = false, want_growth = false;
    std::string bigdenom_op;
    bool want_regularity = false;
    int i_min = 1, i_max = 12, qshift = 0;
    unsigned reg_seed = 1;
    diagnose->add_flag("--crucial", want_crucial, "evaluate the convergence criterion on --phi");
    diagnose->add_flag("--growth", want_growth, "Fischer-norm growth profile of --phi/--transform");
    diagnose->add_option("--bigdenom", bigdenom_op, "big-denominator probe: delta-cubed | L1-tilde");
    diagnose->add_flag("--regularity", want_regularity, "regularity probe of the diagonal-row system");
    diagnose->add_option("--phi", phi_path);
    diagnose->add_option("--transform", transform_path);
    diagnose->add_option("--imin", i_min, "probe degree range start");
    diagnose->add_option("--imax", i_max, "probe degree range end");
    diagnose->add_option("--q", qshift, "big-denominator shift q");
    diagnose->add_option("--seed", reg_seed, "regularity jet seed");
    diagnose->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);
    std::string err;
    char errbuf[512];

    if (*validate) {
        SpecHandle h;
        if (int rc = load_spec(spec_path, h)) return rc;
        const char* report = nullptr;
        cmnf_status st = cmnf_spec_validate(h.spec, &report);
        if (report) std::cout << report;
        return static_cast<int>(st);
    }

    if (*normalize) {
        SpecHandle h;
        if (int rc = load_spec(spec_path, h)) return rc;
        std::string f0_text;
        if (!f0_path.empty() && !read_file(f0_path, f0_text, err)) return fail_with(1, err);
        const char* report = nullptr;
        cmnf_status st = cmnf_spec_validate(h.spec, &report);
        if (st != CMNF_OK) {
            if (report) std::cout << report;
            return static_cast<int>(st);
        }
        cmnf_result* result = nullptr;
        st = cmnf_normalize(h.spec, mode.c_str(), degree, f0_path.empty() ? nullptr : f0_text.c_str(),
                            &result, errbuf, sizeof errbuf);
        if (st != CMNF_OK) return fail_with(static_cast<int>(st), errbuf);
        bool ok = write_file(out_dir + "/phi.series", cmnf_result_phi(result), err) &&
                  write_file(out_dir + "/transform.series", cmnf_result_transform(result), err) &&
                  write_file(out_dir + "/report.json", cmnf_result_report(result), err);
        int verify_rc = 0;
        {
            int ez = 0;
            cmnf_status vt = cmnf_verify(h.spec, cmnf_result_transform(result), cmnf_result_phi(result), &ez,
                                         errbuf, sizeof errbuf);
            if (vt != CMNF_OK || ez != 1) verify_rc = 3;
            int pass = 0;
            const char* dummy = nullptr;
            cmnf_status ct = cmnf_check_nf(h.spec, cmnf_result_phi(result),
                                           mode == "cm" ? "cm" : mode.c_str(), &pass, &dummy, errbuf,
                                           sizeof errbuf);
            if (ct != CMNF_OK || pass != 1) verify_rc = 3;
        }
        cmnf_result_free(result);
        if (!ok) return fail_with(1, err);
        if (verify_rc) return fail_with(verify_rc, "internal consistency failure on re-check");
        return 0;
    }

    if (*verify) {
        SpecHandle h;
        if (int rc = load_spec(spec_path, h)) return rc;
        std::string phi_text, transform_text;
        if (!read_file(phi_path, phi_text, err) || !read_file(transform_path, transform_text, err))
            return fail_with(1, err);
        int exact = 0;
        cmnf_status st =
            cmnf_verify(h.spec, transform_text.c_str(), phi_text.c_str(), &exact, errbuf, sizeof errbuf);
        std::cout << (exact ? "conjugacy residual: 0 (exact)\n" : "conjugacy residual: nonzero\n");
        return st == CMNF_OK && exact ? 0 : 3;
    }

    if (*checknf) {
        SpecHandle h;
        if (int rc = load_spec(spec_path, h)) return rc;
        std::string phi_text;
        if (!read_file(phi_path, phi_text, err)) return fail_with(1, err);
        int pass = 0;
        const char* report = nullptr;
        cmnf_status st =
            cmnf_check_nf(h.spec, phi_text.c_str(), space.c_str(), &pass, &report, errbuf, sizeof errbuf);
        if (report) std::cout << report;
        if (st == CMNF_ERR_PARSE || st == CMNF_ERR_USAGE) return fail_with(static_cast<int>(st), errbuf);
        return pass ? 0 : 4;
    }

    if (*diagnose) {
        SpecHandle h;
        if (int rc = load_spec(spec_path, h)) return rc;
        int exit_code = 0;
        if (want_crucial) {
            std::string phi_text;
            if (phi_path.empty()) return fail_with(5, "--crucial needs --phi");
            if (!read_file(phi_path, phi_text, err)) return fail_with(1, err);
            int holds = 0;
            const char* report = nullptr;
            cmnf_status st = cmnf_diagnose_crucial(h.spec, phi_text.c_str(), &holds, &report, errbuf,
                                                   sizeof errbuf);
            if (st == CMNF_ERR_PARSE) return fail_with(1, errbuf);
            if (report && !write_file(out_dir + "/crucial.json", report, err)) return fail_with(1, err);
            std::cout << (holds ? "convergence criterion: holds\n" : "convergence criterion: fails\n");
            if (!holds) exit_code = 4;
        }
        if (want_growth) {
            std::string phi_text, transform_text;
            if (phi_path.empty()) return fail_with(5, "--growth needs --phi");
            if (!read_file(phi_path, phi_text, err)) return fail_with(1, err);
            if (!transform_path.empty() && !read_file(transform_path, transform_text, err))
                return fail_with(1, err);
            const char* report = nullptr;
            cmnf_status st = cmnf_diagnose_growth(h.spec, phi_text.c_str(),
                                                  transform_path.empty() ? nullptr : transform_text.c_str(),
                                                  &report, errbuf, sizeof errbuf);
            if (st != CMNF_OK) return fail_with(static_cast<int>(st), errbuf);
            if (report && !write_file(out_dir + "/growth.json", report, err)) return fail_with(1, err);
        }
        if (!bigdenom_op.empty()) {
            const char* report = nullptr;
            const char* table = nullptr;
            cmnf_status st = cmnf_diagnose_bigdenom(h.spec, bigdenom_op.c_str(), i_min, i_max, qshift,
                                                    &report, &table, errbuf, sizeof errbuf);
            if (st != CMNF_OK) return fail_with(static_cast<int>(st), errbuf);
            if (report && !write_file(out_dir + "/bigdenom.json", report, err)) return fail_with(1, err);
            if (table && !write_file(out_dir + "/bigdenom.txt", table, err)) return fail_with(1, err);
            if (table) std::cout << table;
        }
        if (want_regularity) {
            const char* report = nullptr;
            cmnf_status st = cmnf_diagnose_regularity(h.spec, reg_seed, &report, errbuf, sizeof errbuf);
            if (st == CMNF_ERR_PARSE || st == CMNF_ERR_VALIDATE) return fail_with(static_cast<int>(st), errbuf);
            if (report && !write_file(out_dir + "/regularity.json", report, err)) return fail_with(1, err);
            std::cout << (st == CMNF_OK ? "regularity probe: pass\n" : "regularity probe: fail\n");
            if (st != CMNF_OK) exit_code = 4;
        }
        return exit_code;
    }
    return 5;
}
