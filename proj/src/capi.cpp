#include "satake.h"

#include "identities.hpp"
#include "scenario.hpp"

#include <cstring>
#include <sstream>

struct sat_scenario {
    sat::Scenario sc;
};

struct sat_report {
    sat::Report r;
    std::string verdict, trace;
};

struct sat_group {
    sat::RootSystem rs;
};

namespace {

thread_local std::string g_error;

sat_status fail(sat_status s, const std::string& what) {
    g_error = what;
    return s;
}

template <class F>
sat_status guarded(F&& f) {
    try {
        return f();
    } catch (const sat::NotCovered& e) {
        return fail(SAT_NOT_COVERED, e.what());
    } catch (const sat::InputError& e) {
        return fail(SAT_INPUT_ERROR, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SAT_INPUT_ERROR, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SAT_INTERNAL_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return fail(SAT_INTERNAL_ERROR, e.what());
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

sat::Mat read_mat(const double* p, int n) {
    sat::Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = p[i * n + j];
    return m;
}

void write_mat(const sat::Mat& m, double* p) {
    if (!p) return;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) p[i * m.cols() + j] = m(i, j);
}

}  // namespace

extern "C" {

const char* sat_last_error(void) { return g_error.c_str(); }
const char* sat_version(void) { return "1.0.0"; }

sat_status sat_scenario_parse(const char* text, sat_scenario** out) {
    if (!text || !out) return fail(SAT_INPUT_ERROR, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new sat_scenario{sat::parse_scenario(text)};
        return SAT_OK;
    });
}

sat_status sat_scenario_load(const char* path, sat_scenario** out) {
    if (!path || !out) return fail(SAT_INPUT_ERROR, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new sat_scenario{sat::load_scenario(path)};
        return SAT_OK;
    });
}

void sat_scenario_free(sat_scenario* sc) { delete sc; }

const char* sat_scenario_name(const sat_scenario* sc) { return sc ? sc->sc.name.c_str() : ""; }

sat_status sat_scenario_set_seed(sat_scenario* sc, uint64_t seed) {
    if (!sc) return fail(SAT_INPUT_ERROR, "null scenario");
    sc->sc.seed = seed;
    return SAT_OK;
}

sat_status sat_scenario_set_samples(sat_scenario* sc, size_t samples) {
    if (!sc || samples == 0) return fail(SAT_INPUT_ERROR, "samples must be positive");
    sc->sc.samples = samples;
    return SAT_OK;
}

sat_status sat_scenario_set_jobs(sat_scenario* sc, int jobs) {
    if (!sc || jobs < 1) return fail(SAT_INPUT_ERROR, "jobs must be positive");
    sc->sc.jobs = jobs;
    return SAT_OK;
}

sat_status sat_scenario_set_ycap(sat_scenario* sc, double ycap) {
    if (!sc || !(ycap > 1)) return fail(SAT_INPUT_ERROR, "ycap must exceed 1");
    sc->sc.ycap = ycap;
    return SAT_OK;
}

sat_status sat_run(const sat_scenario* sc, const char* out_dir, sat_report** out) {
    if (!sc || !out) return fail(SAT_INPUT_ERROR, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto* rep = new sat_report;
        rep->r = sat::run_scenario(sc->sc, out_dir ? out_dir : "");
        rep->verdict = sat::verdict_table(rep->r);
        for (const std::string& t : rep->r.predicted.trace) rep->trace += (rep->trace.empty() ? "" : " ") + t;
        *out = rep;
        if (rep->r.exit_code != sat::kPass) g_error = rep->r.message;
        return SAT_OK;
    });
}

void sat_report_free(sat_report* r) { delete r; }
int sat_report_exit_code(const sat_report* r) { return r ? r->r.exit_code : SAT_INPUT_ERROR; }
int sat_report_passed(const sat_report* r) { return r && r->r.pass; }
const char* sat_report_message(const sat_report* r) { return r ? r->r.message.c_str() : ""; }
const char* sat_report_summary(const sat_report* r) { return r ? r->r.summary.c_str() : ""; }
const char* sat_report_verdict_table(const sat_report* r) { return r ? r->verdict.c_str() : ""; }
const char* sat_report_trace(const sat_report* r) { return r ? r->trace.c_str() : ""; }
uint32_t sat_report_label(const sat_report* r) { return r ? r->r.reported_label : 0; }
int sat_report_support(const sat_report* r) { return r ? int(r->r.predicted.support) : 0; }
double sat_report_runtime(const sat_report* r) { return r ? r->r.runtime_seconds : 0; }
size_t sat_report_index_count(const sat_report* r) { return r ? r->r.results.size() : 0; }

sat_status sat_report_mass(const sat_report* r, size_t index_pos, size_t tesc_pos, uint32_t label, double* mass) {
    if (!r || !mass) return fail(SAT_INPUT_ERROR, "null argument");
    if (index_pos >= r->r.results.size() || tesc_pos >= r->r.results[index_pos].histograms.size())
        return fail(SAT_INPUT_ERROR, "histogram position out of range");
    *mass = r->r.results[index_pos].histograms[tesc_pos].at(label);
    return SAT_OK;
}

sat_status sat_classify(const sat_scenario* sc, uint32_t* label, int* support) {
    if (!sc) return fail(SAT_INPUT_ERROR, "null scenario");
    return guarded([&] {
        const auto& f = sc->sc.factors;
        sat::RootSystem rs = f.size() == 1 ? sat::build_type_a(f[0]) : sat::build_product(f);
        sat::LimitDescriptor d = sat::classify(rs, sc->sc.model, sc->sc.sequence);
        if (label) *label = d.label;
        if (support) *support = int(d.support);
        return SAT_OK;
    });
}

char* sat_catalog_text(void) { return dup(sat::catalog_text()); }

sat_status sat_verify_identities(int trials, uint64_t seed, char** report, int* all_passed) {
    if (trials < 1) return fail(SAT_INPUT_ERROR, "trials must be positive");
    return guarded([&] {
        auto checks = sat::run_identity_suite(trials, seed);
        std::ostringstream o;
        bool ok = true;
        for (const auto& c : checks) {
            char buf[200];
            std::snprintf(buf, sizeof buf, "%-4s %-40s cases %7zu  %s %.3e\n", c.pass() ? "PASS" : "FAIL",
                          c.name.c_str(), c.cases, c.exact ? "violations" : "worst", c.worst);
            o << buf;
            ok = ok && c.pass();
        }
        if (report) *report = dup(o.str());
        if (all_passed) *all_passed = ok;
        return SAT_OK;
    });
}

void sat_string_free(char* s) { std::free(s); }

sat_status sat_group_create(const char* spec, sat_group** out) {
    if (!spec || !out) return fail(SAT_INPUT_ERROR, "null argument");
    *out = nullptr;
    return guarded([&] {
        std::vector<int> f = sat::parse_group_spec(spec);
        *out = new sat_group{f.size() == 1 ? sat::build_type_a(f[0]) : sat::build_product(f)};
        return SAT_OK;
    });
}

void sat_group_free(sat_group* g) { delete g; }
int sat_group_dim(const sat_group* g) { return g ? g->rs.dim : 0; }
int sat_group_rank(const sat_group* g) { return g ? g->rs.rank : 0; }

sat_status sat_iwasawa(const sat_group* grp, const double* g, double* n, double* a, double* k) {
    if (!grp || !g) return fail(SAT_INPUT_ERROR, "null argument");
    return guarded([&] {
        sat::Mat m = sat::make_element(grp->rs, read_mat(g, grp->rs.dim)).m;
        sat::LanglandsParts p = sat::iwasawa(grp->rs, m);
        write_mat(p.n, n);
        write_mat(p.a, a);
        write_mat(p.k, k);
        return SAT_OK;
    });
}

sat_status sat_reduce(const sat_group* grp, const double* g, double* rep, long long* gamma) {
    if (!grp || !g) return fail(SAT_INPUT_ERROR, "null argument");
    return guarded([&] {
        sat::Mat m = sat::make_element(grp->rs, read_mat(g, grp->rs.dim)).m;
        sat::ReducedPoint rp = sat::reduce(grp->rs, m);
        write_mat(rp.rep, rep);
        if (gamma)
            for (int i = 0; i < grp->rs.dim; ++i)
                for (int j = 0; j < grp->rs.dim; ++j) gamma[i * grp->rs.dim + j] = rp.gamma(i, j);
        return SAT_OK;
    });
}

sat_status sat_root_values(const sat_group* grp, const double* g, double* values) {
    if (!grp || !g || !values) return fail(SAT_INPUT_ERROR, "null argument");
    return guarded([&] {
        sat::Mat m = sat::make_element(grp->rs, read_mat(g, grp->rs.dim)).m;
        sat::Vec r = sat::root_values(grp->rs, sat::iwasawa(grp->rs, m).a);
        for (int i = 0; i < r.size(); ++i) values[i] = r(i);
        return SAT_OK;
    });
}

}  // extern "C"
