#include "scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sat {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::string fmt(double x, const char* f = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// one "key: value" line with its position, for error reporting
struct Field {
    std::string value;
    int line = 0, column = 0;
};

struct FieldError {
    const Field& f;
    [[noreturn]] void operator()(const std::string& what) const { throw ParseError(f.line, f.column, what); }
};

long long parse_int(const Field& f, const std::string& text) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    FieldError{f}("expected an integer, got '" + text + "'");
}

double parse_double(const Field& f, const std::string& text) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    FieldError{f}("expected a number, got '" + text + "'");
}

QVec parse_qvec(const Field& f) {
    QVec v;
    for (const std::string& t : split(f.value, ',')) {
        try {
            v.push_back(parse_rational(t));
        } catch (const std::invalid_argument& e) {
            FieldError{f}(e.what());
        }
    }
    return v;
}

Subset parse_roots(const Field& f, const std::string& text) {
    // "{}" or "{1,3}", 1-based
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') FieldError{f}("expected a root set like {1,2}");
    Subset I = 0;
    std::string inner = trim(text.substr(1, text.size() - 2));
    if (inner.empty()) return 0;
    for (const std::string& t : split(inner, ',')) {
        long long k = parse_int(f, t);
        if (k < 1 || k > 31) FieldError{f}("root label out of range: " + t);
        I = with(I, int(k - 1));
    }
    return I;
}

SubgroupSpec parse_subgroup_part(const Field& f, const std::string& text) {
    std::istringstream in(text);
    std::string kind;
    in >> kind;
    std::map<std::string, std::string> args;
    std::string tok;
    while (in >> tok) {
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos) FieldError{f}("expected key=value, got '" + tok + "'");
        args[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    auto take = [&](const std::string& key) {
        auto it = args.find(key);
        if (it == args.end()) FieldError{f}(kind + " needs " + key + "=");
        std::string v = it->second;
        args.erase(it);
        return v;
    };
    SubgroupSpec s;
    if (kind == "trivial") {
        s.kind = SubgroupKind::trivial;
    } else if (kind == "full_group" || kind == "sl2") {
        s.kind = SubgroupKind::full_group;
    } else if (kind == "unipotent") {
        s.kind = SubgroupKind::full_unipotent_radical;
    } else if (kind == "full_unipotent_radical") {
        s.kind = SubgroupKind::full_unipotent_radical;
        s.I = parse_roots(f, take("levi"));
    } else if (kind == "levi_semisimple_nc") {
        s.kind = SubgroupKind::levi_semisimple_nc;
        s.I = parse_roots(f, take("levi"));
    } else if (kind == "embedded_sl2") {
        s.kind = SubgroupKind::embedded_sl2;
        s.p = int(parse_int(f, take("p"))) - 1;
    } else if (kind == "one_param_unipotent") {
        s.kind = SubgroupKind::one_param_unipotent;
        s.i = int(parse_int(f, take("i"))) - 1;
        s.j = int(parse_int(f, take("j"))) - 1;
    } else {
        FieldError{f}("unknown subgroup kind '" + kind + "'");
    }
    if (!args.empty()) FieldError{f}("unexpected argument '" + args.begin()->first + "' for " + kind);
    return s;
}

SubgroupSpec parse_subgroup(const Field& f) {
    std::string v = f.value;
    if (v.rfind("product", 0) == 0) {
        SubgroupSpec s;
        s.kind = SubgroupKind::product;
        for (const std::string& part : split(trim(v.substr(7)), ';')) {
            if (part.empty()) FieldError{f}("empty product part");
            s.parts.push_back(parse_subgroup_part(f, part));
        }
        return s;
    }
    return parse_subgroup_part(f, v);
}

IMat parse_imat(const Field& f) {
    std::vector<std::vector<long long>> rows;
    for (const std::string& r : split(f.value, ';')) {
        rows.emplace_back();
        for (const std::string& t : split(r, ',')) rows.back().push_back(parse_int(f, t));
        if (rows.back().size() != rows.front().size()) FieldError{f}("ragged matrix rows");
    }
    if (rows.size() != rows.front().size()) FieldError{f}("matrix must be square");
    IMat m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    return m;
}

std::vector<int> parse_group(const Field& f) {
    try {
        return parse_group_spec(f.value);
    } catch (const InputError& e) {
        FieldError{f}(e.what());
    }
}

Model parse_model(const Field& f) {
    static const std::map<std::string, Model> names{
        {"sl3", Model::sl3}, {"sl2r", Model::sl2r}, {"unip", Model::unip}, {"levi", Model::levi}, {"ma", Model::ma}};
    auto it = names.find(f.value);
    if (it == names.end()) FieldError{f}("model must be one of sl3, sl2r, unip, levi, ma");
    return it->second;
}

RootSystem root_system(const std::vector<int>& factors) {
    return factors.size() == 1 ? build_type_a(factors[0]) : build_product(factors);
}

std::string group_name(const std::vector<int>& factors) {
    if (factors.size() == 1) return "sl " + std::to_string(factors[0]);
    return "sl2^" + std::to_string(factors.size());
}

}  // namespace

std::vector<int> parse_group_spec(const std::string& spec) {
    std::string v = spec;
    v.erase(std::remove(v.begin(), v.end(), ' '), v.end());
    auto number = [&](const std::string& t) {
        if (t.empty() || t.size() > 2 || !std::all_of(t.begin(), t.end(), ::isdigit))
            throw InputError("group must be 'sl n' or 'sl2^r'");
        return std::stoi(t);
    };
    if (v.rfind("sl2^", 0) == 0) {
        int r = number(v.substr(4));
        if (r < 1 || r > 8) throw InputError("sl2^r needs 1 <= r <= 8");
        return std::vector<int>(r, 2);
    }
    if (v.rfind("sl", 0) == 0) {
        int n = number(v.substr(2));
        if (n < 2 || n > 6) throw InputError("sl n needs 2 <= n <= 6");
        return {n};
    }
    throw InputError("group must be 'sl n' or 'sl2^r'");
}

std::string model_name(Model m) {
    switch (m) {
    case Model::sl3: return "sl3";
    case Model::sl2r: return "sl2r";
    case Model::unip: return "unip";
    case Model::levi: return "levi";
    case Model::ma: return "ma";
    }
    return "?";
}

Scenario parse_scenario(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool saw_format = false;
    std::map<std::string, Field> fields;
    std::vector<Field> offsets;
    static const std::set<std::string> known{"name",   "group",  "model",   "subgroup", "conjugator",
                                             "direction", "log-offset", "offset", "indices", "samples",
                                             "seed",   "ycap",   "tesc"};
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        if (trim(line).empty()) continue;
        std::size_t colon = line.find(':');
        int indent = int(line.find_first_not_of(" \t")) + 1;
        if (colon == std::string::npos) throw ParseError(lineno, indent, "expected 'key: value'");
        std::string key = trim(line.substr(0, colon));
        Field f;
        f.line = lineno;
        std::size_t vstart = line.find_first_not_of(" \t", colon + 1);
        f.column = int(vstart == std::string::npos ? line.size() : vstart) + 1;
        f.value = trim(line.substr(colon + 1));
        if (!saw_format) {
            if (key != "format") throw ParseError(lineno, indent, "first entry must be 'format: " + std::string(kScenarioFormat) + "'");
            if (f.value != kScenarioFormat) throw ParseError(lineno, f.column, "unsupported format '" + f.value + "'");
            saw_format = true;
            continue;
        }
        if (!known.count(key)) throw ParseError(lineno, indent, "unknown key '" + key + "'");
        if (f.value.empty()) throw ParseError(lineno, f.column, "empty value for '" + key + "'");
        if (key == "offset") {
            offsets.push_back(f);
            continue;
        }
        if (fields.count(key)) throw ParseError(lineno, indent, "duplicate key '" + key + "'");
        fields[key] = f;
    }
    if (!saw_format) throw ParseError(lineno + 1, 1, "missing 'format: " + std::string(kScenarioFormat) + "'");
    for (const char* k : {"name", "group", "model", "subgroup", "direction", "indices"})
        if (!fields.count(k)) throw ParseError(lineno + 1, 1, std::string("missing required key '") + k + "'");

    Scenario sc;
    sc.name = fields["name"].value;
    sc.factors = parse_group(fields["group"]);
    sc.model = parse_model(fields["model"]);
    SequenceSpec& seq = sc.sequence;
    seq.subgroup = parse_subgroup(fields["subgroup"]);
    if (fields.count("conjugator")) seq.subgroup.conjugator = parse_imat(fields["conjugator"]);
    seq.direction = parse_qvec(fields["direction"]);
    if (fields.count("log-offset")) seq.log_offset = parse_qvec(fields["log-offset"]);

    int dim = 0;
    for (int n : sc.factors) dim += n;
    if (int(seq.direction.size()) != dim)
        FieldError{fields["direction"]}("direction needs " + std::to_string(dim) + " entries");
    for (const Field& f : offsets) {
        std::size_t eq = f.value.find('=');
        if (eq == std::string::npos) FieldError{f}("offset entries look like 'i,j = value'");
        auto ij = split(f.value.substr(0, eq), ',');
        if (ij.size() != 2) FieldError{f}("offset entries look like 'i,j = value'");
        long long i = parse_int(f, ij[0]) - 1, j = parse_int(f, ij[1]) - 1;
        if (i < 0 || j <= i || j >= dim) FieldError{f}("offset position must satisfy 1 <= i < j <= dimension");
        if (seq.offset.empty()) seq.offset = identity_surd(dim);
        try {
            seq.offset[i][j] = parse_surd(f.value.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            FieldError{f}(e.what());
        }
    }
    for (const std::string& t : split(fields["indices"].value, ','))
        seq.indices.push_back(int(parse_int(fields["indices"], t)));
    if (fields.count("samples")) {
        long long n = parse_int(fields["samples"], fields["samples"].value);
        if (n < 1) FieldError{fields["samples"]}("samples must be positive");
        sc.samples = std::size_t(n);
    }
    if (fields.count("seed")) sc.seed = std::uint64_t(parse_int(fields["seed"], fields["seed"].value));
    if (fields.count("ycap")) {
        sc.ycap = parse_double(fields["ycap"], fields["ycap"].value);
        if (!(sc.ycap > 1)) FieldError{fields["ycap"]}("ycap must exceed 1");
    }
    if (fields.count("tesc")) {
        sc.tesc.clear();
        for (const std::string& t : split(fields["tesc"].value, ',')) {
            double v = parse_double(fields["tesc"], t);
            if (!(v > 2 / std::sqrt(3.0))) FieldError{fields["tesc"]}("escape thresholds must exceed 2/sqrt(3)");
            sc.tesc.push_back(v);
        }
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

LimitDescriptor classify(const RootSystem& rs, Model model, const SequenceSpec& seq) {
    switch (model) {
    case Model::sl3: return sl3_classify(rs, seq);
    case Model::sl2r: return sl2r_classify(rs, seq);
    case Model::unip: return unip_classify(rs, seq);
    case Model::levi: return levi_translate_classify(rs, seq);
    case Model::ma: return ma_classify(rs, seq);
    }
    throw InputError("unknown model");
}

std::string label_name(Subset I, int rank) {
    if (I == full_subset(rank)) return "G";
    return "P" + subset_name(I, rank);
}

namespace {

std::string build_summary(const Report& r, const RootSystem& rs) {
    const Scenario& sc = r.scenario;
    std::ostringstream o;
    o << "format: satake-summary/1\n";
    o << "scenario: " << sc.name << "\n";
    o << "group: " << group_name(sc.factors) << "\n";
    o << "model: " << model_name(sc.model) << "\n";
    o << "subgroup: " << describe(rs, sc.sequence.subgroup) << "\n";
    o << "direction: " << to_string(sc.sequence.direction) << "\n";
    o << "predicted: " << label_name(r.predicted.label, rs.rank)
      << (r.predicted.label_from_data ? " (from data: " + label_name(r.reported_label, rs.rank) + ")" : "") << "\n";
    o << "support: " << support_name(r.predicted.support) << "\n";
    o << "trace:";
    for (const std::string& t : r.predicted.trace) o << " " << t;
    o << "\n";
    o << "samples: " << sc.samples << "\nseed: " << sc.seed << "\nycap: " << fmt(sc.ycap, "%g") << "\n";
    for (const IndexResult& ir : r.results) {
        o << "index " << ir.index << ": truncation_bound " << fmt(ir.truncation_loss, "%.3e") << "\n";
        for (const BoundaryHistogram& h : ir.histograms) {
            o << "  tesc " << fmt(h.t_esc, "%g") << ":";
            for (const auto& [label, mass] : h.mass) o << " " << label_name(label, rs.rank) << "=" << fmt(mass);
            o << "\n";
        }
    }
    o << "verdict: " << (r.pass ? "pass" : "fail") << "\n";
    return o.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw InputError("cannot write " + p.string());
    out << text;
}

}  // namespace

Report run_scenario(const Scenario& sc, const std::string& out_dir) {
    auto t0 = std::chrono::steady_clock::now();
    Report r;
    r.scenario = sc;
    RootSystem rs;
    try {
        rs = root_system(sc.factors);
        validate(rs, sc.sequence);
        r.predicted = classify(rs, sc.model, sc.sequence);
        if (!sampleable(rs, sc.sequence.subgroup))
            throw NotCovered("subgroup " + describe(rs, sc.sequence.subgroup) + " has no sampler, so the prediction cannot be checked");
        if (sc.samples < 1000) throw InputError("statistical checks need at least 1000 samples");
        if (sc.tesc.empty()) throw InputError("no escape thresholds given");

        SampleConfig cfg;
        cfg.count = sc.samples;
        cfg.seed = sc.seed;
        cfg.jobs = std::max(1, sc.jobs);
        cfg.ycap = sc.ycap;
        if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
        for (int n : sc.sequence.indices) {
            Mat g = sequence_element(rs, sc.sequence, n);
            if (condition_number(g) > kMaxCondition)
                throw InputError("index " + std::to_string(n) + " gives condition number above " + fmt(kMaxCondition, "%g"));
            EmpiricalMeasure m = sample_pushforward(rs, sc.sequence.subgroup, g, cfg);
            IndexResult ir;
            ir.index = n;
            ir.truncation_loss = m.truncation_loss;
            for (double t : sc.tesc) ir.histograms.push_back(boundary_histogram(m, t));
            if (!out_dir.empty())
                write_file(std::filesystem::path(out_dir) / ("points_" + std::to_string(n) + ".tsv"), points_tsv(m));
            r.results.push_back(std::move(ir));
        }

        // agreement at the largest index, every threshold
        const IndexResult& last = r.results.back();
        r.pass = true;
        r.reported_label = r.predicted.label;
        if (r.predicted.label_from_data) r.reported_label = last.histograms.front().argmax();
        for (const BoundaryHistogram& h : last.histograms)
            r.pass = r.pass && h.argmax() == r.reported_label && h.at(r.reported_label) >= 0.95;
        r.exit_code = r.pass ? kPass : kDisagree;
        r.message = r.pass ? "prediction agrees with the empirical histogram"
                           : "predicted label does not carry the empirical mass";
        r.summary = build_summary(r, rs);
    } catch (const NotCovered& e) {
        r.exit_code = kNotCovered;
        r.message = std::string("not covered: ") + e.what();
    } catch (const std::exception& e) {
        r.exit_code = kInputError;
        r.message = std::string("input error: ") + e.what();
    }
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out_dir.empty() && !r.summary.empty()) {
        try {
            write_file(std::filesystem::path(out_dir) / "summary.txt", r.summary);
            write_file(std::filesystem::path(out_dir) / "verdict.txt", verdict_table(r));
        } catch (const std::exception& e) {
            r.exit_code = kInputError;
            r.message = std::string("input error: ") + e.what();
        }
    }
    return r;
}

std::string verdict_table(const Report& r) {
    std::ostringstream o;
    o << "scenario " << r.scenario.name << "\n";
    if (r.results.empty()) {
        o << r.message << "\n";
        return o.str();
    }
    int rank = 0;
    for (int n : r.scenario.factors) rank += n - 1;
    o << "predicted " << label_name(r.reported_label, rank) << " (" << support_name(r.predicted.support) << ")\n";
    o << "index      tesc  argmax        mass  predicted-mass\n";
    for (const IndexResult& ir : r.results)
        for (const BoundaryHistogram& h : ir.histograms) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%5d  %8g  %-10s %8.4f  %14.4f\n", ir.index, h.t_esc,
                          label_name(h.argmax(), rank).c_str(), h.at(h.argmax()), h.at(r.reported_label));
            o << buf;
        }
    o << "verdict " << (r.pass ? "PASS" : "FAIL") << "  runtime " << fmt(r.runtime_seconds, "%.2f") << " s\n";
    return o.str();
}

std::string catalog_text() {
    std::ostringstream o;
    o << "Subgroup kinds\n";
    o << "  kind                    arguments         sampler                     classifiers\n";
    o << "  trivial                 -                 point mass                  sl3 sl2r ma\n";
    o << "  full_unipotent_radical  levi={..}         uniform on the torus        sl3 sl2r unip\n";
    o << "  levi_semisimple_nc      levi={..}         SL_2 blocks only            levi ma\n";
    o << "  embedded_sl2            p=k               modular domain, y <= ycap   sl2r ma\n";
    o << "  one_param_unipotent     i=a j=b           uniform on [0,1)            sl3 sl2r\n";
    o << "  full_group              -                 SL_2 only                   sl3 sl2r\n";
    o << "  product                 part; part; ...   per factor                  sl2r\n";
    o << "\nClassifier coverage\n";
    o << "  model  group    input                                         labels\n";
    o << "  sl3    sl 3     catalog subgroup, direction, unipotent offset  tree below\n";
    o << "  sl2r   sl2^r    per-factor full / unipotent / trivial         J = factors that stay bounded\n";
    o << "  unip   sl n     minimal unipotent radical                     maximal bounded subset\n";
    o << "  levi   sl n     Levi of a maximal parabolic                   escaping maximal parabolic or G\n";
    o << "  ma     any      subgroup of M_I translated inside A_I         J union R_0\n";
    o << "\nSL_3 tree branches (frame where the escaping parabolic is P{1})\n";
    o << "  both-roots-escape                   P{}\n";
    const char* labels[] = {"P{2}", "P{2}", "P{}", "P{2}", "P{}", "P{1}", "P{1}", "data (point mass)"};
    auto slugs = sl3_branch_slugs();
    for (std::size_t k = 0; k < slugs.size(); ++k) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "  %-35s %s\n", slugs[k].c_str(), labels[k]);
        o << buf;
    }
    o << "  levi-projection-full / -nonescaping / -fixed   P{1}\n";
    return o.str();
}

}  // namespace sat
