// Command-line front end: build functions from spec files, run the boundary
// diagnostics, and emit JSON reports.
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <hardy/io.hpp>
#include <hardy/suite.hpp>

using namespace hardy;

namespace {

// exit codes: 0 ok, 2 invalid input, 3 inconclusive under --strict,
// 4 divergent verdict, 5 empty nullspace
constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kInconclusive = 3;
constexpr int kDivergent = 4;
constexpr int kEmptyNullspace = 5;

struct Args {
    std::vector<std::string> positional;
    std::map<std::string, std::string> flags;
    bool has(const std::string& f) const { return flags.count(f) > 0; }
    std::string get(const std::string& f, const std::string& dflt = "") const {
        auto it = flags.find(f);
        return it == flags.end() ? dflt : it->second;
    }
    int geti(const std::string& f, int dflt) const {
        auto it = flags.find(f);
        return it == flags.end() ? dflt : std::stoi(it->second);
    }
    double getd(const std::string& f, double dflt) const {
        auto it = flags.find(f);
        return it == flags.end() ? dflt : std::stod(it->second);
    }
};

const char* kBoolFlags[] = {"--json", "--strict", "--emit-basis", "--help"};

Args parse_args(int argc, char** argv, int first) {
    Args a;
    for (int i = first; i < argc; ++i) {
        std::string s = argv[i];
        if (s.rfind("--", 0) == 0) {
            bool boolean = false;
            for (const char* b : kBoolFlags) boolean |= (s == b);
            if (!boolean && i + 1 < argc)
                a.flags[s] = argv[++i];
            else
                a.flags[s] = "1";
        } else {
            a.positional.push_back(std::move(s));
        }
    }
    return a;
}

std::string data_path(const std::string& name) {
    if (name.find('/') != std::string::npos) return name;
    const char* dir = std::getenv("HRL_DATA_DIR");
    if (dir && *dir) return std::string(dir) + "/" + name;
    return name;
}

// emit a report: --out writes a file (under HRL_DATA_DIR for bare names),
// --json prints to stdout; with neither, print anyway so the command is useful
void emit(const Args& a, const json& j) {
    if (a.has("--out")) write_json(data_path(a.get("--out")), j);
    if (a.has("--json") || !a.has("--out")) std::cout << j.dump(2) << '\n';
}

AnalyticFunction load_function(const std::string& path, int M) {
    const json j = read_json(path);
    if (j.contains("kind")) return function_from_spec(j, M);
    return function_from_json(j);
}

CirclePoint angle_arg(const std::string& s) { return CirclePoint(kPi * std::stod(s)); }

int cmd_factory(const Args& a) {
    if (a.positional.empty()) throw std::invalid_argument("factory: need a spec file");
    const int M = a.geti("--degree", 128);
    const AnalyticFunction f = function_from_spec(read_json(a.positional[0]), M);
    const Classification cls = classify(f);
    std::cerr << f.label << ": " << to_string(cls.verdict) << ", f(0) = " << evaluate(f, cd(0.0))
              << ", degree " << f.degree() << '\n';
    json out = function_to_json(f);
    out["classification"] = classification_to_json(cls);
    emit(a, out);
    if (a.has("--strict") && cls.verdict == FunctionClass::Inconclusive) return kInconclusive;
    return kOk;
}

int cmd_ac(const Args& a) {
    if (a.positional.size() < 3) throw std::invalid_argument("ac: need a-file, angle/pi, N");
    const AnalyticFunction f = load_function(a.positional[0], a.geti("--degree", 128));
    const auto rep = ac_check(f, angle_arg(a.positional[1]), std::stoi(a.positional[2]),
                              a.geti("--levels", 40));
    emit(a, regularity_report_to_json(rep));
    return rep.finite() ? kOk : kDivergent;
}

int cmd_fm(const Args& a) {
    // data file: {"zeros":[...], "atoms":[[angle/pi, weight],...],
    //             "log_singular_angles":[...], "outer": <function or spec>}
    if (a.positional.size() < 3) throw std::invalid_argument("fm: need data-file, angle/pi, N");
    const json j = read_json(a.positional[0]);
    FmData data;
    for (const auto& e : j.value("zeros", json::array())) {
        if (e.is_object())
            data.zeros.push_back(BlaschkeZero::from_gap(complex_from_json(e.at("one_minus"))));
        else
            data.zeros.push_back(BlaschkeZero(complex_from_json(e)));
    }
    for (const auto& e : j.value("atoms", json::array()))
        data.atoms.emplace_back(CirclePoint(kPi * e.at(0).get<double>()), e.at(1).get<double>());
    for (const auto& e : j.value("log_singular_angles", json::array()))
        data.log_singular_angles.push_back(kPi * e.get<double>());
    std::optional<AnalyticFunction> outer;
    if (j.contains("outer")) {
        outer = j["outer"].contains("kind") ? function_from_spec(j["outer"], a.geti("--degree", 128))
                                            : function_from_json(j["outer"]);
        data.log_modulus = [f = *outer](double t) {
            return std::log(std::abs(evaluate(f, std::polar(1.0, t))));
        };
    }
    const auto rep = fm_check(data, angle_arg(a.positional[1]), std::stoi(a.positional[2]),
                              a.geti("--levels", 40));
    emit(a, regularity_report_to_json(rep));
    return rep.finite() ? kOk : kDivergent;
}

int cmd_kernel(const Args& a) {
    // kernel <a-file> <re> <im> <order>
    if (a.positional.size() < 4)
        throw std::invalid_argument("kernel: need a-file, re, im, order");
    const int M = a.geti("--degree", 128);
    const AnalyticFunction f = load_function(a.positional[0], M);
    const cd z(std::stod(a.positional[1]), std::stod(a.positional[2]));
    const int n = std::stoi(a.positional[3]);
    std::ostringstream loc;
    loc << z;
    if (std::abs(z) < 1.0) {
        const auto k = point_kernel(f, DiskPoint(z), n, M);
        emit(a, kernel_report_to_json(f.label, loc.str(), n,
                                      kernel_norm_sq(f, DiskPoint(z), n), false,
                                      k.base.residual));
    } else {
        const CirclePoint zeta(std::arg(z));
        const auto k = boundary_kernel(f, zeta, n, M);
        emit(a, kernel_report_to_json(f.label, loc.str(), n,
                                      std::pow(range_norm(k.base), 2.0), true,
                                      k.base.residual));
    }
    return kOk;
}

int cmd_norm_probe(const Args& a) {
    if (a.positional.size() < 3)
        throw std::invalid_argument("norm-probe: need a-file, angle/pi, N");
    const AnalyticFunction f = load_function(a.positional[0], a.geti("--degree", 128));
    const CirclePoint z0 = angle_arg(a.positional[1]);
    const int N = std::stoi(a.positional[2]);
    const auto path = StolzPath::radial(z0, a.geti("--points", 20));
    const auto probe =
        stolz_probe([&](cd z) { return kernel_norm_sq(f, DiskPoint(z), N); }, path);
    json out;
    out["bounded"] = probe.bounded;
    out["sup"] = probe.sup;
    out["tail_ratio"] = probe.tail_ratio;
    out["values"] = probe.values;
    emit(a, out);
    if (a.has("--csv")) {
        std::ofstream csv(data_path(a.get("--csv")));
        csv << "j,norm_sq\n";
        for (std::size_t i = 0; i < probe.values.size(); ++i)
            csv << (i + 1) << ',' << probe.values[i] << '\n';
    }
    return probe.bounded ? kOk : kDivergent;
}

int cmd_decay(const Args& a) {
    if (a.positional.size() < 4)
        throw std::invalid_argument("decay: need a-file, angle/pi, N, k");
    const AnalyticFunction f = load_function(a.positional[0], a.geti("--degree", 128));
    const auto res = decay_check(f, angle_arg(a.positional[1]), std::stoi(a.positional[2]),
                                 std::stoi(a.positional[3]));
    json out;
    out["passed"] = res.passed;
    out["flagged"] = res.flagged;
    out["slope"] = res.slope;
    out["underflow"] = res.underflow;
    emit(a, out);
    return res.passed ? kOk : kDivergent;
}

int cmd_a2(const Args& a) {
    // a2 --eps e [--angle t/pi]  |  a2 <weight-function-file>
    A2Weight w;
    if (a.has("--eps")) {
        w = power_weight(kPi * a.getd("--angle", 0.0), a.getd("--eps", 0.5));
    } else if (!a.positional.empty()) {
        const AnalyticFunction f = load_function(a.positional[0], a.geti("--degree", 128));
        const BoundaryGrid tr = boundary_trace(f, min_grid_size(4 * f.degree()));
        BoundaryGrid sq;
        sq.samples.resize(tr.size());
        for (std::size_t j = 0; j < tr.size(); ++j) sq.samples[j] = std::norm(tr.samples[j]);
        w = weight_from_grid(sq);
        w.label = "|" + f.label + "|^2";
    } else {
        throw std::invalid_argument("a2: need --eps or a weight file");
    }
    const auto rep = a2_check(w, a.geti("--levels", 80));
    emit(a, regularity_report_to_json(rep));
    return rep.finite() ? kOk : kDivergent;
}

int cmd_decompose(const Args& a) {
    if (a.positional.empty()) throw std::invalid_argument("decompose: need an a-file");
    const int M = a.geti("--degree", 128);
    const AnalyticFunction f = load_function(a.positional[0], M);
    try {
        const auto res =
            decompose(f, M, a.getd("--tol", 1e-8), a.geti("--test-lifts", 20),
                      unsigned(a.geti("--seed", 20260826)));
        emit(a, decomposition_to_json(res, a.has("--emit-basis")));
        return kOk;
    } catch (const std::domain_error& e) {
        std::cerr << "warning: " << e.what() << '\n';
        return kEmptyNullspace;
    }
}

int cmd_kernels_span(const Args& a) {
    // kernels-span <a-file> <angle/pi:order> [more roots...]
    if (a.positional.size() < 2)
        throw std::invalid_argument("kernels-span: need a-file and angle/pi:order roots");
    const int M = a.geti("--degree", 128);
    const AnalyticFunction f = load_function(a.positional[0], M);
    std::vector<std::pair<CirclePoint, int>> roots;
    for (std::size_t i = 1; i < a.positional.size(); ++i) {
        const std::string& s = a.positional[i];
        const auto colon = s.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("kernels-span: roots are angle/pi:order");
        roots.emplace_back(CirclePoint(kPi * std::stod(s.substr(0, colon))),
                           std::stoi(s.substr(colon + 1)));
    }
    const auto rep = complement_vs_boundary_kernels(f, roots, M, a.geti("--test-lifts", 20),
                                                    unsigned(a.geti("--seed", 20260826)));
    json out;
    out["complement_dim"] = rep.complement_dim;
    out["angles"] = rep.angles;
    out["lift_pairing"] = rep.lift_pairing;
    emit(a, out);
    return kOk;
}

int cmd_project(const Args& a) {
    // project <a-file> <u-file> [--inner spec] [--alpha file]
    if (a.positional.size() < 2) throw std::invalid_argument("project: need a-file and u-file");
    const int M = a.geti("--degree", 128);
    const AnalyticFunction f = load_function(a.positional[0], M);
    const AnalyticFunction u = load_function(a.positional[1], M);
    NearlyInvariantParam p;
    if (a.has("--alpha")) {
        const AnalyticFunction alpha = load_function(a.get("--alpha"), M);
        const AnalyticFunction inner =
            a.has("--inner") ? load_function(a.get("--inner"), M) : monomial(1);
        p = gamma_family(alpha, inner, M);
    } else {
        p.alpha = monomial(0);
        p.beta0 = AnalyticFunction{{cd(0.0)}};
        p.inner_I = a.has("--inner") ? load_function(a.get("--inner"), M) : monomial(1);
        p.gamma = monomial(0);
        p.gamma0 = monomial(0);
    }
    const RangeElement x = lift(f, u, M);
    const RangeElement px = project(f, p, x, M);
    json out;
    out["value"] = function_to_json(px.value);
    out["preimage"] = function_to_json(px.preimage);
    emit(a, out);
    return kOk;
}

std::vector<DiskSample> declared_samples(const Args& a) {
    // --declared "gap,gap,..." declares near-boundary samples 1-gap on the
    // positive real axis with the gap kept exact
    std::vector<DiskSample> out;
    std::istringstream ss(a.get("--declared"));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const double gap = std::stod(tok);
        out.push_back({cd(1.0 - gap), cd(gap)});
    }
    return out;
}

int cmd_corona(const Args& a) {
    if (a.positional.size() < 2)
        throw std::invalid_argument("corona: need two function files");
    const int M = a.geti("--degree", 128);
    const AnalyticFunction f = load_function(a.positional[0], M);
    const AnalyticFunction g = load_function(a.positional[1], M);
    const auto rep = corona_check(f, g, declared_samples(a));
    emit(a, corona_report_to_json(rep));
    if (a.has("--strict") && rep.verdict == CoronaVerdict::Inconclusive) return kInconclusive;
    return kOk;
}

int cmd_lemma_int(const Args& a) {
    // lemma-int <a-file> <inner-spec>
    if (a.positional.size() < 2)
        throw std::invalid_argument("lemma-int: need a-file and inner spec");
    const int M = a.geti("--degree", 128);
    const AnalyticFunction f = load_function(a.positional[0], M);
    const json ispec = read_json(a.positional[1]);
    LemmaIntReport rep;
    if (ispec.contains("kind") && ispec["kind"] == "blaschke") {
        BlaschkeSpec b;
        for (const auto& e : ispec.at("zeros")) {
            if (e.is_object())
                b.zeros.push_back(BlaschkeZero::from_gap(complex_from_json(e.at("one_minus"))));
            else
                b.zeros.push_back(BlaschkeZero(complex_from_json(e)));
        }
        rep = lemma_int_check(f, b, M);
    } else {
        rep = lemma_int_check(f, ispec.contains("kind") ? function_from_spec(ispec, M)
                                                        : function_from_json(ispec),
                              M);
    }
    emit(a, lemma_report_to_json(rep));
    if (a.has("--strict") && rep.verdict == LemmaIntVerdict::Inconclusive) return kInconclusive;
    return kOk;
}

int cmd_hb_verify(const Args& a) {
    if (a.positional.empty()) throw std::invalid_argument("hb-verify: need an inner spec");
    const int M = a.geti("--degree", 256);
    const AnalyticFunction I = load_function(a.positional[0], M);
    const auto rep = hb_decomposition_verify(I, a.geti("--count", 20), M,
                                             unsigned(a.geti("--seed", 20260826)));
    emit(a, hb_verify_to_json(rep));
    return kOk;
}

int cmd_suite(const Args& a) {
    const auto results = run_suite(a.get("--filter"), unsigned(a.geti("--seed", 20260826)));
    bool all = true;
    json out = json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        std::printf("[%2d] %-28s %s  (%.1fs)  %s\n", r.id, r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
        json e;
        e["id"] = r.id;
        e["name"] = r.name;
        e["passed"] = r.passed;
        e["detail"] = r.detail;
        out.push_back(std::move(e));
    }
    if (a.has("--json") || a.has("--out")) emit(a, out);
    return all ? kOk : 1;
}

void usage() {
    std::cerr <<
        "usage: hardy <command> [args] [flags]\n"
        "commands:\n"
        "  factory <spec.json>                 build a function from a spec, classify it\n"
        "  ac <a.json> <angle/pi> <N>          boundary integral dichotomy at a circle point\n"
        "  fm <data.json> <angle/pi> <N>       zero/atom/modulus form of the same dichotomy\n"
        "  kernel <a.json> <re> <im> <order>   point or boundary kernel report\n"
        "  norm-probe <a.json> <angle/pi> <N>  kernel norms along the radius\n"
        "  decay <a.json> <angle/pi> <N> <k>   derivative decay rate along the radius\n"
        "  a2 --eps e [--angle t/pi]           power-weight arc-average dichotomy\n"
        "  decompose <a.json>                  complement of the dense part of the range space\n"
        "  kernels-span <a.json> <t/pi:n>...   complement vs boundary-kernel span\n"
        "  project <a.json> <u.json>           orthogonal projection onto the complement\n"
        "  corona <f.json> <g.json>            joint lower bound on |f|+|g| over the disk\n"
        "  lemma-int <a.json> <inner.json>     compression floor on a model space\n"
        "  hb-verify <inner.json>              two-component inner-product identity\n"
        "  suite [--filter s] [--json]         run the full invariant suite\n"
        "flags: --degree M --grid G --tol t --seed s --levels L --out FILE --json --strict\n"
        "       (angles on the command line are in units of pi; HRL_DATA_DIR sets the\n"
        "        default output directory for bare --out names)\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2 || std::strcmp(argv[1], "--help") == 0) {
        usage();
        return argc < 2 ? kInvalid : kOk;
    }
    const std::string cmd = argv[1];
    const Args args = parse_args(argc, argv, 2);
    try {
        if (cmd == "factory") return cmd_factory(args);
        if (cmd == "ac") return cmd_ac(args);
        if (cmd == "fm") return cmd_fm(args);
        if (cmd == "kernel") return cmd_kernel(args);
        if (cmd == "norm-probe") return cmd_norm_probe(args);
        if (cmd == "decay") return cmd_decay(args);
        if (cmd == "a2") return cmd_a2(args);
        if (cmd == "decompose") return cmd_decompose(args);
        if (cmd == "kernels-span") return cmd_kernels_span(args);
        if (cmd == "project") return cmd_project(args);
        if (cmd == "corona") return cmd_corona(args);
        if (cmd == "lemma-int") return cmd_lemma_int(args);
        if (cmd == "hb-verify") return cmd_hb_verify(args);
        if (cmd == "suite") return cmd_suite(args);
        std::cerr << "unknown command: " << cmd << '\n';
        usage();
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
}
