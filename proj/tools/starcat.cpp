// Command-line driver: verification suites, hom tables, the classification
// pipeline, modification checks, and the coequalizer demo.
#include <fstream>
#include <random>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "starcat/classification.hpp"
#include "starcat/parallel.hpp"

using namespace starcat;
using nlohmann::json;

namespace {

struct Options {
    int n = 3;
    std::string format = "text";
    std::string out;
    std::string field = "rational";
    int length_cap = 12;
    int threads = 0;
    unsigned long seed = 20240601;
};

void write_report(const Options& opt, const json& j, const std::string& text) {
    std::string payload = opt.format == "json" ? j.dump(2) + "\n" : text;
    if (opt.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(opt.out);
        f << payload;
    }
}

std::uint64_t parse_prime(const std::string& field) {
    // "prime:P"
    auto pos = field.find(':');
    if (pos == std::string::npos) throw CLI::ValidationError("--field", "expected prime:P");
    long p = std::stol(field.substr(pos + 1));
    if (p <= 2) throw CLI::ValidationError("--field", "prime must be > 2");
    return static_cast<std::uint64_t>(p);
}

// randomized rank cross-check over F_p against the rational path
bool prime_crosscheck(std::uint64_t p, unsigned long seed) {
    std::mt19937 rng(static_cast<unsigned>(seed));
    std::uniform_int_distribution<int> d(-4, 4);
    for (int t = 0; t < 20; ++t) {
        QMat m(6, 6);
        Mat<Fp> mp(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                int v = d(rng);
                m(i, j) = Rational(v);
                mp(i, j) = Fp(static_cast<std::uint64_t>(v < 0 ? v + static_cast<long>(p) : v), p);
            }
        if (rank(mp) > rank(m)) return false;
        if (rank(mp) != rank(m)) return false;
    }
    return true;
}

int cmd_verify(const Options& opt, const std::string& emit_presentation) {
    if (!emit_presentation.empty()) {
        std::ofstream f(emit_presentation);
        f << presentation_to_json(zigzag_presentation(opt.n)) << "\n";
    }
    StarBicategory zig(opt.n, true), star(opt.n, false);
    Biideal I = build_biideal_I(zig);
    BiidealCheck chk = verify_biideal(I);
    int nilp = biideal_nilpotency_degree(I);
    DimIdentityReport dim = quotient_dimension_identity(zig, star, I);
    Birepresentation cell = cell_birepresentation(star);
    RepAnalysis ra(cell);
    auto cell_transport = [&](int a, int b, const QMat& f) {
        return zig.quotient_transport(star, a, b, f);
    };
    StableIdeal ev = ev_ideal(ra, I, cell_transport);

    json j;
    j["n"] = opt.n;
    j["biideal_ok"] = chk.ok;
    j["nilpotency_degree"] = nilp;
    j["dim_identity_ok"] = dim.ok;
    j["ev_cell_zero"] = ev.is_zero();
    std::string text = "verify n=" + std::to_string(opt.n) + "\n";
    text += "  biideal_ok:        " + std::string(chk.ok ? "true" : "false") + "\n";
    text += "  nilpotency_degree: " + std::to_string(nilp) + "\n";
    text += "  dim_identity_ok:   " + std::string(dim.ok ? "true" : "false") + "\n";
    text += "  ev_cell_zero:      " + std::string(ev.is_zero() ? "true" : "false") + "\n";
    if (!chk.ok) text += "  first failing whisker: " + chk.first_failure + "\n";
    bool ok = chk.ok && nilp == 2 && dim.ok && ev.is_zero();
    if (opt.field.rfind("prime", 0) == 0) {
        bool pc = prime_crosscheck(parse_prime(opt.field), opt.seed);
        j["prime_crosscheck"] = pc;
        text += "  prime_crosscheck:  " + std::string(pc ? "true" : "false") + "\n";
        ok = ok && pc;
    }
    write_report(opt, j, text);
    return ok ? 0 : 1;
}

int cmd_homtable(const Options& opt, const std::string& algebra,
                 const std::string& emit_presentation) {
    const bool zigzag = algebra == "zigzag";
    if (!emit_presentation.empty()) {
        std::ofstream f(emit_presentation);
        f << presentation_to_json(zigzag ? zigzag_presentation(opt.n)
                                         : star_quotient_presentation(opt.n))
          << "\n";
    }
    StarBicategory bc(opt.n, zigzag);
    const int nl = bc.nlabels();
    // closed forms from the Peirce blocks of the algebra
    auto closed_form = [&](int a, int b) -> int {
        const FiniteDimAlgebra& alg = bc.algebra();
        auto peirce = [&](int i, int j) { return static_cast<int>(alg.peirce(i, j).size()); };
        if (a == 0 && b == 0) return zigzag ? opt.n + 2 : 2;  // centre
        if (a == 0) return b == 1 ? 2 : (zigzag ? 1 : 1);     // invariants of F_j
        if (b == 0) return peirce(a - 1, 0);
        return peirce(a - 1, b - 1) * peirce(0, 0);
    };
    std::vector<std::vector<int>> dims(nl, std::vector<int>(nl));
    parallel_for(nl * nl, [&](long idx) {
        int a = static_cast<int>(idx / nl), b = static_cast<int>(idx % nl);
        dims[a][b] = bc.hom(a, b).dim();
    });
    json j;
    j["n"] = opt.n;
    j["algebra"] = algebra;
    j["table"] = json::array();
    bool all_match = true;
    std::string text = "homtable " + algebra + " n=" + std::to_string(opt.n) + "\n";
    char buf[128];
    for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nl; ++b) {
            int cf = closed_form(a, b);
            bool match = cf == dims[a][b];
            all_match = all_match && match;
            j["table"].push_back({{"src", bc.label_name(a)},
                                  {"tgt", bc.label_name(b)},
                                  {"dim", dims[a][b]},
                                  {"closed_form", cf},
                                  {"match", match}});
            std::snprintf(buf, sizeof(buf), "  %-5s -> %-5s dim %2d  closed form %2d  %s\n",
                          bc.label_name(a).c_str(), bc.label_name(b).c_str(), dims[a][b], cf,
                          match ? "ok" : "MISMATCH");
            text += buf;
        }
    j["all_match"] = all_match;
    write_report(opt, j, text);
    return all_match ? 0 : 1;
}

int cmd_classify(const Options& opt, const std::string& json_out, bool presentations) {
    ClassificationReport rep = classify(opt.n, presentations);
    std::string payload = classification_report_json(rep);
    json j = json::parse(payload);
    std::string text = "classify n=" + std::to_string(rep.n) + ": " +
                       std::to_string(rep.classes.size()) + " classes (Bell = " +
                       std::to_string(rep.bell) + ")\n";
    for (const auto& e : rep.classes) {
        text += "  " + e.partition.str() + "  rank " + std::to_string(e.rank) +
                (e.simple_transitive ? "  simple transitive" : "  NOT SIMPLE TRANSITIVE");
        if (e.presentation_checked)
            text += e.presentation_consistent ? "  presentation ok" : "  PRESENTATION MISMATCH";
        text += "\n";
    }
    text += rep.pairwise_inequivalent ? "pairwise inequivalent: true\n"
                                      : "pairwise inequivalent: FALSE\n";
    if (!json_out.empty()) {
        std::ofstream f(json_out);
        f << payload << "\n";
    }
    write_report(opt, j, text);
    return rep.ok ? 0 : 1;
}

int cmd_modcheck(const Options& opt) {
    bool ok = true;
    std::string text = "modcheck n=" + std::to_string(opt.n) + "\n";
    json j;
    j["n"] = opt.n;
    ModificationLab lab(opt.n);
    json mods = json::array();
    for (int jj = 1; jj <= opt.n; ++jj)
        for (int kk = 1; kk <= opt.n; ++kk) {
            auto s = lab.build_s(jj, kk);
            auto axiom = lab.check_modification_axiom(s);
            Subspace space = lab.modification_space(jj, kk);
            auto s5 = lab.scale(s, Rational(5));
            auto lam = lab.scalar_proportionality(s, s5);
            bool prop = lam.has_value() && *lam == Rational(5);
            bool entry_ok = axiom.ok && space.dim() == 1 && prop;
            ok = ok && entry_ok;
            mods.push_back({{"j", jj},
                            {"k", kk},
                            {"axiom_ok", axiom.ok},
                            {"space_dim", space.dim()},
                            {"proportionality_ok", prop}});
            text += "  s(" + std::to_string(jj) + "," + std::to_string(kk) + "): axiom " +
                    (axiom.ok ? "ok" : "FAIL") + ", space dim " + std::to_string(space.dim()) +
                    ", proportionality " + (prop ? "ok" : "FAIL") + "\n";
        }
    j["modifications"] = mods;
    // chi suite over the merged partition
    json chis = json::array();
    std::vector<std::vector<int>> blocks{{0}};
    std::vector<int> big;
    for (int i = 1; i <= opt.n; ++i) big.push_back(i);
    blocks.push_back(big);
    SetPartition p = SetPartition::from_blocks(opt.n, blocks);
    std::vector<Rational> samples{Rational(1), Rational(2), Rational(-1), Rational(1, 2)};
    for (const auto& c1 : samples)
        for (const auto& c2 : samples) {
            TFunctor f = make_tfunctor(opt.n, p, c1), g = make_tfunctor(opt.n, p, c2);
            NatSpace ns = natural_transformation_space(f, g);
            bool expect = c1 == c2;
            bool entry_ok = ns.has_invertible == expect;
            ok = ok && entry_ok;
            chis.push_back({{"chi_f", c1.str()},
                            {"chi_g", c2.str()},
                            {"invertible_transformation", ns.has_invertible},
                            {"ok", entry_ok}});
        }
    j["chi_suite"] = chis;
    text += std::string("  chi suite: ") + (ok ? "ok" : "FAIL") + "\n";
    j["ok"] = ok;
    write_report(opt, j, text);
    return ok ? 0 : 1;
}

int cmd_demo_naturality(const Options& opt, const std::string& presentation_file) {
    // load the three-vertex double-arrow algebra (or a user-supplied
    // presentation) and run the swap naturality check
    AlgebraPresentation pres;
    if (presentation_file.empty()) {
        pres = presentation_from_json(presentation_to_json(remark_algebra_presentation()));
    } else {
        std::ifstream f(presentation_file);
        std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        pres = presentation_from_json(text);
    }
    FiniteDimAlgebra alg = algebra_from_presentation(pres);
    NaturalityVerdict v = swap_naturality_check(alg, 1, 2);
    json j;
    j["demo"] = "naturality";
    j["passes"] = v.passes;
    std::string text = "swap 1 <-> 2 naturality check: ";
    if (v.passes) {
        text += "passes\n";
    } else {
        j["witness"] = {v.witness_lhs, v.witness_rhs};
        text += "fails with witness images " + v.witness_lhs + " vs " + v.witness_rhs + "\n";
    }
    write_report(opt, j, text);
    return 0;
}

int cmd_demo(const Options& opt) {
    CoequalizerDemo d = coequalizer_free_demo();
    int gx = d.coeq.gen_by_name("x");
    json j;
    j["demo"] = "coequalizer";
    json powers = json::array();
    std::string text = "coequalizer of the parallel free functors: one object X, free loop x\n";
    std::set<std::vector<int>> forms;
    for (int m = 1; m <= 10; ++m) {
        Word xm(m, gx);
        PExpr nf = d.coeq.normal_form_word(xm);
        forms.insert(nf[0].word);
        powers.push_back({{"power", m}, {"normal_form", d.coeq.word_str(nf[0].word)}});
        text += "  x^" + std::to_string(m) + " = " + d.coeq.word_str(nf[0].word) + "\n";
    }
    bool distinct = forms.size() == 10;
    bool saturated = d.coeq.hom_basis_bounded(0, 0, 10).saturated;
    j["powers"] = powers;
    j["pairwise_distinct"] = distinct;
    j["end_saturated"] = saturated;
    text += std::string("  pairwise distinct: ") + (distinct ? "true" : "false") + "\n";
    text += std::string("  End(X) saturated: ") + (saturated ? "true" : "false") +
            " (grows without bound)\n";
    write_report(opt, j, text);
    return distinct && !saturated ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"star-algebra birepresentation toolkit"};
    app.require_subcommand(1);
    Options opt;
    init_threads_from_env();

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", opt.n, "size parameter n >= 1")->check(CLI::PositiveNumber);
        sub->add_option("--format", opt.format, "text|json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", opt.out, "write the report to a file");
        sub->add_option("--field", opt.field, "rational|prime:P");
        sub->add_option("--length-cap", opt.length_cap, "rewriting length cap")
            ->check(CLI::Range(4, 64));
        sub->add_option("--threads", opt.threads, "worker threads (0 = default)");
        sub->add_option("--seed", opt.seed, "seed for randomized cross-checks");
    };

    auto* verify = app.add_subcommand("verify", "biideal, nilpotency, dimension identity, ev");
    add_common(verify);
    std::string emit_presentation;
    verify->add_option("--emit-presentation", emit_presentation,
                       "write the underlying algebra presentation as JSON");
    auto* homtable = app.add_subcommand("homtable", "hom dimension table");
    add_common(homtable);
    std::string algebra = "star";
    homtable->add_option("--algebra", algebra, "zigzag|star")
        ->check(CLI::IsMember({"zigzag", "star"}));
    homtable->add_option("--emit-presentation", emit_presentation,
                         "write the underlying algebra presentation as JSON");
    auto* classify_cmd = app.add_subcommand("classify", "classification pipeline");
    add_common(classify_cmd);
    std::string json_out;
    bool no_presentations = false;
    classify_cmd->add_option("--json", json_out, "write the JSON report to a file");
    classify_cmd->add_flag("--no-presentations", no_presentations,
                           "skip the presented-category cross-check");
    auto* modcheck = app.add_subcommand("modcheck", "s-modification and scalar suites");
    add_common(modcheck);
    auto* demo = app.add_subcommand("demo", "built-in demos");
    std::string which = "counterexample";
    demo->add_option("name", which, "demo name")
        ->check(CLI::IsMember({"counterexample", "naturality"}));
    std::string presentation_file;
    demo->add_option("--presentation", presentation_file, "algebra presentation JSON file");
    add_common(demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (opt.threads > 0) set_thread_count(opt.threads);
    try {
        if (app.got_subcommand(verify)) return cmd_verify(opt, emit_presentation);
        if (app.got_subcommand(homtable)) return cmd_homtable(opt, algebra, emit_presentation);
        if (app.got_subcommand(classify_cmd))
            return cmd_classify(opt, json_out, !no_presentations && opt.n <= 4);
        if (app.got_subcommand(modcheck)) return cmd_modcheck(opt);
        if (app.got_subcommand(demo))
            return which == "naturality" ? cmd_demo_naturality(opt, presentation_file)
                                         : cmd_demo(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
