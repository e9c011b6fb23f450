// growth-lab: command-line laboratory for exact set arithmetic over prime
// fields, the exponent-window extremal construction, character-sum solution
// counting, exact-rational incidence configurations, and the proof-step
// audits built on top of them.
//
// Exit codes: 0 all assertions passed, 1 an exact audit was falsified,
// 2 usage or resource error.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "growthlab/growthlab.hpp"

namespace gl = growthlab;

namespace {

bool g_quiet = false;

void say(const std::string& line) {
    if (!g_quiet) std::cout << line << '\n';
}

std::vector<gl::i64> parse_csv_ints(const std::string& csv) {
    std::vector<gl::i64> out;
    std::istringstream is(csv);
    std::string cell;
    while (std::getline(is, cell, ',')) {
        if (!cell.empty()) out.push_back(std::stoll(cell));
    }
    return out;
}

std::string set_to_csv(const gl::FpSet& s) {
    std::ostringstream os;
    bool first = true;
    for (gl::u64 x : s.elements()) {
        if (!first) os << ',';
        os << x;
        first = false;
    }
    return os.str();
}

void maybe_emit(const std::vector<gl::ExperimentReport>& reports, const std::string& json_path,
                const std::string& csv_path) {
    if (!json_path.empty()) gl::emit_report(reports, gl::ReportFormat::Json, json_path);
    if (!csv_path.empty()) gl::emit_report(reports, gl::ReportFormat::Csv, csv_path);
}

gl::ExperimentReport base_report(gl::u64 run_id, const std::string& audit, gl::u64 p,
                                 gl::u64 seed) {
    gl::ExperimentReport r;
    r.run_id = run_id;
    r.audit = audit;
    r.p = p;
    r.seed = seed;
    return r;
}

void finish_report(gl::ExperimentReport& r, double lhs, double rhs, bool pass, double wall_ms) {
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = rhs == 0.0 ? 0.0 : lhs / rhs;
    r.pass = pass;
    r.wall_ms = wall_ms;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

int run(int argc, char** argv) {
    CLI::App app{"growth-lab: exact audits of product-set growth over prime fields"};
    app.set_config("--config");
    app.require_subcommand(1);

    gl::u64 global_seed = 1;
    app.add_option("--seed", global_seed, "master seed for randomized subcommands");
    app.add_flag("--quiet", g_quiet, "suppress per-row output");

    // prime-tools
    auto* prime_tools = app.add_subcommand("prime-tools", "primality, primitive roots, dlog tables");
    gl::u64 pt_p = 0;
    bool pt_root = false, pt_table = false;
    prime_tools->add_option("--p", pt_p, "modulus")->required();
    prime_tools->add_flag("--root", pt_root, "print the smallest primitive root");
    prime_tools->add_flag("--table-check", pt_table, "build the dlog table and verify round trips");

    // setops
    auto* setops = app.add_subcommand("setops", "exact set arithmetic over F_p");
    gl::u64 so_p = 0;
    std::string so_a, so_b, so_op;
    setops->add_option("--p", so_p, "prime modulus")->required();
    setops->add_option("--a", so_a, "set A as CSV of residues")->required();
    setops->add_option("--b", so_b, "set B as CSV of residues");
    setops->add_option("--op", so_op, "sum|prod|shifted|ratio|2a-2a")->required();

    // extremal
    auto* extremal = app.add_subcommand("extremal", "exponent-window construction with small A(A+1)");
    gl::u64 ex_p = 0, ex_n = 0;
    bool ex_verify = false;
    std::string ex_json;
    extremal->add_option("--p", ex_p, "prime modulus")->required();
    extremal->add_option("--n", ex_n, "requested size N (N < 0.1p)")->required();
    extremal->add_flag("--verify", ex_verify, "brute-force verify |A(A+1)| bounds");
    extremal->add_option("--json", ex_json, "write the run report as JSON");

    // thm2
    auto* thm2 = app.add_subcommand("thm2", "J-count sandwich and character bounds");
    gl::u64 t2_p = 0, t2_size = 0, t2_trials = 1, t2_seed = 0;
    std::string t2_json;
    bool t2_seed_set = false;
    thm2->add_option("--p", t2_p, "prime modulus")->required();
    thm2->add_option("--size", t2_size, "|A| = |B| = |C|")->required();
    thm2->add_option("--trials", t2_trials, "number of random triples");
    thm2->add_option("--seed", t2_seed, "seed (defaults to the global seed)")
        ->each([&](const std::string&) { t2_seed_set = true; });
    thm2->add_option("--json", t2_json, "write reports as JSON");

    // thm3
    auto* thm3 = app.add_subcommand("thm3", "Elekes incidence configuration audit");
    std::string t3_family = "random", t3_json;
    gl::u64 t3_size = 0, t3_trials = 1, t3_seed = 0, t3_value_max = 1000000;
    double t3_cst = 2.5;
    bool t3_seed_set = false;
    thm3->add_option("--family", t3_family, "random|ap|gp");
    thm3->add_option("--size", t3_size, "|A| = |B| = |C|")->required();
    thm3->add_option("--trials", t3_trials, "number of random triples");
    thm3->add_option("--seed", t3_seed, "seed (defaults to the global seed)")
        ->each([&](const std::string&) { t3_seed_set = true; });
    thm3->add_option("--c-st", t3_cst, "Szemeredi-Trotter constant for the reported upper side");
    thm3->add_option("--value-max", t3_value_max, "value range for random integer families");
    thm3->add_option("--json", t3_json, "write reports as JSON");

    // prooflab
    auto* prooflab = app.add_subcommand("prooflab", "machine-checkable proof steps");
    std::string pl_what, pl_json;
    gl::u64 pl_p = 101, pl_size = 12, pl_trials = 1, pl_seed = 0;
    bool pl_seed_set = false;
    prooflab->add_option("what", pl_what, "anchor|levels|injection|bsg|ruzsa|lemma2|thm1")
        ->required();
    prooflab->add_option("--p", pl_p, "prime modulus");
    prooflab->add_option("--size", pl_size, "|A|");
    prooflab->add_option("--trials", pl_trials, "number of random instances");
    prooflab->add_option("--seed", pl_seed, "seed (defaults to the global seed)")
        ->each([&](const std::string&) { pl_seed_set = true; });
    prooflab->add_option("--json", pl_json, "write reports as JSON");

    // grid
    auto* grid = app.add_subcommand("grid", "experiment grid across audits and sizes");
    std::string gr_audits = "thm1", gr_sizes = "20,50,99", gr_json, gr_csv;
    gl::u64 gr_p = 10007;
    grid->add_option("--audits", gr_audits, "CSV of thm1|lemma2|ruzsa|anchor|extremal");
    grid->add_option("--p", gr_p, "prime modulus");
    grid->add_option("--sizes", gr_sizes, "CSV of set sizes");
    grid->add_option("--json", gr_json, "write reports as JSON");
    grid->add_option("--csv", gr_csv, "write reports as CSV");

    // fit
    auto* fit = app.add_subcommand("fit", "least-squares exponent of v against n");
    std::string fit_pairs;
    fit->add_option("--pairs", fit_pairs, "n:v pairs, e.g. 10:100,100:10000")->required();

    // global options (--seed, --quiet, --config) may appear after the
    // subcommand name as well
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*prime_tools) {
        say("p=" + std::to_string(pt_p));
        const bool prime = gl::is_prime(pt_p);
        say(std::string("is_prime=") + (prime ? "true" : "false"));
        if (pt_root || pt_table) {
            const gl::PrimeField field = gl::PrimeField::make(pt_p);
            if (pt_root) say("root=" + std::to_string(field.g));
            if (pt_table) {
                const gl::DlogTable table = gl::DlogTable::build(field);
                bool ok = true;
                for (gl::u64 x = 1; x < pt_p && ok; ++x)
                    ok = gl::pow_mod(field.g, table.log_of[x], pt_p) == x;
                say(std::string("table_ok=") + (ok ? "true" : "false"));
                if (!ok) throw gl::audit_error("dlog table round trip failed");
            }
        }
        return 0;
    }

    if (*setops) {
        const gl::FpSet a = gl::FpSet::from_elements(so_p, parse_csv_ints(so_a));
        gl::FpSet result;
        if (so_op == "sum" || so_op == "prod") {
            if (so_b.empty()) throw std::invalid_argument("setops: --b required for " + so_op);
            const gl::FpSet b = gl::FpSet::from_elements(so_p, parse_csv_ints(so_b));
            result = so_op == "sum" ? gl::sumset(a, b) : gl::product_set(a, b);
        } else if (so_op == "shifted") {
            result = gl::shifted_product(a);
        } else if (so_op == "ratio") {
            result = gl::ratio_set(a);
        } else if (so_op == "2a-2a") {
            result = gl::two_a_minus_two_a(a);
        } else {
            throw std::invalid_argument("setops: unknown op " + so_op);
        }
        std::cout << set_to_csv(result) << '\n';
        std::cout << "card=" << result.size() << '\n';
        return 0;
    }

    if (*extremal) {
        Timer timer;
        const gl::ExtremalResult res = gl::build_extremal_set(ex_p, ex_n);
        say("p=" + std::to_string(res.p));
        say("N=" + std::to_string(res.requested_size));
        say("g=" + std::to_string(res.g));
        say("M=" + std::to_string(res.window_length));
        say("L=" + std::to_string(res.window_offset));
        say("card=" + std::to_string(res.a.size()));
        gl::ExperimentReport rep = base_report(0, "extremal", ex_p, 0);
        rep.size_a = res.a.size();
        bool pass = true;
        double lhs = 0, rhs = 0;
        if (ex_verify) {
            const gl::ExtremalReport v = gl::verify_extremal(res);
            say("product_size=" + std::to_string(v.product_size));
            say("ratio=" + gl::format_ratio(v.ratio));
            say(std::string("verified=") + (v.pass ? "true" : "false"));
            if (!v.pass) throw gl::audit_error("extremal verification failed: " + v.detail);
            rep.card_shifted = v.product_size;
            lhs = static_cast<double>(v.product_size);
            rhs = std::sqrt(static_cast<double>(ex_p) * res.a.size());
            pass = v.pass;
        }
        finish_report(rep, lhs, rhs, pass, timer.ms());
        maybe_emit({rep}, ex_json, "");
        return 0;
    }

    if (*thm2) {
        const gl::u64 seed = t2_seed_set ? t2_seed : global_seed;
        std::vector<gl::ExperimentReport> reports;
        for (gl::u64 i = 0; i < t2_trials; ++i) {
            Timer timer;
            const gl::u64 s = gl::derive_cell_seed(seed, i);
            gl::FamilySpec spec{gl::FamilyKind::Random, t2_p, t2_size, 1, 1, 0, s};
            const gl::FpSet a = gl::generate_family(spec, {0, t2_p - 1});
            spec.seed = gl::derive_cell_seed(s, 1);
            const gl::FpSet b = gl::generate_family(spec, {0});
            spec.seed = gl::derive_cell_seed(s, 2);
            const gl::FpSet c = gl::generate_family(spec, {0});
            const gl::JAudit audit = gl::theorem2_audit(a, b, c);
            gl::ExperimentReport rep = base_report(i, "thm2", t2_p, s);
            rep.size_a = audit.size_a;
            rep.size_b = audit.size_b;
            rep.size_c = audit.size_c;
            rep.card_ab = audit.size_ab;
            rep.card_t = audit.size_t;
            finish_report(rep, static_cast<double>(audit.size_ab) * audit.size_t, audit.min_bound,
                          true, timer.ms());
            reports.push_back(rep);
            std::ostringstream row;
            row << "trial=" << i << " J=" << audit.solutions << " lower=" << audit.lower
                << " upper=" << gl::format_ratio(audit.upper_main + audit.upper_error)
                << " char_worst=" << gl::format_ratio(audit.char_worst)
                << " min_bound=" << gl::format_ratio(audit.min_bound)
                << " ratio=" << gl::format_ratio(rep.ratio);
            say(row.str());
        }
        maybe_emit(reports, t2_json, "");
        return 0;
    }

    if (*thm3) {
        const gl::u64 seed = t3_seed_set ? t3_seed : global_seed;
        const gl::FamilyKind kind = gl::family_kind_from_string(t3_family);
        std::vector<gl::ExperimentReport> reports;
        for (gl::u64 i = 0; i < t3_trials; ++i) {
            Timer timer;
            const gl::u64 s = gl::derive_cell_seed(seed, i);
            const auto a = gl::generate_integer_family(kind, t3_size, t3_value_max, s, 2, 3, 2);
            const auto b = gl::generate_integer_family(kind, t3_size, t3_value_max,
                                                       gl::derive_cell_seed(s, 1), 5, 7, 3);
            const auto c = gl::generate_integer_family(kind, t3_size, t3_value_max,
                                                       gl::derive_cell_seed(s, 2), 11, 13, 5);
            const gl::Theorem3Report rep3 = gl::theorem3_audit(a, b, c, t3_cst);
            gl::ExperimentReport rep = base_report(i, "thm3", 0, s);
            rep.size_a = rep3.size_a;
            rep.size_b = rep3.size_b;
            rep.size_c = rep3.size_c;
            rep.card_ab = rep3.size_ab;
            rep.card_t = rep3.size_t;
            finish_report(rep, static_cast<double>(rep3.prod_lhs),
                          std::sqrt(static_cast<double>(rep3.size_a) * rep3.size_a * rep3.size_a *
                                    rep3.size_b * rep3.size_c),
                          rep3.growth_ok, timer.ms());
            reports.push_back(rep);
            std::ostringstream row;
            row << "trial=" << i << " incidences=" << rep3.incidences
                << " lower=" << rep3.incidence_lower << " lines=" << rep3.line_count
                << " ratio=" << gl::format_ratio(rep3.ratio)
                << " st_within=" << (rep3.st_within ? "true" : "false");
            say(row.str());
        }
        maybe_emit(reports, t3_json, "");
        return 0;
    }

    if (*prooflab) {
        const gl::u64 seed = pl_seed_set ? pl_seed : global_seed;
        std::vector<gl::ExperimentReport> reports;
        for (gl::u64 i = 0; i < pl_trials; ++i) {
            Timer timer;
            const gl::u64 s = gl::derive_cell_seed(seed, i);
            gl::FamilySpec spec{gl::FamilyKind::Random, pl_p, pl_size, 1, 1, 0, s};
            gl::ExperimentReport rep = base_report(i, "prooflab-" + pl_what, pl_p, s);
            std::ostringstream row;
            row << "trial=" << i;
            if (pl_what == "anchor") {
                const gl::FpSet a = gl::generate_family(spec, {0, pl_p - 1});
                const auto [b0, total] = gl::popular_anchor(a);
                const gl::u64 shifted = gl::shifted_product(a).size();
                rep.size_a = a.size();
                rep.card_shifted = shifted;
                finish_report(rep, static_cast<double>(total) * shifted,
                              static_cast<double>(a.size()) * a.size() * a.size(), true,
                              timer.ms());
                row << " b0=" << b0 << " total=" << total;
            } else if (pl_what == "levels") {
                const gl::FpSet a = gl::generate_family(spec, {0, pl_p - 1});
                const auto [b0, total] = gl::popular_anchor(a);
                (void)total;
                const gl::AnchorDecomposition dec = gl::dyadic_levels(a, b0);
                rep.size_a = a.size();
                finish_report(rep,
                              static_cast<double>(dec.level) * dec.a1.size() * dec.class_count,
                              static_cast<double>(dec.total), true, timer.ms());
                row << " b0=" << dec.b0 << " N=" << dec.level << " |A1|=" << dec.a1.size()
                    << " classes=" << dec.class_count;
            } else if (pl_what == "injection") {
                const gl::FpSet a = gl::generate_family(spec, {0, pl_p - 1});
                const auto [b0, total] = gl::popular_anchor(a);
                (void)total;
                const gl::AnchorDecomposition dec = gl::dyadic_levels(a, b0);
                gl::GkQuadruple quad{dec.a1.elements()[0], dec.a1.elements()[0],
                                     dec.a1.elements()[0], dec.a1.elements()[0]};
                if (dec.a1.size() >= 2) {
                    const gl::GkResult gk = gl::gk_dichotomy(dec.a1);
                    if (const auto* q = std::get_if<gl::GkQuadruple>(&gk)) {
                        quad = *q;
                    } else {
                        quad = gl::GkQuadruple{dec.a1.elements()[0], dec.a1.elements()[1],
                                               dec.a1.elements()[0], dec.a1.elements()[1]};
                    }
                }
                const gl::InjectionRecord irec = gl::bg_injection_audit(a, dec, quad);
                rep.size_a = a.size();
                rep.card_diff = irec.size_diff;
                finish_report(rep, static_cast<double>(irec.size_s) * irec.level * irec.level *
                                       irec.level * irec.level,
                              static_cast<double>(irec.size_diff) * irec.size_diff *
                                  irec.size_diff * irec.size_diff * irec.size_2a2a,
                              irec.injective && irec.counting_ok, timer.ms());
                row << " |S|=" << irec.size_s << " N=" << irec.level
                    << " domain=" << irec.domain_size
                    << " ks_ratio=" << gl::format_ratio(irec.ratio_ks);
            } else if (pl_what == "bsg") {
                if (pl_size > 12)
                    throw gl::resource_error("prooflab bsg: exhaustive search needs --size <= 12");
                const gl::FpSet a = gl::generate_family(spec, {});
                spec.seed = gl::derive_cell_seed(s, 1);
                const gl::FpSet b = gl::generate_family(spec, {});
                // random dense relation: each pair kept with probability 3/4
                gl::SplitMix64 rng(gl::derive_cell_seed(s, 2));
                std::vector<std::pair<gl::u64, gl::u64>> pairs;
                for (gl::u64 x : a.elements())
                    for (gl::u64 y : b.elements())
                        if (rng.below(4) != 0) pairs.emplace_back(x, y);
                if (pairs.empty()) pairs.emplace_back(a.elements()[0], b.elements()[0]);
                const gl::PairRelation e = gl::PairRelation::make(a, b, pairs);
                const gl::BsgWitness w = gl::bsg_witness_search(a, b, e);
                rep.size_a = a.size();
                rep.size_b = b.size();
                finish_report(rep, static_cast<double>(w.a_prime.size()),
                              static_cast<double>(w.min_size), w.found, timer.ms());
                row << " |A'|=" << w.a_prime.size() << " min_size=" << w.min_size;
            } else if (pl_what == "ruzsa") {
                const gl::FpSet a = gl::generate_family(spec, {0, pl_p - 1});
                const gl::RuzsaReport rr = gl::ruzsa_mult_audit(a);
                rep.size_a = rr.size_a;
                rep.card_shifted = rr.size_shifted;
                finish_report(rep, static_cast<double>(rr.size_aa) * rr.size_a,
                              static_cast<double>(rr.size_shifted) * rr.size_shifted, rr.ok,
                              timer.ms());
                row << " |AA|=" << rr.size_aa << " |A(A+1)|=" << rr.size_shifted;
            } else if (pl_what == "lemma2") {
                const gl::FpSet a = gl::generate_family(spec);
                const gl::Lemma2Report lr = gl::lemma2_audit(a);
                rep.size_a = lr.size_a;
                rep.card_diff = lr.size_diff;
                rep.card_shifted = lr.size_shifted;
                finish_report(rep, lr.exponent, 13.0, lr.above_13, timer.ms());
                row << " exponent=" << gl::format_ratio(lr.exponent)
                    << " sketch=" << gl::format_ratio(lr.sketch_exponent);
            } else if (pl_what == "thm1") {
                const gl::FpSet a = gl::generate_family(spec);
                const gl::Theorem1Report tr = gl::theorem1_exponent(a);
                rep.size_a = tr.size_a;
                rep.card_shifted = tr.size_shifted;
                finish_report(rep, tr.beta, 106.0 / 105.0, tr.above, timer.ms());
                row << " beta=" << gl::format_ratio(tr.beta)
                    << " K=" << gl::format_ratio(tr.k_ratio);
            } else {
                throw std::invalid_argument("prooflab: unknown audit " + pl_what);
            }
            reports.push_back(rep);
            say(row.str());
        }
        maybe_emit(reports, pl_json, "");
        return 0;
    }

    if (*grid) {
        std::vector<gl::GridCell> plan;
        std::istringstream audits(gr_audits);
        std::string audit;
        while (std::getline(audits, audit, ',')) {
            for (gl::i64 size : parse_csv_ints(gr_sizes)) {
                gl::FamilySpec spec{gl::FamilyKind::Random, gr_p, static_cast<gl::u64>(size)};
                plan.push_back(gl::GridCell{audit, spec});
            }
        }
        const auto reports = gl::run_grid(plan, global_seed);
        for (const auto& r : reports)
            say("cell=" + std::to_string(r.run_id) + " audit=" + r.audit +
                " size=" + std::to_string(r.size_a) + " ratio=" + gl::format_ratio(r.ratio) +
                " pass=" + (r.pass ? "true" : "false"));
        const gl::GridSummary summary = gl::summarize_grid(reports);
        for (const auto& [kind, v] : summary.min_ratio)
            say("summary " + kind + " min_ratio=" + gl::format_ratio(v) +
                " median_ratio=" + gl::format_ratio(summary.median_ratio.at(kind)));
        maybe_emit(reports, gr_json, gr_csv);
        return summary.all_pass ? 0 : 1;
    }

    if (*fit) {
        std::vector<std::pair<double, double>> pairs;
        std::istringstream is(fit_pairs);
        std::string cell;
        while (std::getline(is, cell, ',')) {
            const auto colon = cell.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("fit: pairs must look like n:v");
            pairs.emplace_back(std::stod(cell.substr(0, colon)), std::stod(cell.substr(colon + 1)));
        }
        const gl::ExponentFit f = gl::fit_exponent(pairs);
        std::cout << "beta=" << gl::format_ratio(f.beta) << '\n';
        std::cout << "r_squared=" << gl::format_ratio(f.r_squared) << '\n';
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gl::audit_error& e) {
        std::cerr << "AUDIT FALSIFIED: " << e.what() << '\n';
        return 1;
    } catch (const gl::resource_error& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
